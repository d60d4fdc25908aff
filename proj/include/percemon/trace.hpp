#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace percemon {

using ObjectId = std::uint64_t;

/// Axis-aligned box in image coordinates (origin top-left, y grows downward).
struct BoundingBox {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool degenerate() const { return !(xmax > xmin) || !(ymax > ymin); }

  bool operator==(const BoundingBox &) const = default;
};

/// Clamp `box` into [0,width]x[0,height]. Idempotent.
BoundingBox clip_box(const BoundingBox &box, double width, double height);

struct DetectedObject {
  ObjectId id = 0;
  std::string class_label;
  double confidence = 0.0;
  BoundingBox bbox;

  bool operator==(const DetectedObject &) const = default;
};

struct Frame {
  std::uint64_t frame_number = 0;
  double timestamp = 0.0;
  double width = 0.0;
  double height = 0.0;
  std::map<ObjectId, DetectedObject> objects;
  /// Number of boxes that were clipped into the frame during ingestion.
  std::size_t clipped_boxes = 0;

  const DetectedObject *find(ObjectId id) const {
    auto it = objects.find(id);
    return it == objects.end() ? nullptr : &it->second;
  }

  /// Field-for-field equality; the ingestion warning counter is not part of
  /// the frame's value.
  friend bool operator==(const Frame &a, const Frame &b) {
    return a.frame_number == b.frame_number && a.timestamp == b.timestamp &&
           a.width == b.width && a.height == b.height && a.objects == b.objects;
  }
};

using TraceStream = std::vector<Frame>;

class IngestError : public std::runtime_error {
public:
  enum class Kind {
    MalformedJson,
    MissingField,
    InvalidField,
    DuplicateObjectId,
    ConfidenceOutOfRange,
    NonMonotonicFrameNumber,
    NonMonotonicTimestamp,
  };

  IngestError(Kind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

struct IngestOptions {
  /// Extent used when a record omits "width"/"height".
  std::optional<std::pair<double, double>> default_extent;
};

/// Parse one JSONL record. Boxes outside the frame are clipped and counted in
/// `Frame::clipped_boxes`.
Frame parse_frame(const std::string &json_text, const IngestOptions &options = {});

/// Single-line JSON encoding; `parse_frame(serialize_frame(f)) == f` for any
/// valid frame.
std::string serialize_frame(const Frame &frame);

/// Throws NonMonotonic* if `next` cannot follow `prev` in a stream.
void check_successor(const Frame &prev, const Frame &next);

/// Lazily reads newline-delimited frame records and enforces stream ordering.
/// Blank lines are skipped. Errors carry the 1-based line number.
class FrameReader {
public:
  explicit FrameReader(std::istream &in, IngestOptions options = {});

  std::optional<Frame> next();

  std::size_t line_number() const { return line_; }

private:
  std::istream &in_;
  IngestOptions options_;
  std::optional<Frame> last_;
  std::size_t line_ = 0;
};

/// Reads an entire stream into memory.
TraceStream read_stream(std::istream &in, const IngestOptions &options = {});

} // namespace percemon
