#include "percemon/trace.hpp"

#include <algorithm>
#include <cmath>
#include <istream>

#include "json.hpp"

namespace percemon {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

BoundingBox clip_box(const BoundingBox &box, double width, double height) {
  auto clamp = [](double v, double hi) { return std::clamp(v, 0.0, hi); };
  return {clamp(box.xmin, width), clamp(box.ymin, height), clamp(box.xmax, width),
          clamp(box.ymax, height)};
}

namespace {

const json &require(const json &obj, const char *name) {
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw IngestError(IngestError::Kind::MissingField,
                      std::string("missing field \"") + name + "\"");
  }
  return *it;
}

double as_real(const json &value, const char *name) {
  if (!value.is_number()) {
    throw IngestError(IngestError::Kind::InvalidField,
                      std::string("field \"") + name + "\" must be a number");
  }
  double v = value.get<double>();
  if (!std::isfinite(v)) {
    throw IngestError(IngestError::Kind::InvalidField,
                      std::string("field \"") + name + "\" must be finite");
  }
  return v;
}

std::uint64_t as_natural(const json &value, const char *name) {
  if (value.is_number_unsigned()) {
    return value.get<std::uint64_t>();
  }
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  throw IngestError(IngestError::Kind::InvalidField,
                    std::string("field \"") + name + "\" must be a natural number");
}

DetectedObject parse_object(const json &obj, double width, double height,
                            std::size_t &clipped) {
  if (!obj.is_object()) {
    throw IngestError(IngestError::Kind::InvalidField, "object entries must be JSON objects");
  }
  DetectedObject out;
  out.id = as_natural(require(obj, "id"), "id");

  const json &label = require(obj, "class");
  if (!label.is_string() || label.get<std::string>().empty()) {
    throw IngestError(IngestError::Kind::InvalidField,
                      "field \"class\" must be a nonempty string");
  }
  out.class_label = label.get<std::string>();

  out.confidence = as_real(require(obj, "prob"), "prob");
  if (out.confidence < 0.0 || out.confidence > 1.0) {
    throw IngestError(IngestError::Kind::ConfidenceOutOfRange,
                      "confidence of object " + std::to_string(out.id) + " outside [0,1]");
  }

  const json &bbox = require(obj, "bbox");
  if (!bbox.is_array() || bbox.size() != 4) {
    throw IngestError(IngestError::Kind::InvalidField,
                      "field \"bbox\" must be [xmin, ymin, xmax, ymax]");
  }
  BoundingBox box{as_real(bbox[0], "bbox"), as_real(bbox[1], "bbox"), as_real(bbox[2], "bbox"),
                  as_real(bbox[3], "bbox")};
  if (box.xmin > box.xmax || box.ymin > box.ymax) {
    throw IngestError(IngestError::Kind::InvalidField,
                      "bbox of object " + std::to_string(out.id) + " has min > max");
  }
  out.bbox = clip_box(box, width, height);
  if (out.bbox != box) {
    ++clipped;
  }
  return out;
}

} // namespace

Frame parse_frame(const std::string &json_text, const IngestOptions &options) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw IngestError(IngestError::Kind::MalformedJson, e.what());
  }
  if (!doc.is_object()) {
    throw IngestError(IngestError::Kind::MalformedJson, "frame record must be a JSON object");
  }

  Frame frame;
  frame.frame_number = as_natural(require(doc, "frame"), "frame");
  frame.timestamp = as_real(require(doc, "timestamp"), "timestamp");

  bool has_extent = doc.contains("width") || doc.contains("height");
  if (has_extent || !options.default_extent) {
    frame.width = as_real(require(doc, "width"), "width");
    frame.height = as_real(require(doc, "height"), "height");
  } else {
    frame.width = options.default_extent->first;
    frame.height = options.default_extent->second;
  }
  if (!(frame.width > 0.0) || !(frame.height > 0.0)) {
    throw IngestError(IngestError::Kind::InvalidField, "frame extent must be positive");
  }

  const json &objects = require(doc, "objects");
  if (!objects.is_array()) {
    throw IngestError(IngestError::Kind::InvalidField, "field \"objects\" must be an array");
  }
  for (const json &entry : objects) {
    DetectedObject obj = parse_object(entry, frame.width, frame.height, frame.clipped_boxes);
    ObjectId id = obj.id;
    if (!frame.objects.emplace(id, std::move(obj)).second) {
      throw IngestError(IngestError::Kind::DuplicateObjectId,
                        "duplicate object id " + std::to_string(id));
    }
  }
  return frame;
}

std::string serialize_frame(const Frame &frame) {
  ordered_json doc;
  doc["frame"] = frame.frame_number;
  doc["timestamp"] = frame.timestamp;
  doc["width"] = frame.width;
  doc["height"] = frame.height;
  doc["objects"] = ordered_json::array();
  for (const auto &[id, obj] : frame.objects) {
    ordered_json o;
    o["id"] = id;
    o["class"] = obj.class_label;
    o["prob"] = obj.confidence;
    o["bbox"] = {obj.bbox.xmin, obj.bbox.ymin, obj.bbox.xmax, obj.bbox.ymax};
    doc["objects"].push_back(std::move(o));
  }
  return doc.dump();
}

void check_successor(const Frame &prev, const Frame &next) {
  if (next.frame_number <= prev.frame_number) {
    throw IngestError(IngestError::Kind::NonMonotonicFrameNumber,
                      "NonMonotonicFrameNumber(" + std::to_string(prev.frame_number) + ", " +
                          std::to_string(next.frame_number) + ")");
  }
  if (next.timestamp < prev.timestamp) {
    throw IngestError(IngestError::Kind::NonMonotonicTimestamp,
                      "NonMonotonicTimestamp(" + json(prev.timestamp).dump() + ", " +
                          json(next.timestamp).dump() + ")");
  }
}

FrameReader::FrameReader(std::istream &in, IngestOptions options)
    : in_(in), options_(std::move(options)) {}

std::optional<Frame> FrameReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.find_first_not_of(" \t") == std::string::npos) {
      continue;
    }
    try {
      Frame frame = parse_frame(line, options_);
      if (last_) {
        check_successor(*last_, frame);
      }
      last_ = frame;
      return frame;
    } catch (const IngestError &e) {
      throw IngestError(e.kind(), "line " + std::to_string(line_) + ": " + e.what());
    }
  }
  return std::nullopt;
}

TraceStream read_stream(std::istream &in, const IngestOptions &options) {
  FrameReader reader(in, options);
  TraceStream out;
  while (auto frame = reader.next()) {
    out.push_back(std::move(*frame));
  }
  return out;
}

} // namespace percemon
