#include "percemon/generator.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>

namespace percemon {

namespace {

// Distributions in <random> are implementation-defined, so derive everything
// from raw engine output.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

private:
  std::mt19937_64 engine_;
};

constexpr std::array<const char *, 3> kClasses = {"car", "pedestrian", "truck"};

struct Track {
  ObjectId id;
  std::string label;
  std::int64_t x, y, w, h;
};

struct Area {
  std::int64_t xlo, ylo, xhi, yhi; // allowed range for the top-left corner
};

Area walk_area(const GenConfig &c, const Track &t) {
  auto xlo = static_cast<std::int64_t>(c.width * 0.1);
  auto ylo = static_cast<std::int64_t>(c.height * 0.1);
  auto xhi = static_cast<std::int64_t>(c.width * 0.9) - t.w;
  auto yhi = static_cast<std::int64_t>(c.height * 0.9) - t.h;
  return {xlo, ylo, xhi, yhi};
}

bool disjoint(const Track &a, std::int64_t x, std::int64_t y) {
  return x + a.w <= a.x || a.x + a.w <= x || y + a.h <= a.y || a.y + a.h <= y;
}

void teleport(const GenConfig &c, Track &t, Rng &rng) {
  Area a = walk_area(c, t);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::int64_t x = rng.between(a.xlo, a.xhi);
    std::int64_t y = rng.between(a.ylo, a.yhi);
    if (disjoint(t, x, y)) {
      t.x = x;
      t.y = y;
      return;
    }
  }
  // Deterministic fallback: the far side of the walk area.
  t.x = t.x - a.xlo < a.xhi - t.x ? a.xhi : a.xlo;
}

double confidence(Rng &rng) { return static_cast<double>(rng.between(85, 99)) / 100.0; }

bool scheduled(const GenConfig &c, ScheduledFault::Kind kind, std::size_t frame, ObjectId id) {
  return std::any_of(c.scheduled.begin(), c.scheduled.end(), [&](const ScheduledFault &f) {
    return f.kind == kind && f.frame == frame && f.object == id;
  });
}

} // namespace

void validate(const GenConfig &c) {
  for (double p : {c.drop_prob, c.jump_prob, c.conf_dip_prob}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("fault probabilities must lie in [0, 1]");
    }
  }
  if (!(c.width >= 100.0 && c.height >= 100.0)) {
    throw std::invalid_argument("width and height must be at least 100");
  }
}

TraceStream generate(const GenConfig &c) {
  validate(c);
  Rng rng(c.seed);
  // Box sizes scale with the image so that two boxes always fit side by side.
  auto max_w = std::max<std::int64_t>(4, static_cast<std::int64_t>(c.width * 0.15));
  auto max_h = std::max<std::int64_t>(4, static_cast<std::int64_t>(c.height * 0.15));

  std::vector<Track> tracks;
  for (std::size_t k = 0; k < c.objects; ++k) {
    Track t{k + 1, kClasses[rng.between(0, kClasses.size() - 1)], 0, 0,
            rng.between(max_w / 2, max_w), rng.between(max_h / 2, max_h)};
    Area a = walk_area(c, t);
    t.x = rng.between(a.xlo, a.xhi);
    t.y = rng.between(a.ylo, a.yhi);
    tracks.push_back(std::move(t));
  }

  TraceStream out;
  out.reserve(c.frames);
  for (std::size_t i = 0; i < c.frames; ++i) {
    Frame frame;
    frame.frame_number = i;
    frame.timestamp = static_cast<double>(i) / 10.0;
    frame.width = c.width;
    frame.height = c.height;
    for (auto &t : tracks) {
      // Walk and fault draws are unconditional, so a probability change only
      // perturbs the trace after a jump (which draws a new position).
      std::int64_t dx = rng.between(-3, 3);
      std::int64_t dy = rng.between(-3, 3);
      double conf = confidence(rng);
      double u_drop = rng.unit();
      double u_jump = rng.unit();
      double u_dip = rng.unit();
      double dip = static_cast<double>(rng.between(30, 69)) / 100.0;

      using K = ScheduledFault::Kind;
      bool faults = i > 0;
      bool drop = faults && (u_drop < c.drop_prob || scheduled(c, K::Drop, i, t.id));
      bool jump = faults && (u_jump < c.jump_prob || scheduled(c, K::Jump, i, t.id));
      bool conf_dip = faults && (u_dip < c.conf_dip_prob || scheduled(c, K::ConfDip, i, t.id));

      if (i > 0) {
        Area a = walk_area(c, t);
        if (jump) {
          teleport(c, t, rng);
        } else {
          t.x = std::clamp(t.x + dx, a.xlo, a.xhi);
          t.y = std::clamp(t.y + dy, a.ylo, a.yhi);
        }
      }
      if (drop) {
        continue;
      }
      DetectedObject obj;
      obj.id = t.id;
      obj.class_label = t.label;
      obj.confidence = conf_dip ? dip : conf;
      obj.bbox = {static_cast<double>(t.x), static_cast<double>(t.y),
                  static_cast<double>(t.x + t.w), static_cast<double>(t.y + t.h)};
      frame.objects.emplace(t.id, std::move(obj));
    }
    out.push_back(std::move(frame));
  }
  return out;
}

} // namespace percemon
