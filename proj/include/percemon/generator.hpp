#pragma once

#include <cstdint>
#include <vector>

#include "percemon/trace.hpp"

namespace percemon {

struct ScheduledFault {
  enum class Kind { Drop, Jump, ConfDip };

  Kind kind;
  std::size_t frame;
  ObjectId object;
};

/// Synthetic detector output: `objects` tracks (ids 1..objects) doing a slow
/// integer random walk inside the central 80% of the image, with confidences
/// in [0.85, 0.99]. From frame 1 on, each track independently suffers
///   drop     missing from this frame only
///   jump     teleports to a disjoint box and keeps walking from there
///   conf dip confidence in [0.30, 0.70) for this frame only
/// with the given per-frame probabilities. `scheduled` faults are applied in
/// addition to the random ones.
struct GenConfig {
  std::size_t frames = 100;
  std::size_t objects = 3;
  double drop_prob = 0.0;
  double jump_prob = 0.0;
  double conf_dip_prob = 0.0;
  std::uint64_t seed = 0;
  double width = 800.0;
  double height = 600.0;
  std::vector<ScheduledFault> scheduled;
};

/// Throws std::invalid_argument for probabilities outside [0, 1] or an
/// extent too small to hold the boxes.
void validate(const GenConfig &config);

/// Deterministic in `config`, including across platforms.
TraceStream generate(const GenConfig &config);

} // namespace percemon
