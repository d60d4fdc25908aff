#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "percemon/analysis.hpp"
#include "percemon/ast.hpp"
#include "percemon/eval.hpp"
#include "percemon/trace.hpp"

namespace percemon {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Misuse of a monitor, e.g. pushing after flush.
class MonitorError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct MonitorConfig {
  /// Overrides for the inferred bounds. Required when inference fails; must
  /// not be smaller than an inferred finite bound.
  std::optional<std::size_t> max_history;
  std::optional<std::size_t> max_horizon;
};

struct Verdict {
  std::uint64_t frame_number = 0;
  double timestamp = 0.0;
  bool value = false;
  std::uint64_t eval_time_ns = 0;
};

/// `{"frame":..,"timestamp":..,"verdict":..,"eval_time_ns":..}`
std::string verdict_json(const Verdict &v);

/// Online monitor. Buffers history + horizon + 1 frames and emits the verdict
/// for frame j as soon as frame j + horizon arrives. Nothing is emitted for a
/// frame until then.
class Monitor {
public:
  /// Throws ConfigError for unbounded specs without overrides, and
  /// std::invalid_argument (with every diagnostic) when binding checks fail.
  Monitor(const FormulaRef &spec, const MonitorConfig &config = {});

  std::vector<Verdict> push_frame(Frame frame);
  std::vector<Verdict> flush();

  std::size_t history() const { return history_; }
  std::size_t horizon() const { return horizon_; }
  std::size_t capacity() const { return history_ + horizon_ + 1; }
  const FrameBounds &inferred_bounds() const { return inferred_; }
  std::size_t buffered() const { return buffer_.size(); }
  const EvalStats &stats() const { return stats_; }

private:
  Verdict emit(std::uint64_t index);

  FormulaRef spec_;
  FrameBounds inferred_;
  std::size_t history_ = 0;
  std::size_t horizon_ = 0;

  std::vector<Frame> buffer_;
  std::uint64_t first_index_ = 0; // stream index of buffer_.front()
  std::uint64_t next_verdict_ = 0;
  bool flushed_ = false;
  EvalStats stats_;
};

} // namespace percemon
