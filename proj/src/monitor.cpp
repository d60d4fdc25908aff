#include "percemon/monitor.hpp"

#include <chrono>
#include "json.hpp"

namespace percemon {

std::string verdict_json(const Verdict &v) {
  nlohmann::ordered_json j;
  j["frame"] = v.frame_number;
  j["timestamp"] = v.timestamp;
  j["verdict"] = v.value;
  j["eval_time_ns"] = v.eval_time_ns;
  return j.dump();
}

namespace {

std::size_t resolve_bound(const char *name, std::optional<std::size_t> inferred,
                          std::optional<std::size_t> override_value) {
  if (!override_value) {
    if (!inferred) {
      throw ConfigError(std::string(name) + " is unbounded, supply max_history/max_horizon");
    }
    return *inferred;
  }
  if (inferred && *override_value < *inferred) {
    throw ConfigError(std::string("max_") + name + " " + std::to_string(*override_value) +
                      " is below the inferred " + name + " " + std::to_string(*inferred));
  }
  return *override_value;
}

FormulaRef checked_core(const FormulaRef &spec) {
  auto errors = check_bindings(*spec);
  if (!errors.empty()) {
    std::string msg;
    for (const auto &e : errors) {
      msg += (msg.empty() ? "" : "\n") + describe(e);
    }
    throw std::invalid_argument(msg);
  }
  return desugar(spec);
}

} // namespace

Monitor::Monitor(const FormulaRef &spec, const MonitorConfig &config)
    : spec_(checked_core(spec)) {
  inferred_ = compute_bounds(spec_);
  history_ = resolve_bound("history", inferred_.history, config.max_history);
  horizon_ = resolve_bound("horizon", inferred_.horizon, config.max_horizon);
}

std::vector<Verdict> Monitor::push_frame(Frame frame) {
  if (flushed_) {
    throw MonitorError("push_frame after flush");
  }
  if (!buffer_.empty()) {
    check_successor(buffer_.back(), frame);
  }
  buffer_.push_back(std::move(frame));
  if (buffer_.size() > capacity()) {
    buffer_.erase(buffer_.begin());
    ++first_index_;
  }
  std::uint64_t newest = first_index_ + buffer_.size() - 1;
  std::vector<Verdict> out;
  while (next_verdict_ + horizon_ <= newest) {
    out.push_back(emit(next_verdict_++));
  }
  return out;
}

std::vector<Verdict> Monitor::flush() {
  flushed_ = true;
  std::vector<Verdict> out;
  std::uint64_t end = first_index_ + buffer_.size();
  while (next_verdict_ < end) {
    out.push_back(emit(next_verdict_++));
  }
  return out;
}

Verdict Monitor::emit(std::uint64_t index) {
  // Window [index - history, newest]; anything outside it is treated as
  // lying beyond the ends of the trace.
  std::uint64_t lo = index >= history_ ? index - history_ : 0;
  if (lo < first_index_ || index >= first_index_ + buffer_.size()) {
    throw std::logic_error("monitor buffer does not cover the evaluation window");
  }
  std::span<const Frame> window(buffer_.data() + (lo - first_index_),
                                buffer_.size() - (lo - first_index_));
  const Frame &frame = window[index - lo];

  auto start = std::chrono::steady_clock::now();
  bool value = eval(*spec_, {window, static_cast<std::size_t>(index - lo)}, {}, &stats_);
  auto elapsed = std::chrono::steady_clock::now() - start;

  return {frame.frame_number, frame.timestamp, value,
          static_cast<std::uint64_t>(
              std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed).count())};
}

} // namespace percemon
