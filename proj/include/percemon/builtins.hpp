#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace percemon {

class SpecError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using SpecParams = std::map<std::string, double>;

/// Defaults for the named constants of the builtin specs:
///   c1, c2      top/bottom margins, 5% and 95% of the frame height
///   c3, c4      left/right margins, 5% and 95% of the frame width
///   high_prob   0.8   confidence that makes an object "relevant"
///   exists_prob 0.7   confidence required in the previous frame
///   overlap     0.3   required overlap fraction between consecutive boxes
SpecParams default_params(double width, double height);

bool is_builtin(const std::string &ref);

/// Source text of `builtin:phi1`, `builtin:phi2` or `builtin:probeK` (K >= 1)
/// with `overrides` applied over the defaults. Unknown builtins or parameter
/// names throw SpecError.
std::string builtin_text(const std::string &ref, const SpecParams &overrides, double width,
                         double height);

/// Builtin text, or the contents of the file at `ref`.
std::string load_spec_text(const std::string &ref, const SpecParams &overrides, double width,
                           double height);

} // namespace percemon
