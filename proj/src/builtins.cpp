#include "percemon/builtins.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "percemon/parser.hpp"

namespace percemon {

namespace {

constexpr const char *kPrefix = "builtin:";

// Relevant objects (confident, away from the image border) must have been
// detected confidently in the previous frame too.
constexpr const char *kPhi1 =
    "forall {id1} @ pin (_, f) {\n"
    "  ((prob(id1) > $high_prob) && (lon(id1, tm) > $c1) && (lon(id1, bm) < $c2)\n"
    "   && (lat(id1, lm) > $c3) && (lat(id1, rm) < $c4) && prev true)\n"
    "  -> prev (exists {id2} @ ((id1 == id2) && (prob(id2) > $exists_prob)))\n"
    "}\n";

// Each object's box must overlap its box in the previous frame.
constexpr const char *kPhi2 =
    "forall {id1} @ pin (_, f1) {\n"
    "  prev true -> prev (exists {id2} @ pin (_, f2) {\n"
    "    id1 == id2 -> area(bbox(id1) & bbox(id2)) / area(bbox(id1)) >= $overlap\n"
    "  })\n"
    "}\n";

std::string substitute(std::string text, const SpecParams &params) {
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] != '$') {
      out += text[i++];
      continue;
    }
    std::size_t end = i + 1;
    while (end < text.size() && (std::isalnum(static_cast<unsigned char>(text[end])) ||
                                 text[end] == '_')) {
      ++end;
    }
    out += format_number(params.at(text.substr(i + 1, end - i - 1)));
    i = end;
  }
  return out;
}

std::string probe_text(unsigned k) {
  std::string vars;
  for (unsigned j = 1; j <= k; ++j) {
    vars += (j > 1 ? ", q" : "q") + std::to_string(j);
  }
  // Never satisfied, so every assignment is visited.
  return "exists {" + vars + "} @ (q1 != q1)\n";
}

} // namespace

SpecParams default_params(double width, double height) {
  return {{"c1", 0.05 * height}, {"c2", 0.95 * height},     {"c3", 0.05 * width},
          {"c4", 0.95 * width},  {"high_prob", 0.8},        {"exists_prob", 0.7},
          {"overlap", 0.3}};
}

bool is_builtin(const std::string &ref) { return ref.rfind(kPrefix, 0) == 0; }

std::string builtin_text(const std::string &ref, const SpecParams &overrides, double width,
                         double height) {
  SpecParams params = default_params(width, height);
  for (const auto &[name, value] : overrides) {
    auto it = params.find(name);
    if (it == params.end()) {
      throw SpecError("unknown parameter '" + name + "'");
    }
    it->second = value;
  }
  std::string name = ref.substr(std::char_traits<char>::length(kPrefix));
  if (name == "phi1") {
    return substitute(kPhi1, params);
  }
  if (name == "phi2") {
    return substitute(kPhi2, params);
  }
  if (name.rfind("probe", 0) == 0) {
    unsigned k = 0;
    const char *first = name.data() + 5;
    const char *last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec == std::errc() && ptr == last && first != last && k >= 1) {
      return probe_text(k);
    }
  }
  throw SpecError("unknown builtin spec '" + ref + "'");
}

std::string load_spec_text(const std::string &ref, const SpecParams &overrides, double width,
                           double height) {
  if (is_builtin(ref)) {
    return builtin_text(ref, overrides, width, height);
  }
  if (!overrides.empty()) {
    throw SpecError("--param only applies to builtin specs");
  }
  std::ifstream in(ref);
  if (!in) {
    throw SpecError("cannot read spec file '" + ref + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace percemon
