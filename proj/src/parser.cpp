#include "percemon/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <set>

namespace percemon {

ParseFailure::ParseFailure(std::vector<ParseError> errors)
    : std::runtime_error([&] {
        std::string msg;
        for (const auto &e : errors) {
          if (!msg.empty()) {
            msg += '\n';
          }
          msg += std::to_string(e.loc.line) + ":" + std::to_string(e.loc.column) + ": " +
                 e.message;
        }
        return msg;
      }()),
      errors_(std::move(errors)) {}

namespace {

enum class Tok { Ident, Number, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceLoc loc;
};

const std::set<std::string> &keywords() {
  static const std::set<std::string> words = {
      "true",  "not",      "and",    "or",   "implies", "next",  "prev",     "until",
      "since", "always",   "eventually", "once", "holds", "exists", "forall", "pin",
      "class", "prob",     "area",   "lat",  "lon",     "dist",  "nonempty", "bbox",
      "universe", "empty", "C_TIME", "C_FRAME", "_"};
  return words;
}

class Lexer {
public:
  explicit Lexer(const std::string &text) : text_(text) {}

  std::vector<Token> run(std::vector<ParseError> &errors) {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      SourceLoc loc{line_, col_};
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", loc});
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          advance();
        }
        out.push_back({Tok::Ident, text_.substr(start, pos_ - start), loc});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back({Tok::Number, lex_number(), loc});
      } else if (c == '"') {
        if (auto s = lex_string(errors, loc)) {
          out.push_back({Tok::String, *s, loc});
        }
      } else if (auto p = lex_punct()) {
        out.push_back({Tok::Punct, *p, loc});
      } else {
        errors.push_back({loc, std::string("unexpected character '") + c + "'"});
        advance();
      }
    }
  }

private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          advance();
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  bool digit_at(std::size_t i) const {
    return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
  }

  std::string lex_number() {
    std::size_t start = pos_;
    while (digit_at(pos_)) {
      advance();
    }
    if (pos_ < text_.size() && text_[pos_] == '.' && digit_at(pos_ + 1)) {
      advance();
      while (digit_at(pos_)) {
        advance();
      }
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) {
        ++look;
      }
      if (digit_at(look)) {
        while (pos_ < look) {
          advance();
        }
        while (digit_at(pos_)) {
          advance();
        }
      }
    }
    return text_.substr(start, pos_ - start);
  }

  std::optional<std::string> lex_string(std::vector<ParseError> &errors, SourceLoc loc) {
    advance(); // opening quote
    std::string value;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '"') {
        advance();
        return value;
      }
      if (c == '\n') {
        break;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= text_.size()) {
          break;
        }
        char e = text_[pos_];
        switch (e) {
        case '"':
        case '\\':
          value += e;
          break;
        case 'n':
          value += '\n';
          break;
        case 't':
          value += '\t';
          break;
        default:
          errors.push_back({{line_, col_}, std::string("unknown escape '\\") + e + "'"});
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    errors.push_back({loc, "unterminated string literal"});
    return std::nullopt;
  }

  std::optional<std::string> lex_punct() {
    static const char *two[] = {"->", "&&", "||", "<=", ">=", "==", "!="};
    for (const char *p : two) {
      if (text_.compare(pos_, 2, p) == 0) {
        advance();
        advance();
        return std::string(p);
      }
    }
    static const std::string one = "(){},@!~|&<>-*/";
    if (one.find(text_[pos_]) != std::string::npos) {
      std::string s(1, text_[pos_]);
      advance();
      return s;
    }
    return std::nullopt;
  }

  const std::string &text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  FormulaRef run() {
    FormulaRef f = implication();
    if (peek().kind != Tok::End) {
      fail(peek(), "unexpected " + describe(peek()) + " after end of formula");
    }
    return f;
  }

private:
  // -- token helpers ------------------------------------------------------

  const Token &peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  const Token &take() {
    const Token &t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) {
      ++pos_;
    }
    return t;
  }

  static bool is(const Token &t, Tok kind, const char *text) {
    return t.kind == kind && t.text == text;
  }
  bool at_punct(const char *p, std::size_t ahead = 0) const {
    return is(peek(ahead), Tok::Punct, p);
  }
  bool at_word(const char *w, std::size_t ahead = 0) const {
    return is(peek(ahead), Tok::Ident, w);
  }

  static std::string describe(const Token &t) {
    switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::String:
      return "string \"" + t.text + "\"";
    default:
      return "'" + t.text + "'";
    }
  }

  [[noreturn]] void fail(const Token &at, const std::string &message) const {
    throw ParseFailure({{at.loc, message}});
  }

  void expect_punct(const char *p) {
    if (!at_punct(p)) {
      fail(peek(), std::string("expected '") + p + "' but found " + describe(peek()));
    }
    take();
  }

  void expect_word(const char *w) {
    if (!at_word(w)) {
      fail(peek(), std::string("expected '") + w + "' but found " + describe(peek()));
    }
    take();
  }

  VarRef variable() {
    const Token &t = peek();
    if (t.kind != Tok::Ident) {
      fail(t, "expected a variable name but found " + describe(t));
    }
    if (keywords().count(t.text)) {
      fail(t, "keyword '" + t.text + "' cannot be used as a variable name");
    }
    take();
    return VarRef{t.text, t.loc};
  }

  // -- formulas -------------------------------------------------------------

  FormulaRef implication() {
    FormulaRef lhs = disjunction();
    if (at_punct("->") || at_word("implies")) {
      take();
      return make(fm::Implies{lhs, implication()});
    }
    return lhs;
  }

  FormulaRef disjunction() {
    FormulaRef lhs = conjunction();
    while (at_punct("||") || at_word("or")) {
      take();
      lhs = make(fm::Or{lhs, conjunction()});
    }
    return lhs;
  }

  FormulaRef conjunction() {
    FormulaRef lhs = temporal();
    while (at_punct("&&") || at_word("and")) {
      take();
      lhs = make(fm::And{lhs, temporal()});
    }
    return lhs;
  }

  FormulaRef temporal() {
    FormulaRef lhs = unary();
    if (at_word("until")) {
      take();
      return make(fm::Until{lhs, temporal()});
    }
    if (at_word("since")) {
      take();
      return make(fm::Since{lhs, temporal()});
    }
    return lhs;
  }

  FormulaRef unary() {
    const Token &t = peek();
    if (at_punct("!") || at_word("not")) {
      take();
      return make(fm::Not{unary()});
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "next") {
        take();
        return make(fm::Next{unary()});
      }
      if (t.text == "prev") {
        take();
        return make(fm::Prev{unary()});
      }
      if (t.text == "always") {
        take();
        return make(fm::Always{unary()});
      }
      if (t.text == "eventually") {
        take();
        return make(fm::Eventually{unary()});
      }
      if (t.text == "once") {
        take();
        return make(fm::Once{unary()});
      }
      if (t.text == "holds") {
        take();
        return make(fm::Holds{unary()});
      }
      if (t.text == "exists" || t.text == "forall") {
        return quantifier();
      }
      if (t.text == "pin") {
        return freeze();
      }
    }
    return primary();
  }

  FormulaRef quantifier() {
    bool universal = take().text == "forall";
    expect_punct("{");
    std::vector<VarRef> vars{variable()};
    while (at_punct(",")) {
      take();
      vars.push_back(variable());
    }
    expect_punct("}");
    expect_punct("@");
    FormulaRef body = implication();
    if (universal) {
      return make(fm::Forall{std::move(vars), body});
    }
    return make(fm::Exists{std::move(vars), body});
  }

  std::optional<VarRef> pin_slot() {
    if (at_word("_")) {
      take();
      return std::nullopt;
    }
    return variable();
  }

  FormulaRef freeze() {
    take(); // pin
    expect_punct("(");
    auto time_var = pin_slot();
    expect_punct(",");
    auto frame_var = pin_slot();
    expect_punct(")");
    expect_punct("{");
    FormulaRef body = implication();
    expect_punct("}");
    return make(fm::Freeze{time_var, frame_var, body});
  }

  FormulaRef primary() {
    const Token &t = peek();
    if (at_punct("(")) {
      take();
      FormulaRef f = implication();
      expect_punct(")");
      return f;
    }
    if (t.kind != Tok::Ident) {
      fail(t, "expected a formula but found " + describe(t));
    }
    const std::string &w = t.text;
    if (w == "true") {
      take();
      return truth();
    }
    if (w == "C_TIME" || w == "C_FRAME") {
      take();
      expect_punct("-");
      VarRef v = variable();
      return clock_constraint(w == "C_TIME", ClockOrder::CurrentMinusPinned, v);
    }
    if (w == "class") {
      return class_atom();
    }
    if (w == "prob") {
      return prob_atom();
    }
    if (w == "area") {
      return area_atom();
    }
    if (w == "lat" || w == "lon") {
      return offset_atom();
    }
    if (w == "dist") {
      return dist_atom();
    }
    if (w == "nonempty") {
      take();
      expect_punct("(");
      SpatialRef term = spatial();
      expect_punct(")");
      return make(fm::SpatialExists{term});
    }
    if (keywords().count(w)) {
      fail(t, "unexpected keyword '" + w + "'");
    }
    if (at_punct("(", 1)) {
      fail(t, "unknown keyword '" + w + "'");
    }
    VarRef v = variable();
    if (at_punct("-")) {
      take();
      if (at_word("C_TIME") || at_word("C_FRAME")) {
        bool time = take().text == "C_TIME";
        return clock_constraint(time, ClockOrder::PinnedMinusCurrent, v);
      }
      fail(peek(), "expected 'C_TIME' or 'C_FRAME' after '-'");
    }
    if (at_punct("==") || at_punct("!=")) {
      bool eq = take().text == "==";
      VarRef rhs = variable();
      if (eq) {
        return make(fm::IdEq{v, rhs});
      }
      return make(fm::IdNeq{v, rhs});
    }
    fail(peek(), "expected '==', '!=' or '-' after variable '" + v.name + "'");
  }

  FormulaRef clock_constraint(bool time, ClockOrder order, VarRef v) {
    Cmp cmp = comparison(true);
    if (time) {
      return make(fm::TimeConstraint{v, order, cmp, real()});
    }
    return make(fm::FrameConstraint{v, order, cmp, integer()});
  }

  Cmp comparison(bool allow_equality) {
    const Token &t = peek();
    if (t.kind == Tok::Punct) {
      static const std::pair<const char *, Cmp> table[] = {
          {"<", Cmp::Lt}, {"<=", Cmp::Le}, {">", Cmp::Gt},
          {">=", Cmp::Ge}, {"==", Cmp::Eq}, {"!=", Cmp::Ne}};
      for (auto [text, cmp] : table) {
        if (t.text == text) {
          if (!allow_equality && (cmp == Cmp::Eq || cmp == Cmp::Ne)) {
            fail(t, "'" + t.text + "' is not allowed here; use <, <=, > or >=");
          }
          take();
          return cmp;
        }
      }
    }
    fail(t, "expected a comparison operator but found " + describe(t));
  }

  std::string signed_number_text() {
    std::string text;
    if (at_punct("-")) {
      take();
      text = "-";
    }
    const Token &t = peek();
    if (t.kind != Tok::Number) {
      fail(t, "expected a number but found " + describe(t));
    }
    take();
    return text + t.text;
  }

  double real() {
    const Token &at = peek();
    std::string text = signed_number_text();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      fail(at, "invalid number '" + text + "'");
    }
    return value;
  }

  std::int64_t integer() {
    const Token &at = peek();
    std::string text = signed_number_text();
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      fail(at, "frame constraints need an integer bound, found '" + text + "'");
    }
    return value;
  }

  VarRef call1(const char *fn) {
    expect_word(fn);
    expect_punct("(");
    VarRef v = variable();
    expect_punct(")");
    return v;
  }

  RefPoint ref_point() {
    const Token &t = peek();
    static const std::pair<const char *, RefPoint> table[] = {
        {"lm", RefPoint::LM}, {"rm", RefPoint::RM}, {"tm", RefPoint::TM},
        {"bm", RefPoint::BM}, {"ct", RefPoint::CT}};
    if (t.kind == Tok::Ident) {
      for (auto [name, crt] : table) {
        if (t.text == name) {
          take();
          return crt;
        }
      }
    }
    fail(t, "expected a reference point (lm, rm, tm, bm, ct) but found " + describe(t));
  }

  FormulaRef class_atom() {
    VarRef lhs = call1("class");
    if (!at_punct("==") && !at_punct("!=")) {
      fail(peek(), "class comparisons use '==' or '!='");
    }
    bool eq = take().text == "==";
    FormulaRef atom = [&] {
      if (peek().kind == Tok::String) {
        return make(fm::ClassEqConst{lhs, take().text});
      }
      if (at_word("class")) {
        return make(fm::ClassEqVar{lhs, call1("class")});
      }
      fail(peek(), "expected a string or class(...) but found " + describe(peek()));
    }();
    return eq ? atom : make(fm::Not{atom});
  }

  // Shared shape of the ratio-capable atoms:
  //   f(a) / f(b) ~ r     f(a) ~ r     f(a) ~ r * f(b)
  template <class Operand, class ParseOperand, class MakeConst, class MakeRatio>
  FormulaRef ratio_atom(ParseOperand parse_operand, MakeConst make_const, MakeRatio make_ratio) {
    Operand lhs = parse_operand();
    if (at_punct("/")) {
      take();
      Operand rhs = parse_operand();
      Cmp cmp = comparison(false);
      return make_ratio(lhs, cmp, real(), rhs);
    }
    Cmp cmp = comparison(false);
    double r = real();
    if (at_punct("*")) {
      take();
      return make_ratio(lhs, cmp, r, parse_operand());
    }
    return make_const(lhs, cmp, r);
  }

  FormulaRef prob_atom() {
    return ratio_atom<VarRef>(
        [&] { return call1("prob"); },
        [](VarRef v, Cmp c, double r) { return make(fm::ProbCmpConst{v, c, r}); },
        [](VarRef a, Cmp c, double r, VarRef b) { return make(fm::ProbCmpRatio{a, c, r, b}); });
  }

  SpatialRef area_operand() {
    expect_word("area");
    expect_punct("(");
    SpatialRef t = spatial();
    expect_punct(")");
    return t;
  }

  FormulaRef area_atom() {
    return ratio_atom<SpatialRef>(
        [&] { return area_operand(); },
        [](SpatialRef t, Cmp c, double r) { return make(fm::AreaCmpConst{t, c, r}); },
        [](SpatialRef a, Cmp c, double r, SpatialRef b) {
          return make(fm::AreaCmpRatio{a, c, r, b});
        });
  }

  OffsetTerm offset_operand() {
    const Token &t = peek();
    Axis axis;
    if (at_word("lat")) {
      axis = Axis::Lat;
    } else if (at_word("lon")) {
      axis = Axis::Lon;
    } else {
      fail(t, "expected lat(...) or lon(...) but found " + describe(t));
    }
    take();
    expect_punct("(");
    VarRef v = variable();
    expect_punct(",");
    RefPoint crt = ref_point();
    expect_punct(")");
    return OffsetTerm{axis, v, crt};
  }

  FormulaRef offset_atom() {
    return ratio_atom<OffsetTerm>(
        [&] { return offset_operand(); },
        [](OffsetTerm t, Cmp c, double r) { return make(fm::OffsetCmpConst{t, c, r}); },
        [](OffsetTerm a, Cmp c, double r, OffsetTerm b) {
          return make(fm::OffsetCmpRatio{a, c, r, b});
        });
  }

  FormulaRef dist_atom() {
    take();
    expect_punct("(");
    VarRef a = variable();
    expect_punct(",");
    RefPoint ca = ref_point();
    expect_punct(",");
    VarRef b = variable();
    expect_punct(",");
    RefPoint cb = ref_point();
    expect_punct(")");
    Cmp cmp = comparison(false);
    return make(fm::EDCmp{a, ca, b, cb, cmp, real()});
  }

  // -- spatial terms ----------------------------------------------------------

  SpatialRef spatial() {
    SpatialRef lhs = spatial_term();
    while (at_punct("|")) {
      take();
      lhs = make_spatial(sp::Union{lhs, spatial_term()});
    }
    return lhs;
  }

  SpatialRef spatial_term() {
    SpatialRef lhs = spatial_factor();
    while (at_punct("&")) {
      take();
      lhs = make_spatial(sp::Intersection{lhs, spatial_factor()});
    }
    return lhs;
  }

  SpatialRef spatial_factor() {
    const Token &t = peek();
    if (at_punct("~")) {
      take();
      return make_spatial(sp::Complement{spatial_factor()});
    }
    if (at_punct("(")) {
      take();
      SpatialRef inner = spatial();
      expect_punct(")");
      return inner;
    }
    if (at_word("empty")) {
      take();
      return make_spatial(sp::Empty{});
    }
    if (at_word("universe")) {
      take();
      return make_spatial(sp::Universe{});
    }
    if (at_word("bbox")) {
      return make_spatial(sp::BBoxOf{call1("bbox")});
    }
    fail(t, "expected a spatial term but found " + describe(t));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

} // namespace

FormulaRef parse(const std::string &text) {
  std::vector<ParseError> errors;
  std::vector<Token> tokens = Lexer(text).run(errors);
  if (!errors.empty()) {
    throw ParseFailure(std::move(errors));
  }
  return Parser(std::move(tokens)).run();
}

} // namespace percemon
