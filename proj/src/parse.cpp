#include "stackres/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace stackres {

namespace {

constexpr unsigned kMaxExponent = 100000;

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

// Replaces the Unicode minus sign with '-' and returns a byte-to-column map.
std::string normalize_text(std::string_view text, std::vector<std::size_t>& columns) {
  std::string out;
  std::size_t col = 0;
  for (std::size_t i = 0; i < text.size(); ++col) {
    if (text.substr(i, 3) == "\xE2\x88\x92") {
      out += '-';
      columns.push_back(col);
      i += 3;
      continue;
    }
    unsigned char c = static_cast<unsigned char>(text[i]);
    std::size_t len = c < 0x80 ? 1 : c >= 0xF0 ? 4 : c >= 0xE0 ? 3 : c >= 0xC0 ? 2 : 1;
    for (std::size_t k = 0; k < len && i < text.size(); ++k, ++i) {
      out += text[i];
      columns.push_back(col);
    }
  }
  columns.push_back(col);
  return out;
}

class Parser {
 public:
  Parser(std::string text, std::vector<std::size_t> columns, Field field, std::vector<std::string> vars)
      : text_(std::move(text)), columns_(std::move(columns)), field_(field), vars_(std::move(vars)) {
    generator_is_t_ = field_.degree() > 1 && std::find(vars_.begin(), vars_.end(), "t") == vars_.end();
  }

  MPoly parse() {
    MPoly result = expr();
    skip();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }
  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    throw ParseError(message, columns_[std::min(at, columns_.size() - 1)]);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly constant(const Scalar& c) const { return MPoly::constant(field_, vars_, c); }

  MPoly expr() {
    skip();
    MPoly acc(field_, vars_);
    bool first = true;
    while (true) {
      skip();
      bool negate = false;
      if (accept('+')) {
      } else if (accept('-')) {
        negate = true;
      } else if (!first) {
        break;
      }
      MPoly t = term();
      acc += negate ? -t : t;
      first = false;
      skip();
      if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) break;
    }
    return acc;
  }

  MPoly term() {
    MPoly acc = factor();
    while (true) {
      skip();
      if (accept('*')) {
        acc = acc * factor();
      } else if (pos_ < text_.size() && text_[pos_] == '/') {
        std::size_t at = pos_;
        ++pos_;
        MPoly d = factor();
        if (!d.is_constant()) fail_at("division by a non-constant", at);
        if (d.is_zero()) fail_at("division by zero", at);
        Scalar c = d.coefficient(Exponents{});
        acc = acc * c.inverse();
      } else {
        break;
      }
    }
    return acc;
  }

  MPoly factor() {
    skip();
    if (accept('-')) return -factor();
    MPoly base = primary();
    skip();
    if (accept('^')) {
      skip();
      std::size_t at = pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a non-negative integer exponent");
      unsigned long e = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        e = e * 10 + static_cast<unsigned long>(text_[pos_] - '0');
        if (e > kMaxExponent) fail_at("exponent too large", at);
        ++pos_;
      }
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  MPoly primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Integer n(text_.substr(start, pos_ - start));
      try {
        return constant(field_.from_rational(Rational(n)));
      } catch (const Error& e) {
        fail_at(e.what(), start);
      }
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      if (name == "t" && generator_is_t_) return constant(field_.generator());
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) fail_at("unknown variable '" + name + "'", start);
      return MPoly::variable(field_, vars_, static_cast<std::size_t>(it - vars_.begin()));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string text_;
  std::vector<std::size_t> columns_;
  Field field_;
  std::vector<std::string> vars_;
  bool generator_is_t_ = false;
  std::size_t pos_ = 0;
};

// Primed names (chart coordinates such as x1') rank with their base name.
int rank(std::string name) {
  static const std::vector<std::string> order = {"x1", "x2", "z", "y", "x", "s", "u"};
  while (!name.empty() && name.back() == '\'') name.pop_back();
  auto it = std::find(order.begin(), order.end(), name);
  return it == order.end() ? static_cast<int>(order.size()) : static_cast<int>(it - order.begin());
}

}  // namespace

std::vector<std::string> infer_variables(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  if (names.empty()) names = {"x", "y"};
  if (names.size() == 1) {
    static const std::map<std::string, std::string> companions = {
        {"x", "y"}, {"y", "x"}, {"z", "x"}, {"x1", "x2"}, {"x2", "x1"}, {"s", "u"}, {"u", "s"}};
    auto it = companions.find(names[0]);
    names.push_back(it != companions.end() ? it->second : names[0] == "y" ? "x" : "y");
  }
  std::stable_sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
    int ra = rank(a), rb = rank(b);
    return ra != rb ? ra < rb : a < b;
  });
  if (names.size() > kMaxVariables) throw ParseError("more than 4 variables", 0);
  return names;
}

std::vector<std::string> split_variable_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  for (const auto& v : out)
    if (!ident_start(v[0]) || !std::all_of(v.begin(), v.end(), ident_char)) throw ParseError("bad variable name '" + v + "'", 0);
  return out;
}

MPoly parse_polynomial(std::string_view text, Field field, const std::vector<std::string>& variables, bool allow_zero) {
  std::vector<std::size_t> columns;
  std::string normalized = normalize_text(text, columns);
  std::vector<std::string> vars = variables;
  if (vars.empty()) {
    std::vector<std::string> found;
    for (std::size_t i = 0; i < normalized.size();) {
      if (ident_start(normalized[i]) && (i == 0 || !ident_char(normalized[i - 1]))) {
        std::size_t start = i;
        while (i < normalized.size() && ident_char(normalized[i])) ++i;
        std::string name = normalized.substr(start, i - start);
        if (!(name == "t" && field.degree() > 1)) found.push_back(name);
      } else {
        ++i;
      }
    }
    vars = infer_variables(found);
  }
  if (vars.size() > kMaxVariables) throw ParseError("more than 4 variables", 0);
  MPoly f = Parser(normalized, columns, field, vars).parse();
  if (f.is_zero() && !allow_zero) throw ParseError("the zero polynomial does not define a curve", 0);
  return f;
}

}  // namespace stackres
