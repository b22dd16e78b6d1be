#include "stackres/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "modp.hpp"

namespace stackres {

namespace {

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 0;
    for (auto v : e) h = h * 1000003u ^ v;
    return h;
  }
};

using Accumulator = std::unordered_map<Exponents, Scalar, ExponentsHash>;

void accumulate(Accumulator& acc, const Exponents& e, const Scalar& c) {
  auto [it, inserted] = acc.try_emplace(e, c);
  if (!inserted) it->second += c;
}

std::vector<MPoly::Term> drain(Accumulator& acc) {
  std::vector<MPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (!c.is_zero()) terms.emplace_back(e, std::move(c));
  std::sort(terms.begin(), terms.end(), [](const MPoly::Term& a, const MPoly::Term& b) { return graded_lex_greater(a.first, b.first); });
  return terms;
}

std::string format_coefficient(const Scalar& c, bool& negative) {
  std::string s = c.to_string();
  negative = !s.empty() && s[0] == '-';
  if (negative) s.erase(0, 1);
  if (s.find('+') != std::string::npos) s = "(" + s + ")";
  return s;
}

}  // namespace

unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool graded_lex_greater(const Exponents& a, const Exponents& b) {
  const unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

MPoly::MPoly() : MPoly(Field(), {"x", "y"}) {}

MPoly::MPoly(Field field, std::vector<std::string> variables) : field_(field), vars_(std::move(variables)) {
  if (vars_.empty() || vars_.size() > kMaxVariables) throw Error("polynomials use between 1 and 4 variables");
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (std::size_t j = i + 1; j < vars_.size(); ++j)
      if (vars_[i] == vars_[j]) throw Error("duplicate variable name " + vars_[i]);
}

MPoly MPoly::constant(Field field, std::vector<std::string> variables, const Scalar& c) {
  return monomial(field, std::move(variables), Exponents{}, c);
}

MPoly MPoly::variable(Field field, std::vector<std::string> variables, std::size_t index) {
  Exponents e{};
  if (index >= variables.size()) throw Error("variable index out of range");
  e[index] = 1;
  return monomial(field, std::move(variables), e, field.one());
}

MPoly MPoly::monomial(Field field, std::vector<std::string> variables, const Exponents& e, const Scalar& c) {
  MPoly r(field, std::move(variables));
  if (!(c.field() == field)) throw Error("coefficient field mismatch");
  for (std::size_t i = r.nvars(); i < kMaxVariables; ++i)
    if (e[i] != 0) throw Error("exponent on a variable outside the ring");
  if (!c.is_zero()) r.terms_.emplace_back(e, c);
  return r;
}

MPoly MPoly::from_terms(Field field, std::vector<std::string> variables, std::vector<Term> terms) {
  MPoly r(field, std::move(variables));
  for (const auto& [e, c] : terms) {
    if (!(c.field() == field)) throw Error("coefficient field mismatch");
    for (std::size_t i = r.nvars(); i < kMaxVariables; ++i)
      if (e[i] != 0) throw Error("exponent on a variable outside the ring");
  }
  r.terms_ = std::move(terms);
  r.normalize();
  return r;
}

void MPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return graded_lex_greater(a.first, b.first); });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first) merged.back().second += t.second;
    else merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Term& t) { return t.second.is_zero(); });
  terms_ = std::move(merged);
}

std::size_t MPoly::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  throw Error("unknown variable " + name);
}

bool MPoly::has_variable(const std::string& name) const {
  return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].first) == 0); }

Scalar MPoly::coefficient(const Exponents& e) const {
  for (const auto& [x, c] : terms_)
    if (x == e) return c;
  return field_.zero();
}

const MPoly::Term& MPoly::leading_term() const {
  if (terms_.empty()) throw Error("zero polynomial has no leading term");
  return terms_.front();
}

unsigned MPoly::degree() const { return terms_.empty() ? 0 : total_degree(terms_.front().first); }

unsigned MPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first[var]);
  return d;
}

unsigned MPoly::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  unsigned d = terms_.front().first[var];
  for (const auto& t : terms_) d = std::min(d, t.first[var]);
  return d;
}

void MPoly::check_compatible(const MPoly& other) const {
  if (!(field_ == other.field_)) throw Error("field mismatch: " + field_.spec() + " vs " + other.field_.spec());
  if (vars_ != other.vars_) throw Error("variable mismatch between polynomials");
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& other) {
  check_compatible(other);
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && graded_lex_greater(a->first, b->first))) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || graded_lex_greater(b->first, a->first)) {
      out.push_back(*b++);
    } else {
      Scalar s = a->second + b->second;
      if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& other) { return *this += -other; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_compatible(b);
  MPoly r(a.field_, a.vars_);
  if (a.is_zero() || b.is_zero()) return r;
  Accumulator acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e;
      for (std::size_t i = 0; i < kMaxVariables; ++i) e[i] = ea[i] + eb[i];
      accumulate(acc, e, ca * cb);
    }
  r.terms_ = drain(acc);
  return r;
}

MPoly MPoly::operator*(const Scalar& c) const {
  MPoly r(field_, vars_);
  if (c.is_zero()) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.second *= c;
  return r;
}

MPoly MPoly::pow(unsigned k) const {
  MPoly result = constant(field_, vars_, field_.one());
  MPoly base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

bool operator==(const MPoly& a, const MPoly& b) {
  return a.field_ == b.field_ && a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

MPoly MPoly::derivative(std::size_t var) const {
  if (var >= nvars()) throw Error("variable index out of range");
  std::vector<Term> out;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Scalar d = c * field_.from_int(e[var]);
    if (d.is_zero()) continue;
    Exponents x = e;
    --x[var];
    out.emplace_back(x, d);
  }
  return from_terms(field_, vars_, std::move(out));
}

MPoly MPoly::evaluate_at(std::size_t var, const Scalar& value) const {
  if (var >= nvars()) throw Error("variable index out of range");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) {
    Exponents x = e;
    x[var] = 0;
    out.emplace_back(x, c * value.pow(std::uint64_t{e[var]}));
  }
  return from_terms(field_, vars_, std::move(out));
}

Scalar MPoly::evaluate(const std::vector<Scalar>& point) const {
  if (point.size() != nvars()) throw Error("point dimension does not match the ring");
  Scalar acc = field_.zero();
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < nvars(); ++i)
      if (e[i]) t *= point[i].pow(std::uint64_t{e[i]});
    acc += t;
  }
  return acc;
}

MPoly MPoly::substitute(const std::vector<MPoly>& images) const {
  if (images.size() != nvars()) throw Error("substitution needs one image per variable");
  const MPoly& ref = images.front();
  for (const auto& img : images) ref.check_compatible(img);
  if (!(ref.field_ == field_)) throw Error("substitution images live over a different field");
  MPoly result(ref.field_, ref.vars_);
  if (is_zero()) return result;

  const bool monomial_images = std::all_of(images.begin(), images.end(), [](const MPoly& m) { return m.size() == 1; });
  if (monomial_images) {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [e, c] : terms_) {
      Exponents x{};
      Scalar coeff = c;
      for (std::size_t i = 0; i < nvars(); ++i) {
        if (e[i] == 0) continue;
        const auto& [ie, ic] = images[i].terms_.front();
        for (std::size_t j = 0; j < kMaxVariables; ++j) x[j] += ie[j] * e[i];
        if (!ic.is_one()) coeff *= ic.pow(std::uint64_t{e[i]});
      }
      out.emplace_back(x, coeff);
    }
    return from_terms(ref.field_, ref.vars_, std::move(out));
  }

  std::vector<std::vector<MPoly>> powers(nvars());
  auto power = [&](std::size_t i, unsigned k) -> const MPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(ref.field_, ref.vars_, ref.field_.one()));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  Accumulator acc;
  for (const auto& [e, c] : terms_) {
    MPoly t = constant(ref.field_, ref.vars_, c);
    for (std::size_t i = 0; i < nvars(); ++i)
      if (e[i]) t = t * power(i, e[i]);
    for (const auto& [x, v] : t.terms_) accumulate(acc, x, v);
  }
  result.terms_ = drain(acc);
  return result;
}

MPoly MPoly::in_ring(const std::vector<std::string>& variables) const {
  MPoly r(field_, variables);
  std::vector<std::size_t> target(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) {
    auto it = std::find(variables.begin(), variables.end(), vars_[i]);
    if (it == variables.end()) {
      if (degree_in(i) > 0) throw Error("variable " + vars_[i] + " is missing from the target ring");
      target[i] = kMaxVariables;
    } else {
      target[i] = static_cast<std::size_t>(it - variables.begin());
    }
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) {
    Exponents x{};
    for (std::size_t i = 0; i < nvars(); ++i)
      if (target[i] < kMaxVariables) x[target[i]] = e[i];
    out.emplace_back(x, c);
  }
  return from_terms(field_, variables, std::move(out));
}

MPoly MPoly::rename(const std::vector<std::string>& variables) const {
  if (variables.size() != nvars()) throw Error("rename needs one name per variable");
  MPoly r(field_, variables);
  r.terms_ = terms_;
  return r;
}

MPoly MPoly::map_coefficients(const FieldEmbedding& embedding) const {
  if (!(embedding.source() == field_)) throw Error("embedding source does not match the polynomial field");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.emplace_back(e, embedding(c));
  return from_terms(embedding.target(), vars_, std::move(out));
}

MPoly MPoly::homogeneous_part(unsigned d) const {
  MPoly r(field_, vars_);
  for (const auto& t : terms_)
    if (total_degree(t.first) == d) r.terms_.push_back(t);
  return r;
}

UnivariatePoly MPoly::to_univariate(std::size_t var) const {
  std::vector<Scalar> c(degree_in(var) + 1, field_.zero());
  for (const auto& [e, v] : terms_) {
    for (std::size_t i = 0; i < nvars(); ++i)
      if (i != var && e[i] != 0) throw Error("polynomial is not univariate in " + vars_[var]);
    c[e[var]] = v;
  }
  return UnivariatePoly(field_, std::move(c));
}

MPoly MPoly::from_univariate(const UnivariatePoly& u, std::vector<std::string> variables, std::size_t var) {
  std::vector<Term> out;
  for (int k = 0; k <= u.degree(); ++k) {
    Exponents e{};
    e[var] = static_cast<std::uint32_t>(k);
    out.emplace_back(e, u.coefficient(k));
  }
  return from_terms(u.field(), std::move(variables), std::move(out));
}

MPoly MPoly::monic() const {
  if (is_zero()) return *this;
  return *this * terms_.front().second.inverse();
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    bool negative = false;
    std::string cs = format_coefficient(c, negative);
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    std::string mono;
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) out += cs;
    else if (cs == "1") out += mono;
    else out += cs + "*" + mono;
  }
  return out;
}

std::size_t MPoly::hash() const {
  std::size_t h = std::hash<const void*>()(&field_.descriptor());
  for (const auto& v : vars_) h = h * 31 + std::hash<std::string>()(v);
  for (const auto& [e, c] : terms_) h = h * 1000003u ^ (ExponentsHash()(e) + 17 * c.hash());
  return h;
}

unsigned order_at_origin(const MPoly& f) {
  if (f.is_zero()) throw Error("order of the zero polynomial is undefined");
  return total_degree(f.terms().back().first);
}

namespace {

std::int64_t dot(const Exponents& e, const WeightVector& v, std::size_t n) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n; ++i) s += static_cast<std::int64_t>(e[i]) * v[i];
  return s;
}

void check_weights(const MPoly& f, const WeightVector& v) {
  if (v.size() < f.nvars()) throw Error("weight vector shorter than the number of variables");
  for (std::size_t i = 0; i < f.nvars(); ++i)
    if (v[i] < 0) throw Error("weights must be non-negative");
}

}  // namespace

std::int64_t weighted_order(const MPoly& f, const WeightVector& v) {
  if (f.is_zero()) throw Error("weighted order of the zero polynomial is undefined");
  check_weights(f, v);
  std::int64_t best = dot(f.terms().front().first, v, f.nvars());
  for (const auto& t : f.terms()) best = std::min(best, dot(t.first, v, f.nvars()));
  return best;
}

MPoly weighted_initial(const MPoly& f, const WeightVector& v) {
  const std::int64_t order = weighted_order(f, v);
  std::vector<MPoly::Term> out;
  for (const auto& t : f.terms())
    if (dot(t.first, v, f.nvars()) == order) out.push_back(t);
  return MPoly::from_terms(f.field(), f.variables(), std::move(out));
}

MPoly initial_form(const MPoly& f) { return weighted_initial(f, WeightVector(f.nvars(), 1)); }

MPoly substitute(const MPoly& f, const std::map<std::string, MPoly>& images) {
  if (images.empty()) return f;
  const MPoly& ref = images.begin()->second;
  std::vector<MPoly> full;
  full.reserve(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    auto it = images.find(f.variables()[i]);
    if (it != images.end()) full.push_back(it->second);
    else full.push_back(MPoly::variable(ref.field(), ref.variables(), ref.index_of(f.variables()[i])));
  }
  for (const auto& [name, img] : images)
    if (!f.has_variable(name)) throw Error("substitution for unknown variable " + name);
  return f.substitute(full);
}

DividedOut divide_out_variables(const MPoly& f, const std::vector<std::string>& vars) {
  if (f.is_zero()) throw Error("cannot divide out variables from the zero polynomial");
  DividedOut r;
  Exponents shift{};
  for (const auto& name : vars) {
    std::size_t i = f.index_of(name);
    shift[i] = f.min_degree_in(i);
    r.exponents.push_back(shift[i]);
  }
  std::vector<MPoly::Term> out;
  for (const auto& [e, c] : f.terms()) {
    Exponents x = e;
    for (std::size_t i = 0; i < kMaxVariables; ++i) x[i] -= shift[i];
    out.emplace_back(x, c);
  }
  r.quotient = MPoly::from_terms(f.field(), f.variables(), std::move(out));
  return r;
}

MPoly translate(const MPoly& f, const std::vector<Scalar>& point) {
  if (point.size() != f.nvars()) throw Error("translation point dimension mismatch");
  std::vector<MPoly> images;
  bool trivial = true;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    if (!(point[i].field() == f.field())) throw Error("translation point lives over a different field");
    trivial = trivial && point[i].is_zero();
    images.push_back(MPoly::variable(f.field(), f.variables(), i) + MPoly::constant(f.field(), f.variables(), point[i]));
  }
  if (trivial) return f;
  return f.substitute(images);
}

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw Error("division by the zero polynomial");
  if (!(a.field() == b.field()) || a.variables() != b.variables()) throw Error("ring mismatch in division");
  MPoly r = a;
  std::vector<MPoly::Term> q;
  const auto& [lb, cb] = b.leading_term();
  const Scalar cb_inv = cb.inverse();
  while (!r.is_zero()) {
    const auto& [lr, cr] = r.leading_term();
    Exponents e{};
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (lr[i] < lb[i]) return std::nullopt;
      e[i] = lr[i] - lb[i];
    }
    Scalar c = cr * cb_inv;
    q.emplace_back(e, c);
    r -= b * MPoly::monomial(a.field(), a.variables(), e, c);
  }
  return MPoly::from_terms(a.field(), a.variables(), std::move(q));
}

namespace {

// Bivariate polynomial as a polynomial in y with coefficients in K[x].
using Dense = std::vector<UnivariatePoly>;

Dense to_dense(const MPoly& f, std::size_t xi, std::size_t yi) {
  Dense d(f.degree_in(yi) + 1, UnivariatePoly(f.field()));
  std::vector<std::vector<Scalar>> coeffs(d.size());
  for (const auto& [e, c] : f.terms()) {
    auto& row = coeffs[e[yi]];
    if (row.size() <= e[xi]) row.resize(e[xi] + 1, f.field().zero());
    row[e[xi]] = c;
  }
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = UnivariatePoly(f.field(), coeffs[k]);
  while (!d.empty() && d.back().is_zero()) d.pop_back();
  return d;
}

MPoly from_dense(const Dense& d, const MPoly& like, std::size_t xi, std::size_t yi) {
  std::vector<MPoly::Term> out;
  for (std::size_t k = 0; k < d.size(); ++k)
    for (int j = 0; j <= d[k].degree(); ++j) {
      Exponents e{};
      e[xi] = static_cast<std::uint32_t>(j);
      e[yi] = static_cast<std::uint32_t>(k);
      out.emplace_back(e, d[k].coefficient(j));
    }
  return MPoly::from_terms(like.field(), like.variables(), std::move(out));
}

UnivariatePoly content(const Dense& d, Field field) {
  UnivariatePoly g(field);
  for (const auto& c : d) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

// Over Q also clears denominators and the integer content, which keeps the remainder
// sequence from growing without bound.
Dense primitive(const Dense& d, const UnivariatePoly& cont) {
  Dense r;
  r.reserve(d.size());
  for (const auto& c : d) r.push_back(c / cont);
  if (r.empty() || !r.front().field().is_rational()) return r;
  Integer den = 1, num = 0;
  for (const auto& c : r)
    for (const auto& x : c.coefficients()) {
      const Rational& q = x.rational();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), q.get_num_mpz_t());
    }
  if (num == 0 || (den == 1 && num == 1)) return r;
  const Scalar scale = r.front().field().from_rational(Rational(den) / Rational(num));
  for (auto& c : r) c = c * scale;
  return r;
}

Dense pseudo_remainder(Dense a, const Dense& b) {
  const UnivariatePoly& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const UnivariatePoly la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c = c * lb;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = a[k + shift] - la * b[k];
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }
  return a;
}

std::vector<std::size_t> used_variables(const MPoly& f) {
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < f.nvars(); ++i)
    if (f.degree_in(i) > 0) used.push_back(i);
  return used;
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (!(a.field() == b.field()) || a.variables() != b.variables()) throw Error("ring mismatch in gcd");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  std::vector<std::size_t> used = used_variables(a);
  for (std::size_t i : used_variables(b))
    if (std::find(used.begin(), used.end(), i) == used.end()) used.push_back(i);
  std::sort(used.begin(), used.end());
  const Field field = a.field();
  if (used.empty()) return MPoly::constant(field, a.variables(), field.one());
  if (used.size() > 2) throw Error("gcd is implemented for at most two variables");
  if (used.size() == 1) {
    const std::size_t v = used[0];
    return MPoly::from_univariate(gcd(a.to_univariate(v), b.to_univariate(v)), a.variables(), v).monic();
  }
  const std::size_t xi = used[0], yi = used[1];
  Dense da = to_dense(a, xi, yi), db = to_dense(b, xi, yi);
  const UnivariatePoly ca = content(da, field), cb = content(db, field);
  const UnivariatePoly c = gcd(ca, cb);
  da = primitive(da, ca);
  db = primitive(db, cb);
  if (da.size() < db.size()) std::swap(da, db);
  while (!db.empty()) {
    Dense r = pseudo_remainder(da, db);
    da = std::move(db);
    db = r.empty() ? Dense{} : primitive(r, content(r, field));
  }
  da = primitive(da, content(da, field));
  for (auto& coeff : da) coeff = coeff * c;
  return from_dense(da, a, xi, yi).monic();
}

namespace {

// Over Q: f is squarefree when both univariate images f(c, y) and f(x, c) modulo a large
// prime keep their degree and are squarefree, since a repeated factor of positive degree in
// either variable would survive in the matching image.
bool squarefree_by_images(const MPoly& f) {
  const std::vector<std::size_t> used = used_variables(f);
  if (!f.field().is_rational() || used.size() != 2) return false;
  constexpr std::uint64_t kPoint = 1234567;
  for (int k = 0; k < 2; ++k) {
    const std::size_t main = used[k], other = used[1 - k];
    unsigned degree = 0;
    for (const auto& [e, c] : f.terms()) degree = std::max(degree, e[main]);
    modp::Poly image(degree + 1, 0);
    for (const auto& [e, c] : f.terms()) {
      const auto r = modp::reduce(c.rational());
      if (!r) return false;
      image[e[main]] = modp::add(image[e[main]], modp::mul(*r, modp::power(kPoint, e[other])));
    }
    if (image.back() == 0 || modp::gcd_degree(image, modp::derivative(image)) != 0) return false;
  }
  return true;
}

MPoly pth_root(const MPoly& f) {
  const unsigned p = f.field().characteristic();
  std::vector<MPoly::Term> out;
  for (const auto& [e, c] : f.terms()) {
    Exponents x{};
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (e[i] % p) throw Error("polynomial is not a p-th power");
      x[i] = e[i] / p;
    }
    out.emplace_back(x, frobenius_root(c, 1));
  }
  return MPoly::from_terms(f.field(), f.variables(), std::move(out));
}

}  // namespace

MPoly radical(const MPoly& f) {
  if (f.is_zero()) throw Error("radical of the zero polynomial is undefined");
  const Field field = f.field();
  if (f.is_constant()) return MPoly::constant(field, f.variables(), field.one());
  if (used_variables(f).size() > 2) throw Error("radical is implemented for at most two variables");
  if (squarefree_by_images(f)) return f.monic();
  std::vector<MPoly> partials;
  bool all_zero = true;
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    partials.push_back(f.derivative(i));
    all_zero = all_zero && partials.back().is_zero();
  }
  if (all_zero) return radical(pth_root(f));
  MPoly g = f;
  for (const auto& d : partials)
    if (!d.is_zero()) g = gcd(g, d);
  MPoly a = *divide_exact(f, g);
  if (g.is_constant()) return a.monic();
  // Factors of multiplicity divisible by p survive entirely in g.
  MPoly rg = radical(g);
  MPoly common = gcd(a, rg);
  return (*divide_exact(a * rg, common)).monic();
}

bool associated(const MPoly& a, const MPoly& b) {
  if (!(a.field() == b.field()) || a.variables() != b.variables()) return false;
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.monic() == b.monic();
}

NewtonPolygon newton_polygon(const std::vector<LatticePoint>& input) {
  if (input.empty()) throw Error("Newton polygon of an empty support");
  NewtonPolygon poly;
  poly.points = input;
  std::sort(poly.points.begin(), poly.points.end());
  poly.points.erase(std::unique(poly.points.begin(), poly.points.end()), poly.points.end());
  // Staircase: for increasing first coordinate keep points whose second coordinate strictly drops.
  std::vector<LatticePoint> stair;
  for (const auto& pt : poly.points)
    if (stair.empty() || pt[1] < stair.back()[1]) {
      if (!stair.empty() && stair.back()[0] == pt[0]) continue;
      stair.push_back(pt);
    }
  auto cross = [](const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  for (const auto& pt : stair) {
    while (poly.vertices.size() >= 2 && cross(poly.vertices[poly.vertices.size() - 2], poly.vertices.back(), pt) <= 0)
      poly.vertices.pop_back();
    poly.vertices.push_back(pt);
  }
  for (std::size_t k = 0; k + 1 < poly.vertices.size(); ++k) {
    const auto& a = poly.vertices[k];
    const auto& b = poly.vertices[k + 1];
    std::int64_t n1 = a[1] - b[1], n2 = b[0] - a[0];
    std::int64_t g = std::gcd(n1, n2);
    poly.edges.push_back({a, b, {n1 / g, n2 / g}});
  }
  return poly;
}

NewtonPolygon newton_polygon(const MPoly& f, std::size_t first, std::size_t second) {
  if (f.is_zero()) throw Error("Newton polygon of the zero polynomial");
  std::vector<LatticePoint> pts;
  for (const auto& [e, c] : f.terms()) pts.push_back({static_cast<std::int64_t>(e[first]), static_cast<std::int64_t>(e[second])});
  return newton_polygon(pts);
}

}  // namespace stackres
