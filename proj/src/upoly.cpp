#include "stackres/upoly.hpp"

#include <algorithm>
#include <random>

#include "modp.hpp"

namespace stackres {

UnivariatePoly::UnivariatePoly(Field field) : field_(field) {}

UnivariatePoly::UnivariatePoly(Field field, std::vector<Scalar> coefficients) : field_(field), coeffs_(std::move(coefficients)) {
  for (const auto& c : coeffs_)
    if (!(c.field() == field_)) throw Error("coefficient field mismatch in univariate polynomial");
  trim();
}

UnivariatePoly UnivariatePoly::from_ints(Field field, const std::vector<long long>& coefficients) {
  std::vector<Scalar> c;
  c.reserve(coefficients.size());
  for (long long v : coefficients) c.push_back(field.from_int(v));
  return UnivariatePoly(field, std::move(c));
}

UnivariatePoly UnivariatePoly::monomial(const Scalar& c, unsigned exponent) {
  std::vector<Scalar> v(exponent + 1, c.field().zero());
  v[exponent] = c;
  return UnivariatePoly(c.field(), std::move(v));
}

UnivariatePoly UnivariatePoly::variable(Field field) { return monomial(field.one(), 1); }

void UnivariatePoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Scalar UnivariatePoly::coefficient(unsigned k) const { return k < coeffs_.size() ? coeffs_[k] : field_.zero(); }

Scalar UnivariatePoly::leading() const { return coeffs_.empty() ? field_.zero() : coeffs_.back(); }

UnivariatePoly UnivariatePoly::operator-() const {
  UnivariatePoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b) {
  if (!(a.field_ == b.field_)) throw Error("field mismatch in univariate addition");
  std::vector<Scalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()), a.field_.zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return UnivariatePoly(a.field_, std::move(c));
}

UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b) { return a + (-b); }

UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
  if (!(a.field_ == b.field_)) throw Error("field mismatch in univariate multiplication");
  if (a.is_zero() || b.is_zero()) return UnivariatePoly(a.field_);
  std::vector<Scalar> c(a.coeffs_.size() + b.coeffs_.size() - 1, a.field_.zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UnivariatePoly(a.field_, std::move(c));
}

UnivariatePoly UnivariatePoly::operator*(const Scalar& c) const {
  UnivariatePoly r = *this;
  for (auto& x : r.coeffs_) x *= c;
  r.trim();
  return r;
}

std::pair<UnivariatePoly, UnivariatePoly> UnivariatePoly::divmod(const UnivariatePoly& divisor) const {
  if (divisor.is_zero()) throw Error("univariate division by zero");
  if (!(field_ == divisor.field_)) throw Error("field mismatch in univariate division");
  std::vector<Scalar> r = coeffs_;
  const std::size_t n = divisor.coeffs_.size();
  if (r.size() < n) return {UnivariatePoly(field_), *this};
  const Scalar lead_inv = divisor.leading().inverse();
  std::vector<Scalar> q(r.size() - n + 1, field_.zero());
  for (std::size_t k = q.size(); k-- > 0;) {
    Scalar c = r[k + n - 1] * lead_inv;
    if (c.is_zero()) continue;
    q[k] = c;
    for (std::size_t j = 0; j < n; ++j) r[k + j] -= c * divisor.coeffs_[j];
  }
  r.resize(n - 1, field_.zero());
  return {UnivariatePoly(field_, std::move(q)), UnivariatePoly(field_, std::move(r))};
}

UnivariatePoly UnivariatePoly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

UnivariatePoly UnivariatePoly::derivative() const {
  if (coeffs_.size() <= 1) return UnivariatePoly(field_);
  std::vector<Scalar> c(coeffs_.size() - 1, field_.zero());
  for (std::size_t k = 1; k < coeffs_.size(); ++k) c[k - 1] = coeffs_[k] * field_.from_int(static_cast<long long>(k));
  return UnivariatePoly(field_, std::move(c));
}

Scalar UnivariatePoly::evaluate(const Scalar& x) const {
  Scalar acc = field_.zero();
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
  return acc;
}

UnivariatePoly UnivariatePoly::inflate(unsigned k) const {
  if (k == 0) throw Error("inflate by zero");
  if (is_zero()) return *this;
  std::vector<Scalar> c((coeffs_.size() - 1) * k + 1, field_.zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * k] = coeffs_[i];
  return UnivariatePoly(field_, std::move(c));
}

UnivariatePoly UnivariatePoly::map(const FieldEmbedding& embedding) const {
  std::vector<Scalar> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(embedding(x));
  return UnivariatePoly(embedding.target(), std::move(c));
}

std::string UnivariatePoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Scalar& c = coeffs_[k];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs.erase(0, 1);
    bool compound = cs.find_first_of("+-") != std::string::npos;
    if (!out.empty()) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    if (k == 0) {
      out += compound ? "(" + cs + ")" : cs;
      continue;
    }
    if (cs != "1") out += (compound ? "(" + cs + ")" : cs) + "*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

namespace {

// Gcd over Q. A coprimality test modulo a word-sized prime settles the common case, and the
// primitive integer remainder sequence keeps the coefficients from exploding otherwise.

std::vector<Integer> integer_primitive(const UnivariatePoly& f) {
  Integer den = 1, num = 0;
  for (const auto& c : f.coefficients()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.rational().get_num_mpz_t());
  }
  std::vector<Integer> out;
  for (const auto& c : f.coefficients()) {
    Integer v = c.rational().get_num() * (den / c.rational().get_den());
    out.push_back(v / num);
  }
  return out;
}

void make_primitive(std::vector<Integer>& f) {
  Integer g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : f) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// True when the images modulo the prime keep their degrees and are coprime.
bool coprime_mod_prime(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  auto down = [](const std::vector<Integer>& f) {
    modp::Poly r;
    for (const auto& c : f) r.push_back(modp::reduce(c));
    return r;
  };
  const modp::Poly x = down(a), y = down(b);
  return x.back() != 0 && y.back() != 0 && modp::gcd_degree(x, y) == 0;
}

UnivariatePoly rational_gcd(const UnivariatePoly& a, const UnivariatePoly& b) {
  const Field field = a.field();
  std::vector<Integer> x = integer_primitive(a), y = integer_primitive(b);
  if (coprime_mod_prime(x, y)) return UnivariatePoly::monomial(field.one(), 0);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    // Pseudo-remainder of x by y.
    const Integer lead = y.back();
    while (x.size() >= y.size()) {
      const Integer c = x.back();
      const std::size_t shift = x.size() - y.size();
      for (auto& v : x) v *= lead;
      for (std::size_t j = 0; j < y.size(); ++j) x[shift + j] -= c * y[j];
      while (!x.empty() && x.back() == 0) x.pop_back();
      if (x.empty()) break;
    }
    make_primitive(x);
    std::swap(x, y);
  }
  std::vector<Scalar> c;
  for (const auto& v : x) c.push_back(field.from_rational(Rational(v)));
  return UnivariatePoly(field, std::move(c)).monic();
}

}  // namespace

UnivariatePoly gcd(const UnivariatePoly& a, const UnivariatePoly& b) {
  if (a.field().is_rational() && !a.is_zero() && !b.is_zero() && a.degree() > 0 && b.degree() > 0) return rational_gcd(a, b);
  UnivariatePoly x = a, y = b;
  while (!y.is_zero()) {
    UnivariatePoly r = x % y;
    x = std::move(y);
    y = r.is_zero() ? std::move(r) : r.monic();
  }
  return x.monic();
}

UnivariatePoly pow_mod(const UnivariatePoly& base, const Integer& exponent, const UnivariatePoly& modulus) {
  UnivariatePoly result = UnivariatePoly::monomial(base.field().one(), 0) % modulus;
  UnivariatePoly b = base % modulus;
  Integer e = exponent;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = (result * b) % modulus;
    e >>= 1;
    if (e > 0) b = (b * b) % modulus;
  }
  return result;
}

UnivariatePoly UnivariateFactorization::expand() const {
  UnivariatePoly acc = UnivariatePoly::monomial(unit, 0);
  for (const auto& f : factors)
    for (unsigned k = 0; k < f.multiplicity; ++k) acc = acc * f.poly;
  return acc;
}

namespace {

bool canonical_less(const UnivariatePoly& a, const UnivariatePoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int k = a.degree(); k >= 0; --k) {
    auto c = canonical_compare(a.coefficient(k), b.coefficient(k));
    if (c != 0) return c < 0;
  }
  return false;
}

void sort_factors(std::vector<UnivariateFactor>& factors) {
  std::sort(factors.begin(), factors.end(), [](const UnivariateFactor& a, const UnivariateFactor& b) {
    if (canonical_less(a.poly, b.poly)) return true;
    if (canonical_less(b.poly, a.poly)) return false;
    return a.multiplicity < b.multiplicity;
  });
}

// Replaces f(x) = g(x^p) by g^{1/p}(x), coefficient-wise Frobenius root.
UnivariatePoly pth_root(const UnivariatePoly& f) {
  const unsigned p = f.field().characteristic();
  std::vector<Scalar> c;
  for (int k = 0; k <= f.degree(); k += static_cast<int>(p)) c.push_back(frobenius_root(f.coefficient(k), 1));
  return UnivariatePoly(f.field(), std::move(c));
}

// Squarefree decomposition over a finite field; f monic, non-constant.
void squarefree_finite(const UnivariatePoly& f, unsigned scale, std::vector<std::pair<UnivariatePoly, unsigned>>& out) {
  const unsigned p = f.field().characteristic();
  UnivariatePoly df = f.derivative();
  if (df.is_zero()) {
    squarefree_finite(pth_root(f), scale * p, out);
    return;
  }
  UnivariatePoly c = gcd(f, df);
  UnivariatePoly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    UnivariatePoly y = gcd(w, c);
    UnivariatePoly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i * scale);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) squarefree_finite(pth_root(c.monic()), scale * p, out);
}

// Yun's algorithm, characteristic 0.
void squarefree_rational(const UnivariatePoly& f, std::vector<std::pair<UnivariatePoly, unsigned>>& out) {
  UnivariatePoly df = f.derivative();
  UnivariatePoly a = gcd(f, df);
  UnivariatePoly b = f / a;
  UnivariatePoly d = df / a - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    UnivariatePoly ai = gcd(b, d);
    UnivariatePoly c = d / ai;
    b = b / ai;
    d = c - b.derivative();
    if (ai.degree() > 0) out.emplace_back(ai.monic(), i);
    ++i;
  }
}

// Squarefree monic f -> list of (product of irreducibles of degree d, d).
std::vector<std::pair<UnivariatePoly, unsigned>> distinct_degree(UnivariatePoly f) {
  std::vector<std::pair<UnivariatePoly, unsigned>> out;
  const Integer q = f.field().order();
  const UnivariatePoly x = UnivariatePoly::variable(f.field());
  UnivariatePoly h = x % f;
  for (unsigned d = 1; f.degree() >= 2 * static_cast<int>(d); ++d) {
    h = pow_mod(h, q, f);
    UnivariatePoly g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), static_cast<unsigned>(f.degree()));
  return out;
}

UnivariatePoly random_poly(Field field, int max_degree, std::mt19937_64& rng) {
  std::vector<Scalar> c;
  for (int k = 0; k <= max_degree; ++k) c.push_back(field.random(rng));
  return UnivariatePoly(field, std::move(c));
}

// Cantor-Zassenhaus splitting of a product of distinct irreducibles of degree d.
void equal_degree(const UnivariatePoly& f, unsigned d, std::mt19937_64& rng, std::vector<UnivariatePoly>& out) {
  const int n = f.degree();
  if (n == static_cast<int>(d)) {
    out.push_back(f.monic());
    return;
  }
  const Field field = f.field();
  const Integer q = field.order();
  Integer qd;
  mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), d);
  const bool even = field.characteristic() == 2;
  const unsigned trace_terms = field.degree() * d;
  while (true) {
    UnivariatePoly a = random_poly(field, n - 1, rng);
    if (a.degree() < 1) continue;
    UnivariatePoly b(field);
    if (even) {
      UnivariatePoly term = a % f;
      b = term;
      for (unsigned k = 1; k < trace_terms; ++k) {
        term = (term * term) % f;
        b = b + term;
      }
    } else {
      b = pow_mod(a, (qd - 1) / 2, f) - UnivariatePoly::monomial(field.one(), 0);
    }
    UnivariatePoly g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < n) {
      equal_degree(g, d, rng, out);
      equal_degree(f / g, d, rng, out);
      return;
    }
  }
}

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<std::pair<Integer, unsigned>> primes;
  for (unsigned long d = 2; d < 1000000 && Integer(d) * d <= n; ++d) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), d) == 0) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d) != 0) {
      n /= d;
      ++e;
    }
    primes.emplace_back(Integer(d), e);
  }
  if (n > 1) {
    if (n >= Integer(1000000) * Integer(1000000) && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
      throw LimitExceeded("coefficient too large to enumerate rational root candidates");
    primes.emplace_back(n, 1);
  }
  std::vector<Integer> divs = {1};
  for (const auto& [pr, e] : primes) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= pr;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Rational roots of a squarefree monic polynomial over Q, ascending.
std::vector<Rational> rational_roots(const UnivariatePoly& g) {
  std::vector<Rational> out;
  // Clear denominators to an integer polynomial with the same roots.
  Integer lcm_den = 1;
  for (const auto& c : g.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<Integer> ints;
  for (const auto& c : g.coefficients()) ints.push_back(Integer(c.rational() * lcm_den));
  std::size_t low = 0;
  while (low < ints.size() && ints[low] == 0) ++low;
  if (low > 0) out.push_back(Rational(0));
  if (low + 1 >= ints.size()) return out;
  const auto nums = positive_divisors(ints[low]);
  const auto dens = positive_divisors(ints.back());
  const Field q = g.field();
  for (const auto& a : nums)
    for (const auto& b : dens) {
      if (gcd(a, b) != 1) continue;
      for (int sign : {1, -1}) {
        Rational r(sign * a, b);
        r.canonicalize();
        if (g.evaluate(q.from_rational(r)).is_zero()) out.push_back(r);
      }
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

UnivariateFactorization factor_univariate(const UnivariatePoly& f, std::uint64_t seed) {
  if (f.is_zero()) throw Error("cannot factor the zero polynomial");
  UnivariateFactorization result;
  result.unit = f.leading();
  if (f.degree() == 0) return result;
  const UnivariatePoly g = f.monic();
  const Field field = f.field();
  if (field.is_rational()) {
    std::vector<std::pair<UnivariatePoly, unsigned>> parts;
    squarefree_rational(g, parts);
    for (auto& [part, mult] : parts) {
      UnivariatePoly rest = part;
      for (const Rational& r : rational_roots(part)) {
        UnivariatePoly lin = UnivariatePoly::variable(field) - UnivariatePoly::monomial(field.from_rational(r), 0);
        result.factors.push_back({lin, mult, true});
        rest = rest / lin;
      }
      if (rest.degree() > 0) result.factors.push_back({rest.monic(), mult, rest.degree() <= 3});
    }
  } else {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<UnivariatePoly, unsigned>> parts;
    squarefree_finite(g, 1, parts);
    for (auto& [part, mult] : parts)
      for (auto& [block, d] : distinct_degree(part)) {
        std::vector<UnivariatePoly> pieces;
        equal_degree(block, d, rng, pieces);
        for (auto& piece : pieces) result.factors.push_back({piece, mult, true});
      }
    // Squarefree parts at different scales may share irreducible factors; merge them.
    std::vector<UnivariateFactor> merged;
    sort_factors(result.factors);
    for (auto& fac : result.factors) {
      if (!merged.empty() && merged.back().poly == fac.poly) merged.back().multiplicity += fac.multiplicity;
      else merged.push_back(fac);
    }
    result.factors = std::move(merged);
  }
  sort_factors(result.factors);
  return result;
}

std::vector<Scalar> roots_in_field(const UnivariatePoly& f, std::uint64_t seed) {
  std::vector<Scalar> out;
  for (const auto& fac : factor_univariate(f, seed).factors)
    if (fac.poly.degree() == 1) out.push_back(-fac.poly.coefficient(0));
  std::sort(out.begin(), out.end(), [](const Scalar& a, const Scalar& b) { return canonical_compare(a, b) < 0; });
  return out;
}

bool is_irreducible(const UnivariatePoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  if (f.field().is_rational() && f.degree() > 3) throw Error("irreducibility over Q is only decided up to degree 3");
  auto fac = factor_univariate(f);
  return fac.factors.size() == 1 && fac.factors[0].multiplicity == 1 && fac.factors[0].irreducible &&
         fac.factors[0].poly.degree() == f.degree();
}

ExtensionResult extend_field(Field base, const UnivariatePoly& irreducible, std::uint64_t seed) {
  if (base.is_rational()) throw Error("field extensions are only constructed in positive characteristic");
  if (!(irreducible.field() == base)) throw Error("polynomial does not live over the base field");
  const int d = irreducible.degree();
  if (d < 2) throw Error("extension needs an irreducible polynomial of degree at least 2");
  if (!is_irreducible(irreducible)) throw Error("polynomial " + irreducible.to_string() + " is reducible over " + base.spec());
  const Field target = Field::with_degree(base.characteristic(), base.degree() * static_cast<unsigned>(d));
  Scalar image = target.one();
  if (base.degree() > 1) {
    std::vector<Scalar> mod;
    for (auto c : base.descriptor().modulus) mod.push_back(target.from_int(c));
    auto candidates = roots_in_field(UnivariatePoly(target, std::move(mod)), seed);
    if (candidates.empty()) throw Error("base modulus has no root in the extension");
    image = candidates.front();
  }
  FieldEmbedding embedding(base, target, image);
  auto roots = roots_in_field(irreducible.map(embedding), seed);
  if (roots.empty()) throw Error("polynomial has no root in the extension");
  return {target, embedding, roots.front()};
}

}  // namespace stackres
