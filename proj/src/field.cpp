#include "stackres/field.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <sstream>

#include "fp_poly.hpp"

namespace stackres {

namespace {

struct Registry {
  std::mutex mutex;
  std::deque<FieldDescriptor> fields;
  std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, const FieldDescriptor*> index;
  std::map<std::pair<std::uint32_t, unsigned>, const FieldDescriptor*> generated;

  Registry() { fields.push_back(FieldDescriptor{}); }

  const FieldDescriptor* intern(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    std::lock_guard lock(mutex);
    auto key = std::make_pair(p, modulus);
    if (auto it = index.find(key); it != index.end()) return it->second;
    FieldDescriptor d;
    d.characteristic = p;
    d.degree = modulus.empty() ? 1 : static_cast<unsigned>(modulus.size() - 1);
    d.modulus = std::move(modulus);
    fields.push_back(std::move(d));
    const FieldDescriptor* ptr = &fields.back();
    index.emplace(std::move(key), ptr);
    return ptr;
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

std::uint64_t reduce_integer(const Integer& n, std::uint64_t p) {
  Integer r = n % Integer(static_cast<unsigned long>(p));
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

// Parses a univariate polynomial in t with integer coefficients, e.g. "t^2+2*t+1".
std::vector<std::int64_t> parse_modulus(std::string_view text) {
  std::vector<std::int64_t> coeffs;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&]() -> std::int64_t {
    std::size_t start = i;
    std::int64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > (std::int64_t(1) << 40)) throw ParseError("integer too large in modulus", start);
      ++i;
    }
    if (i == start) throw ParseError("expected an integer in modulus", start);
    return v;
  };
  bool first = true;
  skip();
  while (i < text.size()) {
    std::int64_t sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw ParseError("expected '+' or '-' in modulus", i);
    }
    first = false;
    std::int64_t c = 1;
    bool has_coeff = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      c = read_int();
      has_coeff = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
        if (i >= text.size() || text[i] != 't') throw ParseError("expected 't' after '*'", i);
      }
    }
    unsigned e = 0;
    if (i < text.size() && text[i] == 't') {
      ++i;
      e = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        e = static_cast<unsigned>(read_int());
        if (e > 64) throw ParseError("modulus degree too large", i);
      }
    } else if (!has_coeff) {
      throw ParseError("expected a term in modulus", i);
    }
    if (coeffs.size() <= e) coeffs.resize(e + 1, 0);
    coeffs[e] += sign * c;
    skip();
  }
  if (coeffs.empty()) throw ParseError("empty modulus", 0);
  return coeffs;
}

std::string format_residue_poly(const std::vector<std::uint32_t>& c, const char* var) {
  std::string out;
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == 0) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += std::to_string(c[k]);
      continue;
    }
    if (c[k] != 1) out += std::to_string(c[k]) + "*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field() : desc_(&registry().fields.front()) {}

Field Field::rationals() { return Field(); }

Field Field::prime(std::uint32_t p) {
  if (!is_prime_number(p) || p >= (1u << 31)) throw Error("characteristic must be a prime below 2^31, got " + std::to_string(p));
  return Field(registry().intern(p, {}));
}

Field Field::extension(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime_number(p) || p >= (1u << 31)) throw Error("characteristic must be a prime below 2^31, got " + std::to_string(p));
  for (auto& c : modulus) c %= p;
  fp::trim(modulus);
  if (modulus.size() < 3) throw Error("extension modulus must have degree at least 2");
  if (modulus.back() != 1) throw Error("extension modulus must be monic");
  if (!fp::is_irreducible(modulus, p)) throw Error("extension modulus " + format_residue_poly(modulus, "t") + " is reducible over F" + std::to_string(p));
  return Field(registry().intern(p, std::move(modulus)));
}

Field Field::with_degree(std::uint32_t p, unsigned degree) {
  if (degree == 0) throw Error("field degree must be positive");
  if (degree == 1) return prime(p);
  prime(p);  // validates p
  auto& reg = registry();
  {
    std::lock_guard lock(reg.mutex);
    if (auto it = reg.generated.find({p, degree}); it != reg.generated.end()) return Field(it->second);
  }
  // Count c_{d-1} ... c_0 in base p, c_{d-1} most significant.
  fp::Poly candidate(degree + 1, 0);
  candidate[degree] = 1;
  while (true) {
    if (candidate[0] != 0 && fp::is_irreducible(candidate, p)) break;
    std::size_t k = 0;
    while (k < degree && ++candidate[k] == p) candidate[k++] = 0;
    if (k == degree) throw Error("no irreducible polynomial found");
  }
  Field f = Field(reg.intern(p, candidate));
  std::lock_guard lock(reg.mutex);
  reg.generated.emplace(std::make_pair(p, degree), f.desc_);
  return f;
}

Field Field::parse(std::string_view spec) {
  auto trimmed = spec;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  if (trimmed == "Q" || trimmed == "QQ") return rationals();
  if (trimmed.empty() || (trimmed[0] != 'F' && trimmed[0] != 'f')) throw ParseError("field must be Q or F<q>[:modulus]", 0);
  std::size_t i = 1;
  std::uint64_t q = 0;
  while (i < trimmed.size() && std::isdigit(static_cast<unsigned char>(trimmed[i]))) {
    q = q * 10 + static_cast<std::uint64_t>(trimmed[i] - '0');
    if (q > (std::uint64_t(1) << 62)) throw ParseError("field order too large", i);
    ++i;
  }
  if (i == 1) throw ParseError("expected field order after 'F'", 1);
  if (q < 2) throw ParseError("field order must be a prime power", 1);
  std::uint64_t p = q;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  unsigned r = 0;
  for (std::uint64_t m = q; m > 1; m /= p, ++r)
    if (m % p) throw ParseError("field order " + std::to_string(q) + " is not a prime power", 1);
  if (p >= (1u << 31)) throw ParseError("characteristic too large", 1);
  if (i == trimmed.size()) return r == 1 ? prime(static_cast<std::uint32_t>(p)) : with_degree(static_cast<std::uint32_t>(p), r);
  if (trimmed[i] != ':') throw ParseError("unexpected character in field spec", i);
  std::vector<std::int64_t> raw;
  try {
    raw = parse_modulus(trimmed.substr(i + 1));
  } catch (const ParseError& e) {
    throw ParseError(std::string("bad modulus: ") + e.what(), i + 1 + e.position());
  }
  std::vector<std::uint32_t> modulus(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    std::int64_t v = raw[k] % static_cast<std::int64_t>(p);
    if (v < 0) v += static_cast<std::int64_t>(p);
    modulus[k] = static_cast<std::uint32_t>(v);
  }
  fp::trim(modulus);
  if (static_cast<unsigned>(fp::degree(modulus)) != r)
    throw ParseError("modulus degree does not match field order " + std::to_string(q), i + 1);
  if (r == 1) return prime(static_cast<std::uint32_t>(p));
  try {
    return extension(static_cast<std::uint32_t>(p), modulus);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), i + 1);
  }
}

Integer Field::order() const {
  if (is_rational()) return 0;
  Integer q;
  mpz_ui_pow_ui(q.get_mpz_t(), characteristic(), degree());
  return q;
}

std::string Field::spec() const {
  if (is_rational()) return "Q";
  std::string out = "F" + order().get_str();
  if (degree() > 1) out += ":" + format_residue_poly(desc_->modulus, "t");
  return out;
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long value) const {
  if (is_rational()) return Scalar(*this, Rational(static_cast<long>(value)));
  const std::uint64_t p = characteristic();
  long long m = value % static_cast<long long>(p);
  if (m < 0) m += static_cast<long long>(p);
  if (is_prime()) return Scalar(*this, static_cast<std::uint64_t>(m));
  Scalar::Extension e(degree(), 0);
  e[0] = static_cast<std::uint32_t>(m);
  return Scalar(*this, std::move(e));
}

Scalar Field::from_rational(const Rational& value) const {
  if (is_rational()) {
    Rational r = value;
    r.canonicalize();
    return Scalar(*this, std::move(r));
  }
  const std::uint64_t p = characteristic();
  std::uint64_t num = reduce_integer(value.get_num(), p);
  std::uint64_t den = reduce_integer(value.get_den(), p);
  if (den == 0) throw Error("denominator of " + value.get_str() + " is not invertible in " + spec());
  return from_int(static_cast<long long>(fp::mulmod(num, fp::inverse(den, p), p)));
}

Scalar Field::from_residues(std::span<const std::int64_t> residues) const {
  if (is_rational()) {
    if (residues.size() > 1) throw Error("Q has no generator");
    return from_int(residues.empty() ? 0 : residues[0]);
  }
  if (residues.size() > degree()) throw Error("too many residues for " + spec());
  const auto p = static_cast<std::int64_t>(characteristic());
  Scalar::Extension e(degree(), 0);
  for (std::size_t k = 0; k < residues.size(); ++k) {
    std::int64_t v = residues[k] % p;
    if (v < 0) v += p;
    e[k] = static_cast<std::uint32_t>(v);
  }
  if (is_prime()) return Scalar(*this, static_cast<std::uint64_t>(e[0]));
  return Scalar(*this, std::move(e));
}

Scalar Field::generator() const {
  if (degree() < 2) throw Error(spec() + " has no extension generator");
  Scalar::Extension e(degree(), 0);
  e[1] = 1;
  return Scalar(*this, std::move(e));
}

std::vector<Scalar> Field::elements() const {
  if (is_rational()) throw Error("Q is infinite");
  Integer q = order();
  if (q > (1 << 20)) throw Error("field too large to enumerate");
  const std::uint64_t n = q.get_ui();
  const std::uint64_t p = characteristic();
  std::vector<Scalar> out;
  out.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    if (is_prime()) {
      out.push_back(Scalar(*this, k));
      continue;
    }
    Scalar::Extension e(degree(), 0);
    std::uint64_t m = k;
    for (unsigned i = 0; i < degree(); ++i, m /= p) e[i] = static_cast<std::uint32_t>(m % p);
    out.push_back(Scalar(*this, std::move(e)));
  }
  return out;
}

Scalar Field::random(std::mt19937_64& rng) const {
  if (is_rational()) return from_int(std::uniform_int_distribution<int>(-9, 9)(rng));
  std::uniform_int_distribution<std::uint64_t> dist(0, characteristic() - 1);
  if (is_prime()) return Scalar(*this, dist(rng));
  Scalar::Extension e(degree());
  for (auto& c : e) c = static_cast<std::uint32_t>(dist(rng));
  return Scalar(*this, std::move(e));
}

Scalar::Scalar() : field_(), value_(Rational(0)) {}

bool Scalar::is_zero() const {
  switch (value_.index()) {
    case 0: return std::get<0>(value_) == 0;
    case 1: return std::get<1>(value_) == 0;
    default: {
      const auto& e = std::get<2>(value_);
      return std::all_of(e.begin(), e.end(), [](std::uint32_t c) { return c == 0; });
    }
  }
}

bool Scalar::is_one() const { return *this == field_.one(); }

const Rational& Scalar::rational() const {
  if (value_.index() != 0) throw Error("scalar is not rational");
  return std::get<0>(value_);
}

std::uint64_t Scalar::prime_value() const {
  if (value_.index() != 1) throw Error("scalar is not in a prime field");
  return std::get<1>(value_);
}

std::vector<std::uint32_t> Scalar::residues() const {
  switch (value_.index()) {
    case 1: return {static_cast<std::uint32_t>(std::get<1>(value_))};
    case 2: return std::get<2>(value_);
    default: throw Error("rational scalar has no residues");
  }
}

void Scalar::check_same_field(const Scalar& other) const {
  if (!(field_ == other.field_)) throw Error("field mismatch: " + field_.spec() + " vs " + other.field_.spec());
}

Scalar Scalar::operator-() const {
  Scalar r = field_.zero();
  r -= *this;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  check_same_field(other);
  const std::uint64_t p = field_.characteristic();
  switch (value_.index()) {
    case 0: std::get<0>(value_) += std::get<0>(other.value_); break;
    case 1: std::get<1>(value_) = (std::get<1>(value_) + std::get<1>(other.value_)) % p; break;
    default: {
      auto& a = std::get<2>(value_);
      const auto& b = std::get<2>(other.value_);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<std::uint32_t>((std::uint64_t(a[i]) + b[i]) % p);
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  check_same_field(other);
  const std::uint64_t p = field_.characteristic();
  switch (value_.index()) {
    case 0: std::get<0>(value_) -= std::get<0>(other.value_); break;
    case 1: std::get<1>(value_) = (std::get<1>(value_) + p - std::get<1>(other.value_)) % p; break;
    default: {
      auto& a = std::get<2>(value_);
      const auto& b = std::get<2>(other.value_);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<std::uint32_t>((std::uint64_t(a[i]) + p - b[i]) % p);
    }
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  check_same_field(other);
  const std::uint64_t p = field_.characteristic();
  switch (value_.index()) {
    case 0: std::get<0>(value_) *= std::get<0>(other.value_); break;
    case 1: std::get<1>(value_) = fp::mulmod(std::get<1>(value_), std::get<1>(other.value_), p); break;
    default: {
      auto& a = std::get<2>(value_);
      fp::Poly prod = fp::mulmod(a, std::get<2>(other.value_), field_.descriptor().modulus, p);
      prod.resize(field_.degree(), 0);
      a = std::move(prod);
    }
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) { return *this *= other.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  const std::uint64_t p = field_.characteristic();
  switch (value_.index()) {
    case 0: return Scalar(field_, Rational(1) / std::get<0>(value_));
    case 1: return Scalar(field_, fp::inverse(std::get<1>(value_), p));
    default: {
      fp::Poly a = std::get<2>(value_);
      fp::trim(a);
      fp::Poly inv = fp::inverse_mod(a, field_.descriptor().modulus, p);
      inv.resize(field_.degree(), 0);
      return Scalar(field_, std::move(inv));
    }
  }
}

Scalar Scalar::pow(const Integer& exponent) const {
  if (exponent < 0) return inverse().pow(Integer(-exponent));
  if (value_.index() == 0) {
    if (!exponent.fits_ulong_p()) throw Error("exponent too large for rational power");
    const unsigned long e = exponent.get_ui();
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), std::get<0>(value_).get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), std::get<0>(value_).get_den_mpz_t(), e);
    r.canonicalize();
    return Scalar(field_, std::move(r));
  }
  Scalar result = field_.one();
  Scalar base = *this;
  Integer e = exponent;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

Scalar Scalar::pow(std::uint64_t exponent) const { return pow(Integer(static_cast<unsigned long>(exponent))); }

std::string Scalar::to_string() const {
  switch (value_.index()) {
    case 0: return std::get<0>(value_).get_str();
    case 1: return std::to_string(std::get<1>(value_));
    default: return format_residue_poly(std::get<2>(value_), "t");
  }
}

std::size_t Scalar::hash() const {
  std::size_t h = std::hash<const void*>()(&field_.descriptor());
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  switch (value_.index()) {
    case 0: mix(std::hash<std::string>()(std::get<0>(value_).get_str(16))); break;
    case 1: mix(std::get<1>(value_)); break;
    default:
      for (auto c : std::get<2>(value_)) mix(c);
  }
  return h;
}

bool operator==(const Scalar& a, const Scalar& b) { return a.field_ == b.field_ && a.value_ == b.value_; }

std::strong_ordering canonical_compare(const Scalar& a, const Scalar& b) {
  a.check_same_field(b);
  switch (a.value_.index()) {
    case 0: {
      int c = cmp(std::get<0>(a.value_), std::get<0>(b.value_));
      return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    case 1: return std::get<1>(a.value_) <=> std::get<1>(b.value_);
    default: {
      const auto& x = std::get<2>(a.value_);
      const auto& y = std::get<2>(b.value_);
      for (std::size_t k = x.size(); k-- > 0;)
        if (x[k] != y[k]) return x[k] <=> y[k];
      return std::strong_ordering::equal;
    }
  }
}

Scalar frobenius_root(const Scalar& a, unsigned e) {
  const Field f = a.field();
  if (e == 0) return a;
  if (f.is_rational()) throw Error("p-th roots requested in characteristic 0");
  if (f.is_prime()) return a;
  // Frobenius has order r on F_{p^r}, so its inverse to the e is Frobenius to the (r - e mod r).
  const unsigned r = f.degree();
  const unsigned j = (r - e % r) % r;
  Scalar b = a;
  const Integer p(static_cast<unsigned long>(f.characteristic()));
  for (unsigned k = 0; k < j; ++k) b = b.pow(p);
  return b;
}

Scalar binomial(Field field, unsigned n, unsigned k) {
  if (k > n) return field.zero();
  if (field.is_rational()) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), n, k);
    return field.from_rational(Rational(c));
  }
  // Lucas' theorem digit by digit.
  const unsigned p = field.characteristic();
  std::uint64_t result = 1;
  while (n > 0 || k > 0) {
    unsigned nd = n % p, kd = k % p;
    if (kd > nd) return field.zero();
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), nd, kd);
    result = fp::mulmod(result, reduce_integer(c, p), p);
    n /= p;
    k /= p;
  }
  return field.from_int(static_cast<long long>(result));
}

FieldEmbedding FieldEmbedding::identity(Field field) {
  return FieldEmbedding(field, field, field.degree() > 1 ? field.generator() : field.zero());
}

FieldEmbedding::FieldEmbedding(Field source, Field target, Scalar generator_image)
    : source_(source), target_(target), generator_image_(std::move(generator_image)) {
  if (source.characteristic() != target.characteristic()) throw Error("embedding between fields of different characteristic");
  if (target.degree() % source.degree() != 0) throw Error("embedding degree mismatch");
  if (!(generator_image_.field() == target)) throw Error("generator image must lie in the target field");
  if (source.degree() > 1) {
    // The image must be a root of the source modulus.
    Scalar acc = target.zero();
    const auto& m = source.descriptor().modulus;
    for (std::size_t k = m.size(); k-- > 0;) acc = acc * generator_image_ + target.from_int(m[k]);
    if (!acc.is_zero()) throw Error("generator image is not a root of the source modulus");
  }
}

Scalar FieldEmbedding::operator()(const Scalar& a) const {
  if (!(a.field() == source_)) throw Error("embedding applied to an element of the wrong field");
  if (source_ == target_) return a;
  if (source_.is_rational()) return target_.from_rational(a.rational());
  auto residues = a.residues();
  Scalar acc = target_.zero();
  if (source_.is_prime()) return target_.from_int(residues[0]);
  for (std::size_t k = residues.size(); k-- > 0;) acc = acc * generator_image_ + target_.from_int(residues[k]);
  return acc;
}

}  // namespace stackres
