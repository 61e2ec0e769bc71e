#include "nondeg/gf.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>

namespace nondeg {

namespace {

using Coeffs = std::vector<std::uint64_t>;

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m over Z/p.
Coeffs poly_mod(Coeffs a, const Coeffs& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    if (c != 0) {
      for (std::size_t i = 0; i <= dm; ++i) {
        a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
      }
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(r), m, p);
}

Coeffs poly_powmod(Coeffs base, std::uint64_t e, const Coeffs& m, std::uint64_t p) {
  Coeffs result{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    e >>= 1;
    if (e) base = poly_mulmod(base, base, m, p);
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    const std::int64_t quo = r / nr;
    t -= quo * nt;
    std::swap(t, nt);
    r -= quo * nr;
    std::swap(r, nr);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

Coeffs poly_gcd(Coeffs a, Coeffs b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t li = inv_mod(b.back(), p);
    for (auto& c : b) c = c * li % p;
    a = poly_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime_number(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Rabin's test: m | x^{p^k} - x and gcd(m, x^{p^{k/r}} - x) = 1 for primes r | k.
bool is_irreducible_mod_p(std::span<const std::uint32_t> monic, std::uint32_t p) {
  Coeffs m(monic.begin(), monic.end());
  trim(m);
  if (m.size() < 2 || m.back() != 1) return false;
  const std::uint64_t k = m.size() - 1;
  if (k == 1) return true;
  auto x_power = [&](std::uint64_t steps) {
    Coeffs cur{0, 1};
    for (std::uint64_t s = 0; s < steps; ++s) cur = poly_powmod(cur, p, m, p);
    return cur;
  };
  auto minus_x = [&](Coeffs c) {
    if (c.size() < 2) c.resize(2, 0);
    c[1] = (c[1] + p - 1) % p;
    trim(c);
    return c;
  };
  if (!minus_x(x_power(k)).empty()) return false;
  for (std::uint64_t r : prime_factors(k)) {
    Coeffs g = poly_gcd(minus_x(x_power(k / r)), m, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Field::Field(Token, std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  q_ = 1;
  for (std::uint32_t i = 0; i < k_; ++i) q_ *= p_;
  build_tables();
}

void Field::build_tables() {
  if (k_ > 1 && p_ != 2 && q_ <= 1024) {
    add_table_.resize(q_ * q_);
    neg_table_.resize(q_);
    for (Elem a = 0; a < q_; ++a) {
      neg_table_[a] = static_cast<std::uint16_t>(neg_digits(a));
      for (Elem b = 0; b < q_; ++b) add_table_[a * q_ + b] = static_cast<std::uint16_t>(add_digits(a, b));
    }
  }
  if (k_ == 1 || q_ > (1u << 16)) return;
  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);
  auto slow_pow = [&](Elem a, std::uint64_t n) {
    Elem r = 1;
    while (n) {
      if (n & 1) r = mul_reference(r, a);
      n >>= 1;
      if (n) a = mul_reference(a, a);
    }
    return r;
  };
  Elem g = 0;
  for (Elem cand = 2; cand < q_; ++cand) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(cand, order / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  log_.assign(q_, 0);
  exp_.assign(2 * order, 0);
  Elem cur = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = cur;
    exp_[i + order] = cur;
    log_[cur] = static_cast<std::uint32_t>(i);
    cur = mul_reference(cur, g);
  }
}

Elem Field::generator() const {
  if (k_ == 1) return from_int(-static_cast<long long>(modulus_[0]));
  return p_;
}

Elem Field::add_digits(Elem a, Elem b) const {
  Elem r = 0, place = 1;
  while (a != 0 || b != 0) {
    Elem s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * place;
    place *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

Elem Field::neg_digits(Elem a) const {
  Elem r = 0, place = 1;
  while (a != 0) {
    const Elem d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * place;
    place *= p_;
    a /= p_;
  }
  return r;
}

Elem Field::mul_reference(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (k_ == 1) return (a * b) % p_;
  if (p_ == 2) {
    Elem reduce = 0;
    for (std::uint32_t i = 0; i < k_; ++i) reduce |= static_cast<Elem>(modulus_[i]) << i;
    const Elem top = Elem{1} << (k_ - 1);
    const Elem mask = (k_ == 64) ? ~Elem{0} : ((Elem{1} << k_) - 1);
    Elem r = 0;
    while (b) {
      if (b & 1) r ^= a;
      b >>= 1;
      const bool carry = (a & top) != 0;
      a = (a << 1) & mask;
      if (carry) a ^= reduce;
    }
    return r;
  }
  const auto da = digits(a);
  const auto db = digits(b);
  std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_;
  }
  for (std::size_t t = prod.size(); t-- > k_;) {
    const std::uint64_t c = prod[t];
    if (c == 0) continue;
    for (std::uint32_t i = 0; i < k_; ++i) {
      prod[t - k_ + i] = (prod[t - k_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
    prod[t] = 0;
  }
  std::vector<std::uint32_t> out(k_);
  for (std::uint32_t i = 0; i < k_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return from_digits(out);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (k_ == 1) return inv_mod(a, p_);
  if (!log_.empty()) {
    const std::uint64_t order = q_ - 1;
    return exp_[(order - log_[a]) % order];
  }
  return pow(a, q_ - 2);
}

Elem Field::pow(Elem a, std::uint64_t n) const {
  if (n == 0) return 1;
  if (a == 0) return 0;
  if (!log_.empty()) {
    const std::uint64_t order = q_ - 1;
    return exp_[static_cast<std::uint64_t>((static_cast<unsigned __int128>(log_[a]) * (n % order)) % order)];
  }
  Elem r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    n >>= 1;
    if (n) a = mul(a, a);
  }
  return r;
}

Elem Field::pth_root(Elem a) const { return pow(a, q_ / p_); }

Elem Field::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<std::uint32_t> Field::digits(Elem a) const {
  std::vector<std::uint32_t> d(k_, 0);
  for (std::uint32_t i = 0; i < k_ && a != 0; ++i) {
    d[i] = static_cast<std::uint32_t>(a % p_);
    a /= p_;
  }
  return d;
}

Elem Field::from_digits(std::span<const std::uint32_t> d) const {
  Elem r = 0;
  for (std::size_t i = d.size(); i-- > 0;) r = r * p_ + (d[i] % p_);
  return r;
}

std::string Field::format(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  const auto d = digits(a);
  std::string out;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
      continue;
    }
    if (d[i] != 1) out += std::to_string(d[i]) + "*";
    out += "w";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

bool Field::format_is_compound(Elem a) const {
  if (k_ == 1) return false;
  int nonzero = 0;
  for (auto d : digits(a)) nonzero += d != 0;
  return nonzero > 1;
}

FieldPtr make_field(std::uint32_t p, std::uint32_t k) {
  if (!is_prime_number(p) || p > (1u << 31)) {
    throw Error(ErrorCode::NonPrimeCharacteristic, "p = " + std::to_string(p) + " is not a supported prime");
  }
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "extension degree must be at least 1");
  {
    unsigned __int128 q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      q *= p;
      if (q > std::numeric_limits<std::uint64_t>::max()) {
        throw Error(ErrorCode::DegreeTooLarge,
                    std::to_string(p) + "^" + std::to_string(k) + " does not fit a machine word");
      }
    }
  }

  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find({p, k}); it != cache.end()) return it->second;

  // Candidates ordered by (c_0, c_1, ..., c_{k-1}) with c_0 most significant.
  std::vector<std::uint32_t> poly(k + 1, 0);
  poly[k] = 1;
  if (k > 1) poly[0] = 1;
  for (;;) {
    if (is_irreducible_mod_p(poly, p)) break;
    std::size_t pos = k;
    while (pos-- > 0) {
      if (++poly[pos] < p) break;
      poly[pos] = 0;
    }
  }
  auto field = std::make_shared<const Field>(Field::Token{}, p, k, poly);
  cache.emplace(std::make_pair(p, k), field);
  return field;
}

void FieldElement::check_same(const FieldElement& o) const {
  if (field_ != o.field_) throw Error(ErrorCode::MixedFields, "operands live in different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->add(rep_, o.rep_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->sub(rep_, o.rep_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->mul(rep_, o.rep_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->div(rep_, o.rep_)};
}

std::vector<FieldElement> enumerate(const FieldPtr& field) {
  if (field->q() > (1u << 24)) throw Error(ErrorCode::InvalidArgument, "field too large to enumerate");
  std::vector<FieldElement> out;
  out.reserve(field->q());
  for (Elem a = 0; a < field->q(); ++a) out.emplace_back(field, a);
  return out;
}

}  // namespace nondeg
