#include "nondeg/unipoly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nondeg {

UniPoly::UniPoly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  normalize();
}

void UniPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::constant(FieldPtr field, Elem c) { return UniPoly(std::move(field), std::vector<Elem>{c}); }

UniPoly UniPoly::monomial(FieldPtr field, Elem c, int degree) {
  std::vector<Elem> v(static_cast<std::size_t>(degree) + 1, 0);
  v[degree] = c;
  return UniPoly(std::move(field), std::move(v));
}

Elem UniPoly::eval(Elem x) const {
  const Field& f = *field_;
  Elem r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = f.add(f.mul(r, x), c_[i]);
  return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  const Field& f = *field_;
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  const Field& f = *field_;
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f.sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly(field_);
  const Field& f = *field_;
  std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(c_[i], o.c_[j]));
  }
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::operator-() const {
  std::vector<Elem> r(c_);
  for (auto& c : r) c = field_->neg(c);
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::scaled(Elem c) const {
  std::vector<Elem> r(c_);
  for (auto& v : r) v = field_->mul(v, c);
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::shifted_up(int n) const {
  if (is_zero()) return *this;
  std::vector<Elem> r(static_cast<std::size_t>(n), 0);
  r.insert(r.end(), c_.begin(), c_.end());
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::taylor_shift(Elem a) const {
  const Field& f = *field_;
  const Elem minus_a = f.neg(a);
  std::vector<Elem> r;
  for (std::size_t i = c_.size(); i-- > 0;) {
    // r <- r * (x - a) + c_i
    r.push_back(0);
    for (std::size_t t = r.size() - 1; t > 0; --t) r[t] = f.add(r[t - 1], f.mul(r[t], minus_a));
    r[0] = f.add(f.mul(r[0], minus_a), c_[i]);
  }
  return UniPoly(field_, std::move(r));
}

UniPoly UniPoly::reversed(int frame) const {
  if (frame < degree()) throw Error(ErrorCode::InvalidArgument, "reversal frame below degree");
  std::vector<Elem> r(static_cast<std::size_t>(frame) + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[frame - i] = c_[i];
  return UniPoly(field_, std::move(r));
}

std::string UniPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Elem c = c_[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    std::string cs = field_->format(c);
    if (field_->format_is_compound(c) && i > 0) cs = "(" + cs + ")";
    if (i == 0) {
      out += cs;
      continue;
    }
    if (c != 1) out += cs + "*";
    out += var;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  const Field& f = *a.field();
  if (a.degree() < b.degree()) return {UniPoly(a.field()), a};
  std::vector<Elem> rem(a.coeffs());
  const auto& bc = b.coeffs();
  const int db = b.degree();
  const Elem inv_lc = f.inv(b.lc());
  std::vector<Elem> quo(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  for (int i = a.degree(); i >= db; --i) {
    const Elem c = rem[i];
    if (c == 0) continue;
    const Elem factor = f.mul(c, inv_lc);
    quo[i - db] = factor;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = f.sub(rem[i - db + j], f.mul(factor, bc[j]));
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UniPoly(a.field(), std::move(quo)), UniPoly(a.field(), std::move(rem))};
}

UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }
UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }

UniPoly derivative(const UniPoly& u) {
  const Field& f = *u.field();
  std::vector<Elem> r;
  for (int i = 1; i <= u.degree(); ++i) r.push_back(f.mul(f.from_int(i), u.coeff(i)));
  return UniPoly(u.field(), std::move(r));
}

UniPoly monic(const UniPoly& u) {
  if (u.is_zero()) return u;
  return u.scaled(u.field()->inv(u.lc()));
}

UniPoly gcd(const UniPoly& u, const UniPoly& v) {
  if (u.is_zero() && v.is_zero()) throw Error(ErrorCode::BothZero, "gcd(0, 0)");
  UniPoly a = u, b = v;
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m) { return (a * b) % m; }

UniPoly powmod(const UniPoly& base, std::uint64_t e, const UniPoly& m) {
  UniPoly result = UniPoly::constant(m.field(), 1) % m;
  UniPoly b = base % m;
  while (e > 0) {
    if (e & 1) result = mulmod(result, b, m);
    e >>= 1;
    if (e) b = mulmod(b, b, m);
  }
  return result;
}

UniPoly frobenius_powmod(const UniPoly& base, std::uint64_t r, const UniPoly& m) {
  UniPoly cur = base % m;
  const std::uint64_t p = m.field()->p();
  for (std::uint64_t s = 0; s < r; ++s) cur = powmod(cur, p, m);
  return cur;
}

UniPoly pth_root(const UniPoly& u) {
  const Field& f = *u.field();
  const int p = static_cast<int>(f.p());
  std::vector<Elem> r;
  for (int i = 0; i <= u.degree(); i += p) r.push_back(f.pth_root(u.coeff(i)));
  for (int i = 0; i <= u.degree(); ++i) {
    if (i % p != 0 && u.coeff(i) != 0) throw Error(ErrorCode::InvalidArgument, "not a p-th power");
  }
  return UniPoly(u.field(), std::move(r));
}

bool is_squarefree(const UniPoly& u) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "squarefreeness of the zero polynomial");
  if (u.degree() <= 1) return true;
  const UniPoly d = derivative(u);
  if (d.is_zero()) return false;
  return gcd(u, d).degree() == 0;
}

namespace {

void append_with_multiplier(std::map<int, UniPoly>& acc, const std::vector<Factor>& parts, int multiplier) {
  for (const auto& part : parts) {
    const int m = part.multiplicity * multiplier;
    auto it = acc.find(m);
    if (it == acc.end()) {
      acc.emplace(m, part.poly);
    } else {
      it->second = it->second * part.poly;
    }
  }
}

std::vector<Factor> squarefree_monic(const UniPoly& f) {
  std::map<int, UniPoly> acc;
  const UniPoly one = UniPoly::constant(f.field(), 1);
  if (f.degree() <= 0) return {};
  const UniPoly d = derivative(f);
  if (d.is_zero()) {
    append_with_multiplier(acc, squarefree_monic(pth_root(f)), static_cast<int>(f.field()->p()));
  } else {
    UniPoly c = gcd(f, d);
    UniPoly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
      UniPoly y = gcd(w, c);
      UniPoly fac = w / y;
      if (fac.degree() > 0) append_with_multiplier(acc, {Factor{monic(fac), 1}}, i);
      ++i;
      w = y;
      c = c / y;
    }
    if (c.degree() > 0) {
      append_with_multiplier(acc, squarefree_monic(pth_root(monic(c))), static_cast<int>(f.field()->p()));
    }
  }
  std::vector<Factor> out;
  for (auto& [m, poly] : acc) out.push_back({monic(poly), m});
  return out;
}

bool coeff_less(const UniPoly& a, const UniPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.coeffs().rbegin(), a.coeffs().rend(), b.coeffs().rbegin(),
                                      b.coeffs().rend());
}

UniPoly random_poly(const FieldPtr& field, int max_degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, field->q() - 1);
  std::vector<Elem> c(static_cast<std::size_t>(max_degree) + 1);
  for (auto& v : c) v = dist(rng);
  return UniPoly(field, std::move(c));
}

}  // namespace

std::vector<Factor> squarefree_decomposition(const UniPoly& u) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "squarefree decomposition of zero");
  return squarefree_monic(monic(u));
}

std::vector<std::pair<UniPoly, int>> distinct_degree_factorization(const UniPoly& u) {
  std::vector<std::pair<UniPoly, int>> out;
  UniPoly rest = monic(u);
  const UniPoly x = UniPoly::x(u.field());
  const std::uint64_t k = u.field()->k();
  UniPoly h = x % rest;
  for (int i = 1; rest.degree() >= 2 * i; ++i) {
    h = frobenius_powmod(h, k, rest);
    UniPoly g = gcd(rest, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest, rest.degree());
  return out;
}

std::vector<UniPoly> equal_degree_factorization(const UniPoly& u, int d, std::mt19937_64& rng) {
  if (u.degree() <= d) return {monic(u)};
  const Field& f = *u.field();
  const std::uint64_t k = f.k();
  for (;;) {
    UniPoly a = random_poly(u.field(), u.degree() - 1, rng);
    if (a.degree() <= 0) continue;
    UniPoly b(u.field());
    if (f.p() == 2) {
      // Absolute trace a + a^2 + ... + a^(2^(kd-1)).
      UniPoly term = a % u;
      b = term;
      for (std::uint64_t s = 1; s < k * static_cast<std::uint64_t>(d); ++s) {
        term = mulmod(term, term, u);
        b = b + term;
      }
    } else {
      // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
      UniPoly norm = a % u;
      UniPoly conj = a % u;
      for (int s = 1; s < d; ++s) {
        conj = frobenius_powmod(conj, k, u);
        norm = mulmod(norm, conj, u);
      }
      b = powmod(norm, (f.q() - 1) / 2, u) - UniPoly::constant(u.field(), 1);
    }
    if (b.is_zero()) continue;
    UniPoly g = gcd(u, b);
    if (g.degree() > 0 && g.degree() < u.degree()) {
      auto left = equal_degree_factorization(g, d, rng);
      auto right = equal_degree_factorization(u / g, d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

std::uint64_t canonical_hash(const UniPoly& u) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(u.field()->p());
  mix(u.field()->k());
  for (auto c : u.coeffs()) mix(c);
  return h;
}

std::vector<Factor> factorize(const UniPoly& u) {
  if (u.degree() < 1) throw Error(ErrorCode::ConstantPolynomial, "factorization of a constant");
  std::mt19937_64 rng(canonical_hash(u));
  std::vector<Factor> out;
  for (const auto& sq : squarefree_decomposition(u)) {
    for (const auto& [part, d] : distinct_degree_factorization(sq.poly)) {
      for (auto& irr : equal_degree_factorization(part, d, rng)) out.push_back({irr, sq.multiplicity});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.poly == b.poly) return a.multiplicity < b.multiplicity;
    return coeff_less(a.poly, b.poly);
  });
  UniPoly check = UniPoly::constant(u.field(), u.lc());
  for (const auto& fac : out) {
    for (int i = 0; i < fac.multiplicity; ++i) check = check * fac.poly;
  }
  if (!(check == u)) throw std::logic_error("factorization does not reconstruct its input");
  return out;
}

std::vector<Elem> roots(const UniPoly& u) {
  if (u.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  if (u.degree() < 1) return {};
  const UniPoly x = UniPoly::x(u.field());
  UniPoly split = gcd(u, frobenius_powmod(x, u.field()->k(), u) - x);
  std::vector<Elem> out;
  if (split.degree() < 1) return out;
  std::mt19937_64 rng(canonical_hash(split));
  for (const auto& lin : equal_degree_factorization(split, 1, rng)) out.push_back(u.field()->neg(lin.coeff(0)));
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_roots(const UniPoly& u, std::uint64_t m) {
  const Field& f = *u.field();
  if (u.is_zero()) {
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < m; ++i) q *= f.q();
    return q;
  }
  if (u.degree() < 1) return 0;
  const UniPoly x = UniPoly::x(u.field());
  const UniPoly frob = frobenius_powmod(x, f.k() * m, u);
  return static_cast<std::uint64_t>(gcd(u, frob - x).degree());
}

UniPoly embed(const UniPoly& u, const FieldPtr& target) {
  if (u.field() == target) return u;
  auto emb = embedding(u.field(), target);
  std::vector<Elem> c;
  c.reserve(u.coeffs().size());
  for (auto v : u.coeffs()) c.push_back((*emb)(v));
  return UniPoly(target, std::move(c));
}

}  // namespace nondeg
