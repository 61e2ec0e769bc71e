#include "nondeg/laurent.hpp"

#include <algorithm>
#include <map>

namespace nondeg {

std::string to_string(const LatticePoint& pt) {
  return "(" + std::to_string(pt.i) + "," + std::to_string(pt.j) + ")";
}

AffineLatticeMap::AffineLatticeMap(const Matrix& m, LatticePoint translation) : m_(m), t_(translation) {
  const long long d = det();
  if (d != 1 && d != -1) throw Error(ErrorCode::NonUnimodularMatrix, "determinant " + std::to_string(d));
}

AffineLatticeMap AffineLatticeMap::inverse() const {
  const long long d = det();
  // inverse of a unimodular matrix: adjugate / det
  Matrix inv{{{m_[1][1] * d, -m_[0][1] * d}, {-m_[1][0] * d, m_[0][0] * d}}};
  AffineLatticeMap lin(inv, {0, 0});
  const LatticePoint back = lin.apply_linear(t_);
  return AffineLatticeMap(inv, {-back.i, -back.j});
}

AffineLatticeMap AffineLatticeMap::compose(const AffineLatticeMap& other) const {
  Matrix m{};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) m[r][c] = m_[r][0] * other.m_[0][c] + m_[r][1] * other.m_[1][c];
  }
  return AffineLatticeMap(m, apply(other.t_));
}

LaurentPoly::LaurentPoly(FieldPtr field, std::vector<Term> terms) : field_(std::move(field)) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.e < b.e; });
  const Field& f = *field_;
  for (const auto& t : terms) {
    if (!terms_.empty() && terms_.back().e == t.e) {
      terms_.back().c = f.add(terms_.back().c, t.c);
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.c == 0; });
}

LaurentPoly LaurentPoly::monomial(FieldPtr field, Elem c, long long i, long long j) {
  return LaurentPoly(std::move(field), std::vector<Term>{{{i, j}, c}});
}

Elem LaurentPoly::coeff(long long i, long long j) const {
  const LatticePoint key{i, j};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key, [](const Term& t, const LatticePoint& k) { return t.e < k; });
  return (it != terms_.end() && it->e == key) ? it->c : 0;
}

std::vector<LatticePoint> LaurentPoly::support() const {
  std::vector<LatticePoint> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.e);
  return out;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  std::vector<Term> all(terms_);
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return LaurentPoly(field_, std::move(all));
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  const Field& f = *field_;
  std::vector<Term> all;
  all.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) all.push_back({a.e + b.e, f.mul(a.c, b.c)});
  }
  return LaurentPoly(field_, std::move(all));
}

LaurentPoly LaurentPoly::operator-() const { return scaled(field_->neg(1)); }

LaurentPoly LaurentPoly::scaled(Elem c) const {
  std::vector<Term> out(terms_);
  for (auto& t : out) t.c = field_->mul(t.c, c);
  return LaurentPoly(field_, std::move(out));
}

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly result = constant(field_, 1);
  LaurentPoly base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

LaurentPoly LaurentPoly::shifted(long long di, long long dj) const {
  std::vector<Term> out(terms_);
  for (auto& t : out) t.e = t.e + LatticePoint{di, dj};
  return LaurentPoly(field_, std::move(out));
}

Elem LaurentPoly::eval(Elem x, Elem y) const {
  const Field& f = *field_;
  Elem sum = 0;
  for (const auto& t : terms_) {
    Elem xv = t.e.i >= 0 ? f.pow(x, static_cast<std::uint64_t>(t.e.i)) : f.pow(f.inv(x), static_cast<std::uint64_t>(-t.e.i));
    Elem yv = t.e.j >= 0 ? f.pow(y, static_cast<std::uint64_t>(t.e.j)) : f.pow(f.inv(y), static_cast<std::uint64_t>(-t.e.j));
    sum = f.add(sum, f.mul(t.c, f.mul(xv, yv)));
  }
  return sum;
}

LatticePoint LaurentPoly::min_exponents() const {
  if (terms_.empty()) return {};
  LatticePoint m = terms_.front().e;
  for (const auto& t : terms_) {
    m.i = std::min(m.i, t.e.i);
    m.j = std::min(m.j, t.e.j);
  }
  return m;
}

LatticePoint LaurentPoly::max_exponents() const {
  if (terms_.empty()) return {};
  LatticePoint m = terms_.front().e;
  for (const auto& t : terms_) {
    m.i = std::max(m.i, t.e.i);
    m.j = std::max(m.j, t.e.j);
  }
  return m;
}

LaurentPoly LaurentPoly::shifted_to_origin() const {
  const auto m = min_exponents();
  return shifted(-m.i, -m.j);
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (field_ != o.field_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].e != o.terms_[i].e || terms_[i].c != o.terms_[i].c) return false;
  }
  return true;
}

LaurentPoly partial_x(const LaurentPoly& f) {
  const Field& F = *f.field();
  std::vector<Term> out;
  for (const auto& t : f.terms()) out.push_back({{t.e.i - 1, t.e.j}, F.mul(F.from_int(t.e.i), t.c)});
  return LaurentPoly(f.field(), std::move(out));
}

LaurentPoly partial_y(const LaurentPoly& f) {
  const Field& F = *f.field();
  std::vector<Term> out;
  for (const auto& t : f.terms()) out.push_back({{t.e.i, t.e.j - 1}, F.mul(F.from_int(t.e.j), t.c)});
  return LaurentPoly(f.field(), std::move(out));
}

LaurentPoly euler_x(const LaurentPoly& f) {
  const Field& F = *f.field();
  std::vector<Term> out;
  for (const auto& t : f.terms()) out.push_back({t.e, F.mul(F.from_int(t.e.i), t.c)});
  return LaurentPoly(f.field(), std::move(out));
}

LaurentPoly euler_y(const LaurentPoly& f) {
  const Field& F = *f.field();
  std::vector<Term> out;
  for (const auto& t : f.terms()) out.push_back({t.e, F.mul(F.from_int(t.e.j), t.c)});
  return LaurentPoly(f.field(), std::move(out));
}

LaurentPoly shift_x(const LaurentPoly& f, Elem a) {
  std::map<long long, std::vector<Elem>> rows;
  for (const auto& t : f.terms()) {
    if (t.e.i < 0) throw Error(ErrorCode::NegativeExponentShift, "x-shift of a term with negative x-exponent");
    auto& row = rows[t.e.j];
    if (static_cast<long long>(row.size()) <= t.e.i) row.resize(static_cast<std::size_t>(t.e.i) + 1, 0);
    row[t.e.i] = t.c;
  }
  std::vector<Term> out;
  for (auto& [j, coeffs] : rows) {
    const UniPoly shifted = UniPoly(f.field(), coeffs).taylor_shift(a);
    for (int i = 0; i <= shifted.degree(); ++i) {
      if (shifted.coeff(i) != 0) out.push_back({{i, j}, shifted.coeff(i)});
    }
  }
  return LaurentPoly(f.field(), std::move(out));
}

LaurentPoly shift_y_by_poly(const LaurentPoly& f, const UniPoly& t) {
  long long max_j = 0;
  for (const auto& term : f.terms()) {
    if (term.e.j < 0) throw Error(ErrorCode::NegativeExponentShift, "y-shift of a term with negative y-exponent");
    max_j = std::max(max_j, term.e.j);
  }
  std::vector<Term> t_terms{{{0, 1}, 1}};
  for (int i = 0; i <= t.degree(); ++i) {
    if (t.coeff(i) != 0) t_terms.push_back({{i, 0}, t.coeff(i)});
  }
  const LaurentPoly y_plus_t(f.field(), std::move(t_terms));
  std::vector<LaurentPoly> powers{LaurentPoly::constant(f.field(), 1)};
  for (long long j = 1; j <= max_j; ++j) powers.push_back(powers.back() * y_plus_t);
  LaurentPoly out(f.field());
  for (const auto& term : f.terms()) {
    out = out + powers[term.e.j].shifted(term.e.i, 0).scaled(term.c);
  }
  return out;
}

LaurentPoly monomial_map(const LaurentPoly& f, const AffineLatticeMap& map) {
  std::vector<Term> out;
  for (const auto& t : f.terms()) out.push_back({map.apply(t.e), t.c});
  return LaurentPoly(f.field(), std::move(out));
}

LaurentPoly scale(const LaurentPoly& f, Elem c) { return f.scaled(c); }

LaurentPoly embed(const LaurentPoly& f, const FieldPtr& target) {
  if (f.field() == target) return f;
  auto emb = embedding(f.field(), target);
  std::vector<Term> out;
  for (const auto& t : f.terms()) out.push_back({t.e, (*emb)(t.c)});
  return LaurentPoly(target, std::move(out));
}

UniPoly row_polynomial(const LaurentPoly& f, long long row) {
  std::vector<Elem> c;
  for (const auto& t : f.terms()) {
    if (t.e.j != row) continue;
    if (t.e.i < 0) throw Error(ErrorCode::InvalidArgument, "row polynomial with negative x-exponent");
    if (static_cast<long long>(c.size()) <= t.e.i) c.resize(static_cast<std::size_t>(t.e.i) + 1, 0);
    c[t.e.i] = t.c;
  }
  return UniPoly(f.field(), std::move(c));
}

std::string to_string(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  const Field& F = *f.field();
  std::string out;
  for (const auto& t : f.terms()) {
    std::string mono;
    auto add_var = [&](char v, long long e) {
      if (e == 0) return;
      if (!mono.empty()) mono += "*";
      mono += v;
      if (e != 1) mono += "^" + std::to_string(e);
    };
    add_var('x', t.e.i);
    add_var('y', t.e.j);
    std::string term;
    if (mono.empty()) {
      term = F.format(t.c);
    } else if (t.c == 1) {
      term = mono;
    } else {
      std::string cs = F.format(t.c);
      if (F.format_is_compound(t.c)) cs = "(" + cs + ")";
      term = cs + "*" + mono;
    }
    if (!out.empty()) out += "+";
    out += term;
  }
  return out;
}

std::uint64_t canonical_hash(const LaurentPoly& f) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix_byte = [&](unsigned char b) {
    h ^= b;
    h *= 1099511628211ull;
  };
  for (char ch : std::to_string(f.field()->p()) + "^" + std::to_string(f.field()->k()) + ":" + to_string(f)) {
    mix_byte(static_cast<unsigned char>(ch));
  }
  return h;
}

}  // namespace nondeg
