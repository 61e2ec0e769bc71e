#include "nondeg/resultant.hpp"

#include <algorithm>

namespace nondeg {

BiPoly::BiPoly(FieldPtr field, std::vector<UniPoly> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  normalize();
}

void BiPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BiPoly BiPoly::from_laurent(const LaurentPoly& f) {
  const auto mx = f.max_exponents();
  std::vector<std::vector<Elem>> rows(f.is_zero() ? 0 : static_cast<std::size_t>(mx.j) + 1);
  for (const auto& t : f.terms()) {
    if (t.e.i < 0 || t.e.j < 0) throw Error(ErrorCode::InvalidArgument, "bivariate view needs nonnegative exponents");
    auto& row = rows[t.e.j];
    if (static_cast<long long>(row.size()) <= t.e.i) row.resize(static_cast<std::size_t>(t.e.i) + 1, 0);
    row[t.e.i] = t.c;
  }
  std::vector<UniPoly> c;
  for (auto& r : rows) c.emplace_back(f.field(), std::move(r));
  return BiPoly(f.field(), std::move(c));
}

UniPoly BiPoly::coeff(int j) const {
  return (j >= 0 && j < static_cast<int>(c_.size())) ? c_[j] : UniPoly(field_);
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  std::vector<UniPoly> r;
  const int n = std::max(degree_y(), o.degree_y());
  for (int j = 0; j <= n; ++j) r.push_back(coeff(j) + o.coeff(j));
  return BiPoly(field_, std::move(r));
}

BiPoly BiPoly::operator-(const BiPoly& o) const {
  std::vector<UniPoly> r;
  const int n = std::max(degree_y(), o.degree_y());
  for (int j = 0; j <= n; ++j) r.push_back(coeff(j) - o.coeff(j));
  return BiPoly(field_, std::move(r));
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
  if (is_zero() || o.is_zero()) return BiPoly(field_);
  std::vector<UniPoly> r(c_.size() + o.c_.size() - 1, UniPoly(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
  }
  return BiPoly(field_, std::move(r));
}

BiPoly BiPoly::scaled(const UniPoly& c) const {
  std::vector<UniPoly> r;
  for (const auto& v : c_) r.push_back(v * c);
  return BiPoly(field_, std::move(r));
}

BiPoly BiPoly::divided(const UniPoly& c) const {
  std::vector<UniPoly> r;
  for (const auto& v : c_) {
    auto [quo, rem] = divmod(v, c);
    if (!rem.is_zero()) throw std::logic_error("inexact division in F_q[x][y]");
    r.push_back(std::move(quo));
  }
  return BiPoly(field_, std::move(r));
}

UniPoly BiPoly::specialize_x(Elem x0, const FieldPtr& target) const {
  std::vector<Elem> out;
  out.reserve(c_.size());
  for (const auto& v : c_) out.push_back(embed(v, target).eval(x0));
  return UniPoly(target, std::move(out));
}

LaurentPoly BiPoly::to_laurent() const {
  std::vector<Term> terms;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    for (int i = 0; i <= c_[j].degree(); ++i) {
      if (c_[j].coeff(i) != 0) terms.push_back({{i, static_cast<long long>(j)}, c_[j].coeff(i)});
    }
  }
  return LaurentPoly(field_, std::move(terms));
}

BiPoly pseudo_remainder(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "pseudo-division by zero");
  const int m = a.degree_y();
  const int n = b.degree_y();
  if (m < n) return a;
  BiPoly r = a;
  const UniPoly& lb = b.lc();
  int steps = 0;
  while (!r.is_zero() && r.degree_y() >= n) {
    const int shift = r.degree_y() - n;
    std::vector<UniPoly> mono(static_cast<std::size_t>(shift) + 1, UniPoly(a.field()));
    mono[shift] = r.lc();
    r = r.scaled(lb) - b * BiPoly(a.field(), std::move(mono));
    ++steps;
  }
  UniPoly factor = UniPoly::constant(a.field(), 1);
  for (int i = steps; i < m - n + 1; ++i) factor = factor * lb;
  return r.scaled(factor);
}

UniPoly content(const BiPoly& f) {
  if (f.is_zero()) return UniPoly(f.field());
  UniPoly c(f.field());
  for (const auto& v : f.coeffs()) {
    if (v.is_zero()) continue;
    c = c.is_zero() ? monic(v) : gcd(c, v);
    if (c.degree() == 0) break;
  }
  return c;
}

BiPoly primitive_part(const BiPoly& f) {
  if (f.is_zero()) return f;
  return f.divided(content(f));
}

namespace {

UniPoly upow(const UniPoly& u, int n) {
  UniPoly r = UniPoly::constant(u.field(), 1);
  for (int i = 0; i < n; ++i) r = r * u;
  return r;
}

UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
  auto [quo, rem] = divmod(a, b);
  if (!rem.is_zero()) throw std::logic_error("inexact division in the subresultant sequence");
  return quo;
}

}  // namespace

UniPoly resultant_y(const BiPoly& f, const BiPoly& g) {
  const FieldPtr& field = f.field();
  if (f.is_zero() || g.is_zero()) return UniPoly(field);
  BiPoly a = f, b = g;
  bool negate = false;
  if (a.degree_y() < b.degree_y()) {
    std::swap(a, b);
    if (a.degree_y() % 2 == 1 && b.degree_y() % 2 == 1) negate = true;
  }
  UniPoly result(field);
  if (b.degree_y() == 0) {
    result = upow(b.lc(), a.degree_y());
  } else {
    UniPoly gg = UniPoly::constant(field, 1);
    UniPoly h = UniPoly::constant(field, 1);
    for (;;) {
      const int delta = a.degree_y() - b.degree_y();
      if (a.degree_y() % 2 == 1 && b.degree_y() % 2 == 1) negate = !negate;
      BiPoly r = pseudo_remainder(a, b);
      a = b;
      b = r.divided(gg * upow(h, delta));
      gg = a.lc();
      if (delta == 0) {
        // h unchanged
      } else {
        h = exact_div(upow(gg, delta), upow(h, delta - 1));
      }
      if (b.degree_y() <= 0) break;
    }
    if (b.is_zero()) return UniPoly(field);
    const int da = a.degree_y();
    result = exact_div(upow(b.lc(), da), upow(h, da - 1));
  }
  return negate ? -result : result;
}

UniPoly resultant_y(const LaurentPoly& f, const LaurentPoly& g) {
  return resultant_y(BiPoly::from_laurent(f), BiPoly::from_laurent(g));
}

UniPoly sylvester_resultant_y(const BiPoly& f, const BiPoly& g) {
  const FieldPtr& field = f.field();
  if (f.is_zero() || g.is_zero()) return UniPoly(field);
  const int m = f.degree_y();
  const int n = g.degree_y();
  const int size = m + n;
  if (size == 0) return UniPoly::constant(field, 1);
  std::vector<std::vector<UniPoly>> mat(size, std::vector<UniPoly>(size, UniPoly(field)));
  for (int r = 0; r < n; ++r) {
    for (int t = 0; t <= m; ++t) mat[r][r + t] = f.coeff(m - t);
  }
  for (int r = 0; r < m; ++r) {
    for (int t = 0; t <= n; ++t) mat[n + r][r + t] = g.coeff(n - t);
  }
  bool negate = false;
  UniPoly prev = UniPoly::constant(field, 1);
  for (int k = 0; k + 1 < size; ++k) {
    if (mat[k][k].is_zero()) {
      int swap_row = -1;
      for (int r = k + 1; r < size; ++r) {
        if (!mat[r][k].is_zero()) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return UniPoly(field);
      std::swap(mat[k], mat[swap_row]);
      negate = !negate;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        mat[i][j] = exact_div(mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j], prev);
      }
      mat[i][k] = UniPoly(field);
    }
    prev = mat[k][k];
  }
  UniPoly det = mat[size - 1][size - 1];
  return negate ? -det : det;
}

Elem resultant(const UniPoly& f, const UniPoly& g) {
  auto lift = [](const UniPoly& u) {
    std::vector<UniPoly> c;
    for (auto v : u.coeffs()) c.push_back(UniPoly::constant(u.field(), v));
    return BiPoly(u.field(), std::move(c));
  };
  return resultant_y(lift(f), lift(g)).coeff(0);
}

BiPoly gcd(const BiPoly& f, const BiPoly& g) {
  auto normalized = [](const BiPoly& b) {
    if (b.is_zero()) return b;
    const Elem lead = b.lc().lc();
    return b.scaled(UniPoly::constant(b.field(), b.field()->inv(lead)));
  };
  if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::BothZero, "bivariate gcd(0, 0)");
  if (f.is_zero()) return normalized(g);
  if (g.is_zero()) return normalized(f);
  const UniPoly c = gcd(content(f), content(g));
  BiPoly a = primitive_part(f);
  BiPoly b = primitive_part(g);
  if (a.degree_y() < b.degree_y()) std::swap(a, b);
  while (!b.is_zero() && b.degree_y() > 0) {
    BiPoly r = pseudo_remainder(a, b);
    a = b;
    b = primitive_part(r);
  }
  BiPoly result = b.is_zero() ? a : BiPoly(f.field(), {UniPoly::constant(f.field(), 1)});
  return normalized(result.scaled(c));
}

}  // namespace nondeg
