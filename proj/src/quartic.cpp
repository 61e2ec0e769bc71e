#include "nondeg/quartic.hpp"

#include <map>
#include <mutex>

namespace nondeg {

const std::vector<std::array<int, 3>>& TernaryForm::monomials(int degree) {
  static std::mutex mutex;
  static std::map<int, std::vector<std::array<int, 3>>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(degree);
  if (it == cache.end()) {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a <= degree; ++a) {
      for (int b = 0; b <= degree - a; ++b) out.push_back({a, b, degree - a - b});
    }
    it = cache.emplace(degree, std::move(out)).first;
  }
  return it->second;
}

int TernaryForm::index(int a, int b, int c) {
  const int d = a + b + c;
  // monomials with first exponent < a come first: sum_{t<a} (d - t + 1)
  const int before = a * (d + 1) - a * (a - 1) / 2;
  return before + b;
}

TernaryForm::TernaryForm(FieldPtr field, int degree)
    : field_(std::move(field)), degree_(degree), c_(static_cast<std::size_t>((degree + 1) * (degree + 2) / 2), 0) {}

TernaryForm::TernaryForm(FieldPtr field, int degree, std::vector<Elem> coeffs)
    : field_(std::move(field)), degree_(degree), c_(std::move(coeffs)) {
  if (c_.size() != static_cast<std::size_t>((degree + 1) * (degree + 2) / 2)) {
    throw Error(ErrorCode::InvalidArgument, "wrong number of coefficients for a ternary form");
  }
}

bool TernaryForm::is_zero() const {
  for (auto v : c_) {
    if (v != 0) return false;
  }
  return true;
}

Elem TernaryForm::eval(Elem x, Elem y, Elem z) const {
  const Field& f = *field_;
  Elem sum = 0;
  const auto& mons = monomials(degree_);
  for (std::size_t i = 0; i < mons.size(); ++i) {
    if (c_[i] == 0) continue;
    const auto& m = mons[i];
    sum = f.add(sum, f.mul(c_[i], f.mul(f.pow(x, m[0]), f.mul(f.pow(y, m[1]), f.pow(z, m[2])))));
  }
  return sum;
}

TernaryForm TernaryForm::operator+(const TernaryForm& o) const {
  if (o.degree_ != degree_) throw Error(ErrorCode::InvalidArgument, "adding forms of different degree");
  TernaryForm r(*this);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_->add(c_[i], o.c_[i]);
  return r;
}

TernaryForm TernaryForm::operator*(const TernaryForm& o) const {
  const Field& f = *field_;
  TernaryForm r(field_, degree_ + o.degree_);
  const auto& ma = monomials(degree_);
  const auto& mb = monomials(o.degree_);
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      if (o.c_[j] == 0) continue;
      const int idx = index(ma[i][0] + mb[j][0], ma[i][1] + mb[j][1], ma[i][2] + mb[j][2]);
      r.c_[idx] = f.add(r.c_[idx], f.mul(c_[i], o.c_[j]));
    }
  }
  return r;
}

TernaryForm TernaryForm::scaled(Elem c) const {
  TernaryForm r(*this);
  for (auto& v : r.c_) v = field_->mul(v, c);
  return r;
}

TernaryForm TernaryForm::normalized() const {
  for (auto v : c_) {
    if (v != 0) return scaled(field_->inv(v));
  }
  return *this;
}

TernaryForm partial(const TernaryForm& f, int var) {
  const Field& F = *f.field();
  TernaryForm r(f.field(), f.degree() - 1);
  const auto& mons = TernaryForm::monomials(f.degree());
  for (std::size_t i = 0; i < mons.size(); ++i) {
    auto m = mons[i];
    if (m[var] == 0 || f.coeffs()[i] == 0) continue;
    const Elem c = F.mul(F.from_int(m[var]), f.coeffs()[i]);
    m[var] -= 1;
    r.set_coeff(m[0], m[1], m[2], F.add(r.coeff(m[0], m[1], m[2]), c));
  }
  return r;
}

TernaryForm homogenize(const LaurentPoly& f, int degree) {
  TernaryForm r(f.field(), degree);
  for (const auto& t : f.terms()) {
    if (t.e.i < 0 || t.e.j < 0 || t.e.i + t.e.j > degree) {
      throw Error(ErrorCode::SupportOutsideTriangle, "term " + to_string(t.e) + " outside the degree-" +
                                                         std::to_string(degree) + " triangle");
    }
    r.set_coeff(static_cast<int>(t.e.i), static_cast<int>(t.e.j), degree - static_cast<int>(t.e.i + t.e.j), t.c);
  }
  return r;
}

TernaryQuartic homogenize(const LaurentPoly& f) { return homogenize(f, 4); }

LaurentPoly dehomogenize(const TernaryForm& f, Chart chart) {
  std::vector<Term> terms;
  const auto& mons = TernaryForm::monomials(f.degree());
  for (std::size_t i = 0; i < mons.size(); ++i) {
    if (f.coeffs()[i] == 0) continue;
    const auto& m = mons[i];
    LatticePoint e;
    switch (chart) {
      case Chart::Z: e = {m[0], m[1]}; break;
      case Chart::X: e = {m[1], m[2]}; break;
      case Chart::Y: e = {m[0], m[2]}; break;
    }
    terms.push_back({e, f.coeffs()[i]});
  }
  return LaurentPoly(f.field(), std::move(terms));
}

Mat3 mat3_identity() { return Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

Mat3 mat3_mul(const Field& f, const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Elem s = 0;
      for (int t = 0; t < 3; ++t) s = f.add(s, f.mul(a[i][t], b[t][j]));
      r[i][j] = s;
    }
  }
  return r;
}

Elem mat3_det(const Field& f, const Mat3& a) {
  auto minor = [&](int r1, int c1, int r2, int c2) {
    return f.sub(f.mul(a[r1][c1], a[r2][c2]), f.mul(a[r1][c2], a[r2][c1]));
  };
  Elem d = f.mul(a[0][0], minor(1, 1, 2, 2));
  d = f.sub(d, f.mul(a[0][1], minor(1, 0, 2, 2)));
  d = f.add(d, f.mul(a[0][2], minor(1, 0, 2, 1)));
  return d;
}

Mat3 mat3_inverse(const Field& f, const Mat3& a) {
  const Elem d = mat3_det(f, a);
  if (d == 0) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
  const Elem inv_d = f.inv(d);
  Mat3 r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // cofactor of a[j][i]
      const int r1 = (j + 1) % 3, r2 = (j + 2) % 3;
      const int c1 = (i + 1) % 3, c2 = (i + 2) % 3;
      const Elem cof = f.sub(f.mul(a[r1][c1], a[r2][c2]), f.mul(a[r1][c2], a[r2][c1]));
      r[i][j] = f.mul(cof, inv_d);
    }
  }
  return r;
}

TernaryForm apply_pgl3(const TernaryForm& form, const Mat3& m) {
  const Field& f = *form.field();
  if (mat3_det(f, m) == 0) throw Error(ErrorCode::SingularMatrix, "projective transformation is singular");
  const int d = form.degree();
  // powers[v][e] = (row v of m, as a linear form)^e
  std::array<std::vector<TernaryForm>, 3> powers;
  for (int v = 0; v < 3; ++v) {
    TernaryForm lin(form.field(), 1);
    lin.set_coeff(1, 0, 0, m[v][0]);
    lin.set_coeff(0, 1, 0, m[v][1]);
    lin.set_coeff(0, 0, 1, m[v][2]);
    powers[v].push_back(TernaryForm(form.field(), 0, {1}));
    for (int e = 1; e <= d; ++e) powers[v].push_back(powers[v].back() * lin);
  }
  TernaryForm out(form.field(), d);
  const auto& mons = TernaryForm::monomials(d);
  for (std::size_t i = 0; i < mons.size(); ++i) {
    const Elem c = form.coeffs()[i];
    if (c == 0) continue;
    const auto& mo = mons[i];
    out = out + (powers[0][mo[0]] * powers[1][mo[1]] * powers[2][mo[2]]).scaled(c);
  }
  return out;
}

std::string to_string(const TernaryForm& f) {
  std::string out;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) out += ",";
    out += f.field()->format(f.coeffs()[i]);
  }
  return out;
}

}  // namespace nondeg
