#include "nondeg/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "nondeg/nondegen.hpp"

namespace nondeg {

namespace {

FieldPtr extension(const FieldPtr& base, std::uint32_t degree) { return make_field(base->p(), base->k() * degree); }

void require_char2(const HyperellipticModel& m, const char* what) {
  if (m.field->p() != 2) throw Error(ErrorCode::InvalidArgument, std::string(what) + " needs characteristic 2");
}

// Pole order d of z^2 + z = t^{-n} P/R^2 after Artin-Schreier reduction at a
// place with residue field L; P(0), R(0) != 0. Returns 0 if unramified.
int local_conductor(const Field& L, std::vector<Elem> P, std::vector<Elem> R, int n) {
  if (n <= 0) return 0;
  const std::size_t N = static_cast<std::size_t>(n);
  P.resize(N, 0);
  R.resize(N, 0);
  std::vector<Elem> R2(N, 0), inv(N, 0), H(N, 0);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; i + j < N; ++j) R2[i + j] = L.add(R2[i + j], L.mul(R[i], R[j]));
  }
  inv[0] = L.inv(R2[0]);
  for (std::size_t k = 1; k < N; ++k) {
    Elem s = 0;
    for (std::size_t i = 1; i <= k; ++i) s = L.add(s, L.mul(R2[i], inv[k - i]));
    inv[k] = L.neg(L.mul(s, inv[0]));
  }
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; i + j < N; ++j) H[i + j] = L.add(H[i + j], L.mul(P[i], inv[j]));
  }
  // pp[k] is the coefficient of t^{-k}
  std::vector<Elem> pp(N + 1, 0);
  for (std::size_t k = 1; k <= N; ++k) pp[k] = H[N - k];
  for (;;) {
    std::size_t top = N;
    while (top > 0 && pp[top] == 0) --top;
    if (top == 0) return 0;
    if (top % 2 == 1) return static_cast<int>(top);
    // z <- z + s t^{-top/2}
    const Elem s = L.pth_root(pp[top]);
    pp[top] = 0;
    pp[top / 2] = L.add(pp[top / 2], s);
  }
}

std::vector<Elem> from_index(std::uint64_t idx, std::uint64_t q, int n) {
  std::vector<Elem> c(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    c[i] = idx % q;
    idx /= q;
  }
  return c;
}

// Coefficients of F(x, 1, 0) in x.
UniPoly line_at_infinity(const TernaryForm& f) {
  std::vector<Elem> c(static_cast<std::size_t>(f.degree()) + 1, 0);
  for (int a = 0; a <= f.degree(); ++a) c[a] = f.coeff(a, f.degree() - a, 0);
  return UniPoly(f.field(), c);
}

__int128 ipow(std::uint64_t q, int m) {
  __int128 r = 1;
  for (int i = 0; i < m; ++i) {
    r *= q;
    if (r > static_cast<__int128>(1) << 100) throw Error(ErrorCode::InvalidArgument, "count out of range");
  }
  return r;
}

}  // namespace

HyperellipticModel::HyperellipticModel(UniPoly r_, UniPoly p_, int genus)
    : field(p_.field()), r(std::move(r_)), p(std::move(p_)), g(genus) {
  if (r.field() != p.field()) throw Error(ErrorCode::MixedFields, "r and p over different fields");
  if (g < 0) throw Error(ErrorCode::InvalidArgument, "negative genus");
  if (r.degree() > g + 1 || p.degree() > 2 * g + 2) {
    throw Error(ErrorCode::InvalidArgument, "model outside the degree frame of genus " + std::to_string(g));
  }
}

LaurentPoly to_laurent(const HyperellipticModel& m) {
  std::vector<Term> terms{{{0, 2}, 1}};
  for (int i = 0; i <= m.r.degree(); ++i) terms.push_back({{i, 1}, m.r.coeff(i)});
  for (int i = 0; i <= m.p.degree(); ++i) terms.push_back({{i, 0}, m.field->neg(m.p.coeff(i))});
  return LaurentPoly(m.field, terms);
}

std::optional<HyperellipticModel> model_from_laurent(const LaurentPoly& f, int g) {
  if (f.is_zero()) return std::nullopt;
  const auto lo = f.min_exponents(), hi = f.max_exponents();
  if (lo.i < 0 || lo.j < 0 || hi.j != 2) return std::nullopt;
  const Field& K = *f.field();
  const UniPoly c2 = row_polynomial(f, 2);
  if (c2.degree() != 0) return std::nullopt;
  const Elem inv = K.inv(c2.coeff(0));
  const UniPoly r = row_polynomial(f, 1).scaled(inv);
  const UniPoly p = row_polynomial(f, 0).scaled(K.neg(inv));
  if (r.degree() > g + 1 || p.degree() > 2 * g + 2) return std::nullopt;
  return HyperellipticModel(r, p, g);
}

HyperellipticModel flip_model(const HyperellipticModel& m) {
  return HyperellipticModel(m.r.reversed(m.g + 1), m.p.reversed(2 * m.g + 2), m.g);
}

HyperellipticModel shift_x(const HyperellipticModel& m, Elem a) {
  return HyperellipticModel(m.r.taylor_shift(a), m.p.taylor_shift(a), m.g);
}

HyperellipticModel shift_y_by_poly(const HyperellipticModel& m, const UniPoly& t) {
  // (y + t)^2 + r (y + t) = p
  const UniPoly two = UniPoly::constant(m.field, m.field->from_int(2));
  return HyperellipticModel(m.r + two * t, m.p - t * t - m.r * t, m.g);
}

NormalizedModel normalize_hyperelliptic(const HyperellipticModel& m) {
  require_char2(m, "normalization");
  if (m.r.is_zero()) throw Error(ErrorCode::RIsZero, "r = 0");
  if (m.field->q() <= static_cast<std::uint64_t>(m.g) + 1) {
    throw Error(ErrorCode::FieldTooSmall, "q <= g + 1");
  }
  NormalizedModel out{m, {}};
  auto done = [&] { return out.model.r.degree() == m.g + 1 && out.model.r.coeff(0) != 0; };
  auto shift_to_unit = [&] {
    if (out.model.r.coeff(0) != 0) return;
    for (Elem a = 1; a < m.field->q(); ++a) {
      if (out.model.r.taylor_shift(a).coeff(0) == 0) continue;
      out.model = shift_x(out.model, a);
      out.transcript.push_back("shift_x(" + m.field->format(a) + ")");
      return;
    }
    throw std::logic_error("no shift clears the root of r at 0");
  };
  if (done()) return out;
  shift_to_unit();
  if (done()) return out;
  out.model = flip_model(out.model);
  out.transcript.push_back("flip");
  shift_to_unit();
  if (!done()) throw std::logic_error("normalization missed its target");
  return out;
}

UniPoly substituted_p(const HyperellipticModel& m, const UniPoly& t) { return m.p + m.r * t + t * t; }

UniPoly find_squarefree_substitution(const HyperellipticModel& m) {
  require_char2(m, "the squarefree substitution");
  const std::uint64_t q = m.field->q();
  std::uint64_t total = 1;
  for (int i = 0; i < m.g + 2; ++i) total *= q;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const UniPoly t(m.field, from_index(idx, q, m.g + 2));
    const UniPoly pt = substituted_p(m, t);
    if (!pt.is_zero() && is_squarefree(pt)) return t;
  }
  throw Error(ErrorCode::NoSubstitutionFound,
              "exhausted all " + std::to_string(total) + " substitutions of degree <= " + std::to_string(m.g + 1));
}

GenusResult genus_hyperelliptic(const HyperellipticModel& m) {
  GenusResult out;
  const FieldPtr& K = m.field;
  if (K->p() != 2) {
    // (y + r/2)^2 = p + r^2/4
    const UniPoly P = m.p + (m.r * m.r).scaled(K->inv(K->from_int(4)));
    int deg_u = 0;
    if (P.degree() >= 1) {
      for (const auto& f : factorize(P)) {
        if (f.multiplicity % 2 == 1) deg_u += f.poly.degree();
      }
    }
    if (deg_u <= 2) {
      out.not_hyperelliptic = true;
      return out;
    }
    out.genus = (deg_u - 1) / 2;
    return out;
  }
  if (m.r.is_zero()) {
    out.inseparable = true;
    return out;
  }
  if (m.p.is_zero()) {
    out.not_hyperelliptic = true;
    return out;
  }
  // y = r z: z^2 + z = p / r^2
  long long sum = 0;
  if (m.r.degree() >= 1) {
    for (const auto& f : factorize(m.r)) {
      const int d = f.poly.degree();
      const FieldPtr L = extension(K, static_cast<std::uint32_t>(d));
      const Elem theta = roots(embed(f.poly, L)).front();
      const auto rs = embed(m.r, L).taylor_shift(L->neg(theta)).coeffs();
      const auto ps = embed(m.p, L).taylor_shift(L->neg(theta)).coeffs();
      const auto e = std::find_if(rs.begin(), rs.end(), [](Elem c) { return c != 0; }) - rs.begin();
      const auto a = std::find_if(ps.begin(), ps.end(), [](Elem c) { return c != 0; }) - ps.begin();
      const int cond = local_conductor(*L, std::vector<Elem>(ps.begin() + a, ps.end()),
                                       std::vector<Elem>(rs.begin() + e, rs.end()), static_cast<int>(2 * e - a));
      if (cond > 0) sum += static_cast<long long>(cond + 1) * d;
    }
  }
  const int dp = m.p.degree(), dr = m.r.degree();
  const int cond = local_conductor(*K, m.p.reversed(dp).coeffs(), m.r.reversed(dr).coeffs(), dp - 2 * dr);
  if (cond > 0) sum += cond + 1;
  const long long g = sum / 2 - 1;
  if (g <= 0) {
    out.not_hyperelliptic = true;
    return out;
  }
  out.genus = static_cast<int>(g);
  return out;
}

bool quartic_smooth(const TernaryQuartic& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroForm, "zero form");
  const std::vector<TernaryForm> sys{f, partial(f, 0), partial(f, 1), partial(f, 2)};
  std::vector<LaurentPoly> affine;
  for (const auto& s : sys) affine.push_back(dehomogenize(s, Chart::Z));
  if (find_common_zero(affine, false)) return false;
  // Z = 0, Y = 1
  UniPoly common(f.field());
  for (const auto& s : sys) {
    const UniPoly u = line_at_infinity(s);
    if (u.is_zero()) continue;
    common = common.is_zero() ? monic(u) : gcd(common, u);
  }
  if (common.is_zero() || common.degree() >= 1) return false;
  // (1:0:0)
  for (const auto& s : sys) {
    if (s.eval(1, 0, 0) != 0) return true;
  }
  return false;
}

std::string to_string(const ProjectiveLine& line, const Field& field) {
  return "(" + field.format(line.c[0]) + ":" + field.format(line.c[1]) + ":" + field.format(line.c[2]) + ")";
}

std::vector<ProjectiveLine> rational_lines(const FieldPtr& field) {
  const Elem q = field->q();
  std::vector<ProjectiveLine> out{{{0, 0, 1}}};
  for (Elem c = 0; c < q; ++c) out.push_back({{0, 1, c}});
  for (Elem b = 0; b < q; ++b) {
    for (Elem c = 0; c < q; ++c) out.push_back({{1, b, c}});
  }
  return out;
}

std::vector<Elem> restrict_to_line(const TernaryForm& f, const ProjectiveLine& line) {
  const Field& K = *f.field();
  const auto [a, b, c] = line.c;
  // columns: two points spanning the line, then a point off it
  Mat3 m{};
  if (a == 1) {
    m = {{{K.neg(b), K.neg(c), 1}, {1, 0, 0}, {0, 1, 0}}};
  } else if (b == 1) {
    m = {{{1, 0, 0}, {0, K.neg(c), 1}, {0, 1, 0}}};
  } else {
    m = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  }
  const TernaryForm g = apply_pgl3(f, m);
  std::vector<Elem> out(static_cast<std::size_t>(f.degree()) + 1);
  for (int i = 0; i <= f.degree(); ++i) out[i] = g.coeff(i, f.degree() - i, 0);
  return out;
}

bool is_tangent(const TernaryQuartic& f, const ProjectiveLine& line) {
  const auto b = restrict_to_line(f, line);
  const UniPoly u(f.field(), b);
  if (u.is_zero()) return true;
  // multiplicity of the point t = 0
  if (f.degree() - u.degree() >= 2) return true;
  if (u.degree() < 2) return false;
  return !is_squarefree(u);
}

std::vector<ProjectiveLine> tangent_lines(const TernaryQuartic& f) {
  if (!quartic_smooth(f)) throw Error(ErrorCode::NotSmooth, "singular quartic");
  std::vector<ProjectiveLine> out;
  for (const auto& line : rational_lines(f.field())) {
    if (is_tangent(f, line)) out.push_back(line);
  }
  return out;
}

ThreeLines find_three_lines(const TernaryQuartic& f) {
  if (!quartic_smooth(f)) throw Error(ErrorCode::NotSmooth, "singular quartic");
  const Field& K = *f.field();
  std::vector<ProjectiveLine> good;
  for (const auto& line : rational_lines(f.field())) {
    if (!is_tangent(f, line)) good.push_back(line);
  }
  for (std::size_t i = 0; i < good.size(); ++i) {
    for (std::size_t j = i + 1; j < good.size(); ++j) {
      for (std::size_t k = j + 1; k < good.size(); ++k) {
        const Mat3 rows{{good[i].c, good[j].c, good[k].c}};
        if (mat3_det(K, rows) == 0) continue;
        const Mat3 change = mat3_inverse(K, rows);
        TernaryQuartic moved = apply_pgl3(f, change);
        LaurentPoly poly = dehomogenize(moved, Chart::Z);
        return {{good[i], good[j], good[k]}, change, std::move(moved), std::move(poly)};
      }
    }
  }
  throw Error(ErrorCode::NotFound, "no three nonconcurrent nontangent rational lines");
}

std::uint64_t count_points(const TernaryQuartic& f, std::uint32_t m, bool check_smooth) {
  if (check_smooth && !quartic_smooth(f)) throw Error(ErrorCode::NotSmooth, "singular quartic");
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "extension degree 0");
  const FieldPtr L = extension(f.field(), m);
  const auto emb = embedding(f.field(), L);
  const int d = f.degree();
  const auto& mons = TernaryForm::monomials(d);
  std::vector<Elem> c(mons.size());
  for (std::size_t i = 0; i < mons.size(); ++i) c[i] = (*emb)(f.coeffs()[i]);
  std::uint64_t n = 0;
  std::vector<Elem> xp(static_cast<std::size_t>(d) + 1), u(static_cast<std::size_t>(d) + 1);
  for (Elem x = 0; x < L->q(); ++x) {
    xp[0] = 1;
    for (int i = 1; i <= d; ++i) xp[i] = L->mul(xp[i - 1], x);
    std::fill(u.begin(), u.end(), 0);
    for (std::size_t i = 0; i < mons.size(); ++i) {
      const auto& e = mons[i];
      u[e[1]] = L->add(u[e[1]], L->mul(c[i], xp[e[0]]));
    }
    n += count_roots(UniPoly(L, u));
  }
  std::vector<Elem> inf(static_cast<std::size_t>(d) + 1);
  for (int a = 0; a <= d; ++a) inf[a] = c[TernaryForm::index(a, d - a, 0)];
  n += count_roots(UniPoly(L, inf));
  if (c[TernaryForm::index(d, 0, 0)] == 0) ++n;
  return n;
}

std::uint64_t count_points(const HyperellipticModel& m, std::uint32_t ext) {
  if (ext == 0) throw Error(ErrorCode::InvalidArgument, "extension degree 0");
  const FieldPtr L = extension(m.field, ext);
  const UniPoly r = embed(m.r, L), p = embed(m.p, L);
  std::uint64_t n = 0;
  for (Elem x = 0; x < L->q(); ++x) {
    n += count_roots(UniPoly(L, {L->neg(p.eval(x)), r.eval(x), 1}));
  }
  n += count_roots(UniPoly(L, {L->neg(p.coeff(2 * m.g + 2)), r.coeff(m.g + 1), 1}));
  return n;
}

ZetaData zeta_from_counts(std::uint64_t q, int g, const std::vector<long long>& counts) {
  if (g < 1 || static_cast<int>(counts.size()) < g) {
    throw Error(ErrorCode::InvalidArgument, "need the counts N_1..N_g");
  }
  ZetaData z;
  z.q = q;
  z.g = g;
  z.counts.assign(counts.begin(), counts.begin() + g);
  std::vector<__int128> S(static_cast<std::size_t>(g) + 1, 0), a(2 * static_cast<std::size_t>(g) + 1, 0);
  for (int m = 1; m <= g; ++m) S[m] = ipow(q, m) + 1 - counts[m - 1];
  a[0] = 1;
  for (int k = 1; k <= g; ++k) {
    __int128 s = 0;
    for (int i = 1; i <= k; ++i) s += S[i] * a[k - i];
    if (s % k != 0) throw Error(ErrorCode::InconsistentCounts, "non-integral L-polynomial coefficient");
    a[k] = -s / k;
  }
  for (int i = 0; i < g; ++i) a[2 * g - i] = ipow(q, g - i) * a[i];
  z.L.clear();
  for (const auto& v : a) z.L.push_back(static_cast<long long>(v));
  // Weil: |a_i| <= C(2g, i) q^{i/2}
  double binom = 1;
  for (int i = 0; i <= 2 * g; ++i) {
    if (std::fabs(static_cast<double>(a[i])) > binom * std::pow(static_cast<double>(q), i / 2.0) + 0.5) {
      throw Error(ErrorCode::InconsistentCounts, "L-polynomial violates the Weil bound");
    }
    binom = binom * (2 * g - i) / (i + 1);
  }
  for (std::size_t m = static_cast<std::size_t>(g) + 1; m <= counts.size(); ++m) {
    if (predicted_count(z, static_cast<int>(m)) != counts[m - 1]) {
      throw Error(ErrorCode::InconsistentCounts, "N_" + std::to_string(m) + " does not match the L-polynomial");
    }
  }
  return z;
}

long long predicted_count(const ZetaData& z, int m) {
  std::vector<__int128> S(static_cast<std::size_t>(m) + 1, 0);
  auto a = [&](int i) -> __int128 { return i < static_cast<int>(z.L.size()) ? z.L[i] : 0; };
  for (int k = 1; k <= m; ++k) {
    __int128 s = -static_cast<__int128>(k) * a(k);
    for (int i = 1; i < k; ++i) s -= a(i) * S[k - i];
    S[k] = s;
  }
  return static_cast<long long>(ipow(z.q, m) + 1 - S[m]);
}

std::vector<long long> frobenius_charpoly(const ZetaData& z) { return z.L; }

ZetaData zeta(const TernaryQuartic& f, std::uint32_t base_degree, int g) {
  if (!quartic_smooth(f)) throw Error(ErrorCode::NotSmooth, "singular quartic");
  std::vector<long long> counts;
  for (int m = 1; m <= g; ++m) {
    counts.push_back(static_cast<long long>(count_points(f, base_degree * static_cast<std::uint32_t>(m), false)));
  }
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < base_degree; ++i) q *= f.field()->q();
  return zeta_from_counts(q, g, counts);
}

const std::vector<Mat3>& pgl3_enumerate(const FieldPtr& field) {
  if (field->q() > 3) {
    throw Error(ErrorCode::FieldTooLargeForOrbitSearch, "orbit search needs q <= 3, got " + std::to_string(field->q()));
  }
  static std::mutex mu;
  static std::map<const Field*, std::vector<Mat3>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(field.get());
  if (it != cache.end()) return it->second;
  const std::uint64_t q = field->q();
  std::uint64_t total = 1;
  for (int i = 0; i < 9; ++i) total *= q;
  std::vector<Mat3> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const auto e = from_index(idx, q, 9);
    const auto first = std::find_if(e.begin(), e.end(), [](Elem c) { return c != 0; });
    if (first == e.end() || *first != 1) continue;
    Mat3 m;
    for (int i = 0; i < 9; ++i) m[i / 3][i % 3] = e[i];
    if (mat3_det(*field, m) != 0) out.push_back(m);
  }
  return cache.emplace(field.get(), std::move(out)).first->second;
}

std::string orbit_key(const TernaryForm& f) { return to_string(f.normalized()); }

std::unordered_set<std::string> orbit_keys(const TernaryForm& f) {
  std::unordered_set<std::string> out;
  for (const auto& m : pgl3_enumerate(f.field())) out.insert(orbit_key(apply_pgl3(f, m)));
  return out;
}

bool projectively_equivalent(const TernaryForm& f, const TernaryForm& g) {
  if (f.field() != g.field() || f.degree() != g.degree()) return false;
  const TernaryForm target = g.normalized();
  for (const auto& m : pgl3_enumerate(f.field())) {
    if (apply_pgl3(f, m).normalized() == target) return true;
  }
  return false;
}

}  // namespace nondeg
