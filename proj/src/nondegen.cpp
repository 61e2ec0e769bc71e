#include "nondeg/nondegen.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "nondeg/resultant.hpp"

namespace nondeg {

namespace {

constexpr std::uint64_t kDirectVerificationLimit = 1ull << 32;

// u a + v b = gcd(a, b) >= 0
void ext_gcd(long long a, long long b, long long& g, long long& u, long long& v) {
  long long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const long long quo = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - quo * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - quo * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - quo * t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  u = old_s;
  v = old_t;
}

Elem signed_pow(const Field& f, Elem a, long long e) {
  return e >= 0 ? f.pow(a, static_cast<std::uint64_t>(e)) : f.pow(f.inv(a), static_cast<std::uint64_t>(-e));
}

UniPoly strip_low_zeros(const UniPoly& u) {
  const auto& c = u.coeffs();
  std::size_t z = 0;
  while (z < c.size() && c[z] == 0) ++z;
  return UniPoly(u.field(), std::vector<Elem>(c.begin() + static_cast<long>(z), c.end()));
}

FieldPtr extension(const FieldPtr& base, std::uint32_t degree) { return make_field(base->p(), base->k() * degree); }

Witness make_witness(const FieldPtr& base, const FieldPtr& field, Elem x, Elem y, const std::string& v,
                     const std::string& g) {
  Witness w;
  w.degree = field->k() / base->k();
  w.field = field;
  w.x = x;
  w.y = y;
  if (field->q() > kDirectVerificationLimit) {
    w.symbolic = true;
    w.x_minpoly = v;
    w.y_poly = g;
  }
  return w;
}

BiPoly embed_bi(const BiPoly& b, const FieldPtr& target) {
  std::vector<UniPoly> c;
  for (const auto& u : b.coeffs()) c.push_back(embed(u, target));
  return BiPoly(target, std::move(c));
}

enum class Status { Found, NoZero, CommonFactor };

struct SolveResult {
  Status status = Status::NoZero;
  Witness witness;
};

// Extends a root theta (in field L) of an x-candidate to a common zero of ys, if any.
std::optional<Witness> lift_x_root(const FieldPtr& base, const FieldPtr& L, Elem theta, const std::vector<BiPoly>& ys,
                                   bool torus, const std::string& v_text) {
  UniPoly G(L);
  for (const auto& P : ys) {
    UniPoly s = P.specialize_x(theta, L);
    if (!s.is_zero()) G = G.is_zero() ? monic(s) : gcd(G, s);
  }
  if (G.is_zero()) return make_witness(base, L, theta, 1, v_text, "0");
  if (torus) G = strip_low_zeros(G);
  if (G.degree() < 1) return std::nullopt;
  const UniPoly u = factorize(G).front().poly;
  const FieldPtr L2 = extension(L, static_cast<std::uint32_t>(u.degree()));
  const Elem x0 = (*embedding(L, L2))(theta);
  const Elem y0 = roots(embed(u, L2)).front();
  return make_witness(base, L2, x0, y0, v_text, G.to_string('y'));
}

// Common zeros of ys and X(x) = 0, with candidate x-coordinates from Res_y(ys[0], partner).
SolveResult solve_core(const FieldPtr& base, const FieldPtr& K, const std::vector<BiPoly>& ys, const UniPoly& X,
                       const std::vector<BiPoly>& partners, bool torus) {
  UniPoly W = X;
  for (const auto& partner : partners) {
    const UniPoly A = resultant_y(ys[0], partner);
    if (A.is_zero()) return {Status::CommonFactor, {}};
    W = W.is_zero() ? A : gcd(W, A);
  }
  if (W.is_zero()) throw std::logic_error("no elimination constraint");
  if (torus) W = strip_low_zeros(W);
  if (W.degree() < 1) return {Status::NoZero, {}};
  for (const auto& fac : factorize(W)) {
    const FieldPtr L = extension(K, static_cast<std::uint32_t>(fac.poly.degree()));
    const Elem theta = roots(embed(fac.poly, L)).front();
    if (auto w = lift_x_root(base, L, theta, ys, torus, fac.poly.to_string())) return {Status::Found, *w};
  }
  return {Status::NoZero, {}};
}

// A zero of a single curve D (positive y-degree, no monomial factor in torus mode).
Witness point_on_curve(const FieldPtr& base, const FieldPtr& K, const BiPoly& D, bool torus) {
  for (std::uint32_t d = 1; d <= 8; ++d) {
    const FieldPtr L = extension(K, d);
    if (L->q() > (1ull << 24)) break;
    for (Elem x0 = torus ? 1 : 0; x0 < L->q(); ++x0) {
      UniPoly s = D.specialize_x(x0, L);
      if (s.is_zero()) return make_witness(base, L, x0, 1, "", "0");
      if (torus) s = strip_low_zeros(s);
      if (s.degree() < 1) continue;
      const UniPoly u = factorize(s).front().poly;
      const FieldPtr L2 = extension(L, static_cast<std::uint32_t>(u.degree()));
      return make_witness(base, L2, (*embedding(L, L2))(x0), roots(embed(u, L2)).front(), "", s.to_string('y'));
    }
  }
  throw std::logic_error("no point found on a curve");
}

SolveResult solve_system(const std::vector<LaurentPoly>& system, bool torus, bool allow_fallback) {
  if (system.empty()) throw Error(ErrorCode::InvalidArgument, "empty system");
  const FieldPtr& K = system.front().field();
  std::vector<LaurentPoly> polys;
  for (const auto& P : system) {
    if (P.is_zero()) continue;
    if (!torus) {
      const auto m = P.min_exponents();
      if (m.i < 0 || m.j < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent outside the torus");
    }
    polys.push_back(torus ? P.shifted_to_origin() : P);
  }
  if (polys.empty()) return {Status::Found, make_witness(K, K, 1, 1, "", "")};
  UniPoly X(K);
  std::vector<BiPoly> ys;
  for (const auto& P : polys) {
    if (P.size() == 1 && P.terms()[0].e == LatticePoint{0, 0}) return {Status::NoZero, {}};
    if (P.max_exponents().j == 0) {
      const UniPoly row = row_polynomial(P, 0);
      X = X.is_zero() ? monic(row) : gcd(X, row);
    } else {
      ys.push_back(BiPoly::from_laurent(P));
    }
  }
  if (!X.is_zero()) {
    if (torus) X = strip_low_zeros(X);
    if (X.degree() < 1) return {Status::NoZero, {}};
  }
  if (ys.empty()) {
    const UniPoly v = factorize(X).front().poly;
    const FieldPtr L = extension(K, static_cast<std::uint32_t>(v.degree()));
    return {Status::Found, make_witness(K, L, roots(embed(v, L)).front(), 1, v.to_string(), "")};
  }
  if (ys.size() == 1 && X.is_zero()) return {Status::Found, point_on_curve(K, K, ys[0], torus)};

  const std::vector<BiPoly> partners(ys.begin() + 1, ys.end());
  SolveResult r = solve_core(K, K, ys, X, partners, torus);
  if (r.status != Status::CommonFactor || !allow_fallback) return r;

  BiPoly D = ys[0];
  for (std::size_t i = 1; i < ys.size(); ++i) D = gcd(D, ys[i]);
  if (D.degree_y() >= 1) {
    if (!X.is_zero()) return solve_core(K, K, ys, X, {}, torus);
    return {Status::Found, point_on_curve(K, K, D, torus)};
  }
  // No common factor of all polynomials: eliminate against a generic combination
  // of the others, with combination weights from an extension field.
  for (std::uint32_t e = 1; e <= 6; ++e) {
    const FieldPtr K2 = extension(K, e);
    std::vector<BiPoly> ys2;
    for (const auto& P : ys) ys2.push_back(embed_bi(P, K2));
    const UniPoly X2 = X.is_zero() ? UniPoly(K2) : embed(X, K2);
    for (Elem lambda = 1; lambda < std::min<std::uint64_t>(K2->q(), 4096); ++lambda) {
      BiPoly Q(K2);
      Elem weight = 1;
      for (std::size_t i = 1; i < ys2.size(); ++i) {
        Q = Q + ys2[i].scaled(UniPoly::constant(K2, weight));
        weight = K2->mul(weight, lambda);
      }
      if (Q.is_zero()) continue;
      SolveResult r2 = solve_core(K, K2, ys2, X2, {Q}, torus);
      if (r2.status != Status::CommonFactor) return r2;
    }
  }
  throw std::logic_error("elimination fallback failed");
}

AffineLatticeMap random_unimodular(std::mt19937_64& rng) {
  AffineLatticeMap::Matrix m{{{1, 0}, {0, 1}}};
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int step = 0; step < 3; ++step) {
    const int c = coef(rng);
    if (rng() & 1) {
      for (int col = 0; col < 2; ++col) m[0][col] += c * m[1][col];
    } else {
      for (int col = 0; col < 2; ++col) m[1][col] += c * m[0][col];
    }
    if (rng() & 1) std::swap(m[0], m[1]);
  }
  return AffineLatticeMap(m, {0, 0});
}

std::vector<LaurentPoly> euler_system(const LaurentPoly& f) { return {f, euler_x(f), euler_y(f)}; }

void require_verified(const std::vector<LaurentPoly>& system, const Witness& w) {
  if (!verify_witness(system, w)) throw std::logic_error("degeneracy witness failed re-verification");
}

}  // namespace

LaurentPoly restrict_to_face(const LaurentPoly& f, const Face& face) {
  const auto all = faces(newton_polytope(f));
  if (std::find(all.begin(), all.end(), face) == all.end()) {
    throw Error(ErrorCode::FaceNotOfThisPolytope, to_string(face));
  }
  if (face.kind == FaceKind::Full) return f;
  std::vector<Term> kept;
  for (const auto& t : f.terms()) {
    bool on = false;
    if (face.kind == FaceKind::Vertex) {
      on = t.e == face.a;
    } else {
      const LatticePoint d = t.e - face.a;
      on = d.i * face.direction.j - d.j * face.direction.i == 0;
    }
    if (on) kept.push_back(t);
  }
  return LaurentPoly(f.field(), std::move(kept));
}

std::vector<LaurentPoly> face_system(const LaurentPoly& f, const Face& face) {
  return euler_system(restrict_to_face(f, face));
}

EdgePolynomial edge_polynomial(const LaurentPoly& f, const Face& edge) {
  if (edge.kind != FaceKind::Edge) throw Error(ErrorCode::NotAnEdge, to_string(edge));
  const LaurentPoly r = restrict_to_face(f, edge);
  long long g = 0, u = 0, v = 0;
  ext_gcd(edge.direction.i, edge.direction.j, g, u, v);
  const AffineLatticeMap::Matrix m{{{u, v}, {-edge.direction.j, edge.direction.i}}};
  long long lo = 0;
  bool first = true;
  for (const auto& t : r.terms()) {
    const long long i = u * t.e.i + v * t.e.j;
    lo = first ? i : std::min(lo, i);
    first = false;
  }
  std::vector<Elem> c(static_cast<std::size_t>(edge.length) + 1, 0);
  for (const auto& t : r.terms()) c[static_cast<std::size_t>(u * t.e.i + v * t.e.j - lo)] = t.c;
  return {UniPoly(f.field(), std::move(c)), m};
}

UniPoly edge_to_univariate(const LaurentPoly& f, const Face& edge) { return edge_polynomial(f, edge).g; }

FaceVerdict edge_nondegenerate(const LaurentPoly& f, const Face& edge) {
  const EdgePolynomial ep = edge_polynomial(f, edge);
  FaceVerdict verdict{edge, true, std::nullopt, false};
  if (ep.g.degree() < 1 || is_squarefree(ep.g)) return verdict;
  verdict.nondegenerate = false;
  const UniPoly repeated = gcd(ep.g, derivative(ep.g));
  const UniPoly v = factorize(repeated).front().poly;
  const FieldPtr& base = f.field();
  const FieldPtr L = extension(base, static_cast<std::uint32_t>(v.degree()));
  const Elem theta = roots(embed(v, L)).front();
  const Elem x0 = signed_pow(*L, theta, ep.map[0][0]);
  const Elem y0 = signed_pow(*L, theta, ep.map[0][1]);
  verdict.witness = make_witness(base, L, x0, y0, v.to_string(), "");
  require_verified(face_system(f, edge), *verdict.witness);
  return verdict;
}

FaceVerdict full_face_nondegenerate(const LaurentPoly& f) {
  const Polytope P = newton_polytope(f);
  if (P.dimension() != 2) throw Error(ErrorCode::NotTwoDimensional, "Newton polytope is not two-dimensional");
  FaceVerdict verdict{faces(P).back(), true, std::nullopt, false};
  const auto system = euler_system(f);
  if (system[1].is_zero() && system[2].is_zero()) {
    verdict.input_not_irreducible = true;
    verdict.nondegenerate = false;
    verdict.witness = find_common_zero({f}, true);
    return verdict;
  }
  SolveResult r = solve_system(system, true, false);
  if (r.status == Status::CommonFactor) {
    std::mt19937_64 rng(canonical_hash(f));
    for (int attempt = 0; attempt < 8 && r.status == Status::CommonFactor; ++attempt) {
      const AffineLatticeMap map = random_unimodular(rng);
      const SolveResult moved = solve_system(euler_system(monomial_map(f, map)), true, false);
      if (moved.status == Status::Found) {
        // (Mf)(P) = 0 iff f(x^M11 y^M21, x^M12 y^M22) = 0
        const auto& m = map.matrix();
        const Field& L = *moved.witness.field;
        Witness w = moved.witness;
        w.x = L.mul(signed_pow(L, moved.witness.x, m[0][0]), signed_pow(L, moved.witness.y, m[1][0]));
        w.y = L.mul(signed_pow(L, moved.witness.x, m[0][1]), signed_pow(L, moved.witness.y, m[1][1]));
        r = {Status::Found, w};
      } else if (moved.status == Status::NoZero) {
        r = moved;
      }
    }
    if (r.status == Status::CommonFactor) r = solve_system(system, true, true);
  }
  if (r.status == Status::Found) {
    verdict.nondegenerate = false;
    verdict.witness = r.witness;
    require_verified(system, r.witness);
  }
  return verdict;
}

NondegeneracyReport is_nondegenerate(const LaurentPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "nondegeneracy of 0");
  if (f.is_monomial()) throw Error(ErrorCode::MonomialInput, "nondegeneracy of a monomial");
  NondegeneracyReport report;
  report.input = to_string(f);
  for (const auto& face : faces(newton_polytope(f))) {
    FaceVerdict v;
    switch (face.kind) {
      case FaceKind::Vertex: v = FaceVerdict{face, true, std::nullopt, false}; break;
      case FaceKind::Edge: v = edge_nondegenerate(f, face); break;
      case FaceKind::Full: v = full_face_nondegenerate(f); break;
    }
    report.nondegenerate = report.nondegenerate && v.nondegenerate;
    report.input_not_irreducible = report.input_not_irreducible || v.input_not_irreducible;
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

std::optional<Witness> brute_force_degeneracy_witness(const LaurentPoly& f, const Face& face, int max_degree) {
  const FieldPtr& base = f.field();
  std::uint64_t size = 1;
  for (int d = 0; d < max_degree; ++d) {
    size *= base->q();
    if (size > (1ull << 20)) throw Error(ErrorCode::SearchSpaceTooLarge, "q^D exceeds 2^20");
  }
  const auto system = face_system(f, face);
  for (int d = 1; d <= max_degree; ++d) {
    const FieldPtr L = extension(base, static_cast<std::uint32_t>(d));
    std::vector<LaurentPoly> lifted;
    for (const auto& P : system) lifted.push_back(embed(P, L));
    for (Elem x = 1; x < L->q(); ++x) {
      for (Elem y = 1; y < L->q(); ++y) {
        bool all = true;
        for (const auto& P : lifted) {
          if (P.eval(x, y) != 0) {
            all = false;
            break;
          }
        }
        if (all) return make_witness(base, L, x, y, "", "");
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> find_common_zero(const std::vector<LaurentPoly>& system, bool torus_only, std::uint64_t) {
  SolveResult r = solve_system(system, torus_only, true);
  if (r.status != Status::Found) return std::nullopt;
  require_verified(system, r.witness);
  return r.witness;
}

bool verify_witness(const std::vector<LaurentPoly>& system, const Witness& w) {
  if (!w.field) return false;
  for (const auto& P : system) {
    if (P.is_zero()) continue;
    if (embed(P, w.field).eval(w.x, w.y) != 0) return false;
  }
  return true;
}

std::string to_string(const Witness& w) {
  std::string out = "x = " + w.field->format(w.x) + ", y = " + w.field->format(w.y) + " over F_" +
                    std::to_string(w.field->q());
  if (!w.field->is_prime()) {
    std::vector<Elem> c(w.field->modulus().begin(), w.field->modulus().end());
    out += " = F_" + std::to_string(w.field->p()) + "[w]/(" + UniPoly(make_field(w.field->p(), 1), c).to_string('w') + ")";
  }
  if (w.symbolic) out += " [x root of " + w.x_minpoly + "; y root of " + w.y_poly + "]";
  return out;
}

std::string to_string(const NondegeneracyReport& r) {
  std::string out = "input: " + r.input + "\n";
  for (const auto& v : r.verdicts) {
    out += "  " + to_string(v.face) + ": " + (v.nondegenerate ? "nondegenerate" : "DEGENERATE");
    if (v.input_not_irreducible) out += " (input is a p-th power)";
    if (v.witness) out += "; witness " + to_string(*v.witness);
    out += "\n";
  }
  out += r.nondegenerate ? "NONDEGENERATE" : "DEGENERATE";
  return out;
}

}  // namespace nondeg
