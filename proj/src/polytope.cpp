#include "nondeg/polytope.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace nondeg {

namespace {

long long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
  return (a.i - o.i) * (b.j - o.j) - (a.j - o.j) * (b.i - o.i);
}

}  // namespace

long long gcd_ll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

Polytope Polytope::hull(std::vector<LatticePoint> pts) {
  if (pts.empty()) throw Error(ErrorCode::InvalidArgument, "convex hull of no points");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Polytope out;
  if (pts.size() <= 2) {
    out.v_ = pts;
    return out;
  }
  std::vector<LatticePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  // collinear input collapses to the two extreme points
  out.v_ = h;
  return out;
}

long long Polytope::double_area() const {
  if (v_.size() < 3) return 0;
  long long s = 0;
  for (std::size_t t = 0; t < v_.size(); ++t) {
    const auto& a = v_[t];
    const auto& b = v_[(t + 1) % v_.size()];
    s += a.i * b.j - a.j * b.i;
  }
  return s;
}

std::uint64_t Polytope::boundary_point_count() const {
  if (v_.size() == 1) return 1;
  if (v_.size() == 2) return static_cast<std::uint64_t>(gcd_ll(v_[1].i - v_[0].i, v_[1].j - v_[0].j)) + 1;
  std::uint64_t b = 0;
  for (std::size_t t = 0; t < v_.size(); ++t) {
    const auto& a = v_[t];
    const auto& c = v_[(t + 1) % v_.size()];
    b += static_cast<std::uint64_t>(gcd_ll(c.i - a.i, c.j - a.j));
  }
  return b;
}

bool Polytope::contains(const LatticePoint& pt) const {
  if (v_.empty()) return false;
  if (v_.size() == 1) return pt == v_[0];
  if (v_.size() == 2) {
    return cross(v_[0], v_[1], pt) == 0 && std::min(v_[0], v_[1]) <= pt && pt <= std::max(v_[0], v_[1]);
  }
  for (std::size_t t = 0; t < v_.size(); ++t) {
    if (cross(v_[t], v_[(t + 1) % v_.size()], pt) < 0) return false;
  }
  return true;
}

bool Polytope::strictly_contains(const LatticePoint& pt) const {
  if (v_.size() < 3) return false;
  for (std::size_t t = 0; t < v_.size(); ++t) {
    if (cross(v_[t], v_[(t + 1) % v_.size()], pt) <= 0) return false;
  }
  return true;
}

std::string to_string(const Face& face) {
  switch (face.kind) {
    case FaceKind::Vertex: return "vertex " + to_string(face.a);
    case FaceKind::Edge: return "edge " + to_string(face.a) + "-" + to_string(face.b);
    case FaceKind::Full: return "full";
  }
  return "";
}

Polytope newton_polytope(const LaurentPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "Newton polytope of 0");
  return Polytope::hull(f.support());
}

std::vector<Face> faces(const Polytope& p) {
  std::vector<Face> out;
  const auto& v = p.vertices();
  for (const auto& pt : v) out.push_back({FaceKind::Vertex, pt, pt, {}, 0});
  auto edge = [](const LatticePoint& a, const LatticePoint& b) {
    const long long g = gcd_ll(b.i - a.i, b.j - a.j);
    return Face{FaceKind::Edge, a, b, {(b.i - a.i) / g, (b.j - a.j) / g}, g};
  };
  if (v.size() == 2) out.push_back(edge(v[0], v[1]));
  if (v.size() >= 3) {
    for (std::size_t t = 0; t < v.size(); ++t) out.push_back(edge(v[t], v[(t + 1) % v.size()]));
    out.push_back({FaceKind::Full, v[0], v[0], {}, 0});
  }
  return out;
}

std::vector<LatticePoint> interior_lattice_points(const Polytope& p) {
  std::vector<LatticePoint> out;
  const auto& v = p.vertices();
  if (v.size() < 3) return out;
  long long lo_i = v[0].i, hi_i = v[0].i, lo_j = v[0].j, hi_j = v[0].j;
  for (const auto& pt : v) {
    lo_i = std::min(lo_i, pt.i);
    hi_i = std::max(hi_i, pt.i);
    lo_j = std::min(lo_j, pt.j);
    hi_j = std::max(hi_j, pt.j);
  }
  for (long long i = lo_i + 1; i < hi_i; ++i) {
    for (long long j = lo_j + 1; j < hi_j; ++j) {
      if (p.strictly_contains({i, j})) out.push_back({i, j});
    }
  }
  return out;
}

Polytope apply_map(const Polytope& p, const AffineLatticeMap& map) {
  std::vector<LatticePoint> pts;
  for (const auto& v : p.vertices()) pts.push_back(map.apply(v));
  return Polytope::hull(std::move(pts));
}

LaurentPoly apply_map(const LaurentPoly& f, const AffineLatticeMap& map) { return monomial_map(f, map); }

AffineLatticeMap normalize_interior_triple(const Polytope& p) {
  const auto pts = interior_lattice_points(p);
  if (pts.size() != 3) {
    throw Error(ErrorCode::WrongInteriorCount, std::to_string(pts.size()) + " interior points, expected 3");
  }
  if (cross(pts[0], pts[1], pts[2]) == 0) {
    throw Error(ErrorCode::CollinearInteriorPoints, "interior points are collinear");
  }
  static const std::array<LatticePoint, 3> target{{{1, 1}, {1, 2}, {2, 1}}};
  std::array<int, 3> perm{0, 1, 2};
  do {
    // M (s1 - s0) = t1 - t0, M (s2 - s0) = t2 - t0 solved over Q
    const LatticePoint s1 = pts[1] - pts[0], s2 = pts[2] - pts[0];
    const LatticePoint t1 = target[perm[1]] - target[perm[0]], t2 = target[perm[2]] - target[perm[0]];
    const long long d = s1.i * s2.j - s2.i * s1.j;
    // M = T S^{-1}, S^{-1} = adj(S) / d
    const long long n00 = t1.i * s2.j - t2.i * s1.j, n01 = -t1.i * s2.i + t2.i * s1.i;
    const long long n10 = t1.j * s2.j - t2.j * s1.j, n11 = -t1.j * s2.i + t2.j * s1.i;
    if (n00 % d || n01 % d || n10 % d || n11 % d) continue;
    const AffineLatticeMap::Matrix m{{{n00 / d, n01 / d}, {n10 / d, n11 / d}}};
    const long long det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det != 1 && det != -1) continue;
    const LatticePoint img{m[0][0] * pts[0].i + m[0][1] * pts[0].j, m[1][0] * pts[0].i + m[1][1] * pts[0].j};
    AffineLatticeMap map(m, target[perm[0]] - img);
    auto image = interior_lattice_points(apply_map(p, map));
    if (image != std::vector<LatticePoint>(target.begin(), target.end())) {
      throw std::logic_error("interior normalization missed its target");
    }
    return map;
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw std::logic_error("no unimodular normalization of the interior triangle");
}

bool contains(const Polytope& p, const Polytope& q) {
  for (const auto& v : q.vertices()) {
    if (!p.contains(v)) return false;
  }
  return true;
}

Polytope standard_triangle(long long d) { return Polytope::hull({{0, 0}, {d, 0}, {0, d}}); }

Polytope hyperelliptic_triangle(long long g) { return Polytope::hull({{0, 0}, {2 * g + 2, 0}, {0, 2}}); }

std::string to_string(const Polytope& p) {
  std::string out;
  for (const auto& v : p.vertices()) {
    if (!out.empty()) out += ";";
    out += to_string(v);
  }
  return out;
}

}  // namespace nondeg
