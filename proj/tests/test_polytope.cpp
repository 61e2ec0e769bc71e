#include <random>

#include "doctest.h"
#include "nondeg/polytope.hpp"

using namespace nondeg;

namespace {

Polytope tri(LatticePoint a, LatticePoint b, LatticePoint c) { return Polytope::hull({a, b, c}); }

// Pick: 2A = 2I + B - 2
void check_pick(const Polytope& p) {
  if (p.dimension() < 2) return;
  const auto interior = static_cast<long long>(interior_lattice_points(p).size());
  CHECK(p.double_area() == 2 * interior + static_cast<long long>(p.boundary_point_count()) - 2);
}

}  // namespace

TEST_CASE("newton polytopes") {
  auto f7 = make_field(7, 1);
  LaurentPoly hyper(f7, {{{0, 2}, 1}, {{5, 0}, 6}, {{1, 0}, 6}, {{0, 0}, 3}});
  auto p = newton_polytope(hyper);
  CHECK(to_string(p) == "(0,0);(5,0);(0,2)");
  CHECK(newton_polytope(LaurentPoly::constant(f7, 1)).dimension() == 0);
  CHECK_THROWS_AS(newton_polytope(LaurentPoly(f7)), Error);
  auto seg = Polytope::hull({{0, 0}, {1, 0}, {2, 0}});
  CHECK(seg.vertices().size() == 2);
  CHECK(seg.dimension() == 1);
}

TEST_CASE("faces") {
  auto f = faces(standard_triangle(4));
  REQUIRE(f.size() == 7);
  int vertices = 0, edges = 0, full = 0;
  for (const auto& face : f) {
    vertices += face.kind == FaceKind::Vertex;
    edges += face.kind == FaceKind::Edge;
    full += face.kind == FaceKind::Full;
    if (face.kind == FaceKind::Edge && face.a == LatticePoint{4, 0}) {
      CHECK(face.length == 4);
      CHECK(face.direction == LatticePoint{-1, 1});
    }
  }
  CHECK(vertices == 3);
  CHECK(edges == 3);
  CHECK(full == 1);
  auto s = faces(Polytope::hull({{0, 0}, {2, 0}}));
  CHECK(s.size() == 3);
  CHECK(s.back().kind == FaceKind::Edge);
  CHECK(s.back().length == 2);
  CHECK(faces(Polytope::hull({{1, 1}})).size() == 1);
}

TEST_CASE("interior points") {
  using V = std::vector<LatticePoint>;
  CHECK(interior_lattice_points(standard_triangle(4)) == V{{1, 1}, {1, 2}, {2, 1}});
  CHECK(interior_lattice_points(hyperelliptic_triangle(2)) == V{{1, 1}, {2, 1}});
  CHECK(interior_lattice_points(hyperelliptic_triangle(3)) == V{{1, 1}, {2, 1}, {3, 1}});
  check_pick(standard_triangle(4));
  check_pick(hyperelliptic_triangle(3));
}

TEST_CASE("flip map on the genus-3 triangle") {
  AffineLatticeMap flip({{{-1, -4}, {0, 1}}}, {8, 0});
  auto image = apply_map(hyperelliptic_triangle(3), flip);
  CHECK(interior_lattice_points(image).size() == 3);
  CHECK(interior_lattice_points(image) == std::vector<LatticePoint>{{1, 1}, {2, 1}, {3, 1}});
  CHECK(apply_map(image, flip) == hyperelliptic_triangle(3));
}

TEST_CASE("rotation maps interior points bijectively") {
  AffineLatticeMap rot({{{0, -1}, {1, 0}}}, {0, 0});
  auto image = apply_map(standard_triangle(4), rot);
  auto pts = interior_lattice_points(image);
  REQUIRE(pts.size() == 3);
  for (const auto& p : interior_lattice_points(standard_triangle(4))) {
    CHECK(std::find(pts.begin(), pts.end(), rot.apply(p)) != pts.end());
  }
}

TEST_CASE("interior count invariant under random unimodular maps, Pick everywhere") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long long> coord(0, 8), small(-2, 2);
  for (int t = 0; t < 1000; ++t) {
    std::vector<LatticePoint> pts;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
    auto p = Polytope::hull(pts);
    AffineLatticeMap::Matrix m{{{1, 0}, {0, 1}}};
    for (int s = 0; s < 3; ++s) {
      const long long c = small(rng);
      if (rng() & 1) {
        m[0][0] += c * m[1][0];
        m[0][1] += c * m[1][1];
      } else {
        m[1][0] += c * m[0][0];
        m[1][1] += c * m[0][1];
      }
      if (rng() & 1) std::swap(m[0], m[1]);
    }
    AffineLatticeMap map(m, {small(rng), small(rng)});
    auto image = apply_map(p, map);
    REQUIRE(interior_lattice_points(image).size() == interior_lattice_points(p).size());
    REQUIRE(image.boundary_point_count() == p.boundary_point_count());
    check_pick(p);
    check_pick(image);
  }
}

TEST_CASE("normalize interior triple") {
  auto id = normalize_interior_triple(standard_triangle(4));
  CHECK(interior_lattice_points(apply_map(standard_triangle(4), id)) ==
        interior_lattice_points(standard_triangle(4)));
  // interior points (0,0),(1,0),(0,1)
  auto shifted = apply_map(standard_triangle(4), AffineLatticeMap::translation({-1, -1}));
  auto m = normalize_interior_triple(shifted);
  CHECK(contains(standard_triangle(4), apply_map(shifted, m)));
  CHECK_THROWS_AS(normalize_interior_triple(hyperelliptic_triangle(2)), Error);
  try {
    normalize_interior_triple(hyperelliptic_triangle(3));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CollinearInteriorPoints);
  }
  // random images of polytopes with three noncollinear interior points land in 4S
  std::mt19937_64 rng(4);
  std::vector<Polytope> seeds{standard_triangle(4), tri({0, 0}, {3, 0}, {0, 3}),
                              Polytope::hull({{0, 0}, {3, 0}, {2, 2}, {0, 3}})};
  int used = 0;
  for (const auto& base : seeds) {
    if (interior_lattice_points(base).size() != 3) continue;
    ++used;
    for (int t = 0; t < 50; ++t) {
      AffineLatticeMap::Matrix mm{{{1, static_cast<long long>(rng() % 5) - 2}, {0, 1}}};
      if (rng() & 1) mm = {{{1, 0}, {static_cast<long long>(rng() % 5) - 2, 1}}};
      auto moved = apply_map(base, AffineLatticeMap(mm, {static_cast<long long>(rng() % 7) - 3, 2}));
      auto norm = normalize_interior_triple(moved);
      CHECK(contains(standard_triangle(4), apply_map(moved, norm)));
    }
  }
  CHECK(used >= 2);
}

TEST_CASE("containment") {
  CHECK(contains(standard_triangle(4), standard_triangle(4)));
  CHECK_FALSE(contains(standard_triangle(4), hyperelliptic_triangle(3)));
  CHECK(interior_lattice_points(standard_triangle(4)).size() == 3);
}
