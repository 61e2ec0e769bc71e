#include <map>
#include <random>

#include "doctest.h"
#include "nondeg/nondegen.hpp"
#include "nondeg/parser.hpp"

using namespace nondeg;

namespace {

const char* kF2 = "(x+y)^4+(x*y)^2+x*y*(x+y+1)+(x+y+1)^2";
const char* kF3 = "y^3-y-(x^2+1)^2";

Face find_edge(const LaurentPoly& f, LatticePoint a, LatticePoint b) {
  for (const auto& face : faces(newton_polytope(f))) {
    if (face.kind == FaceKind::Edge && ((face.a == a && face.b == b) || (face.a == b && face.b == a))) return face;
  }
  FAIL("edge not found");
  return {};
}

Face full_face(const LaurentPoly& f) { return faces(newton_polytope(f)).back(); }

}  // namespace

TEST_CASE("parser") {
  auto f2 = make_field(2, 1);
  auto f = parse_poly(kF2, f2);
  CHECK(newton_polytope(f) == standard_triangle(4));
  auto f3 = parse_poly(kF3, make_field(3, 1));
  CHECK(to_string(f3) == "2+2*y+y^3+x^2+2*x^4");
  CHECK(parse_poly("y^3-y=(x^2+1)^2", make_field(3, 1)) == f3);
  CHECK(parse_poly("0", f2).is_zero());
  CHECK(parse_poly("2xy + x^-1", make_field(5, 1)) == LaurentPoly(make_field(5, 1), {{{1, 1}, 2}, {{-1, 0}, 1}}));
  auto f4 = make_field(2, 2);
  CHECK(to_string(parse_poly("(w+1)*x*y^-1 + w", f4)) == "w+(w+1)*x*y^-1");
  CHECK_THROWS_AS(parse_poly("w*x", f2), Error);
  CHECK_THROWS_AS(parse_poly("x^y", f2), Error);
  CHECK_THROWS_AS(parse_poly("x+*y", f2), Error);
  CHECK_THROWS_AS(parse_poly("(x+1)^-1", f2), Error);
  try {
    parse_poly("x + )", f2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(std::string(e.what()).find("position 4") != std::string::npos);
  }
  try {
    parse_poly("x^1.5", f2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonIntegerExponent);
  }
}

TEST_CASE("parse/print round trip") {
  std::mt19937_64 rng(8);
  for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {3u, 2u}, {5u, 1u}, {2u, 3u}}) {
    auto f = make_field(p, k);
    for (int t = 0; t < 2000; ++t) {
      std::vector<Term> terms;
      const int n = static_cast<int>(rng() % 6);
      for (int i = 0; i < n; ++i) {
        terms.push_back({{static_cast<long long>(rng() % 9) - 3, static_cast<long long>(rng() % 9) - 3}, rng() % f->q()});
      }
      LaurentPoly poly(f, terms);
      const std::string text = to_string(poly);
      REQUIRE(parse_poly(text, f) == poly);
      REQUIRE(to_string(parse_poly(text, f)) == text);
    }
  }
}

TEST_CASE("restriction to faces") {
  auto f2 = make_field(2, 1);
  auto f = parse_poly("1+x+y", f2);
  CHECK(restrict_to_face(f, full_face(f)) == f);
  CHECK(restrict_to_face(f, faces(newton_polytope(f))[0]) == LaurentPoly::constant(f2, 1));
  auto g = parse_poly("y^2+x^2+1", f2);
  CHECK(restrict_to_face(g, find_edge(g, {0, 0}, {2, 0})) == parse_poly("x^2+1", f2));
  CHECK_THROWS_AS(restrict_to_face(g, Face{FaceKind::Vertex, {1, 1}, {1, 1}, {}, 0}), Error);
  CHECK_THROWS_AS(edge_to_univariate(g, faces(newton_polytope(g))[0]), Error);
}

TEST_CASE("edge polynomials") {
  auto f7 = make_field(7, 1);
  auto f = parse_poly("y^2+x^6+1", f7);
  CHECK(edge_to_univariate(f, find_edge(f, {0, 0}, {6, 0})) == UniPoly(f7, {1, 0, 0, 0, 0, 0, 1}));
  auto f2 = make_field(2, 1);
  auto g = parse_poly("y^2+x^2+1", f2);
  CHECK(edge_to_univariate(g, find_edge(g, {0, 0}, {2, 0})) == UniPoly(f2, {1, 0, 1}));
  for (const auto& face : faces(newton_polytope(parse_poly(kF2, f2)))) {
    if (face.kind != FaceKind::Edge) continue;
    CHECK(edge_to_univariate(parse_poly(kF2, f2), face).degree() == face.length);
    CHECK(edge_to_univariate(parse_poly(kF2, f2), face).coeff(0) != 0);
  }
}

TEST_CASE("edge verdicts") {
  auto f2 = make_field(2, 1);
  auto f = parse_poly("x^2+1+y", f2);
  auto v = edge_nondegenerate(f, find_edge(f, {0, 0}, {2, 0}));
  CHECK_FALSE(v.nondegenerate);
  REQUIRE(v.witness);
  CHECK(v.witness->degree == 1);
  CHECK(v.witness->x == 1);
  auto bf = brute_force_degeneracy_witness(f, find_edge(f, {0, 0}, {2, 0}), 2);
  REQUIRE(bf);
  CHECK(bf->x == 1);
  auto f7 = make_field(7, 1);
  auto h = parse_poly("y^2-(x^5+x+3)", f7);
  CHECK(is_squarefree(UniPoly(f7, {3, 1, 0, 0, 0, 1})));
  CHECK(edge_nondegenerate(h, find_edge(h, {0, 0}, {5, 0})).nondegenerate);
}

TEST_CASE("full face") {
  auto f3 = make_field(3, 1);
  auto sq = parse_poly("(x+y+1)^2", f3);
  auto v = full_face_nondegenerate(sq);
  CHECK_FALSE(v.nondegenerate);
  REQUIRE(v.witness);
  CHECK(verify_witness(face_system(sq, full_face(sq)), *v.witness));
  auto lin = parse_poly("1+x+y", f3);
  CHECK(full_face_nondegenerate(lin).nondegenerate);
  CHECK_FALSE(brute_force_degeneracy_witness(lin, full_face(lin), 3));
  CHECK_THROWS_AS(full_face_nondegenerate(parse_poly("1+x", f3)), Error);
  // p-th power input
  auto f2 = make_field(2, 1);
  auto pth = parse_poly("(1+x+y)^2", f2);
  auto vp = full_face_nondegenerate(pth);
  CHECK(vp.input_not_irreducible);
  CHECK_FALSE(vp.nondegenerate);
}

TEST_CASE("exceptional curves and Weierstrass models") {
  auto f2 = make_field(2, 1);
  auto r2 = is_nondegenerate(parse_poly(kF2, f2));
  CHECK_FALSE(r2.nondegenerate);
  CHECK(r2.verdicts.size() == 7);
  auto f3 = make_field(3, 1);
  auto r3 = is_nondegenerate(parse_poly(kF3, f3));
  CHECK_FALSE(r3.nondegenerate);
  auto f7 = make_field(7, 1);
  std::mt19937_64 rng(1);
  int tested = 0;
  while (tested < 30) {
    std::vector<Elem> c(6);
    for (auto& e : c) e = rng() % 7;
    c[5] = 1 + rng() % 6;
    UniPoly p(f7, c);
    if (!is_squarefree(p)) continue;
    std::vector<Term> terms{{{0, 2}, 1}};
    for (int i = 0; i <= 5; ++i) terms.push_back({{i, 0}, f7->neg(c[i])});
    auto report = is_nondegenerate(LaurentPoly(f7, terms));
    CHECK(report.nondegenerate);
    ++tested;
  }
  CHECK_THROWS_AS(is_nondegenerate(LaurentPoly(f2)), Error);
  CHECK_THROWS_AS(is_nondegenerate(parse_poly("x^3*y", f2)), Error);
}

TEST_CASE("recorded witnesses of the exceptional curves") {
  auto f2 = make_field(2, 1);
  auto r2 = is_nondegenerate(parse_poly(kF2, f2));
  int degenerate = 0;
  for (const auto& v : r2.verdicts) {
    if (v.nondegenerate) continue;
    ++degenerate;
    REQUIRE(v.witness);
    CHECK(verify_witness(face_system(parse_poly(kF2, f2), v.face), *v.witness));
  }
  // each edge of f2 restricts to a square; the full face is fine
  CHECK(degenerate == 3);
  CHECK(r2.verdicts.back().nondegenerate);
  auto f3 = make_field(3, 1);
  auto r3 = is_nondegenerate(parse_poly(kF3, f3));
  std::vector<std::string> bad;
  for (const auto& v : r3.verdicts) {
    if (!v.nondegenerate) bad.push_back(to_string(v.face));
  }
  REQUIRE(bad.size() == 1);
  CHECK(bad[0] == "edge (0,0)-(4,0)");
}

TEST_CASE("nondegeneracy is invariant under torus automorphisms") {
  std::mt19937_64 rng(31);
  std::vector<std::pair<FieldPtr, std::string>> inputs{
      {make_field(2, 1), kF2}, {make_field(3, 1), kF3}, {make_field(3, 1), "y^2-x^5-x-1"},
      {make_field(2, 1), "y^2+y+x^5"}, {make_field(3, 1), "(x+y+1)^2"}, {make_field(5, 1), "x^3+y^3+1+x*y"}};
  for (const auto& [field, text] : inputs) {
    auto f = parse_poly(text, field);
    const bool expected = is_nondegenerate(f).nondegenerate;
    for (int t = 0; t < 100; ++t) {
      AffineLatticeMap::Matrix m{{{1, 0}, {0, 1}}};
      for (int s = 0; s < 3; ++s) {
        const long long c = static_cast<long long>(rng() % 5) - 2;
        if (rng() & 1) {
          m[0][0] += c * m[1][0];
          m[0][1] += c * m[1][1];
        } else {
          m[1][0] += c * m[0][0];
          m[1][1] += c * m[0][1];
        }
        if (rng() & 1) std::swap(m[0], m[1]);
      }
      AffineLatticeMap map(m, {static_cast<long long>(rng() % 5) - 2, static_cast<long long>(rng() % 5) - 2});
      REQUIRE(is_nondegenerate(apply_map(f, map)).nondegenerate == expected);
    }
  }
}

TEST_CASE("common zeros outside the torus") {
  auto f3 = make_field(3, 1);
  // x = 0, y = 0 only
  auto w = find_common_zero({parse_poly("x", f3), parse_poly("y", f3)}, false);
  REQUIRE(w);
  CHECK(w->x == 0);
  CHECK(w->y == 0);
  CHECK_FALSE(find_common_zero({parse_poly("x", f3), parse_poly("y", f3)}, true));
  // shared factor of positive y-degree
  auto a = parse_poly("(y-x-1)*(x+2)", f3);
  auto b = parse_poly("(y-x-1)*(y+1)", f3);
  auto c = find_common_zero({a, b}, true);
  REQUIRE(c);
  CHECK(verify_witness({a, b}, *c));
  // pairwise common factors but no common factor overall
  auto p1 = parse_poly("(y-x)*(y-2*x)", f3);
  auto p2 = parse_poly("(y-x)*(y-x-1)", f3);
  auto p3 = parse_poly("(y-2*x)*(y-x-1)", f3);
  auto z = find_common_zero({p1, p2, p3}, true);
  REQUIRE(z);
  CHECK(verify_witness({p1, p2, p3}, *z));
  CHECK_FALSE(find_common_zero({parse_poly("y-x", f3), parse_poly("y-x-1", f3)}, true));
}
