#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nondeg/lattice.hpp"
#include "nondeg/laurent.hpp"

namespace nondeg {

// Convex lattice polygon, possibly a segment or a point. Vertices are
// counterclockwise, strictly convex, starting at the lexicographically smallest.
class Polytope {
 public:
  Polytope() = default;
  // Convex hull of arbitrary points (monotone chain). Throws InvalidArgument on empty input.
  static Polytope hull(std::vector<LatticePoint> points);

  const std::vector<LatticePoint>& vertices() const noexcept { return v_; }
  int dimension() const noexcept { return v_.size() >= 3 ? 2 : static_cast<int>(v_.size()) - 1; }

  // Twice the area.
  long long double_area() const;
  std::uint64_t boundary_point_count() const;
  bool contains(const LatticePoint& pt) const;
  bool strictly_contains(const LatticePoint& pt) const;

  bool operator==(const Polytope&) const = default;

 private:
  std::vector<LatticePoint> v_;
};

enum class FaceKind { Vertex, Edge, Full };

struct Face {
  FaceKind kind = FaceKind::Vertex;
  LatticePoint a;  // vertex, or first endpoint of an edge (counterclockwise order)
  LatticePoint b;  // second endpoint of an edge
  LatticePoint direction;  // primitive direction a -> b
  long long length = 0;    // lattice length of an edge

  bool operator==(const Face&) const = default;
};

std::string to_string(const Face& face);

// Throws ZeroPolynomial.
Polytope newton_polytope(const LaurentPoly& f);
// Vertices, then edges, then the full face when two-dimensional.
std::vector<Face> faces(const Polytope& p);
// Sorted lexicographically.
std::vector<LatticePoint> interior_lattice_points(const Polytope& p);

Polytope apply_map(const Polytope& p, const AffineLatticeMap& map);
LaurentPoly apply_map(const LaurentPoly& f, const AffineLatticeMap& map);

// Unimodular map sending the three interior points of p onto {(1,1),(1,2),(2,1)}.
// Throws WrongInteriorCount or CollinearInteriorPoints.
AffineLatticeMap normalize_interior_triple(const Polytope& p);

// Q subset of P.
bool contains(const Polytope& p, const Polytope& q);
Polytope standard_triangle(long long d);
Polytope hyperelliptic_triangle(long long g);

// "(i,j);(i,j);..."
std::string to_string(const Polytope& p);

long long gcd_ll(long long a, long long b);

}  // namespace nondeg
