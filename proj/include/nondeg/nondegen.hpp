#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nondeg/laurent.hpp"
#include "nondeg/polytope.hpp"

namespace nondeg {

// A point of F_{q^degree}^2 solving a system, or a symbolic description when the
// field is too large for direct evaluation (x is a root of x_minpoly, y a root
// of y_poly over F_q[x]/(x_minpoly)).
struct Witness {
  std::uint32_t degree = 1;
  FieldPtr field;
  Elem x = 0;
  Elem y = 0;
  bool symbolic = false;
  std::string x_minpoly;
  std::string y_poly;
};

struct FaceVerdict {
  Face face;
  bool nondegenerate = true;
  std::optional<Witness> witness;
  // Both Euler derivatives vanish identically (f is a p-th power).
  bool input_not_irreducible = false;
};

struct NondegeneracyReport {
  std::string input;
  std::vector<FaceVerdict> verdicts;
  bool nondegenerate = true;
  bool input_not_irreducible = false;
};

// Throws FaceNotOfThisPolytope.
LaurentPoly restrict_to_face(const LaurentPoly& f, const Face& face);

// Restriction to an edge moved by a unimodular map to x^a y^c g(x) with g(0) != 0.
struct EdgePolynomial {
  UniPoly g;
  AffineLatticeMap::Matrix map;  // sends the edge direction to (1, 0)
};
// Throws NotAnEdge.
EdgePolynomial edge_polynomial(const LaurentPoly& f, const Face& edge);
UniPoly edge_to_univariate(const LaurentPoly& f, const Face& edge);

FaceVerdict edge_nondegenerate(const LaurentPoly& f, const Face& edge);
// Throws NotTwoDimensional.
FaceVerdict full_face_nondegenerate(const LaurentPoly& f);
// Throws ZeroPolynomial or MonomialInput.
NondegeneracyReport is_nondegenerate(const LaurentPoly& f);

// (f|face, x d/dx f|face, y d/dy f|face)
std::vector<LaurentPoly> face_system(const LaurentPoly& f, const Face& face);

// Exhaustive scan of (F_{q^d}^*)^2 for d = 1..max_degree. Throws SearchSpaceTooLarge
// when q^max_degree > 2^20.
std::optional<Witness> brute_force_degeneracy_witness(const LaurentPoly& f, const Face& face, int max_degree);

// A common zero over the algebraic closure of a system of polynomials in x, y.
// With torus_only the zero must have x, y != 0 and negative exponents are
// allowed; otherwise exponents must be nonnegative. Witnesses are re-verified.
std::optional<Witness> find_common_zero(const std::vector<LaurentPoly>& system, bool torus_only,
                                        std::uint64_t seed = 0);

// Direct evaluation of every polynomial of the system at the witness.
bool verify_witness(const std::vector<LaurentPoly>& system, const Witness& w);

std::string to_string(const Witness& w);
std::string to_string(const NondegeneracyReport& r);

}  // namespace nondeg
