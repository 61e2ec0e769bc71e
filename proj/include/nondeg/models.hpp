#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "nondeg/laurent.hpp"
#include "nondeg/quartic.hpp"

namespace nondeg {

// y^2 + r(x) y = p(x) with deg r <= g + 1 and deg p <= 2g + 2.
struct HyperellipticModel {
  FieldPtr field;
  UniPoly r;
  UniPoly p;
  int g = 0;

  HyperellipticModel(UniPoly r_, UniPoly p_, int genus);
};

// y^2 + r y - p.
LaurentPoly to_laurent(const HyperellipticModel& m);
// Reads c2 y^2 + c1(x) y + c0(x) with c2 a nonzero constant; nullopt otherwise.
std::optional<HyperellipticModel> model_from_laurent(const LaurentPoly& f, int g);

// r'(x) = x^{g+1} r(1/x), p'(x) = x^{2g+2} p(1/x).
HyperellipticModel flip_model(const HyperellipticModel& m);
// (x, y) -> (x - a, y).
HyperellipticModel shift_x(const HyperellipticModel& m, Elem a);
// y -> y + t(x).
HyperellipticModel shift_y_by_poly(const HyperellipticModel& m, const UniPoly& t);

struct NormalizedModel {
  HyperellipticModel model;
  std::vector<std::string> transcript;
};
// Characteristic 2. Output has deg r = g + 1 and r(0) != 0.
// Throws RIsZero, FieldTooSmall.
NormalizedModel normalize_hyperelliptic(const HyperellipticModel& m);

// p + r t + t^2.
UniPoly substituted_p(const HyperellipticModel& m, const UniPoly& t);
// First t (deg t <= g + 1, coefficients in enumeration order, constant term
// fastest) with p + r t + t^2 squarefree. Throws NoSubstitutionFound.
UniPoly find_squarefree_substitution(const HyperellipticModel& m);

struct GenusResult {
  int genus = 0;
  bool not_hyperelliptic = false;
  bool inseparable = false;
};
GenusResult genus_hyperelliptic(const HyperellipticModel& m);

// Throws ZeroForm.
bool quartic_smooth(const TernaryQuartic& f);

struct ProjectiveLine {
  std::array<Elem, 3> c{};  // a X + b Y + c Z, first nonzero entry 1

  bool operator==(const ProjectiveLine& o) const = default;
};
std::string to_string(const ProjectiveLine& line, const Field& field);

// Every rational line in normalized order: (0:0:1), (0:1:c), (1:b:c).
std::vector<ProjectiveLine> rational_lines(const FieldPtr& field);
// Restriction of f to the line as a binary form, coefficient i of s^i t^(d-i).
std::vector<Elem> restrict_to_line(const TernaryForm& f, const ProjectiveLine& line);
bool is_tangent(const TernaryQuartic& f, const ProjectiveLine& line);
// Rational tangent lines in normalized order. Throws NotSmooth.
std::vector<ProjectiveLine> tangent_lines(const TernaryQuartic& f);

struct ThreeLines {
  std::array<ProjectiveLine, 3> lines;
  Mat3 change;  // transformed = apply_pgl3(f, change)
  TernaryQuartic transformed;
  LaurentPoly polynomial;  // transformed in the chart Z = 1
};
// Throws NotSmooth, NotFound.
ThreeLines find_three_lines(const TernaryQuartic& f);

// Projective points over F_{q^m}. Throws NotSmooth unless check_smooth is false.
std::uint64_t count_points(const TernaryQuartic& f, std::uint32_t m, bool check_smooth = true);
// Affine solutions plus the roots of T^2 + r_{g+1} T - p_{2g+2} at infinity.
std::uint64_t count_points(const HyperellipticModel& m, std::uint32_t ext);

struct ZetaData {
  std::uint64_t q = 0;
  int g = 0;
  std::vector<long long> counts;  // N_1..N_g
  std::vector<long long> L;       // a_0..a_{2g}
};
// Throws InconsistentCounts; counts beyond N_g are checked against the reconstruction.
ZetaData zeta_from_counts(std::uint64_t q, int g, const std::vector<long long>& counts);
// Counts over F_{q^(base_degree m)} for m = 1..g.
ZetaData zeta(const TernaryQuartic& f, std::uint32_t base_degree, int g);
// N_m predicted by the L-polynomial.
long long predicted_count(const ZetaData& z, int m);
// Coefficients of T^{2g} L(1/T), highest degree first.
std::vector<long long> frobenius_charpoly(const ZetaData& z);

// Invertible 3x3 matrices with first nonzero entry 1. Throws FieldTooLargeForOrbitSearch.
const std::vector<Mat3>& pgl3_enumerate(const FieldPtr& field);
// Normalized coefficient vectors of the projective orbit of f.
std::unordered_set<std::string> orbit_keys(const TernaryForm& f);
std::string orbit_key(const TernaryForm& f);
bool projectively_equivalent(const TernaryForm& f, const TernaryForm& g);

}  // namespace nondeg
