#include "nondeg/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "nondeg/models.hpp"
#include "nondeg/nondegen.hpp"
#include "nondeg/polytope.hpp"
#include "nondeg/quartic.hpp"

namespace nondeg {

using json = nlohmann::json;

namespace {

constexpr int kCheckpointVersion = 1;
constexpr std::uint64_t kTableLimit = 1u << 24;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent stream per (seed, candidate index).
class CandidateRng {
 public:
  using result_type = std::uint64_t;
  CandidateRng(std::uint64_t seed, std::uint64_t idx) {
    std::uint64_t s = seed;
    state_ = splitmix64(s) ^ (idx * 0xd1342543de82ef95ULL);
  }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~static_cast<result_type>(0); }
  result_type operator()() { return splitmix64(state_); }
  std::uint32_t below(std::uint32_t n) { return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(*this); }

 private:
  std::uint64_t state_;
};

struct SmallField {
  std::uint32_t q = 0;
  std::vector<std::uint8_t> add_, mul_, neg_;

  explicit SmallField(const Field& f) : q(static_cast<std::uint32_t>(f.q())) {
    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      neg_[a] = static_cast<std::uint8_t>(f.neg(a));
      for (std::uint32_t b = 0; b < q; ++b) {
        add_[a * q + b] = static_cast<std::uint8_t>(f.add(a, b));
        mul_[a * q + b] = static_cast<std::uint8_t>(f.mul(a, b));
      }
    }
  }
  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q + b]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q + b]; }
  std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add(a, neg(b)); }
};

std::vector<LatticePoint> family_points(Family family, int g) {
  std::vector<LatticePoint> pts;
  if (family == Family::Hyperelliptic) {
    for (long long i = 0; i <= 2 * g + 2; ++i) pts.push_back({i, 0});
    for (long long i = 0; i <= g + 1; ++i) pts.push_back({i, 1});
    pts.push_back({0, 2});
  } else {
    for (long long j = 0; j <= 4; ++j) {
      for (long long i = 0; i + j <= 4; ++i) pts.push_back({i, j});
    }
  }
  return pts;
}

int slot_of(const std::vector<LatticePoint>& pts, LatticePoint pt) {
  const auto it = std::find(pts.begin(), pts.end(), pt);
  return it == pts.end() ? -1 : static_cast<int>(it - pts.begin());
}

json spec_echo(const CampaignSpec& spec) {
  return json{{"family", to_string(spec.family)},
              {"genus", spec.genus},
              {"p", spec.p},
              {"k", spec.k},
              {"normalized", normalization_active(spec)},
              {"budget", spec.budget},
              {"seed", spec.seed},
              {"chunks", spec.chunks},
              {"override", spec.override_grid}};
}

json counts_json(const StageCounts& c) {
  return json{{"total", c.total},           {"two_dimensional", c.two_dimensional},
              {"interior_ok", c.interior_ok}, {"edges_failed", c.edges_failed},
              {"resolved", c.resolved},     {"not_genus_g", c.not_genus_g},
              {"survivors", c.survivors}};
}

StageCounts counts_from_json(const json& j) {
  StageCounts c;
  c.total = j.at("total").get<std::uint64_t>();
  c.two_dimensional = j.at("two_dimensional").get<std::uint64_t>();
  c.interior_ok = j.at("interior_ok").get<std::uint64_t>();
  c.edges_failed = j.at("edges_failed").get<std::uint64_t>();
  c.resolved = j.at("resolved").get<std::uint64_t>();
  c.not_genus_g = j.at("not_genus_g").get<std::uint64_t>();
  c.survivors = j.at("survivors").get<std::uint64_t>();
  return c;
}

json survivor_json(const SurvivorRecord& s) {
  return json{{"index", s.index},
              {"polynomial", s.polynomial},
              {"retry_failures", s.retry_failures},
              {"verdicts", s.verdicts},
              {"genus_check", s.genus_check},
              {"orbit", s.orbit}};
}

SurvivorRecord survivor_from_json(const json& j) {
  SurvivorRecord s;
  s.index = j.at("index").get<std::uint64_t>();
  s.polynomial = j.at("polynomial").get<std::string>();
  s.retry_failures = j.at("retry_failures").get<int>();
  s.verdicts = j.at("verdicts").get<std::vector<std::string>>();
  s.genus_check = j.at("genus_check").get<std::string>();
  s.orbit = j.at("orbit").get<std::uint64_t>();
  return s;
}

}  // namespace

std::string to_string(Family f) { return f == Family::Hyperelliptic ? "hyperelliptic" : "quartic"; }

std::string to_string(StageOutcome s) {
  switch (s) {
    case StageOutcome::DroppedDimension: return "dropped: not two-dimensional";
    case StageOutcome::DroppedInterior: return "dropped: interior count";
    case StageOutcome::PassedEdges: return "passed edge checks";
    case StageOutcome::FailedEdges: return "failed an edge check";
  }
  return "";
}

StageCounts& StageCounts::operator+=(const StageCounts& o) {
  total += o.total;
  two_dimensional += o.two_dimensional;
  interior_ok += o.interior_ok;
  edges_failed += o.edges_failed;
  resolved += o.resolved;
  not_genus_g += o.not_genus_g;
  survivors += o.survivors;
  return *this;
}

bool normalization_active(const CampaignSpec& spec) {
  const std::uint64_t q = static_cast<std::uint64_t>(std::pow(spec.p, spec.k));
  const bool available = (spec.family == Family::Hyperelliptic && spec.genus == 3 && q == 4) ||
                         (spec.family == Family::Quartic && (q == 4 || q == 5));
  switch (spec.normalize) {
    case Normalize::Auto: return available;
    case Normalize::On: return available;
    case Normalize::Off: return false;
  }
  return false;
}

void validate(const CampaignSpec& spec) {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidSpec, what); };
  if (!is_prime_number(spec.p)) bad("p = " + std::to_string(spec.p) + " is not prime");
  if (spec.k < 1 || spec.k > 8) bad("k out of range");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < spec.k; ++i) q *= spec.p;
  if (q > 256) bad("q = " + std::to_string(q) + " exceeds the search field limit 256");
  if (spec.budget < 1) bad("retry budget must be positive");
  if (spec.chunks < 1) bad("chunk count must be positive");
  if (spec.threads < 1) bad("thread count must be positive");
  if (spec.checkpoint_interval < 1) bad("checkpoint interval must be positive");
  if (spec.family == Family::Quartic && spec.genus != 3) bad("plane quartics have genus 3");
  if (spec.family == Family::Hyperelliptic && (spec.genus < 1 || spec.genus > 5)) bad("hyperelliptic genus out of range");
  if (!spec.override_grid) {
    if (spec.family == Family::Hyperelliptic && !((q == 2 || q == 4) && (spec.genus == 2 || spec.genus == 3))) {
      bad("hyperelliptic searches run over q in {2, 4} with g in {2, 3}; use the override flag");
    }
    if (spec.family == Family::Quartic && !(q >= 2 && q <= 5)) {
      bad("quartic searches run over q in {2, 3, 4, 5}; use the override flag");
    }
  }
  const bool available = (spec.family == Family::Hyperelliptic && spec.genus == 3 && q == 4) ||
                         (spec.family == Family::Quartic && (q == 4 || q == 5));
  if (spec.normalize == Normalize::On && !available) bad("no coefficient normalization for this family and field");
  const std::size_t n = family_points(spec.family, spec.genus).size();
  if (n > 22) bad("too many lattice points for the support tables");
  double size = 1;
  for (std::size_t i = 0; i < n; ++i) size *= static_cast<double>(q);
  if (size > 1.8e19) bad("candidate space exceeds 64-bit indexing");
}

CandidateSpace::CandidateSpace(const CampaignSpec& spec) {
  validate(spec);
  field_ = make_field(spec.p, spec.k);
  points_ = family_points(spec.family, spec.genus);
  const bool norm = normalization_active(spec);
  const std::uint64_t q = field_->q();
  if (norm && spec.family == Family::Quartic && q == 5) {
    square_borders_ = true;
    params_ = 4;
    for (std::size_t s = 0; s < points_.size(); ++s) {
      if (points_[s].i > 0 && points_[s].j > 0) {
        free_slots_.push_back(static_cast<int>(s));
        ++params_;
      }
    }
  } else {
    std::vector<LatticePoint> fixed;
    if (norm && spec.family == Family::Hyperelliptic) fixed = {{0, 0}, {2LL * spec.genus + 2, 0}};
    if (norm && spec.family == Family::Quartic) fixed = {{0, 0}, {4, 0}, {0, 4}};
    for (std::size_t s = 0; s < points_.size(); ++s) {
      if (std::find(fixed.begin(), fixed.end(), points_[s]) != fixed.end()) {
        fixed_slots_.push_back(static_cast<int>(s));
      } else {
        free_slots_.push_back(static_cast<int>(s));
      }
    }
    params_ = free_slots_.size();
  }
  size_ = 1;
  for (std::size_t i = 0; i < params_; ++i) size_ *= q;
}

void CandidateSpace::expand(const std::vector<Elem>& params, std::vector<Elem>& coeffs) const {
  coeffs.assign(points_.size(), 0);
  if (!square_borders_) {
    for (std::size_t t = 0; t < free_slots_.size(); ++t) coeffs[free_slots_[t]] = params[t];
    for (int s : fixed_slots_) coeffs[s] = 1;
    return;
  }
  // f(x,0) = (a x^2 + b x + 1)^2, f(0,y) = (c y^2 + d y + 1)^2
  const Field& K = *field_;
  auto square_row = [&](Elem a, Elem b, auto set) {
    set(0, 1);
    set(1, K.mul(2, b));
    set(2, K.add(K.mul(b, b), K.mul(2, a)));
    set(3, K.mul(2, K.mul(a, b)));
    set(4, K.mul(a, a));
  };
  square_row(params[0], params[1], [&](int i, Elem v) { coeffs[slot_of(points_, {i, 0})] = v; });
  square_row(params[2], params[3], [&](int j, Elem v) {
    if (j > 0) coeffs[slot_of(points_, {0, j})] = v;
  });
  for (std::size_t t = 0; t < free_slots_.size(); ++t) coeffs[free_slots_[t]] = params[4 + t];
}

void CandidateSpace::decode(std::uint64_t idx, std::vector<Elem>& coeffs) const {
  if (idx >= size_) throw Error(ErrorCode::InvalidArgument, "candidate index out of range");
  const std::uint64_t q = field_->q();
  std::vector<Elem> params(params_);
  for (std::size_t t = params_; t-- > 0;) {
    params[t] = idx % q;
    idx /= q;
  }
  expand(params, coeffs);
}

LaurentPoly CandidateSpace::to_poly(const std::vector<Elem>& coeffs) const {
  std::vector<Term> terms;
  for (std::size_t s = 0; s < points_.size(); ++s) {
    if (coeffs[s] != 0) terms.push_back({points_[s], coeffs[s]});
  }
  return LaurentPoly(field_, terms);
}

LaurentPoly CandidateSpace::candidate(std::uint64_t idx) const {
  std::vector<Elem> c;
  decode(idx, c);
  return to_poly(c);
}

StageOutcome pipeline_filter(const LaurentPoly& f, int genus) {
  if (f.is_zero()) return StageOutcome::DroppedDimension;
  const Polytope p = newton_polytope(f);
  if (p.dimension() < 2) return StageOutcome::DroppedDimension;
  if (interior_lattice_points(p).size() != static_cast<std::size_t>(genus)) return StageOutcome::DroppedInterior;
  for (const auto& face : faces(p)) {
    if (face.kind == FaceKind::Edge && !edge_nondegenerate(f, face).nondegenerate) return StageOutcome::FailedEdges;
  }
  return StageOutcome::PassedEdges;
}

// Support-mask tables, squarefreeness tables for edge polynomials and the
// retry transformations over packed coefficients.
class SearchEngine {
 public:
  explicit SearchEngine(const CampaignSpec& spec)
      : spec_(spec), space_(spec), sf_(*space_.field()), n_(static_cast<int>(space_.points().size())) {
    build_masks();
    build_squarefree_tables();
    if (spec.family == Family::Quartic) build_pgl3();
  }

  const CandidateSpace& space() const { return space_; }

  StageOutcome classify(const std::uint8_t* c) const {
    std::uint32_t mask = 0;
    for (int s = 0; s < n_; ++s) mask |= static_cast<std::uint32_t>(c[s] != 0) << s;
    const MaskInfo& mi = masks_[mask];
    if (!mi.two_dimensional) return StageOutcome::DroppedDimension;
    if (mi.interior != spec_.genus) return StageOutcome::DroppedInterior;
    return edges_ok(c, mi) ? StageOutcome::PassedEdges : StageOutcome::FailedEdges;
  }

  bool edges_ok(const std::uint8_t* c) const {
    std::uint32_t mask = 0;
    for (int s = 0; s < n_; ++s) mask |= static_cast<std::uint32_t>(c[s] != 0) << s;
    return edges_ok(c, masks_[mask]);
  }

  RetryOutcome retry(std::uint64_t idx, const std::uint8_t* c) const {
    CandidateRng rng(spec_.seed, idx);
    std::vector<std::uint8_t> t(static_cast<std::size_t>(n_));
    RetryOutcome out;
    for (int attempt = 0; attempt < spec_.budget; ++attempt) {
      if (spec_.family == Family::Quartic) {
        transform_quartic(c, t.data(), rng);
      } else {
        transform_hyperelliptic(c, t.data(), rng);
      }
      if (edges_ok(t.data())) {
        out.resolved = true;
        out.failures = attempt;
        std::vector<Elem> coeffs(t.begin(), t.end());
        out.model = space_.to_poly(coeffs);
        return out;
      }
    }
    out.failures = spec_.budget;
    return out;
  }

  std::optional<std::string> verify(const LaurentPoly& f) const {
    if (spec_.family == Family::Quartic) {
      if (f.is_zero() || !quartic_smooth(homogenize(f))) return std::nullopt;
      return "smooth plane quartic";
    }
    const auto m = model_from_laurent(f, spec_.genus);
    if (!m) return std::nullopt;
    const GenusResult g = genus_hyperelliptic(*m);
    if (g.inseparable || g.not_hyperelliptic || g.genus != spec_.genus) return std::nullopt;
    return "hyperelliptic of genus " + std::to_string(g.genus);
  }

 private:
  struct MaskInfo {
    bool two_dimensional = false;
    int interior = 0;
    std::uint32_t edge_begin = 0;
    std::uint8_t edge_count = 0;
  };
  struct EdgeSlots {
    std::uint8_t length;
    std::uint32_t begin;  // into slots_
  };

  bool edges_ok(const std::uint8_t* c, const MaskInfo& mi) const {
    const std::uint32_t q = sf_.q;
    for (std::uint32_t e = mi.edge_begin; e < mi.edge_begin + mi.edge_count; ++e) {
      const EdgeSlots& es = edges_[e];
      if (es.length < 2) continue;
      const std::uint8_t* s = &slots_[es.begin];
      if (static_cast<std::size_t>(es.length) < sqf_.size() && !sqf_[es.length].empty()) {
        std::uint32_t key = 0;
        for (int k = es.length; k >= 0; --k) key = key * q + c[s[k]];
        if (!sqf_[es.length][key]) return false;
      } else {
        std::vector<Elem> g(static_cast<std::size_t>(es.length) + 1);
        for (int k = 0; k <= es.length; ++k) g[k] = c[s[k]];
        if (!is_squarefree(UniPoly(space_.field(), g))) return false;
      }
    }
    return true;
  }

  void build_masks() {
    const auto& pts = space_.points();
    masks_.resize(std::size_t{1} << n_);
    for (std::uint32_t mask = 1; mask < masks_.size(); ++mask) {
      std::vector<LatticePoint> sub;
      for (int s = 0; s < n_; ++s) {
        if (mask >> s & 1) sub.push_back(pts[s]);
      }
      const Polytope p = Polytope::hull(sub);
      MaskInfo& mi = masks_[mask];
      mi.two_dimensional = p.dimension() == 2;
      if (mi.two_dimensional) {
        mi.interior = static_cast<int>((p.double_area() - static_cast<long long>(p.boundary_point_count()) + 2) / 2);
      }
      mi.edge_begin = static_cast<std::uint32_t>(edges_.size());
      for (const auto& face : faces(p)) {
        if (face.kind != FaceKind::Edge) continue;
        EdgeSlots es{static_cast<std::uint8_t>(face.length), static_cast<std::uint32_t>(slots_.size())};
        for (long long t = 0; t <= face.length; ++t) {
          const LatticePoint pt{face.a.i + t * face.direction.i, face.a.j + t * face.direction.j};
          slots_.push_back(static_cast<std::uint8_t>(slot_of(pts, pt)));
        }
        edges_.push_back(es);
        max_length_ = std::max(max_length_, static_cast<int>(face.length));
        ++mi.edge_count;
      }
    }
  }

  void build_squarefree_tables() {
    const std::uint64_t q = sf_.q;
    sqf_.resize(static_cast<std::size_t>(max_length_) + 1);
    for (int L = 2; L <= max_length_; ++L) {
      std::uint64_t size = 1;
      for (int i = 0; i <= L; ++i) size *= q;
      if (size > kTableLimit) continue;
      auto& table = sqf_[L];
      table.assign(size, 0);
      std::vector<Elem> g(static_cast<std::size_t>(L) + 1);
      for (std::uint64_t key = 0; key < size; ++key) {
        std::uint64_t r = key;
        for (int i = 0; i <= L; ++i) {
          g[i] = r % q;
          r /= q;
        }
        if (g[0] == 0 || g[L] == 0) continue;
        table[key] = is_squarefree(UniPoly(space_.field(), g)) ? 1 : 0;
      }
    }
  }

  // Degree-<=4 ternary forms on a 5x5 grid of (X, Y) exponents.
  using Grid = std::array<std::uint8_t, 25>;

  Grid grid_mul(const Grid& a, int da, const Grid& b, int db) const {
    Grid out{};
    for (int i0 = 0; i0 <= da; ++i0) {
      for (int j0 = 0; i0 + j0 <= da; ++j0) {
        const std::uint8_t x = a[i0 * 5 + j0];
        if (x == 0) continue;
        for (int i1 = 0; i1 <= db; ++i1) {
          for (int j1 = 0; i1 + j1 <= db; ++j1) {
            const std::uint8_t y = b[i1 * 5 + j1];
            if (y == 0) continue;
            std::uint8_t& z = out[(i0 + i1) * 5 + j0 + j1];
            z = sf_.add(z, sf_.mul(x, y));
          }
        }
      }
    }
    return out;
  }

  // rows[s][t]: coefficient of target slot t in the image of slot s's monomial.
  void substitution(const std::array<std::uint8_t, 9>& m, std::uint8_t* rows) const {
    const auto& pts = space_.points();
    std::array<std::array<Grid, 5>, 3> pw{};
    for (int r = 0; r < 3; ++r) {
      Grid lin{};
      lin[1 * 5 + 0] = m[r * 3 + 0];
      lin[0 * 5 + 1] = m[r * 3 + 1];
      lin[0] = m[r * 3 + 2];
      pw[r][0] = Grid{};
      pw[r][0][0] = 1;
      for (int e = 1; e <= 4; ++e) pw[r][e] = grid_mul(pw[r][e - 1], e - 1, lin, 1);
    }
    for (int s = 0; s < n_; ++s) {
      const int a = static_cast<int>(pts[s].i), b = static_cast<int>(pts[s].j), c = 4 - a - b;
      const Grid img = grid_mul(grid_mul(pw[0][a], a, pw[1][b], b), a + b, pw[2][c], c);
      for (int t = 0; t < n_; ++t) rows[s * n_ + t] = img[pts[t].i * 5 + pts[t].j];
    }
  }

  std::uint8_t det3(const std::array<std::uint8_t, 9>& m) const {
    auto minor = [&](int a, int b, int c, int d) { return sf_.sub(sf_.mul(m[a], m[d]), sf_.mul(m[b], m[c])); };
    std::uint8_t d = sf_.mul(m[0], minor(4, 5, 7, 8));
    d = sf_.sub(d, sf_.mul(m[1], minor(3, 5, 6, 8)));
    return sf_.add(d, sf_.mul(m[2], minor(3, 4, 6, 7)));
  }

  void build_pgl3() {
    const std::uint32_t q = sf_.q;
    if (q > 5) return;
    std::uint64_t total = 1;
    for (int i = 0; i < 9; ++i) total *= q;
    std::array<std::uint8_t, 9> m{};
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t r = idx;
      for (int i = 0; i < 9; ++i) {
        m[i] = static_cast<std::uint8_t>(r % q);
        r /= q;
      }
      const auto first = std::find_if(m.begin(), m.end(), [](std::uint8_t v) { return v != 0; });
      if (first == m.end() || *first != 1 || det3(m) == 0) continue;
      const std::size_t at = pgl3_.size();
      pgl3_.resize(at + static_cast<std::size_t>(n_ * n_));
      substitution(m, &pgl3_[at]);
    }
    pgl3_count_ = static_cast<std::uint32_t>(pgl3_.size() / static_cast<std::size_t>(n_ * n_));
  }

  void transform_quartic(const std::uint8_t* c, std::uint8_t* out, CandidateRng& rng) const {
    std::vector<std::uint8_t> local;
    const std::uint8_t* rows;
    if (pgl3_count_ > 0) {
      rows = &pgl3_[static_cast<std::size_t>(rng.below(pgl3_count_)) * static_cast<std::size_t>(n_ * n_)];
    } else {
      std::array<std::uint8_t, 9> m{};
      do {
        for (auto& v : m) v = static_cast<std::uint8_t>(rng.below(sf_.q));
      } while (det3(m) == 0);
      local.resize(static_cast<std::size_t>(n_ * n_));
      substitution(m, local.data());
      rows = local.data();
    }
    std::fill(out, out + n_, 0);
    for (int s = 0; s < n_; ++s) {
      if (c[s] == 0) continue;
      const std::uint8_t* row = rows + s * n_;
      for (int t = 0; t < n_; ++t) out[t] = sf_.add(out[t], sf_.mul(c[s], row[t]));
    }
  }

  // f(x - a, y - h(x)) with deg h <= g + 1.
  void transform_hyperelliptic(const std::uint8_t* c, std::uint8_t* out, CandidateRng& rng) const {
    const int g = spec_.genus;
    const int n0 = 2 * g + 3, n1 = g + 2;
    const std::uint8_t a = static_cast<std::uint8_t>(rng.below(sf_.q));
    std::array<std::uint8_t, 8> h{};
    for (int i = 0; i < n1; ++i) h[i] = static_cast<std::uint8_t>(rng.below(sf_.q));
    const std::uint8_t minus_a = sf_.neg(a);
    auto shift = [&](const std::uint8_t* u, int len, std::uint8_t* r) {
      std::fill(r, r + len, 0);
      int deg = -1;
      for (int i = len - 1; i >= 0; --i) {
        // r <- r (x - a) + u_i
        for (int t = deg + 1; t > 0; --t) r[t] = sf_.add(r[t - 1], sf_.mul(r[t], minus_a));
        r[0] = sf_.add(sf_.mul(r[0], minus_a), u[i]);
        ++deg;
      }
    };
    std::array<std::uint8_t, 16> c0{}, c1{};
    shift(c, n0, c0.data());
    shift(c + n0, n1, c1.data());
    const std::uint8_t c2 = c[n0 + n1];
    // c2 (y - h)^2 + c1 (y - h) + c0
    std::array<std::uint8_t, 16> h2{}, c1h{};
    for (int i = 0; i < n1; ++i) {
      for (int j = 0; j < n1; ++j) {
        h2[i + j] = sf_.add(h2[i + j], sf_.mul(h[i], h[j]));
        c1h[i + j] = sf_.add(c1h[i + j], sf_.mul(c1[i], h[j]));
      }
    }
    const std::uint8_t two_c2 = sf_.add(c2, c2);
    for (int i = 0; i < n0; ++i) out[i] = sf_.add(sf_.sub(c0[i], c1h[i]), sf_.mul(c2, h2[i]));
    for (int i = 0; i < n1; ++i) out[n0 + i] = sf_.sub(c1[i], sf_.mul(two_c2, h[i]));
    out[n0 + n1] = c2;
  }

  CampaignSpec spec_;
  CandidateSpace space_;
  SmallField sf_;
  int n_;
  int max_length_ = 0;
  std::vector<MaskInfo> masks_;
  std::vector<EdgeSlots> edges_;
  std::vector<std::uint8_t> slots_;
  std::vector<std::vector<std::uint8_t>> sqf_;
  std::vector<std::uint8_t> pgl3_;
  std::uint32_t pgl3_count_ = 0;
};

Pipeline::Pipeline(const CampaignSpec& spec) : engine_(std::make_unique<SearchEngine>(spec)) {}
Pipeline::~Pipeline() = default;

const CandidateSpace& Pipeline::space() const { return engine_->space(); }

StageOutcome Pipeline::classify(const std::vector<Elem>& coeffs) const {
  std::vector<std::uint8_t> c(coeffs.begin(), coeffs.end());
  return engine_->classify(c.data());
}

RetryOutcome Pipeline::retry(std::uint64_t idx, const std::vector<Elem>& coeffs) const {
  std::vector<std::uint8_t> c(coeffs.begin(), coeffs.end());
  return engine_->retry(idx, c.data());
}

std::optional<std::string> Pipeline::verify(const LaurentPoly& f) const { return engine_->verify(f); }

namespace {

struct ChunkState {
  std::uint32_t id = 0;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::uint64_t next = 0;
  StageCounts counts;
  std::vector<SurvivorRecord> survivors;
  double seconds = 0;
};

json checkpoint_json(const CampaignSpec& spec, const std::vector<ChunkState>& chunks) {
  json arr = json::array();
  for (const auto& c : chunks) {
    json surv = json::array();
    for (const auto& s : c.survivors) surv.push_back(survivor_json(s));
    arr.push_back({{"id", c.id},
                   {"begin", c.begin},
                   {"end", c.end},
                   {"next", c.next},
                   {"counts", counts_json(c.counts)},
                   {"survivors", surv},
                   {"seconds", c.seconds}});
  }
  return json{{"format", "nondeg-checkpoint"}, {"version", kCheckpointVersion}, {"spec", spec_echo(spec)}, {"chunks", arr}};
}

void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp);
    f << text;
    f.flush();
    if (!f) throw Error(ErrorCode::InvalidArgument, "short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::vector<ChunkState> load_checkpoint(const CampaignSpec& spec, const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::CheckpointCorrupt, "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CheckpointCorrupt, path + ": " + e.what());
  }
  try {
    if (j.at("format") != "nondeg-checkpoint" || j.at("version") != kCheckpointVersion) {
      throw Error(ErrorCode::CheckpointCorrupt, path + ": unknown format or version");
    }
    if (j.at("spec") != spec_echo(spec)) {
      throw Error(ErrorCode::SpecMismatchOnResume, path + " was written for " + j.at("spec").dump());
    }
    std::vector<ChunkState> out;
    for (const auto& c : j.at("chunks")) {
      ChunkState s;
      s.id = c.at("id").get<std::uint32_t>();
      s.begin = c.at("begin").get<std::uint64_t>();
      s.end = c.at("end").get<std::uint64_t>();
      s.next = c.at("next").get<std::uint64_t>();
      s.counts = counts_from_json(c.at("counts"));
      for (const auto& r : c.at("survivors")) s.survivors.push_back(survivor_from_json(r));
      s.seconds = c.at("seconds").get<double>();
      if (s.next < s.begin || s.next > s.end || s.counts.total != s.next - s.begin) {
        throw Error(ErrorCode::CheckpointCorrupt, path + ": inconsistent chunk " + std::to_string(s.id));
      }
      out.push_back(std::move(s));
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CheckpointCorrupt, path + ": " + e.what());
  }
}

std::vector<ChunkState> fresh_chunks(const CampaignSpec& spec, std::uint64_t total) {
  std::vector<ChunkState> out;
  for (std::uint32_t c = 0; c < spec.chunks; ++c) {
    ChunkState s;
    s.id = c;
    s.begin = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * c / spec.chunks);
    s.end = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * (c + 1) / spec.chunks);
    s.next = s.begin;
    out.push_back(s);
  }
  return out;
}

std::string canonical_key(const LaurentPoly& f) {
  if (f.is_zero()) return "0";
  return to_string(f.scaled(f.field()->inv(f.terms().front().c)));
}

}  // namespace

CampaignResult run_campaign(const CampaignSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  validate(spec);
  SearchEngine engine(spec);
  const CandidateSpace& space = engine.space();
  const std::uint64_t total = space.size();

  std::vector<ChunkState> chunks;
  if (!spec.checkpoint.empty() && std::filesystem::exists(spec.checkpoint)) {
    chunks = load_checkpoint(spec, spec.checkpoint);
    if (chunks.size() != spec.chunks) throw Error(ErrorCode::CheckpointCorrupt, "chunk count differs from the spec");
    const auto expected = fresh_chunks(spec, total);
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      if (chunks[i].begin != expected[i].begin || chunks[i].end != expected[i].end) {
        throw Error(ErrorCode::CheckpointCorrupt, "chunk ranges differ from the spec");
      }
    }
  } else {
    chunks = fresh_chunks(spec, total);
  }

  std::mutex mu;
  std::atomic<std::uint64_t> processed{0};
  const std::uint64_t limit = spec.max_candidates == 0 ? ~std::uint64_t{0} : spec.max_candidates;
  auto save = [&] {
    if (!spec.checkpoint.empty()) write_atomic(spec.checkpoint, checkpoint_json(spec, chunks).dump(1));
  };

  auto work = [&](ChunkState& chunk) {
    const auto t0 = std::chrono::steady_clock::now();
    ChunkState local;
    {
      std::lock_guard<std::mutex> lock(mu);
      local = chunk;
    }
    const std::uint64_t q = space.field()->q();
    const std::size_t P = space.parameter_count();
    std::vector<Elem> params(P), coeffs;
    std::vector<std::uint8_t> c;
    if (local.next < local.end) {
      std::uint64_t r = local.next;
      for (std::size_t t = P; t-- > 0;) {
        params[t] = r % q;
        r /= q;
      }
    }
    std::uint64_t since = 0;
    const double base_seconds = local.seconds;
    auto publish = [&] {
      local.seconds = base_seconds + std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::lock_guard<std::mutex> lock(mu);
      chunk = local;
      save();
    };
    while (local.next < local.end) {
      if (processed.fetch_add(1) >= limit) break;
      space.expand(params, coeffs);
      c.assign(coeffs.begin(), coeffs.end());
      StageCounts& k = local.counts;
      ++k.total;
      const StageOutcome stage = engine.classify(c.data());
      if (stage != StageOutcome::DroppedDimension) ++k.two_dimensional;
      if (stage == StageOutcome::PassedEdges || stage == StageOutcome::FailedEdges) ++k.interior_ok;
      if (stage == StageOutcome::FailedEdges) {
        ++k.edges_failed;
        const RetryOutcome r = engine.retry(local.next, c.data());
        if (r.resolved) {
          ++k.resolved;
        } else {
          const LaurentPoly f = space.to_poly(coeffs);
          const auto check = engine.verify(f);
          if (!check) {
            ++k.not_genus_g;
          } else {
            ++k.survivors;
            SurvivorRecord rec;
            rec.index = local.next;
            rec.polynomial = to_string(f);
            rec.retry_failures = r.failures;
            rec.genus_check = *check;
            for (const auto& v : is_nondegenerate(f).verdicts) {
              rec.verdicts.push_back(to_string(v.face) + ": " + (v.nondegenerate ? "nondegenerate" : "degenerate"));
            }
            local.survivors.push_back(std::move(rec));
          }
        }
      }
      ++local.next;
      for (std::size_t t = P; t-- > 0;) {
        if (++params[t] < q) break;
        params[t] = 0;
      }
      if (++since == spec.checkpoint_interval) {
        since = 0;
        publish();
      }
    }
    publish();
  };

  std::atomic<std::size_t> next_chunk{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next_chunk.fetch_add(1);
      if (i >= chunks.size()) return;
      work(chunks[i]);
    }
  };
  if (spec.threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::uint32_t t = 0; t < spec.threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CampaignResult result;
  result.spec = spec;
  std::uint64_t expect = 0;
  for (const auto& ch : chunks) {
    if (ch.begin != expect) throw std::logic_error("chunk ranges do not tile the candidate space");
    expect = ch.end;
    result.counts += ch.counts;
    result.complete = result.complete && ch.next == ch.end;
    result.survivors.insert(result.survivors.end(), ch.survivors.begin(), ch.survivors.end());
    result.chunks.push_back({ch.id, ch.begin, ch.end, ch.seconds});
  }
  if (expect != total) throw std::logic_error("chunk ranges do not cover the candidate space");
  std::sort(result.survivors.begin(), result.survivors.end(),
            [](const SurvivorRecord& a, const SurvivorRecord& b) { return a.index < b.index; });

  if (result.complete) {
    // orbit deduplication in candidate order
    const bool orbits = spec.family == Family::Quartic && space.field()->q() <= 3;
    std::vector<std::pair<std::uint64_t, std::unordered_set<std::string>>> reps;
    std::unordered_map<std::string, std::uint64_t> exact;
    for (auto& s : result.survivors) {
      const LaurentPoly f = space.candidate(s.index);
      if (orbits) {
        const TernaryQuartic F = homogenize(f);
        const std::string key = orbit_key(F);
        auto it = std::find_if(reps.begin(), reps.end(), [&](const auto& r) { return r.second.count(key) > 0; });
        if (it == reps.end()) {
          reps.emplace_back(s.index, orbit_keys(F));
          result.orbit_representatives.push_back(s.polynomial);
          s.orbit = s.index;
        } else {
          s.orbit = it->first;
        }
      } else {
        const std::string key = canonical_key(f);
        auto [it, inserted] = exact.emplace(key, s.index);
        if (inserted) result.orbit_representatives.push_back(s.polynomial);
        s.orbit = it->second;
      }
    }
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!spec.out.empty()) {
    write_atomic(spec.out, result_jsonl(result));
    write_atomic(spec.out + ".manifest.json", result_manifest(result));
  }
  return result;
}

std::string result_jsonl(const CampaignResult& result) {
  std::string out;
  const std::string field = "F_" + std::to_string(static_cast<std::uint64_t>(std::pow(result.spec.p, result.spec.k)));
  for (const auto& s : result.survivors) {
    json j = survivor_json(s);
    j["type"] = "survivor";
    j["family"] = to_string(result.spec.family);
    j["field"] = field;
    out += j.dump() + "\n";
  }
  json summary{{"type", "summary"},
               {"spec", spec_echo(result.spec)},
               {"complete", result.complete},
               {"stages", counts_json(result.counts)},
               {"survivors", result.survivors.size()},
               {"orbits", result.orbit_representatives.size()},
               {"orbit_representatives", result.orbit_representatives}};
  out += summary.dump() + "\n";
  return out;
}

std::string result_manifest(const CampaignResult& result) {
  json chunks = json::array();
  for (const auto& c : result.chunks) {
    chunks.push_back({{"id", c.id}, {"begin", c.begin}, {"end", c.end}, {"seconds", c.seconds}});
  }
  json j{{"spec", spec_echo(result.spec)},
         {"threads", result.spec.threads},
         {"seconds", result.seconds},
         {"complete", result.complete},
         {"chunks", chunks}};
  return j.dump(1) + "\n";
}

}  // namespace nondeg
