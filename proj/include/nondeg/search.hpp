#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nondeg/laurent.hpp"

namespace nondeg {

enum class Family { Hyperelliptic, Quartic };
enum class Normalize { Auto, On, Off };

struct CampaignSpec {
  Family family = Family::Quartic;
  int genus = 3;  // hyperelliptic: 2 or 3; quartic: 3
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  Normalize normalize = Normalize::Auto;
  int budget = 1000;
  std::uint64_t seed = 0;
  std::uint32_t chunks = 1;
  std::uint32_t threads = 1;
  std::string checkpoint;  // empty: no checkpointing
  std::string out;         // empty: no output file
  bool override_grid = false;
  std::uint64_t checkpoint_interval = 1u << 20;
  // Stop after this many candidates in this process (0: run to the end).
  std::uint64_t max_candidates = 0;
};

std::string to_string(Family f);
// Throws InvalidSpec.
void validate(const CampaignSpec& spec);
// Whether leading and constant coefficients are fixed for this spec.
bool normalization_active(const CampaignSpec& spec);

// Candidate coefficient space of a campaign. Lattice points are ordered by
// row (y-exponent), then by x-exponent; the free parameters form a tuple whose
// last entry varies fastest with the candidate index.
class CandidateSpace {
 public:
  explicit CandidateSpace(const CampaignSpec& spec);

  const FieldPtr& field() const noexcept { return field_; }
  std::uint64_t size() const noexcept { return size_; }
  const std::vector<LatticePoint>& points() const noexcept { return points_; }
  std::size_t parameter_count() const noexcept { return params_; }

  // Coefficients on points() of candidate idx.
  void decode(std::uint64_t idx, std::vector<Elem>& coeffs) const;
  // Coefficients from a parameter tuple.
  void expand(const std::vector<Elem>& params, std::vector<Elem>& coeffs) const;
  LaurentPoly candidate(std::uint64_t idx) const;
  LaurentPoly to_poly(const std::vector<Elem>& coeffs) const;

 private:
  FieldPtr field_;
  std::vector<LatticePoint> points_;
  std::size_t params_ = 0;
  std::uint64_t size_ = 0;
  // free parameter -> slot, or -1 for derived layouts
  std::vector<int> free_slots_;
  std::vector<int> fixed_slots_;
  bool square_borders_ = false;
};

enum class StageOutcome { DroppedDimension, DroppedInterior, PassedEdges, FailedEdges };
std::string to_string(StageOutcome s);

// Reference pipeline through the general polytope and nondegeneracy code.
StageOutcome pipeline_filter(const LaurentPoly& f, int genus);

struct RetryOutcome {
  bool resolved = false;
  int failures = 0;
  std::optional<LaurentPoly> model;  // the transformed polynomial that passed the edge checks
};

struct SurvivorRecord {
  std::uint64_t index = 0;
  std::string polynomial;
  int retry_failures = 0;
  std::vector<std::string> verdicts;
  std::string genus_check;
  std::uint64_t orbit = 0;  // candidate index of the orbit representative
};

struct StageCounts {
  std::uint64_t total = 0;
  std::uint64_t two_dimensional = 0;
  std::uint64_t interior_ok = 0;
  std::uint64_t edges_failed = 0;
  std::uint64_t resolved = 0;
  std::uint64_t not_genus_g = 0;
  std::uint64_t survivors = 0;

  StageCounts& operator+=(const StageCounts& o);
  bool operator==(const StageCounts& o) const = default;
};

struct ChunkStat {
  std::uint32_t id = 0;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  double seconds = 0;
};

struct CampaignResult {
  CampaignSpec spec;
  bool complete = true;
  StageCounts counts;
  std::vector<SurvivorRecord> survivors;
  std::vector<std::string> orbit_representatives;
  std::vector<ChunkStat> chunks;
  double seconds = 0;
};

class SearchEngine;

// Fast pipeline over packed coefficient vectors; built once per spec.
class Pipeline {
 public:
  explicit Pipeline(const CampaignSpec& spec);
  ~Pipeline();
  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  const CandidateSpace& space() const;
  StageOutcome classify(const std::vector<Elem>& coeffs) const;
  // Retry loop for candidate idx with coefficients coeffs, seeded from (seed, idx).
  RetryOutcome retry(std::uint64_t idx, const std::vector<Elem>& coeffs) const;
  // Deferred verification of a retry survivor: empty if not a genus-g curve.
  std::optional<std::string> verify(const LaurentPoly& f) const;

 private:
  std::unique_ptr<SearchEngine> engine_;
};

// Throws InvalidSpec, CheckpointCorrupt, SpecMismatchOnResume.
CampaignResult run_campaign(const CampaignSpec& spec);

// One JSON object per survivor, then a summary object; deterministic.
std::string result_jsonl(const CampaignResult& result);
// Wall-clock and chunk statistics.
std::string result_manifest(const CampaignResult& result);

}  // namespace nondeg
