#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "nondeg/models.hpp"
#include "nondeg/nondegen.hpp"
#include "nondeg/parser.hpp"
#include "nondeg/polytope.hpp"
#include "nondeg/search.hpp"

using namespace nondeg;

namespace {

const char* kF2 = "(x+y)^4+(x*y)^2+x*y*(x+y+1)+(x+y+1)^2";

CampaignSpec quartic(std::uint32_t p, std::uint32_t k) {
  CampaignSpec s;
  s.family = Family::Quartic;
  s.p = p;
  s.k = k;
  return s;
}

CampaignSpec hyper(std::uint32_t p, std::uint32_t k, int g) {
  CampaignSpec s;
  s.family = Family::Hyperelliptic;
  s.genus = g;
  s.p = p;
  s.k = k;
  return s;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("nondeg_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Interior points by direct scan of the bounding box.
int interior_scan(const Polytope& p) {
  long long lo_i = 100, hi_i = -100, lo_j = 100, hi_j = -100;
  for (const auto& v : p.vertices()) {
    lo_i = std::min(lo_i, v.i);
    hi_i = std::max(hi_i, v.i);
    lo_j = std::min(lo_j, v.j);
    hi_j = std::max(hi_j, v.j);
  }
  int n = 0;
  for (long long i = lo_i; i <= hi_i; ++i) {
    for (long long j = lo_j; j <= hi_j; ++j) {
      if (p.strictly_contains({i, j})) ++n;
    }
  }
  return n;
}

}  // namespace

TEST_CASE("candidate space sizes") {
  CHECK(CandidateSpace(quartic(2, 1)).size() == 32768);
  CHECK(CandidateSpace(quartic(3, 1)).size() == 14348907);
  CHECK(CandidateSpace(hyper(2, 1, 2)).size() == 4096);
  CHECK(CandidateSpace(hyper(2, 1, 3)).size() == 32768);
  CHECK(CandidateSpace(hyper(2, 2, 3)).size() == 67108864);
  CHECK(CandidateSpace(quartic(2, 2)).size() == 16777216);
  CHECK(CandidateSpace(quartic(5, 1)).size() == 9765625);
  auto off = quartic(5, 1);
  off.normalize = Normalize::Off;
  CHECK(CandidateSpace(off).size() == 30517578125ULL);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(validate(quartic(7, 1)), Error);
  auto over = quartic(7, 1);
  over.override_grid = true;
  CHECK_NOTHROW(validate(over));
  CHECK_THROWS_AS(validate(quartic(4, 1)), Error);
  CHECK_THROWS_AS(validate(hyper(3, 1, 2)), Error);
  CHECK_THROWS_AS(validate(hyper(2, 1, 4)), Error);
  auto on = quartic(2, 1);
  on.normalize = Normalize::On;
  CHECK_THROWS_AS(validate(on), Error);
  on = hyper(2, 2, 2);
  on.normalize = Normalize::On;
  CHECK_THROWS_AS(validate(on), Error);
  auto bad = quartic(2, 1);
  bad.budget = 0;
  CHECK_THROWS_AS(validate(bad), Error);
  try {
    validate(quartic(3, 2));
    FAIL("expected InvalidSpec");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSpec);
  }
}

TEST_CASE("normalized layouts") {
  SUBCASE("hyperelliptic F4 genus 3") {
    CandidateSpace s(hyper(2, 2, 3));
    std::vector<Elem> c;
    for (std::uint64_t idx : std::vector<std::uint64_t>{0, 12345, s.size() - 1}) {
      s.decode(idx, c);
      CHECK(c[0] == 1);
      CHECK(c[8] == 1);
    }
    s.decode(s.size() - 1, c);
    for (std::size_t t = 0; t < c.size(); ++t) {
      if (t != 0 && t != 8) CHECK(c[t] == 3);
    }
  }
  SUBCASE("quartic F5 borders are squares") {
    CandidateSpace s(quartic(5, 1));
    const auto F = s.field();
    std::mt19937_64 rng(5);
    std::vector<Elem> c;
    for (int n = 0; n < 200; ++n) {
      const std::uint64_t idx = rng() % s.size();
      const LaurentPoly f = s.candidate(idx);
      std::vector<Elem> row(5), col(5);
      for (const auto& t : f.terms()) {
        if (t.e.j == 0) row[t.e.i] = t.c;
        if (t.e.i == 0) col[t.e.j] = t.c;
      }
      // last four parameters are the leading digits a, b, c, d
      std::uint64_t r = idx;
      for (int t = 0; t < 6; ++t) r /= 5;
      const Elem d = r % 5, cc = r / 5 % 5, b = r / 25 % 5, a = r / 125 % 5;
      const UniPoly hx(F, {1, b, a}), hy(F, {1, d, cc});
      CHECK(UniPoly(F, row) == hx * hx);
      CHECK(UniPoly(F, col) == hy * hy);
    }
  }
  SUBCASE("last parameter varies fastest") {
    CandidateSpace s(quartic(2, 1));
    std::vector<Elem> c;
    s.decode(1, c);
    CHECK(c.back() == 1);
    CHECK(std::count(c.begin(), c.end(), 0) == static_cast<long>(c.size()) - 1);
    s.decode(1ULL << 14, c);
    CHECK(c.front() == 1);
  }
}

TEST_CASE("fast stages agree with the general pipeline") {
  SUBCASE("every quartic over F2") {
    Pipeline fast(quartic(2, 1));
    const auto& s = fast.space();
    std::vector<Elem> c;
    for (std::uint64_t idx = 0; idx < s.size(); ++idx) {
      s.decode(idx, c);
      const LaurentPoly f = s.to_poly(c);
      REQUIRE(fast.classify(c) == pipeline_filter(f, 3));
    }
  }
  SUBCASE("every genus 2 hyperelliptic candidate over F2") {
    Pipeline fast(hyper(2, 1, 2));
    const auto& s = fast.space();
    std::vector<Elem> c;
    for (std::uint64_t idx = 0; idx < s.size(); ++idx) {
      s.decode(idx, c);
      REQUIRE(fast.classify(c) == pipeline_filter(s.to_poly(c), 2));
    }
  }
  SUBCASE("random candidates over F3, F4 and F5") {
    std::mt19937_64 rng(11);
    for (const auto& spec : {quartic(3, 1), quartic(2, 2), quartic(5, 1), hyper(2, 2, 3), hyper(2, 2, 2)}) {
      Pipeline fast(spec);
      const auto& s = fast.space();
      std::vector<Elem> c;
      for (int n = 0; n < 3000; ++n) {
        s.decode(rng() % s.size(), c);
        REQUIRE(fast.classify(c) == pipeline_filter(s.to_poly(c), spec.genus));
      }
    }
  }
}

TEST_CASE("interior count matches a direct scan") {
  Pipeline fast(quartic(2, 1));
  const auto& s = fast.space();
  std::vector<Elem> c;
  for (std::uint64_t idx = 1; idx < s.size(); idx += 7) {
    s.decode(idx, c);
    const LaurentPoly f = s.to_poly(c);
    const Polytope p = newton_polytope(f);
    if (p.dimension() < 2) {
      CHECK(fast.classify(c) == StageOutcome::DroppedDimension);
      continue;
    }
    const bool three = interior_scan(p) == 3;
    CHECK((fast.classify(c) != StageOutcome::DroppedInterior) == three);
  }
}

TEST_CASE("retry resolves to nondegenerate models") {
  SUBCASE("quartics over F3") {
    Pipeline fast(quartic(3, 1));
    const auto& s = fast.space();
    std::mt19937_64 rng(3);
    std::vector<Elem> c;
    int resolved = 0;
    while (resolved < 40) {
      const std::uint64_t idx = rng() % s.size();
      s.decode(idx, c);
      if (fast.classify(c) != StageOutcome::FailedEdges) continue;
      const LaurentPoly f = s.to_poly(c);
      if (!fast.verify(f)) continue;
      const RetryOutcome r = fast.retry(idx, c);
      REQUIRE(r.resolved);
      REQUIRE(r.model);
      CHECK(is_nondegenerate(*r.model).nondegenerate);
      CHECK(projectively_equivalent(homogenize(f), homogenize(*r.model)));
      const RetryOutcome again = fast.retry(idx, c);
      CHECK(again.failures == r.failures);
      CHECK(*again.model == *r.model);
      ++resolved;
    }
  }
  SUBCASE("hyperelliptic genus 3 over F4") {
    auto spec = hyper(2, 2, 3);
    Pipeline fast(spec);
    const auto& s = fast.space();
    std::mt19937_64 rng(4);
    std::vector<Elem> c;
    int resolved = 0;
    while (resolved < 40) {
      const std::uint64_t idx = rng() % s.size();
      s.decode(idx, c);
      if (fast.classify(c) != StageOutcome::FailedEdges) continue;
      const LaurentPoly f = s.to_poly(c);
      if (!fast.verify(f)) continue;
      const RetryOutcome r = fast.retry(idx, c);
      REQUIRE(r.resolved);
      CHECK(pipeline_filter(*r.model, 3) == StageOutcome::PassedEdges);
      CHECK(is_nondegenerate(*r.model).nondegenerate);
      const auto m = model_from_laurent(*r.model, 3);
      REQUIRE(m);
      CHECK(genus_hyperelliptic(*m).genus == 3);
      ++resolved;
    }
  }
}

TEST_CASE("quartic campaign over F2") {
  auto spec = quartic(2, 1);
  spec.budget = 200;
  const CampaignResult r = run_campaign(spec);
  CHECK(r.complete);
  CHECK(r.counts.total == 32768);
  CHECK(r.counts.survivors == r.survivors.size());
  CHECK(r.counts.edges_failed == r.counts.resolved + r.counts.not_genus_g + r.counts.survivors);
  // stage counts from tests/oracle/oracle.py
  CHECK(r.counts.two_dimensional == 32578);
  CHECK(r.counts.interior_ok == 21280);
  CHECK(r.counts.edges_failed == 13592);
  REQUIRE(r.survivors.size() == 1);
  CHECK(r.survivors[0].index == 21945);
  CHECK(r.survivors[0].retry_failures == 200);
  REQUIRE(r.orbit_representatives.size() == 1);
  const auto f2 = homogenize(parse_poly(kF2, make_field(2, 1)));
  for (const auto& s : r.survivors) {
    CHECK(projectively_equivalent(homogenize(parse_poly(s.polynomial, make_field(2, 1))), f2));
  }
}

TEST_CASE("hyperelliptic campaigns over F2 have no survivors") {
  struct Row {
    int g;
    std::uint64_t total, two_dimensional, interior_ok, edges_failed;
  };
  // stage counts from tests/oracle/oracle.py
  for (const Row& row : {Row{2, 4096, 3909, 1564, 1016}, Row{3, 32768, 32160, 12536, 8232}}) {
    auto s = hyper(2, 1, row.g);
    s.budget = 200;
    const CampaignResult r = run_campaign(s);
    CHECK(r.complete);
    CHECK(r.counts.total == row.total);
    CHECK(r.counts.two_dimensional == row.two_dimensional);
    CHECK(r.counts.interior_ok == row.interior_ok);
    CHECK(r.counts.edges_failed == row.edges_failed);
    CHECK(r.counts.resolved == row.edges_failed);
    CHECK(r.survivors.empty());
  }
}

TEST_CASE("campaign output is deterministic and resumable") {
  auto spec = quartic(2, 1);
  spec.budget = 50;
  spec.chunks = 4;
  spec.out = temp_path("full.jsonl");
  const CampaignResult full = run_campaign(spec);
  const std::string expected = slurp(spec.out);
  CHECK(expected == result_jsonl(full));

  auto threaded = spec;
  threaded.threads = 3;
  threaded.out = temp_path("threaded.jsonl");
  run_campaign(threaded);
  CHECK(slurp(threaded.out) == expected);

  auto resumed = spec;
  resumed.out = temp_path("resumed.jsonl");
  resumed.checkpoint = temp_path("resume.ckpt");
  resumed.checkpoint_interval = 1000;
  std::filesystem::remove(resumed.checkpoint);
  resumed.max_candidates = 10000;
  const CampaignResult part = run_campaign(resumed);
  CHECK_FALSE(part.complete);
  CHECK(part.counts.total == 10000);
  resumed.max_candidates = 9000;
  CHECK_FALSE(run_campaign(resumed).complete);
  resumed.max_candidates = 0;
  const CampaignResult done = run_campaign(resumed);
  CHECK(done.complete);
  CHECK(done.counts == full.counts);
  CHECK(slurp(resumed.out) == expected);

  auto other = resumed;
  other.seed = 9;
  CHECK_THROWS_WITH_AS(run_campaign(other), doctest::Contains("written for"), Error);
  try {
    run_campaign(other);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpecMismatchOnResume);
  }

  {
    std::ofstream f(resumed.checkpoint, std::ios::trunc);
    f << "{\"format\": \"nondeg-checkpoint\", \"version\": 1, \"chunks\": [";
  }
  try {
    run_campaign(resumed);
    FAIL("expected CheckpointCorrupt");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CheckpointCorrupt);
  }
  for (const auto& p : {spec.out, threaded.out, resumed.out, resumed.checkpoint}) {
    std::filesystem::remove(p);
    std::filesystem::remove(p + ".manifest.json");
  }
}

TEST_CASE("regression: y^2 + y + x^7 + x over F2") {
  auto spec = hyper(2, 1, 3);
  Pipeline fast(spec);
  const LaurentPoly f = parse_poly("y^2+y+x^7+x", make_field(2, 1));
  // x + x^7 = x (1 + x^3)^2 on the bottom edge
  CHECK(pipeline_filter(f, 3) == StageOutcome::FailedEdges);
  std::vector<Elem> c(fast.space().points().size(), 0);
  for (const auto& t : f.terms()) {
    const auto& pts = fast.space().points();
    c[std::find(pts.begin(), pts.end(), t.e) - pts.begin()] = t.c;
  }
  CHECK(fast.classify(c) == StageOutcome::FailedEdges);
  const RetryOutcome r = fast.retry(0, c);
  REQUIRE(r.resolved);
  CHECK(r.failures == 1);
  CHECK(is_nondegenerate(*r.model).nondegenerate);
  CHECK(fast.verify(f) == std::optional<std::string>("hyperelliptic of genus 3"));
}

TEST_CASE("survivor set does not depend on the chunk count") {
  auto spec = quartic(2, 1);
  spec.budget = 100;
  const CampaignResult one = run_campaign(spec);
  spec.chunks = 7;
  spec.threads = 2;
  const CampaignResult seven = run_campaign(spec);
  CHECK(one.counts == seven.counts);
  REQUIRE(one.survivors.size() == seven.survivors.size());
  for (std::size_t i = 0; i < one.survivors.size(); ++i) {
    CHECK(one.survivors[i].index == seven.survivors[i].index);
    CHECK(one.survivors[i].orbit == seven.survivors[i].orbit);
  }
  CHECK(seven.chunks.size() == 7);
  CHECK(seven.chunks.front().begin == 0);
  CHECK(seven.chunks.back().end == 32768);
}
