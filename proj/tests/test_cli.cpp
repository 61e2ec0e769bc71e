#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "doctest.h"

using json = nlohmann::json;

namespace {

const char* kF2 = "(x+y)^4+(x*y)^2+x*y*(x+y+1)+(x+y+1)^2";
const char* kF3 = "y^3-y-(x^2+1)^2";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "nondeg");
  std::ostringstream out, err;
  const int code = nondeg::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

void check_manifest(const json& m, const std::string& sub) {
  CHECK(m.at("subcommand") == sub);
  CHECK(m.at("flags").is_object());
  CHECK(m.at("seed").is_number_unsigned());
  CHECK(m.at("versions").at("nondeg").is_string());
  CHECK(m.at("started").is_string());
  CHECK(m.at("finished").is_string());
  for (const auto& in : m.at("inputs")) CHECK(in.at("sha256").get<std::string>().size() == 64);
}

}  // namespace

TEST_CASE("cli check") {
  Run r = run({"check", kF2, "--p", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("edge (0,0)-(4,0): DEGENERATE") != std::string::npos);
  CHECK(r.out.rfind("DEGENERATE\n") == r.out.size() - 11);

  r = run({"check", kF3, "--p", "3", "--json"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("verdict") == "DEGENERATE");
  CHECK(j.at("nondegenerate") == false);
  bool witnessed = false;
  for (const auto& f : j.at("faces")) {
    if (f.contains("witness")) {
      witnessed = true;
      CHECK(f.at("witness").at("field").at("modulus").is_array());
    }
  }
  CHECK(witnessed);
  check_manifest(j.at("manifest"), "check");

  r = run({"check", "y^2-x^5-2", "--p", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\nNONDEGENERATE") != std::string::npos);
}

TEST_CASE("cli count, zeta, lines, genus, equiv, normalize") {
  Run r = run({"count", kF3, "--p", "3", "--k", "3", "--ext", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "28\n");

  r = run({"zeta", kF3, "--p", "3", "--k", "3", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("L") == json::array({1, 0, 81, 0, 2187, 0, 19683}));
  CHECK(j.at("counts") == json::array({28, 892, 19684}));
  check_manifest(j.at("manifest"), "zeta");

  r = run({"count", kF2, "--p", "2", "--k", "2"});
  CHECK(r.out == "14\n");
  r = run({"count", "y^2+y-x^5", "--p", "2", "--hyperelliptic"});
  CHECK(r.code == 0);
  CHECK(r.out == "3\n");

  r = run({"lines", kF3, "--p", "7", "--json"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j.at("tangent_count").get<int>() <= 28 + 20);
  CHECK(j.at("three_lines").at("nondegenerate") == true);

  r = run({"genus", "y^2+y-x^5", "--p", "2"});
  CHECK(r.out == "genus 2\n");
  r = run({"genus", "y^2-x^5-1", "--p", "7", "--json"});
  j = json::parse(r.out);
  CHECK(j.at("genus") == 2);

  r = run({"equiv", kF2, "(x+1+y)^4+((x+1)*y)^2+(x+1)*y*(x+y)+(x+y)^2", "--p", "2"});
  CHECK(r.out == "EQUIVALENT\n");
  r = run({"equiv", kF2, "x^4+y^4+1+x*y", "--p", "2"});
  CHECK(r.out == "NOT EQUIVALENT\n");

  r = run({"normalize", "y^2+x*y-x^7-1", "--p", "2", "--k", "3", "--json"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j.at("nondegenerate") == true);
  CHECK(j.at("interior_points") == 3);
  check_manifest(j.at("manifest"), "normalize");
}

TEST_CASE("cli inputs from files and output files") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string in = (dir / "nondeg_cli_in.txt").string();
  const std::string out = (dir / "nondeg_cli_out.txt").string();
  std::ofstream(in) << kF3 << "\n";
  Run r = run({"count", "@" + in, "--p", "3", "--k", "3", "--out", out});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(out);
  std::string line;
  std::getline(f, line);
  CHECK(line == "28");
  std::filesystem::remove(in);
  std::filesystem::remove(out);
  r = run({"check", "@/nonexistent/file", "--p", "2"});
  CHECK(r.code == 1);
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"check"}).code == 2);
  CHECK(run({"check", "x", "--p"}).code == 2);
  CHECK(run({"check", "x", "--bogus"}).code == 2);
  CHECK(run({"check", "--help"}).code == 0);
  CHECK(run({"search", "--normalize", "--no-normalize"}).code == 2);

  Run r = run({"check", "x+", "--p", "2"});
  CHECK(r.code == 1);
  CHECK(r.err.find("SyntaxError") != std::string::npos);
  CHECK(run({"check", "0", "--p", "2"}).code == 1);
  CHECK(run({"check", "w*x+y", "--p", "2"}).code == 1);
  CHECK(run({"check", "x+y", "--p", "4"}).code == 1);
  CHECK(run({"count", "x*y*(x+y+1)", "--p", "2"}).code == 1);
  CHECK(run({"search", "--family", "quartic", "--p", "7"}).code == 1);
  CHECK(run({"equiv", kF2, kF2, "--p", "2", "--k", "3"}).code == 1);
}

TEST_CASE("cli search") {
  Run r = run({"search", "--family", "hyperelliptic", "--genus", "2", "--p", "2", "--budget", "100"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line, last;
  while (std::getline(lines, line)) last = line;
  const json summary = json::parse(last);
  CHECK(summary.at("type") == "summary");
  CHECK(summary.at("survivors") == 0);
  CHECK(summary.at("stages").at("total") == 4096);
  check_manifest(summary.at("manifest"), "search");

  const std::string out = (std::filesystem::temp_directory_path() / "nondeg_cli_search.jsonl").string();
  r = run({"search", "--family", "quartic", "--p", "2", "--budget", "100", "--chunks", "3", "--out", out});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("survivors 1, orbits 1") != std::string::npos);
  std::ifstream side(out + ".manifest.json");
  const json m = json::parse(side);
  CHECK(m.at("chunks").size() == 3);
  check_manifest(m.at("run"), "search");
  std::filesystem::remove(out);
  std::filesystem::remove(out + ".manifest.json");
}
