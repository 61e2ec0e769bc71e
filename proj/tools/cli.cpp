#include "cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nondeg/models.hpp"
#include "nondeg/nondegen.hpp"
#include "nondeg/parser.hpp"
#include "nondeg/polytope.hpp"
#include "nondeg/search.hpp"

namespace nondeg::cli {

namespace {

using json = nlohmann::json;

constexpr const char* kVersion = "1.0.0";

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

std::string sha256(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream ss;
  for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return ss.str();
}

std::string read_input(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream f(arg.substr(1));
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read " + arg.substr(1));
  std::stringstream ss;
  ss << f.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

struct Common {
  std::vector<std::string> inputs;
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  bool json = false;
  std::string out;
  std::uint64_t seed = 0;
};

class Manifest {
 public:
  Manifest() : started_(utc_now()) {}

  json finish(const CLI::App& sub, const Common& c, const std::vector<std::string>& texts) const {
    json flags = json::object();
    for (const CLI::Option* opt : sub.get_options()) {
      const std::string name = opt->get_name(false, true);
      if (name.empty() || opt->get_single_name() == "help") continue;
      if (opt->count() > 0) {
        const auto& r = opt->results();
        flags[opt->get_single_name()] = r.size() == 1 ? json(r[0]) : json(r);
      } else {
        flags[opt->get_single_name()] = opt->get_default_str();
      }
    }
    json inputs = json::array();
    for (const auto& t : texts) inputs.push_back({{"text", t}, {"sha256", sha256(t)}});
    return json{{"subcommand", sub.get_name()},
                {"flags", flags},
                {"seed", c.seed},
                {"versions",
                 {{"nondeg", kVersion},
                  {"compiler", __VERSION__},
                  {"cli11", CLI11_VERSION},
                  {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                               "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
                {"inputs", inputs},
                {"started", started_},
                {"finished", utc_now()}};
  }

 private:
  std::string started_;
};

json field_json(const Field& f) {
  return json{{"p", f.p()}, {"k", f.k()}, {"q", f.q()}, {"modulus", f.modulus()}};
}

json witness_json(const Witness& w) {
  json j{{"degree", w.degree}, {"x", w.field->format(w.x)}, {"y", w.field->format(w.y)}, {"field", field_json(*w.field)}};
  if (w.symbolic) {
    j["symbolic"] = true;
    j["x_minpoly"] = w.x_minpoly;
    j["y_poly"] = w.y_poly;
  }
  return j;
}

json ternary_json(const TernaryForm& f) {
  std::vector<std::string> c;
  for (Elem e : f.coeffs()) c.push_back(f.field()->format(e));
  return json{{"text", to_string(f)}, {"coefficients", c}};
}

int infer_genus(const LaurentPoly& f) {
  int g = 1;
  for (const auto& t : f.terms()) {
    if (t.e.j == 0) g = std::max<int>(g, static_cast<int>((t.e.i + 1) / 2) - 1);
    if (t.e.j == 1) g = std::max<int>(g, static_cast<int>(t.e.i) - 1);
  }
  return g;
}

HyperellipticModel read_model(const LaurentPoly& f, int genus) {
  const int g = genus > 0 ? genus : infer_genus(f);
  auto m = model_from_laurent(f, g);
  if (!m) {
    throw Error(ErrorCode::InvalidArgument, "not of the form c y^2 + r(x) y - p(x) within the genus " + std::to_string(g) + " frame");
  }
  return *m;
}

std::string model_text(const HyperellipticModel& m) {
  return "y^2 + (" + m.r.to_string() + ")*y = " + m.p.to_string();
}

struct Emitter {
  const Common& common;
  std::ostream& out;

  void emit(const std::string& text) const {
    if (common.out.empty()) {
      out << text;
      if (!text.empty() && text.back() != '\n') out << '\n';
      return;
    }
    std::ofstream f(common.out, std::ios::trunc);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + common.out);
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
  }
};

void add_field_options(CLI::App* sub, Common& c) {
  sub->add_option("--p", c.p, "field characteristic")->default_val(2);
  sub->add_option("--k", c.k, "extension degree")->default_val(1);
  sub->add_flag("--json", c.json, "machine-readable output");
  sub->add_option("--out", c.out, "write output to a file instead of stdout");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nondegeneracy of curves over small finite fields", "nondeg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common c;
  Manifest manifest;
  int genus = 0;
  std::uint32_t ext = 1;
  std::uint32_t predict = 4;
  std::uint32_t base_degree = 1;
  bool hyperelliptic = false;

  auto* check = app.add_subcommand("check", "nondegeneracy report for each face of the Newton polytope");
  check->add_option("poly", c.inputs, "polynomial in x, y (or @file)")->required()->expected(1);
  add_field_options(check, c);

  auto* count = app.add_subcommand("count", "projective points of a plane quartic or a hyperelliptic model");
  count->add_option("poly", c.inputs, "polynomial (or @file)")->required()->expected(1);
  add_field_options(count, c);
  count->add_option("--ext", ext, "count over F_{q^ext}")->default_val(1)->check(CLI::Range(1, 64));
  count->add_flag("--hyperelliptic", hyperelliptic, "read the input as y^2 + r y - p");
  count->add_option("--genus", genus, "genus frame of a hyperelliptic input (default: inferred)");

  auto* zeta_cmd = app.add_subcommand("zeta", "L-polynomial of a smooth plane quartic from point counts");
  zeta_cmd->add_option("poly", c.inputs, "quartic (or @file)")->required()->expected(1);
  add_field_options(zeta_cmd, c);
  zeta_cmd->add_option("--base-degree", base_degree, "work over F_{q^d}")->default_val(1)->check(CLI::Range(1, 16));
  zeta_cmd->add_option("--predict", predict, "print predicted counts for m = 1..N")->default_val(4)->check(CLI::Range(1, 12));

  auto* lines = app.add_subcommand("lines", "rational tangent lines and a nonconcurrent nontangent triple");
  lines->add_option("poly", c.inputs, "quartic (or @file)")->required()->expected(1);
  add_field_options(lines, c);

  auto* genus_cmd = app.add_subcommand("genus", "genus of a hyperelliptic model y^2 + r y = p");
  genus_cmd->add_option("poly", c.inputs, "y^2 + r(x) y - p(x) (or @file)")->required()->expected(1);
  add_field_options(genus_cmd, c);
  genus_cmd->add_option("--genus", genus, "frame: deg r <= g+1, deg p <= 2g+2 (default: inferred)");

  auto* equiv = app.add_subcommand("equiv", "projective equivalence of two plane quartics (q <= 3)");
  equiv->add_option("polys", c.inputs, "two quartics (or @file)")->required()->expected(2);
  add_field_options(equiv, c);

  auto* normalize = app.add_subcommand("normalize", "characteristic-2 normal form and squarefree substitution");
  normalize->add_option("poly", c.inputs, "y^2 + r(x) y - p(x) (or @file)")->required()->expected(1);
  add_field_options(normalize, c);
  normalize->add_option("--genus", genus, "frame (default: inferred)");

  CampaignSpec spec;
  std::string family = "quartic";
  bool norm_on = false, norm_off = false;
  auto* search = app.add_subcommand("search", "exhaustive campaign over a coefficient space");
  search->add_option("--family", family, "hyperelliptic or quartic")
      ->default_val("quartic")
      ->check(CLI::IsMember({"hyperelliptic", "quartic"}));
  search->add_option("--genus", spec.genus, "genus (hyperelliptic: 2 or 3)")->default_val(3);
  search->add_option("--p", spec.p, "field characteristic")->default_val(2);
  search->add_option("--k", spec.k, "extension degree")->default_val(1);
  search->add_flag("--normalize", norm_on, "require the coefficient normalization");
  search->add_flag("--no-normalize", norm_off, "enumerate the full coefficient space");
  search->add_option("--budget", spec.budget, "retry budget")->default_val(1000);
  search->add_option("--seed", c.seed, "PRNG seed")->default_val(0);
  search->add_option("--chunks", spec.chunks, "contiguous index chunks")->default_val(1);
  search->add_option("--threads", spec.threads, "worker threads")->default_val(1);
  search->add_option("--checkpoint", spec.checkpoint, "checkpoint file; resumed when present");
  search->add_option("--checkpoint-interval", spec.checkpoint_interval, "candidates between checkpoint writes")
      ->default_val(std::uint64_t{1} << 20);
  search->add_option("--max-candidates", spec.max_candidates, "stop after this many candidates (0: no limit)")
      ->default_val(0);
  search->add_option("--out", spec.out, "JSON-lines result file");
  search->add_flag("--override", spec.override_grid, "allow fields outside the standard grid");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const Emitter emitter{c, out};
  try {
    if (sub == search) {
      if (norm_on && norm_off) throw CLI::ValidationError("--normalize and --no-normalize are exclusive");
      spec.family = family == "quartic" ? Family::Quartic : Family::Hyperelliptic;
      spec.normalize = norm_on ? Normalize::On : norm_off ? Normalize::Off : Normalize::Auto;
      spec.seed = c.seed;
      const CampaignResult r = run_campaign(spec);
      const json run = manifest.finish(*sub, c, {});
      if (spec.out.empty()) {
        std::string text = result_jsonl(r);
        const auto last = text.rfind('\n', text.size() - 2);
        json summary = json::parse(text.substr(last == std::string::npos ? 0 : last + 1));
        summary["manifest"] = run;
        out << text.substr(0, last == std::string::npos ? 0 : last + 1) << summary.dump() << "\n";
      } else {
        json side = json::parse(result_manifest(r));
        side["run"] = run;
        std::ofstream(spec.out + ".manifest.json", std::ios::trunc) << side.dump(1) << "\n";
        out << "candidates " << r.counts.total << ", survivors " << r.survivors.size() << ", orbits "
            << r.orbit_representatives.size() << (r.complete ? "" : " (incomplete)") << "\n";
      }
      return 0;
    }

    std::vector<std::string> texts;
    for (const auto& in : c.inputs) texts.push_back(read_input(in));
    const FieldPtr field = make_field(c.p, c.k);
    std::vector<LaurentPoly> polys;
    for (const auto& t : texts) polys.push_back(parse_poly(t, field));
    const LaurentPoly& f = polys.front();
    json j{{"input", texts.front()}, {"field", field_json(*field)}};
    std::ostringstream text;

    if (sub == check) {
      const NondegeneracyReport rep = is_nondegenerate(f);
      json faces_j = json::array();
      for (const auto& v : rep.verdicts) {
        json fj{{"face", to_string(v.face)}, {"nondegenerate", v.nondegenerate}};
        if (v.input_not_irreducible) fj["input_not_irreducible"] = true;
        if (v.witness) fj["witness"] = witness_json(*v.witness);
        faces_j.push_back(fj);
      }
      j["polynomial"] = to_string(f);
      j["polytope"] = to_string(newton_polytope(f));
      j["faces"] = faces_j;
      j["nondegenerate"] = rep.nondegenerate;
      j["verdict"] = rep.nondegenerate ? "NONDEGENERATE" : "DEGENERATE";
      text << to_string(rep) << "\n";
    } else if (sub == count) {
      std::uint64_t n = 0;
      if (hyperelliptic || genus > 0) {
        const HyperellipticModel m = read_model(f, genus);
        n = count_points(m, ext);
        j["model"] = model_text(m);
      } else {
        n = count_points(homogenize(f), ext);
      }
      j["ext"] = ext;
      j["count"] = n;
      text << n << "\n";
    } else if (sub == zeta_cmd) {
      const ZetaData z = zeta(homogenize(f), base_degree, 3);
      std::vector<long long> predicted;
      for (std::uint32_t m = 1; m <= predict; ++m) predicted.push_back(predicted_count(z, static_cast<int>(m)));
      j["q"] = z.q;
      j["g"] = z.g;
      j["counts"] = z.counts;
      j["L"] = z.L;
      j["charpoly"] = frobenius_charpoly(z);
      j["predicted_counts"] = predicted;
      text << "q = " << z.q << "\ncounts " << json(z.counts).dump() << "\nL " << json(z.L).dump() << "\npredicted "
           << json(predicted).dump() << "\n";
    } else if (sub == lines) {
      const TernaryQuartic F = homogenize(f);
      const auto tl = tangent_lines(F);
      std::vector<std::string> tl_s;
      for (const auto& l : tl) tl_s.push_back(to_string(l, *field));
      j["tangent_lines"] = tl_s;
      j["tangent_count"] = tl.size();
      text << "tangent lines (" << tl.size() << "):";
      for (const auto& s : tl_s) text << " " << s;
      text << "\n";
      try {
        const ThreeLines three = find_three_lines(F);
        std::vector<std::string> ls;
        for (const auto& l : three.lines) ls.push_back(to_string(l, *field));
        json mat = json::array();
        for (const auto& row : three.change) {
          json r = json::array();
          for (Elem e : row) r.push_back(field->format(e));
          mat.push_back(r);
        }
        j["three_lines"] = {{"lines", ls},
                            {"change", mat},
                            {"transformed", ternary_json(three.transformed)},
                            {"polynomial", to_string(three.polynomial)},
                            {"nondegenerate", is_nondegenerate(three.polynomial).nondegenerate}};
        text << "three lines: " << ls[0] << ", " << ls[1] << ", " << ls[2] << "\n";
        text << "chart polynomial: " << to_string(three.polynomial) << "\n";
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotFound) throw;
        j["three_lines"] = nullptr;
        text << "three lines: none\n";
      }
    } else if (sub == genus_cmd) {
      const HyperellipticModel m = read_model(f, genus);
      const GenusResult g = genus_hyperelliptic(m);
      j["model"] = model_text(m);
      j["frame"] = m.g;
      j["genus"] = g.genus;
      j["not_hyperelliptic"] = g.not_hyperelliptic;
      j["inseparable"] = g.inseparable;
      text << "genus " << g.genus;
      if (g.not_hyperelliptic) text << " (not hyperelliptic)";
      if (g.inseparable) text << " (inseparable)";
      text << "\n";
    } else if (sub == equiv) {
      const bool eq = projectively_equivalent(homogenize(polys[0]), homogenize(polys[1]));
      j["second"] = texts[1];
      j["equivalent"] = eq;
      text << (eq ? "EQUIVALENT" : "NOT EQUIVALENT") << "\n";
    } else if (sub == normalize) {
      const HyperellipticModel m = read_model(f, genus);
      const NormalizedModel n = normalize_hyperelliptic(m);
      const UniPoly t = find_squarefree_substitution(n.model);
      const HyperellipticModel s = shift_y_by_poly(n.model, t);
      const LaurentPoly lf = to_laurent(s);
      const Polytope poly = newton_polytope(lf);
      j["transcript"] = n.transcript;
      j["normalized"] = model_text(n.model);
      j["substitution"] = t.to_string();
      j["model"] = model_text(s);
      j["polynomial"] = to_string(lf);
      j["interior_points"] = interior_lattice_points(poly).size();
      j["nondegenerate"] = is_nondegenerate(lf).nondegenerate;
      text << "transcript:";
      for (const auto& step : n.transcript) text << " " << step;
      text << "\nnormalized: " << model_text(n.model) << "\nsubstitution t = " << t.to_string()
           << "\nmodel: " << model_text(s) << "\nnondegenerate: " << (j["nondegenerate"].get<bool>() ? "yes" : "no")
           << "\n";
    }

    if (c.json) {
      j["manifest"] = manifest.finish(*sub, c, texts);
      emitter.emit(j.dump());
    } else {
      emitter.emit(text.str());
    }
    return 0;
  } catch (const CLI::Error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nondeg::cli
