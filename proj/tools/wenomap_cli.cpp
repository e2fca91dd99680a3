#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"
#include "wenomap/config.hpp"
#include "wenomap/errors.hpp"
#include "wenomap/mappings.hpp"
#include "wenomap/stencil_tables.hpp"
#include "wenomap/suites.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wenomap;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct Global {
  std::string out_dir = "results";
  int threads = 1;
  std::uint64_t seed = 20240601;
  bool deterministic = false;
};

struct MappingSource {
  std::string preset;
  std::string spec;     // JSON mapping value
  std::string variant;  // table-7 style variant
  int r = 3;
};

void add_mapping_options(CLI::App* cmd, MappingSource& src) {
  cmd->add_option("--preset", src.preset, "Named preset (prm, gm, pm61, rm260, ppm21, ...)");
  cmd->add_option("--spec", src.spec, "JSON mapping: family object (with dk: one mapping), or per-k array");
  cmd->add_option("--variant", src.variant, "Stand-alone mapping: r322, mimic_pm, mimic_rm");
  cmd->add_option("--r", src.r, "Sub-stencil count r (2..5)")->check(CLI::Range(2, 5));
}

std::pair<std::string, std::vector<MappingSpec>> resolve(const MappingSource& src) {
  const int given = !src.preset.empty() + !src.spec.empty() + !src.variant.empty();
  if (given != 1) throw ConfigError("give exactly one of --preset, --spec, --variant");
  if (!src.preset.empty()) return {src.preset, preset_specs(src.preset, src.r)};
  if (!src.variant.empty()) {
    if (src.variant == "r322") return {"r322", table7_specs(Table7Variant::R322)};
    if (src.variant == "mimic_pm") return {"mimic_pm", table7_specs(Table7Variant::MimicPM)};
    if (src.variant == "mimic_rm") return {"mimic_rm", table7_specs(Table7Variant::MimicRM)};
    throw ConfigError("--variant: expected r322, mimic_pm or mimic_rm");
  }
  json j;
  try {
    j = json::parse(src.spec);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("--spec: malformed JSON: ") + e.what());
  }
  std::vector<MappingSpec> specs = j.is_object() && j.contains("dk")
                                        ? std::vector<MappingSpec>{parse_mapping_spec(j, "--spec")}
                                        : parse_mapping(j, src.r, "--spec");
  return {specs.empty() ? "none" : family_name(specs.front().family), specs};
}

std::string dk_tag(double dk) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", dk);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out || !(out << text)) throw std::ios_base::failure("cannot write " + path.string());
}

int cmd_run(const Global& g, const std::vector<std::string>& files) {
  std::vector<RunConfig> configs;
  for (const std::string& f : files) configs.push_back(load_config(f));
  std::vector<std::function<ErrorReport()>> jobs;
  for (const RunConfig& c : configs) {
    jobs.push_back([c] {
      if (c.grids.size() > 1) return convergence_study(c.base, c.grids);
      return evaluate_case(c.base);
    });
  }
  const std::vector<ErrorReport> reports = run_parallel(jobs, g.threads);
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const RunConfig& c = configs[i];
    const std::string ext = c.format == OutputFormat::Json ? ".json" : ".csv";
    const fs::path out = c.output_path.empty() ? fs::path(g.out_dir) / (c.name + ext) : fs::path(c.output_path);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    emit_results({reports[i]}, c.format, out.string(), c.deterministic || g.deterministic);
    write_file(fs::path(g.out_dir) / (c.name + ".effective.json"), effective_config(c).dump(2) + "\n");
    std::cout << c.name << ": " << reports[i].rows.size() << " row(s)"
              << (reports[i].aborted ? ", blow-up recorded" : "") << " -> " << out.string() << "\n";
  }
  return 0;
}

int cmd_map_profile(const Global& g, const MappingSource& src, int samples, const std::string& against) {
  if (samples < 2) throw ConfigError("--samples must be at least 2");
  const auto [name, specs] = resolve(src);
  std::vector<MappingSpec> other;
  if (!against.empty()) other = preset_specs(against, src.r);
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const MappingSpec& s = specs[k];
    std::string csv = "omega,g_omega\n";
    double sup = 0.0;
    const MappingSpec* o = nullptr;
    for (const MappingSpec& c : other)
      if (std::abs(c.dk - s.dk) < 1e-15) o = &c;
    for (int i = 0; i < samples; ++i) {
      const double w = static_cast<double>(i) / (samples - 1);
      const double v = eval(s, w);
      char buf[80];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", w, v);
      csv += buf;
      if (o) sup = std::max(sup, std::abs(v - eval(*o, w)));
    }
    const fs::path path = fs::path(g.out_dir) / ("profile_" + name + "_" + family_name(s.family) + "_dk" + dk_tag(s.dk) + ".csv");
    write_file(path, csv);
    std::cout << path.string();
    if (o) std::printf("  sup|g - %s| = %.6e", against.c_str(), sup);
    std::cout << "\n";
  }
  return 0;
}

json report_json(const MappingSpec& s, const CnmReport& r, bool singular_free) {
  return {{"mapping", mapping_to_json(s)},
          {"n", r.n},
          {"m", r.m},
          {"k", r.k},
          {"satisfied", r.satisfied},
          {"singularity_free", singular_free},
          {"monotone", r.monotone},
          {"fixed_point_error", std::max({r.err_at_0, r.err_at_dk, r.err_at_1})},
          {"vanishing_left_dk", r.left_at_dk.vanishing},
          {"vanishing_right_dk", r.right_at_dk.vanishing},
          {"vanishing_at_0", r.at_0.vanishing},
          {"vanishing_at_1", r.at_1.vanishing},
          {"message", r.message}};
}

int cmd_check_cnm(const Global& g, const MappingSource& src, int n, int m, int k) {
  const auto [name, specs] = resolve(src);
  json out = json::array();
  bool ok = true;
  for (const MappingSpec& s : specs) {
    const CnmReport r = check_cnm(s, n, m, k < 0 ? std::nullopt : std::optional<int>(k));
    const bool sf = check_singularity_free(s);
    ok = ok && r.satisfied && sf && r.differentiation_ok;
    std::printf("%s dk=%s C_{%d,%d,%d}: %s%s\n", name.c_str(), dk_tag(s.dk).c_str(), r.n, r.m, r.k,
                r.satisfied ? "satisfied" : r.message.c_str(), sf ? "" : " [singular]");
    out.push_back(report_json(s, r, sf));
  }
  write_file(fs::path(g.out_dir) / ("cnm_" + name + ".json"), out.dump(2) + "\n");
  return ok ? 0 : kExitFail;
}

// Draws random PRM specs and checks the endpoint-order rule
// C_{n, min(m, m1_L - 1), min(m, m1_R - 1)}.
int cmd_cnm_sweep(const Global& g, int count) {
  std::mt19937_64 rng(g.seed);
  std::uniform_int_distribution<int> pick_n(1, 3), pick_m(0, 3), pick_m1(1, 5), pick_r(2, 4);
  std::uniform_real_distribution<double> pick_log(-1.0, 3.0);
  json out = json::array();
  int failures = 0;
  for (int i = 0; i < count; ++i) {
    const int r = pick_r(rng);
    const StencilTables& t = load_tables(r);
    const double dk = t.d[std::uniform_int_distribution<int>(0, r - 1)(rng)];
    const int n = pick_n(rng), m = pick_m(rng), n1 = pick_n(rng);
    PrmBranch left{std::pow(10.0, pick_log(rng)), std::pow(10.0, pick_log(rng)), pick_m1(rng)};
    PrmBranch right{std::pow(10.0, pick_log(rng)), std::pow(10.0, pick_log(rng)), pick_m1(rng)};
    const MappingSpec s = make_prm(dk, n, m, n1, left, right);
    const int m0 = std::min(m, left.m1 - 1), m1 = std::min(m, right.m1 - 1);
    const CnmReport rep = check_cnm(s, n, m0, m1);
    const bool sf = check_singularity_free(s);
    if (!rep.satisfied || !sf) ++failures;
    out.push_back(report_json(s, rep, sf));
  }
  write_file(fs::path(g.out_dir) / "cnm_sweep.json", out.dump(2) + "\n");
  std::printf("PRM endpoint-order sweep: %d/%d specs verified (seed %llu)\n", count - failures, count,
              static_cast<unsigned long long>(g.seed));
  return failures == 0 ? 0 : kExitFail;
}

int cmd_suite(const Global& g, const std::string& name, bool json_out) {
  const SuiteReport r = run_suite(name, g.threads);
  write_suite(r, g.out_dir, json_out ? OutputFormat::Json : OutputFormat::Csv, g.deterministic);
  std::cout << format_summary(r);
  return r.ok() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mapped WENO schemes: experiment runner and mapping tools"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--out-dir", g.out_dir, "Directory for result files");
  app.add_option("--threads", g.threads, "Worker threads for independent cases")->check(CLI::Range(1, 256));
  app.add_option("--seed", g.seed, "Seed for randomized property sweeps");
  app.add_flag("--deterministic", g.deterministic, "Leave wall_ms blank so outputs are bit-reproducible");

  std::vector<std::string> files;
  CLI::App* run = app.add_subcommand("run", "Run one or more JSON run configurations");
  run->add_option("files", files, "Config files")->required();

  MappingSource profile_src;
  int samples = 1001;
  std::string against;
  CLI::App* profile = app.add_subcommand("map-profile", "Sample g(omega) on [0,1], one CSV per linear weight");
  add_mapping_options(profile, profile_src);
  profile->add_option("--samples", samples, "Uniform samples including both endpoints");
  profile->add_option("--against", against, "Preset to report the sup-difference against");

  MappingSource cnm_src;
  int cn = 1, cm = 1, ck = -1, sweep = 0;
  CLI::App* cnm = app.add_subcommand("check-cnm", "Verify a C_{n,m} condition and singularity-freedom");
  add_mapping_options(cnm, cnm_src);
  cnm->add_option("--n", cn, "Vanishing order at dk");
  cnm->add_option("--m", cm, "Vanishing order at 0 (and 1 unless --k)");
  cnm->add_option("--k", ck, "Vanishing order at 1");
  cnm->add_option("--sweep", sweep, "Check the PRM endpoint-order rule on this many random specs");

  std::string suite_name;
  bool suite_json = false;
  CLI::App* suite = app.add_subcommand("suite", "Run a named experiment bundle");
  suite->add_option("name", suite_name, "accuracy | stability | robustness | extended")->required();
  suite->add_flag("--json", suite_json, "Write results as JSON instead of CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(g, files);
    if (*profile) return cmd_map_profile(g, profile_src, samples, against);
    if (*cnm) return sweep > 0 ? cmd_cnm_sweep(g, sweep) : cmd_check_cnm(g, cnm_src, cn, cm, ck);
    if (*suite) return cmd_suite(g, suite_name, suite_json);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "invalid mapping parameters: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
