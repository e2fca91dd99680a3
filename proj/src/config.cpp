#include "wenomap/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>

#include "wenomap/errors.hpp"
#include "wenomap/stencil_tables.hpp"

namespace wenomap {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what) { throw ConfigError(key + ": " + what); }

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
      fail(join(path, it.key()), "unknown key");
    }
  }
}

double get_double(const json& obj, const std::string& path, const char* key, double def) {
  auto it = obj.find(key);
  if (it == obj.end()) return def;
  if (!it->is_number()) fail(join(path, key), "expected a number");
  return it->get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int def) {
  auto it = obj.find(key);
  if (it == obj.end()) return def;
  if (!it->is_number_integer()) fail(join(path, key), "expected an integer");
  return it->get<int>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool def) {
  auto it = obj.find(key);
  if (it == obj.end()) return def;
  if (!it->is_boolean()) fail(join(path, key), "expected true or false");
  return it->get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const char* key, const std::string& def) {
  auto it = obj.find(key);
  if (it == obj.end()) return def;
  if (!it->is_string()) fail(join(path, key), "expected a string");
  return it->get<std::string>();
}

std::size_t get_count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 2) fail(key, "expected an integer >= 2");
  return v.get<std::size_t>();
}

// Re-raises factory and validation errors under the key that caused them.
template <class F>
auto keyed(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    fail(key, e.what());
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind(key, 0) == 0) throw;
    fail(key, msg);
  }
}

PrmBranch parse_branch(const json& obj, const std::string& path) {
  allow_keys(obj, path, {"c1", "c2", "m1"});
  if (!obj.contains("c1")) fail(join(path, "c1"), "required");
  PrmBranch b;
  b.c1 = get_double(obj, path, "c1", 1.0);
  b.c2 = get_double(obj, path, "c2", 0.0);
  b.m1 = get_int(obj, path, "m1", 1);
  if (!(b.c1 > 0.0)) {
    fail(join(path, "c1"), "must be positive (singularity-freedom: a nonpositive c1 lets the denominator vanish)");
  }
  if (!(b.c2 >= 0.0)) {
    fail(join(path, "c2"), "must be nonnegative (singularity-freedom: c1 and c2 of opposite sign admit a pole)");
  }
  return b;
}

MappingSpec parse_mapping_object(const json& obj, double dk_default, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected a preset name or a mapping object");
  const std::string fam = get_string(obj, path, "family", "");
  if (fam.empty()) fail(join(path, "family"), "required");
  const Family f = keyed(join(path, "family"), [&] { return family_from_name(fam); });
  const double dk = get_double(obj, path, "dk", dk_default);
  const int n = get_int(obj, path, "n", 1);
  const int m = get_int(obj, path, "m", 0);
  return keyed(path, [&]() -> MappingSpec {
    switch (f) {
      case Family::Identity:
        allow_keys(obj, path, {"family", "dk"});
        return make_identity(dk);
      case Family::GM:
        allow_keys(obj, path, {"family", "dk"});
        return make_gm(dk);
      case Family::PM:
        allow_keys(obj, path, {"family", "dk", "n"});
        return make_pm(dk, n);
      case Family::PPM:
        allow_keys(obj, path, {"family", "dk", "n", "m"});
        return make_ppm(dk, n, m);
      case Family::IM:
        allow_keys(obj, path, {"family", "dk", "n", "A"});
        return make_im(dk, n, get_double(obj, path, "A", 1.0));
      case Family::RM:
        allow_keys(obj, path, {"family", "dk", "n", "m"});
        return make_rm(dk, n, m);
      case Family::AIM:
        allow_keys(obj, path, {"family", "dk", "n", "m", "s", "adaptive", "c"});
        if (get_bool(obj, path, "adaptive", false)) return make_aim_adaptive(dk, n, m, get_double(obj, path, "c", 1e4));
        return make_aim(dk, n, m, get_double(obj, path, "s", 0.0));
      case Family::R:
        allow_keys(obj, path, {"family", "dk", "n", "m", "b", "c2_right", "c2_left"});
        if (obj.contains("b")) return make_r_from_b(dk, n, m, get_double(obj, path, "b", 0.0));
        if (!obj.contains("c2_right")) fail(join(path, "b"), "R mapping needs b or c2_right/c2_left");
        return make_r(dk, n, m, get_double(obj, path, "c2_right", 0.0),
                      get_double(obj, path, "c2_left", get_double(obj, path, "c2_right", 0.0)));
      case Family::PRM: {
        allow_keys(obj, path, {"family", "dk", "n", "m", "n1", "left", "right"});
        if (!obj.contains("right")) fail(join(path, "right"), "required");
        const PrmBranch right = parse_branch(obj.at("right"), join(path, "right"));
        const PrmBranch left = obj.contains("left") ? parse_branch(obj.at("left"), join(path, "left"))
                                                    : prm_left_absorbed(dk, n, m, get_int(obj, path, "n1", 1), right);
        return make_prm(dk, n, m, get_int(obj, path, "n1", 1), left, right);
      }
    }
    fail(join(path, "family"), "unsupported");
  });
}

json branch_to_json(const PrmBranch& b) { return {{"c1", b.c1}, {"c2", b.c2}, {"m1", b.m1}}; }

BoundaryRule problem_bc(ProblemId id) { return make_problem(id).bc; }

}  // namespace

MappingSpec parse_mapping_spec(const json& obj, const std::string& key) {
  if (!obj.is_object() || !obj.contains("dk")) fail(key, "expected a mapping object with dk");
  return parse_mapping_object(obj, 0.5, key);
}

std::vector<MappingSpec> parse_mapping(const json& v, int r, const std::string& key) {
  const StencilTables& t = keyed("scheme.r", [&]() -> const StencilTables& { return load_tables(r); });
  if (v.is_null()) return {};
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    if (name == "none") return {};
    return keyed(key, [&] { return preset_specs(name, r); });
  }
  std::vector<MappingSpec> out;
  if (v.is_array()) {
    if (static_cast<int>(v.size()) != r) {
      fail(key, "needs one entry per sub-stencil (" + std::to_string(r) + "), got " + std::to_string(v.size()));
    }
    for (int k = 0; k < r; ++k) out.push_back(parse_mapping_object(v[k], t.d[k], key + "[" + std::to_string(k) + "]"));
    return out;
  }
  for (int k = 0; k < r; ++k) {
    json obj = v;
    if (obj.is_object() && obj.contains("dk")) fail(join(key, "dk"), "dk differs per sub-stencil; use an array");
    out.push_back(parse_mapping_object(obj, t.d[k], key));
  }
  return out;
}

json mapping_to_json(const MappingSpec& s) {
  json j = {{"family", family_name(s.family)}, {"dk", s.dk}};
  switch (s.family) {
    case Family::Identity:
    case Family::GM:
      break;
    case Family::PM:
      j["n"] = s.n;
      break;
    case Family::PPM:
    case Family::RM:
      j["n"] = s.n;
      j["m"] = s.m;
      break;
    case Family::IM:
      j["n"] = s.n;
      j["A"] = s.A;
      break;
    case Family::AIM:
      j["n"] = s.n;
      j["m"] = s.m;
      if (s.adaptive) {
        j["adaptive"] = true;
        j["c"] = s.aim_c;
      } else {
        j["s"] = s.s;
      }
      break;
    case Family::R:
      j["n"] = s.n;
      j["m"] = s.m;
      if (s.from_b) {
        j["b"] = s.b;
      } else {
        j["c2_right"] = s.c2_right;
        j["c2_left"] = s.c2_left;
      }
      break;
    case Family::PRM:
      j["n"] = s.n;
      j["m"] = s.m;
      j["n1"] = s.n1;
      j["left"] = branch_to_json(s.left);
      j["right"] = branch_to_json(s.right);
      break;
  }
  return j;
}

RunConfig parse_config(const json& doc) {
  allow_keys(doc, "", {"name", "problem", "scheme", "integrator", "euler", "reference", "output"});
  RunConfig cfg;
  cfg.name = get_string(doc, "", "name", "run");
  if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos) {
    fail("name", "must be a nonempty file-name-safe string");
  }

  // problem
  if (!doc.contains("problem")) fail("problem", "required");
  const json& pj = doc.at("problem");
  allow_keys(pj, "problem", {"id", "a", "pr", "T", "N", "grids"});
  if (!pj.contains("id")) fail("problem.id", "required");
  const ProblemId id = keyed("problem.id", [&] { return problem_from_name(get_string(pj, "problem", "id", "")); });
  ProblemSpec p = make_problem(id);
  p.a = get_double(pj, "problem", "a", p.a);
  p.pr = get_double(pj, "problem", "pr", p.pr);
  p.t_final = get_double(pj, "problem", "T", p.t_final);
  p.bc = problem_bc(id);
  keyed("problem", [&] {
    validate(p);
    return 0;
  });
  if (pj.contains("grids")) {
    if (pj.contains("N")) fail("problem.N", "give either N or grids, not both");
    const json& g = pj.at("grids");
    if (!g.is_array() || g.empty()) fail("problem.grids", "expected a nonempty array of grid sizes");
    for (std::size_t i = 0; i < g.size(); ++i) cfg.grids.push_back(get_count(g[i], "problem.grids[" + std::to_string(i) + "]"));
  } else if (pj.contains("N")) {
    cfg.grids.push_back(get_count(pj.at("N"), "problem.N"));
  } else {
    cfg.grids.push_back(p.default_n);
  }

  // scheme
  const json sj = doc.value("scheme", json::object());
  allow_keys(sj, "scheme", {"r", "base", "q", "eps", "is_upgrade3", "nis_clamp", "aim_grouped", "mapping", "label"});
  WeightingStrategy s;
  s.r = get_int(sj, "scheme", "r", 3);
  s.base = keyed("scheme.base", [&] { return base_from_name(get_string(sj, "scheme", "base", "JS")); });
  s.q = get_int(sj, "scheme", "q", 1);
  if (sj.contains("eps")) s.eps = get_double(sj, "scheme", "eps", 0.0);
  s.is_upgrade3 = get_bool(sj, "scheme", "is_upgrade3", false);
  s.nis_clamp = get_bool(sj, "scheme", "nis_clamp", true);
  s.aim_grouped = get_bool(sj, "scheme", "aim_grouped", false);
  if (s.r < 2 || s.r > 5) fail("scheme.r", "must be in 2..5");
  if (sj.contains("mapping")) {
    const json& mj = sj.at("mapping");
    s.mapping = parse_mapping(mj, s.r, "scheme.mapping");
    if (mj.is_string()) {
      cfg.mapping_name = mj.get<std::string>();
    } else if (mj.is_object()) {
      cfg.mapping_name = mj.value("family", "");
    } else if (mj.is_array() && !s.mapping.empty()) {
      cfg.mapping_name = family_name(s.mapping.front().family);
    }
    if (cfg.mapping_name == "none") cfg.mapping_name.clear();
  }
  validate(s);
  const std::string label = get_string(sj, "scheme", "label", "");

  CaseSpec c = default_case(p, s, label.empty() ? scheme_label(s, cfg.mapping_name) : label);

  // integrator
  const json ij = doc.value("integrator", json::object());
  allow_keys(ij, "integrator", {"method", "mode", "value", "cap_cfl"});
  c.integrator = keyed("integrator.method", [&] {
    return integrator_from_name(get_string(ij, "integrator", "method", integrator_name(c.integrator)));
  });
  c.policy.mode = keyed("integrator.mode", [&] {
    return step_mode_from_name(get_string(ij, "integrator", "mode", step_mode_name(c.policy.mode)));
  });
  c.policy.value = get_double(ij, "integrator", "value", c.policy.value);
  c.policy.cap_cfl = get_double(ij, "integrator", "cap_cfl", c.policy.cap_cfl);
  keyed("integrator", [&] {
    validate(c.policy);
    return 0;
  });

  // euler
  const json ej = doc.value("euler", json::object());
  allow_keys(ej, "euler", {"gamma", "eps_sw"});
  c.gas.gamma = get_double(ej, "euler", "gamma", c.gas.gamma);
  c.eps_sw_rel = get_double(ej, "euler", "eps_sw", c.eps_sw_rel);
  if (!(c.gas.gamma > 1.0)) fail("euler.gamma", "must exceed 1");
  if (!(c.eps_sw_rel >= 0.0)) fail("euler.eps_sw", "must be nonnegative");

  // reference
  const json rj = doc.value("reference", json::object());
  allow_keys(rj, "reference", {"N", "cfl"});
  if (rj.contains("N")) c.reference.n = get_count(rj.at("N"), "reference.N");
  c.reference.cfl = get_double(rj, "reference", "cfl", c.reference.cfl);
  if (!(c.reference.cfl > 0.0)) fail("reference.cfl", "must be positive");
  c.reference.gas = c.gas;
  c.reference.eps_sw_rel = c.eps_sw_rel;

  // output
  const json oj = doc.value("output", json::object());
  allow_keys(oj, "output", {"format", "path", "deterministic"});
  const std::string fmt = get_string(oj, "output", "format", "csv");
  if (fmt == "csv") {
    cfg.format = OutputFormat::Csv;
  } else if (fmt == "json") {
    cfg.format = OutputFormat::Json;
  } else {
    fail("output.format", "expected csv or json");
  }
  cfg.output_path = get_string(oj, "output", "path", "");
  cfg.deterministic = get_bool(oj, "output", "deterministic", false);

  c.n = cfg.grids.front();
  cfg.base = c;
  return cfg;
}

json load_document(const std::string& path) {
  std::set<std::string> seen;
  std::function<json(const std::filesystem::path&)> load = [&](const std::filesystem::path& file) -> json {
    const std::string canon = std::filesystem::weakly_canonical(file).string();
    if (!seen.insert(canon).second) throw ConfigError("extends: cycle through " + file.string());
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read config file " + file.string());
    json doc;
    try {
      doc = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
      throw ConfigError(file.string() + ": malformed JSON: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError(file.string() + ": top level must be an object");
    auto it = doc.find("extends");
    if (it == doc.end()) return doc;
    if (!it->is_string()) fail("extends", "expected a path string");
    const std::filesystem::path parent = file.parent_path() / it->get<std::string>();
    doc.erase("extends");
    json merged = load(parent);
    merged.merge_patch(doc);
    return merged;
  };
  return load(path);
}

RunConfig load_config(const std::string& path) {
  json doc = load_document(path);
  if (!doc.contains("name")) doc["name"] = std::filesystem::path(path).stem().string();
  return parse_config(doc);
}

json effective_config(const RunConfig& cfg) {
  const CaseSpec& c = cfg.base;
  json grids = json::array();
  for (std::size_t n : cfg.grids) grids.push_back(n);
  json problem = {{"id", problem_name(c.problem.id)}, {"T", c.problem.t_final}, {"grids", grids}};
  if (c.problem.id == ProblemId::SWA1 || c.problem.id == ProblemId::SWA2) problem["a"] = c.problem.a;
  if (c.problem.id == ProblemId::StrongShock) problem["pr"] = c.problem.pr;

  const WeightingStrategy& s = c.strategy;
  json scheme = {{"r", s.r},
                 {"base", base_name(s.base)},
                 {"is_upgrade3", s.is_upgrade3},
                 {"label", c.scheme}};
  if (s.base == BaseScheme::Z5) scheme["q"] = s.q;
  if (s.base == BaseScheme::NIS5) scheme["nis_clamp"] = s.nis_clamp;
  if (s.aim_grouped) scheme["aim_grouped"] = true;
  if (s.eps) scheme["eps"] = *s.eps;
  if (s.mapped()) {
    json m = json::array();
    for (const MappingSpec& spec : s.mapping) m.push_back(mapping_to_json(spec));
    scheme["mapping"] = m;
  }

  json out = {{"name", cfg.name},
              {"problem", problem},
              {"scheme", scheme},
              {"integrator",
               {{"method", integrator_name(c.integrator)},
                {"mode", step_mode_name(c.policy.mode)},
                {"value", c.policy.value},
                {"cap_cfl", c.policy.cap_cfl}}},
              {"output",
               {{"format", cfg.format == OutputFormat::Json ? "json" : "csv"},
                {"path", cfg.output_path},
                {"deterministic", cfg.deterministic}}}};
  if (c.problem.euler()) {
    out["euler"] = {{"gamma", c.gas.gamma}, {"eps_sw", c.eps_sw_rel}};
    json ref = {{"cfl", c.reference.cfl}};
    if (c.reference.n != 0) ref["N"] = c.reference.n;
    out["reference"] = ref;
  }
  return out;
}

std::vector<CaseSpec> expand_cases(const RunConfig& cfg) {
  std::vector<CaseSpec> out;
  for (std::size_t n : cfg.grids) {
    CaseSpec c = cfg.base;
    c.n = n;
    out.push_back(c);
  }
  return out;
}

}  // namespace wenomap
