#include "wenomap/suites.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>

#include "wenomap/errors.hpp"

namespace wenomap {

bool SuiteReport::ok() const {
  for (const SuiteCheck& c : checks)
    if (c.gated && !c.pass) return false;
  return true;
}

std::vector<std::string> suite_names() { return {"accuracy", "stability", "robustness", "extended"}; }

WeightingStrategy js_strategy(int r) {
  WeightingStrategy s;
  s.r = r;
  return s;
}

WeightingStrategy preset_strategy(int r, const std::string& preset) {
  WeightingStrategy s = js_strategy(r);
  s.mapping = preset_specs(preset, r);
  return s;
}

WeightingStrategy z5_strategy(int q) {
  WeightingStrategy s = js_strategy(3);
  s.base = BaseScheme::Z5;
  s.q = q;
  return s;
}

WeightingStrategy base_strategy(int r, BaseScheme b) {
  WeightingStrategy s = js_strategy(r);
  s.base = b;
  return s;
}

std::string preset_label(const std::string& preset) {
  static const std::map<std::string, std::string> names = {
      {"prm", "PRM"},     {"gm", "M"},         {"pm61", "PM61"},   {"rm260", "RM260"}, {"im201", "IM(2,0.1)"},
      {"im2", "IM(2,1)"}, {"aim421e4", "AIM"}, {"r322", "R322"},   {"identity", "identity"}};
  auto it = names.find(preset);
  if (it != names.end()) return it->second;
  std::string up = preset;
  for (char& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return up;
}

namespace {

struct Job {
  CaseSpec c;
  std::vector<std::size_t> grids;  // empty: single run at c.n
};

struct Scheme {
  std::string label;
  WeightingStrategy s;
};

Scheme js(int r) { return {scheme_label(js_strategy(r)), js_strategy(r)}; }

Scheme mapped(int r, const std::string& preset, bool upgrade = false, bool grouped = false) {
  WeightingStrategy s = preset_strategy(r, preset);
  s.is_upgrade3 = upgrade;
  s.aim_grouped = grouped;
  return {scheme_label(s, preset_label(preset)), s};
}

Scheme based(int r, BaseScheme b) {
  WeightingStrategy s = base_strategy(r, b);
  return {scheme_label(s), s};
}

Scheme zq(int q) { return {scheme_label(z5_strategy(q)), z5_strategy(q)}; }

Scheme upgraded_js() {
  WeightingStrategy s = js_strategy(2);
  s.is_upgrade3 = true;
  return {scheme_label(s), s};
}

std::vector<Scheme> order3_schemes() {
  return {js(2), mapped(2, "prm"), based(2, BaseScheme::P3), based(2, BaseScheme::F3),
          mapped(2, "gm"), mapped(2, "ppm20"), mapped(2, "im201")};
}

std::vector<Scheme> order5_schemes() {
  return {js(3),         mapped(3, "prm"),   mapped(3, "gm"), mapped(3, "im201"),          mapped(3, "pm61"),
          mapped(3, "rm260"), zq(1), zq(2), based(3, BaseScheme::NIS5)};
}

std::vector<Scheme> order7_schemes(bool grouped_aim) {
  return {js(4), mapped(4, "prm"), mapped(4, "pm61"), mapped(4, "rm260"), mapped(4, "aim421e4", false, grouped_aim)};
}

Job make_job(ProblemSpec p, const Scheme& sc, std::size_t n, std::vector<std::size_t> grids = {}) {
  Job j{default_case(p, sc.s, sc.label), std::move(grids)};
  j.c.n = n;
  return j;
}

const std::vector<std::size_t> kStudyGrids = {20, 40, 80, 160, 320};

ProblemSpec swa1(double a) {
  ProblemSpec p = make_problem(ProblemId::SWA1);
  p.a = a;
  return p;
}

ProblemSpec combo(double t) {
  ProblemSpec p = make_problem(ProblemId::Combo);
  p.t_final = t;
  return p;
}

ProblemSpec strong_shock(double pr) {
  ProblemSpec p = make_problem(ProblemId::StrongShock);
  p.pr = pr;
  return p;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Looks up a finished report by problem, scheme and first grid.
class Results {
 public:
  Results(const std::vector<Job>& jobs, const std::vector<ErrorReport>& reports) {
    for (std::size_t i = 0; i < jobs.size(); ++i) by_key_[key(jobs[i].c)] = &reports[i];
  }
  const ErrorReport* find(const CaseSpec& c) const {
    auto it = by_key_.find(key(c));
    return it == by_key_.end() ? nullptr : it->second;
  }

 private:
  static std::string key(const CaseSpec& c) {
    return problem_name(c.problem.id) + "|" + fmt("%.17g", c.problem.pr) + "|" + fmt("%.17g", c.problem.t_final) +
           "|" + c.scheme + "|" + std::to_string(c.n);
  }
  std::map<std::string, const ErrorReport*> by_key_;
};

std::optional<double> pair_order(const ErrorReport* r, std::size_t n_fine, bool linf) {
  if (!r) return std::nullopt;
  for (const GridError& g : r->rows)
    if (g.n == n_fine) return linf ? g.order_linf : g.order_l1;
  return std::nullopt;
}

std::string show(std::optional<double> v) { return v ? fmt("%.3f", *v) : std::string("n/a"); }

SuiteCheck order_check(const std::string& name, const ErrorReport* r, std::size_t n_fine, double lo, double hi) {
  const std::optional<double> o = pair_order(r, n_fine, true);
  SuiteCheck c{name, "Linf order in [" + fmt("%.2f", lo) + ", " + fmt("%.2f", hi) + "]", show(o), true, false};
  c.pass = o && *o >= lo && *o <= hi;
  return c;
}

bool completed(const ErrorReport* r) { return r && !r->aborted && !r->rows.empty() && !r->rows.front().blow_up_step; }

std::string outcome(const ErrorReport* r) {
  if (!r) return "missing";
  if (completed(r)) return "completed";
  return "blow-up at step " + std::to_string(*r->rows.front().blow_up_step);
}

using Checker = std::function<std::vector<SuiteCheck>(const Results&)>;

struct Plan {
  std::vector<Job> jobs;
  Checker checks;
};

Plan accuracy_plan() {
  Plan plan;
  const ProblemSpec p3 = swa1(1.0);
  const ProblemSpec p5 = swa1(1.005 / std::numbers::pi);
  const ProblemSpec p7 = make_problem(ProblemId::SWA2);
  std::vector<Scheme> s3 = order3_schemes();
  s3.push_back(upgraded_js());
  for (const char* m : {"prm", "gm", "ppm20", "im201"}) s3.push_back(mapped(2, m, true));
  for (const Scheme& s : s3) plan.jobs.push_back(make_job(p3, s, kStudyGrids.front(), kStudyGrids));
  for (const Scheme& s : order5_schemes()) plan.jobs.push_back(make_job(p5, s, kStudyGrids.front(), kStudyGrids));
  for (const Scheme& s : order7_schemes(false)) plan.jobs.push_back(make_job(p7, s, kStudyGrids.front(), kStudyGrids));

  plan.checks = [p3, p5, p7](const Results& res) {
    auto get = [&](const ProblemSpec& p, const Scheme& s) { return res.find(make_job(p, s, kStudyGrids.front()).c); };
    const ErrorReport* w3 = get(p3, mapped(2, "prm", true));
    const ErrorReport* w5 = get(p5, mapped(3, "prm"));
    const ErrorReport* j5 = get(p5, js(3));
    const ErrorReport* w7 = get(p7, mapped(4, "prm"));
    const ErrorReport* j7 = get(p7, js(4));
    std::vector<SuiteCheck> out;
    {
      const auto o = pair_order(w3, 80, true);
      out.push_back({"SWA1 WENO3-PRM+IS3 N=40->80", "Linf order >= 2.80", show(o), true, o && *o >= 2.8});
    }
    out.push_back(order_check("SWA1 WENO3-PRM+IS3 N=80->160", w3, 160, 2.8, 3.2));
    out.push_back(order_check("SWA1 WENO5-PRM N=80->160", w5, 160, 4.7, 5.3));
    out.push_back(order_check("SWA1 WENO5-JS N=160->320", j5, 320, 2.7, 3.3));
    out.push_back(order_check("SWA2 WENO7-PRM N=160->320", w7, 320, 6.6, 7.4));
    {
      const auto a = pair_order(w7, 320, true), b = pair_order(j7, 320, true);
      SuiteCheck c{"SWA2 WENO7-JS vs WENO7-PRM N=160->320", "JS Linf order lower by >= 1.5",
                   a && b ? fmt("gap %.3f", *a - *b) : std::string("n/a"), true, false};
      c.pass = a && b && *a - *b >= 1.5;
      out.push_back(c);
    }
    return out;
  };
  return plan;
}

Plan stability_plan() {
  Plan plan;
  const ProblemSpec p = combo(200.0);
  for (const Scheme& s : order3_schemes()) plan.jobs.push_back(make_job(p, s, 400));
  for (const Scheme& s : order5_schemes()) plan.jobs.push_back(make_job(p, s, 400));
  for (const Scheme& s : order7_schemes(false)) plan.jobs.push_back(make_job(p, s, 400));
  plan.checks = [p](const Results& res) {
    std::vector<SuiteCheck> out;
    for (int r : {3, 4}) {
      const ErrorReport* prm = res.find(make_job(p, mapped(r, "prm"), 400).c);
      const ErrorReport* base = res.find(make_job(p, js(r), 400).c);
      const std::string tag = "COMBO T=200 N=400 WENO" + std::to_string(2 * r - 1);
      SuiteCheck osc{tag + "-PRM oscillation", "completes, oscillation < 0.02", "", true, false};
      if (completed(prm)) {
        osc.observed = fmt("%.4e", prm->rows.front().oscillation);
        osc.pass = prm->rows.front().oscillation < 0.02;
      } else {
        osc.observed = outcome(prm);
      }
      out.push_back(osc);
      SuiteCheck l1{tag + "-PRM vs JS L1", "PRM L1 < JS L1", "", true, false};
      if (completed(prm) && completed(base)) {
        l1.observed = fmt("%.4e", prm->rows.front().l1) + " vs " + fmt("%.4e", base->rows.front().l1);
        l1.pass = prm->rows.front().l1 < base->rows.front().l1;
      } else {
        l1.observed = outcome(prm) + " / " + outcome(base);
      }
      out.push_back(l1);
    }
    return out;
  };
  return plan;
}

Plan robustness_plan() {
  Plan plan;
  std::vector<ProblemSpec> shocks = {strong_shock(1e3), strong_shock(1e6), make_problem(ProblemId::Blast)};
  std::vector<Scheme> all = order3_schemes();
  for (const Scheme& s : order5_schemes()) all.push_back(s);
  for (const Scheme& s : order7_schemes(true)) all.push_back(s);
  for (const ProblemSpec& p : shocks)
    for (const Scheme& s : all) plan.jobs.push_back(make_job(p, s, p.default_n));
  const ProblemSpec so = make_problem(ProblemId::ShuOsher);
  const ProblemSpec tt = make_problem(ProblemId::TitarevToro);
  for (const ProblemSpec& p : {so, tt}) {
    for (const Scheme& s : order5_schemes()) plan.jobs.push_back(make_job(p, s, p.default_n));
    for (const Scheme& s : order7_schemes(true)) plan.jobs.push_back(make_job(p, s, p.default_n));
  }

  plan.checks = [shocks, so, tt](const Results& res) {
    std::vector<SuiteCheck> out;
    auto find = [&](const ProblemSpec& p, const Scheme& s) { return res.find(make_job(p, s, p.default_n).c); };
    auto tag = [](const ProblemSpec& p) {
      return p.id == ProblemId::StrongShock ? "strong shock PR=" + fmt("%.0e", p.pr) : problem_name(p.id);
    };
    for (const ProblemSpec& p : shocks) {
      for (int r : {2, 3, 4}) {
        const Scheme s = mapped(r, "prm");
        const ErrorReport* rep = find(p, s);
        const bool gated = !(p.id == ProblemId::StrongShock && p.pr < 1e6);
        out.push_back({tag(p) + " " + s.label, "completes, positive density and pressure", outcome(rep), gated,
                       completed(rep)});
      }
    }
    struct Expect {
      const ProblemSpec* p;
      Scheme s;
      bool blow_up;
    };
    const std::vector<Expect> expects = {
        {&shocks[2], zq(1), true},
        {&shocks[2], based(2, BaseScheme::P3), true},
        {&shocks[0], mapped(4, "aim421e4", false, true), true},
        {&shocks[1], mapped(4, "aim421e4", false, true), true},
        {&shocks[1], zq(1), false},
        {&shocks[1], based(3, BaseScheme::NIS5), false},
        {&shocks[2], zq(2), false},
        {&shocks[2], based(3, BaseScheme::NIS5), false},
    };
    for (const Expect& e : expects) {
      const ErrorReport* rep = find(*e.p, e.s);
      const bool blew = rep && !completed(rep);
      out.push_back({tag(*e.p) + " " + e.s.label, e.blow_up ? "blow-up" : "completes", outcome(rep), false,
                     blew == e.blow_up});
    }
    for (const ProblemSpec* p : {&so, &tt}) {
      for (int r : {3, 4}) {
        const ErrorReport* a = find(*p, mapped(r, "prm"));
        const ErrorReport* b = find(*p, js(r));
        SuiteCheck c{problem_name(p->id) + " WENO" + std::to_string(2 * r - 1) + "-PRM vs JS L1",
                     "PRM L1 <= 0.9 JS L1", "", true, false};
        if (completed(a) && completed(b)) {
          const double ratio = a->rows.front().l1 / b->rows.front().l1;
          c.observed = fmt("ratio %.4f", ratio);
          c.pass = ratio <= 0.9;
        } else {
          c.observed = outcome(a) + " / " + outcome(b);
        }
        out.push_back(c);
      }
    }
    return out;
  };
  return plan;
}

Plan extended_plan() {
  Plan plan;
  const ProblemSpec p = combo(2000.0);
  std::vector<Scheme> s5 = {js(3), mapped(3, "gm"), mapped(3, "im201"), mapped(3, "pm61"), mapped(3, "rm260"),
                            mapped(3, "prm")};
  std::vector<Scheme> s7 = {js(4), mapped(4, "pm61"), mapped(4, "rm260"), mapped(4, "aim421e4"), mapped(4, "prm")};
  for (std::size_t n : {200, 400, 800}) {
    for (const Scheme& s : s5) plan.jobs.push_back(make_job(p, s, n));
    for (const Scheme& s : s7) plan.jobs.push_back(make_job(p, s, n));
  }
  for (const char* m : {"ppm61", "ppm52", "ppm21"}) plan.jobs.push_back(make_job(p, mapped(3, m), 800));
  const ProblemSpec p100 = combo(100.0);
  for (const char* m : {"ppm61", "ppm42", "ppm43", "ppm41", "ppm63"}) plan.jobs.push_back(make_job(p100, mapped(5, m), 400));
  plan.jobs.push_back(make_job(p100, mapped(5, "pm61"), 400));

  plan.checks = [p, s5, s7](const Results& res) {
    std::vector<SuiteCheck> out;
    for (std::size_t n : {200, 400, 800}) {
      for (const auto* group : {&s5, &s7}) {
        const ErrorReport* base = res.find(make_job(p, group->front(), n).c);
        double worst = -1.0;
        std::string worst_name;
        for (const Scheme& s : *group) {
          const ErrorReport* r = res.find(make_job(p, s, n).c);
          if (completed(r) && r->rows.front().l1 > worst) {
            worst = r->rows.front().l1;
            worst_name = s.label;
          }
        }
        out.push_back({"COMBO T=2000 N=" + std::to_string(n) + " largest L1 (order " +
                           std::to_string(2 * group->front().s.r - 1) + ")",
                       group->front().label, worst_name, false, completed(base) && worst_name == group->front().label});
        const ErrorReport* prm = res.find(make_job(p, group->back(), n).c);
        out.push_back({"COMBO T=2000 N=" + std::to_string(n) + " " + group->back().label + " oscillation",
                       "small", completed(prm) ? fmt("%.4e", prm->rows.front().oscillation) : outcome(prm), false,
                       completed(prm) && prm->rows.front().oscillation < 0.02});
      }
    }
    return out;
  };
  return plan;
}

Plan plan_for(const std::string& name) {
  if (name == "accuracy") return accuracy_plan();
  if (name == "stability") return stability_plan();
  if (name == "robustness") return robustness_plan();
  if (name == "extended") return extended_plan();
  throw ConfigError("unknown suite '" + name + "' (expected accuracy, stability, robustness or extended)");
}

}  // namespace

SuiteReport run_suite(const std::string& name, int threads) {
  Plan plan = plan_for(name);
  std::vector<std::function<ErrorReport()>> jobs;
  for (const Job& j : plan.jobs) {
    jobs.push_back([j] {
      if (j.grids.empty()) return evaluate_case(j.c);
      return convergence_study(j.c, j.grids);
    });
  }
  SuiteReport rep;
  rep.name = name;
  rep.reports = run_parallel(jobs, threads);
  rep.checks = plan.checks(Results(plan.jobs, rep.reports));
  return rep;
}

std::string format_summary(const SuiteReport& r) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  };
  std::string out = "suite,check,expected,observed,gated,verdict\n";
  for (const SuiteCheck& c : r.checks) {
    out += r.name + "," + quote(c.name) + "," + quote(c.expected) + "," + quote(c.observed) + "," +
           (c.gated ? "yes" : "no") + "," + (c.pass ? "PASS" : (c.gated ? "FAIL" : "DIFFERS")) + "\n";
  }
  return out;
}

void write_suite(const SuiteReport& r, const std::string& dir, OutputFormat format, bool deterministic) {
  std::filesystem::create_directories(dir);
  const std::string ext = format == OutputFormat::Json ? ".json" : ".csv";
  emit_results(r.reports, format, (std::filesystem::path(dir) / (r.name + ext)).string(), deterministic);
  const std::string path = (std::filesystem::path(dir) / (r.name + "_summary.csv")).string();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << format_summary(r);
}

}  // namespace wenomap
