#include "wenomap/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "wenomap/advection.hpp"
#include "wenomap/errors.hpp"

namespace wenomap {

CaseSpec default_case(const ProblemSpec& p, const WeightingStrategy& s, const std::string& scheme) {
  CaseSpec c;
  c.problem = p;
  c.strategy = s;
  c.scheme = scheme.empty() ? scheme_label(s) : scheme;
  c.n = p.default_n;
  if (p.id == ProblemId::SWA1 || p.id == ProblemId::SWA2) {
    c.integrator = Integrator::Rk4;
    c.policy = {StepMode::Accuracy, 0.9};
  } else if (p.id == ProblemId::Combo) {
    c.integrator = Integrator::TvdRk3;
    c.policy = {StepMode::Cfl, 0.1};
  } else {
    c.integrator = Integrator::TvdRk3;
    c.policy = {StepMode::Cfl, 0.5};
  }
  return c;
}

namespace {

struct Tracker {
  bool euler = false;
  GasModel gas;
  std::size_t n = 0;
  Diagnostics* diag = nullptr;

  void observe(const State& u, double t) {
    if (!euler) {
      for (std::size_t i = 0; i < n; ++i) {
        diag->min_value = std::min(diag->min_value, u[i]);
        diag->max_value = std::max(diag->max_value, u[i]);
      }
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double rho = u[i], mom = u[n + i], E = u[2 * n + i];
      const double p = (gas.gamma - 1.0) * (E - 0.5 * mom * mom / rho);
      if (!(rho > 0.0) || !(p > 0.0) || !std::isfinite(p)) {
        throw BlowUp(i, t, "nonphysical state at cell " + std::to_string(i));
      }
      diag->min_density = std::min(diag->min_density, rho);
      diag->min_pressure = std::min(diag->min_pressure, p);
    }
  }
};

}  // namespace

CaseResult run_case(const CaseSpec& c) {
  validate(c.problem);
  validate(c.policy);
  validate(c.strategy);
  const std::size_t n = c.n ? c.n : c.problem.default_n;
  CaseResult res;
  res.state = initialize(c.problem, n, c.gas);
  SimState& s = res.state;
  Diagnostics& d = res.diag;
  const double dx = s.grid.dx;
  const bool euler = c.problem.euler();

  RhsFn rhs;
  std::function<double(const State&)> speed;
  if (euler) {
    EulerOptions eo;
    eo.gas = c.gas;
    eo.bc = c.problem.bc;
    eo.eps_sw_rel = c.eps_sw_rel;
    auto e = std::make_shared<EulerRhs>(c.strategy, dx, n, eo);
    rhs = [e](const State& u, State& out, double t) { (*e)(u, out, t); };
    speed = [e](const State& u) { return e->max_wave_speed(u); };
  } else {
    auto a = std::make_shared<AdvectionRhs>(c.strategy, dx, n, 1.0, c.problem.bc);
    rhs = [a](const State& u, State& out, double t) { (*a)(u, out, t); };
    speed = [](const State&) { return 1.0; };
  }

  Tracker tracker{euler, c.gas, n, &d};
  d.min_value = d.max_value = s.u.empty() ? 0.0 : s.u[0];
  d.min_density = d.min_pressure = std::numeric_limits<double>::infinity();
  tracker.observe(s.u, 0.0);
  const State initial = s.u;

  Stepper stepper(c.integrator, rhs);
  auto observer = [&](const State& u, double t, std::size_t step) {
    d.steps = step;
    tracker.observe(u, t);
  };
  const auto start = std::chrono::steady_clock::now();
  try {
    if (uniform_steps(c.policy)) {
      const double dt = compute_dt(c.policy, dx, c.strategy.r, speed(s.u));
      integrate_uniform(s.u, stepper, 0.0, c.problem.t_final, dt, observer);
    } else {
      integrate(s.u, stepper, 0.0, c.problem.t_final,
                [&](const State& u) { return compute_dt(c.policy, dx, c.strategy.r, speed(u)); }, observer);
    }
    s.t = c.problem.t_final;
    d.completed = true;
  } catch (const BlowUp& e) {
    d.blow_up = BlowUpInfo{d.steps + 1, e.cell(), e.time(), e.what()};
  } catch (const StateError& e) {
    d.blow_up = BlowUpInfo{d.steps + 1, 0, s.t, e.what()};
  }
  d.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (d.completed && c.problem.bc == BoundaryRule::ZeroGradient) {
    for (int comp = 0; comp < s.components; ++comp) {
      for (std::size_t i : {std::size_t{0}, n - 1}) {
        const std::size_t k = static_cast<std::size_t>(comp) * n + i;
        if (std::abs(s.u[k] - initial[k]) > 1e-8 * std::max(1.0, std::abs(initial[k]))) d.boundary_disturbed = true;
      }
    }
  }
  return res;
}

Norms error_norms(const std::vector<double>& u, const std::vector<double>& ref, double dx) {
  if (u.size() != ref.size()) throw std::invalid_argument("error_norms: size mismatch");
  Norms out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double e = std::abs(u[i] - ref[i]);
    out.l1 += e;
    out.linf = std::max(out.linf, e);
  }
  out.l1 *= dx;
  return out;
}

double oscillation_metric(const std::vector<double>& u, const std::vector<double>& ref, bool periodic) {
  if (u.size() != ref.size()) throw std::invalid_argument("oscillation_metric: size mismatch");
  const std::size_t n = u.size();
  if (n < 2) return 0.0;
  const auto [rmin, rmax] = std::minmax_element(ref.begin(), ref.end());
  const auto [umin, umax] = std::minmax_element(u.begin(), u.end());
  const double bound = std::max({0.0, *umax - *rmax, *rmin - *umin});
  const double range = *rmax - *rmin;
  if (!(range > 0.0)) return bound;

  constexpr int kHalfWidth = 4;
  const double jump = 0.1 * range;
  const auto N = static_cast<std::ptrdiff_t>(n);
  auto at = [&](const std::vector<double>& v, std::ptrdiff_t i) { return v[static_cast<std::size_t>(((i % N) + N) % N)]; };
  double excess = 0.0;
  const std::ptrdiff_t last = periodic ? N : N - 1;
  for (std::ptrdiff_t i = 0; i < last; ++i) {
    if (std::abs(at(ref, i + 1) - at(ref, i)) <= jump) continue;
    std::ptrdiff_t lo = i - kHalfWidth, hi = i + 1 + kHalfWidth;
    if (!periodic) {
      lo = std::max<std::ptrdiff_t>(lo, 0);
      hi = std::min<std::ptrdiff_t>(hi, N - 1);
    }
    double tv_u = 0.0, tv_r = 0.0;
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      tv_u += std::abs(at(u, k + 1) - at(u, k));
      tv_r += std::abs(at(ref, k + 1) - at(ref, k));
    }
    excess = std::max(excess, tv_u - tv_r);
  }
  return bound + 0.5 * excess;
}

ErrorReport evaluate_case(const CaseSpec& c) {
  ErrorReport rep;
  rep.problem = problem_name(c.problem.id);
  rep.scheme = c.scheme;
  const CaseResult r = run_case(c);
  GridError row;
  row.n = r.state.grid.n;
  row.wall_ms = r.diag.wall_ms;
  if (!r.diag.completed) {
    row.blow_up_step = r.diag.blow_up->step;
    row.l1 = row.linf = row.oscillation = std::numeric_limits<double>::quiet_NaN();
    rep.rows.push_back(row);
    rep.aborted = true;
    return rep;
  }
  ReferenceOptions ro = c.reference;
  ro.gas = c.gas;
  ro.eps_sw_rel = c.eps_sw_rel;
  const ReferenceSolution ref = reference(c.problem, row.n, ro);
  const std::vector<double> rv = sample_reference(ref, r.state.grid, 0);
  const std::vector<double> uv(r.state.u.begin(), r.state.u.begin() + static_cast<std::ptrdiff_t>(row.n));
  const Norms e = error_norms(uv, rv, r.state.grid.dx);
  row.l1 = e.l1;
  row.linf = e.linf;
  row.oscillation = oscillation_metric(uv, rv, c.problem.bc == BoundaryRule::Periodic);
  rep.rows.push_back(row);
  return rep;
}

void fill_orders(ErrorReport& r) {
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    GridError& a = r.rows[i - 1];
    GridError& b = r.rows[i];
    const double ratio = std::log(static_cast<double>(b.n) / static_cast<double>(a.n));
    if (a.l1 > 0.0 && b.l1 > 0.0) b.order_l1 = std::log(a.l1 / b.l1) / ratio;
    if (a.linf > 0.0 && b.linf > 0.0) b.order_linf = std::log(a.linf / b.linf) / ratio;
  }
}

ErrorReport convergence_study(const CaseSpec& base, const std::vector<std::size_t>& grids) {
  ErrorReport rep;
  rep.problem = problem_name(base.problem.id);
  rep.scheme = base.scheme;
  for (std::size_t n : grids) {
    CaseSpec c = base;
    c.n = n;
    ErrorReport one = evaluate_case(c);
    rep.rows.push_back(one.rows.front());
    if (one.aborted) {
      rep.aborted = true;
      break;
    }
  }
  fill_orders(rep);
  return rep;
}

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string format_results(const std::vector<ErrorReport>& reports, OutputFormat format, bool deterministic) {
  if (format == OutputFormat::Csv) {
    std::ostringstream os;
    os << "problem,scheme,N,L1,Linf,order_L1,order_Linf,oscillation,blow_up_step,wall_ms\n";
    for (const auto& r : reports) {
      for (const auto& row : r.rows) {
        os << csv_field(r.problem) << ',' << csv_field(r.scheme) << ',' << row.n << ',' << num(row.l1) << ','
           << num(row.linf) << ',' << opt_num(row.order_l1) << ',' << opt_num(row.order_linf) << ','
           << num(row.oscillation) << ',' << (row.blow_up_step ? std::to_string(*row.blow_up_step) : "") << ','
           << (deterministic ? "" : num(row.wall_ms)) << '\n';
      }
    }
    return os.str();
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  auto jnum = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr); };
  for (const auto& r : reports) {
    for (const auto& row : r.rows) {
      nlohmann::ordered_json j;
      j["problem"] = r.problem;
      j["scheme"] = r.scheme;
      j["N"] = row.n;
      j["L1"] = jnum(row.l1);
      j["Linf"] = jnum(row.linf);
      j["order_L1"] = row.order_l1 ? jnum(*row.order_l1) : nullptr;
      j["order_Linf"] = row.order_linf ? jnum(*row.order_linf) : nullptr;
      j["oscillation"] = jnum(row.oscillation);
      j["blow_up_step"] = row.blow_up_step ? nlohmann::ordered_json(*row.blow_up_step) : nullptr;
      j["wall_ms"] = deterministic ? nlohmann::ordered_json(nullptr) : jnum(row.wall_ms);
      arr.push_back(std::move(j));
    }
  }
  return arr.dump(2) + "\n";
}

void emit_results(const std::vector<ErrorReport>& reports, OutputFormat format, const std::string& path,
                  bool deterministic) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << format_results(reports, format, deterministic);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<ErrorReport> run_parallel(const std::vector<std::function<ErrorReport()>>& jobs, int threads) {
  std::vector<ErrorReport> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        out[i] = jobs[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace wenomap
