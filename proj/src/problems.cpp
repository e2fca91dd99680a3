#include "wenomap/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "json.hpp"

#include "wenomap/errors.hpp"
#include "wenomap/mappings.hpp"
#include "wenomap/strategy.hpp"

namespace wenomap {

namespace fs = std::filesystem;

std::string problem_name(ProblemId id) {
  switch (id) {
    case ProblemId::SWA1: return "swa1";
    case ProblemId::SWA2: return "swa2";
    case ProblemId::Combo: return "combo";
    case ProblemId::StrongShock: return "strong_shock";
    case ProblemId::Blast: return "blast";
    case ProblemId::ShuOsher: return "shu_osher";
    case ProblemId::TitarevToro: return "titarev_toro";
  }
  return "?";
}

ProblemId problem_from_name(const std::string& name) {
  for (ProblemId id : {ProblemId::SWA1, ProblemId::SWA2, ProblemId::Combo, ProblemId::StrongShock, ProblemId::Blast,
                       ProblemId::ShuOsher, ProblemId::TitarevToro}) {
    if (problem_name(id) == name) return id;
  }
  throw ConfigError("unknown problem '" + name + "'");
}

bool ProblemSpec::euler() const {
  return id == ProblemId::StrongShock || id == ProblemId::Blast || id == ProblemId::ShuOsher ||
         id == ProblemId::TitarevToro;
}

std::size_t ProblemSpec::default_reference_n() const {
  switch (id) {
    case ProblemId::StrongShock:
    case ProblemId::Blast:
    case ProblemId::TitarevToro:
      return 10001;
    case ProblemId::ShuOsher:
      return 2001;
    default:
      return 0;
  }
}

ProblemSpec make_problem(ProblemId id) {
  ProblemSpec p;
  p.id = id;
  switch (id) {
    case ProblemId::SWA1:
      p.a = 1.0;
      break;
    case ProblemId::SWA2:
      p.a = 0.32;
      break;
    case ProblemId::Combo:
      p.default_n = 400;
      p.t_final = 200.0;
      break;
    case ProblemId::StrongShock:
      p.x_lo = -5.0;
      p.x_hi = 5.0;
      p.t_final = 0.01;
      p.default_n = 201;
      p.bc = BoundaryRule::ZeroGradient;
      break;
    case ProblemId::Blast:
      p.x_lo = 0.0;
      p.x_hi = 1.0;
      p.t_final = 0.038;
      p.default_n = 200;
      p.bc = BoundaryRule::ReflectiveWall;
      break;
    case ProblemId::ShuOsher:
      p.x_lo = -5.0;
      p.x_hi = 5.0;
      p.t_final = 1.8;
      p.default_n = 200;
      p.bc = BoundaryRule::ZeroGradient;
      break;
    case ProblemId::TitarevToro:
      p.x_lo = -5.0;
      p.x_hi = 5.0;
      p.t_final = 5.0;
      p.default_n = 1000;
      p.bc = BoundaryRule::ZeroGradient;
      break;
  }
  return p;
}

void validate(const ProblemSpec& p) {
  if (!(p.x_hi > p.x_lo)) throw ConfigError("problem domain must satisfy x_hi > x_lo");
  if (!(p.t_final >= 0.0)) throw ConfigError("problem.T must be nonnegative");
  if ((p.id == ProblemId::SWA1 || p.id == ProblemId::SWA2) && !(p.a > 0.0)) throw ConfigError("problem.a must be positive");
  if (p.id == ProblemId::StrongShock && !(p.pr > 0.0)) throw ConfigError("problem.pr must be positive");
  if (p.euler() && p.bc == BoundaryRule::Periodic) throw ConfigError("Euler problems do not support periodic boundaries");
}

Grid make_grid(const ProblemSpec& p, std::size_t n) {
  if (n < 2) throw ConfigError("grid needs at least two points");
  Grid g;
  g.x_lo = p.x_lo;
  g.n = n;
  g.dx = (p.x_hi - p.x_lo) / static_cast<double>(n);
  g.centred = p.bc != BoundaryRule::Periodic;
  return g;
}

namespace {

double swa_phase(double x, double a) {
  const double px = std::numbers::pi * x;
  return px - std::sin(px) / (a * std::numbers::pi);
}

double combo(double x) {
  constexpr double a = 0.5, z = -0.7, delta = 0.005, alpha = 10.0;
  const double beta = std::log(2.0) / (36.0 * delta * delta);
  auto G = [beta](double x, double zz) { return std::exp(-beta * (x - zz) * (x - zz)); };
  auto F = [](double x, double aa) { return std::sqrt(std::max(1.0 - alpha * alpha * (x - aa) * (x - aa), 0.0)); };
  if (x >= -0.8 && x <= -0.6) return (G(x, z - delta) + G(x, z + delta) + 4.0 * G(x, z)) / 6.0;
  if (x >= -0.4 && x <= -0.2) return 1.0;
  if (x >= 0.0 && x <= 0.2) return 1.0 - std::abs(10.0 * (x - 0.1));
  if (x >= 0.4 && x <= 0.6) return (F(x, a - delta) + F(x, a + delta) + 4.0 * F(x, a)) / 6.0;
  return 0.0;
}

}  // namespace

double initial_scalar(const ProblemSpec& p, double x) {
  switch (p.id) {
    case ProblemId::SWA1:
      return std::sin(swa_phase(x, p.a));
    case ProblemId::SWA2: {
      const double s = std::sin(swa_phase(x, p.a));
      return s * s * s;
    }
    case ProblemId::Combo:
      return combo(x);
    default:
      throw ConfigError("problem " + problem_name(p.id) + " is not scalar");
  }
}

PrimitiveState initial_primitive(const ProblemSpec& p, double x) {
  switch (p.id) {
    case ProblemId::StrongShock:
      return x < 0.0 ? PrimitiveState{1.0, 0.0, 0.1 * p.pr} : PrimitiveState{1.0, 0.0, 0.1};
    case ProblemId::Blast:
      if (x < 0.1) return {1.0, 0.0, 1000.0};
      if (x <= 0.9) return {1.0, 0.0, 0.01};
      return {1.0, 0.0, 100.0};
    case ProblemId::ShuOsher:
      if (x < -4.0) return {3.857143, 2.629369, 10.3333};
      return {1.0 + 0.2 * std::sin(5.0 * x), 0.0, 1.0};
    case ProblemId::TitarevToro:
      if (x < -4.5) return {1.515695, 0.523346, 1.805};
      return {1.0 + 0.1 * std::sin(20.0 * std::numbers::pi * x), 0.0, 1.0};
    default:
      throw ConfigError("problem " + problem_name(p.id) + " is not an Euler problem");
  }
}

SimState initialize(const ProblemSpec& p, std::size_t n, const GasModel& gas) {
  validate(p);
  SimState s;
  s.problem = p;
  s.grid = make_grid(p, n);
  s.components = p.components();
  s.u.assign(static_cast<std::size_t>(s.components) * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = s.grid.x(i);
    if (p.euler()) {
      const PrimitiveState w = initial_primitive(p, x);
      const ConservedState c = prim_to_cons(w.rho, w.u, w.p, gas);
      s.u[i] = c.rho;
      s.u[n + i] = c.mom;
      s.u[2 * n + i] = c.E;
    } else {
      s.u[i] = initial_scalar(p, x);
    }
  }
  return s;
}

std::vector<double> apply_bc(const SimState& s, int g) {
  const std::size_t n = s.grid.n;
  const std::size_t np = n + 2 * static_cast<std::size_t>(g);
  std::vector<double> out(static_cast<std::size_t>(s.components) * np);
  for (int c = 0; c < s.components; ++c) {
    pad(s.u.data() + c * n, n, g, s.problem.bc, s.components == 3 && c == 1, out.data() + c * np);
  }
  return out;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string canonical(const ProblemSpec& p, const ReferenceOptions& opt, std::size_t n_ref) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "v1;problem=%s;a=%.17g;pr=%.17g;x=[%.17g,%.17g];T=%.17g;bc=%s;n=%zu;scheme=WENO5-JS;rk=tvd_rk3;"
                "cfl=%.17g;gamma=%.17g;eps_sw=%.17g",
                problem_name(p.id).c_str(), p.a, p.pr, p.x_lo, p.x_hi, p.t_final, bc_name(p.bc).c_str(), n_ref,
                opt.cfl, opt.gas.gamma, opt.eps_sw_rel);
  return buf;
}

ReferenceSolution compute_fine(const ProblemSpec& p, const ReferenceOptions& opt, std::size_t n_ref) {
  SimState s = initialize(p, n_ref, opt.gas);
  WeightingStrategy js;
  js.r = 3;
  EulerOptions eo;
  eo.gas = opt.gas;
  eo.bc = p.bc;
  eo.eps_sw_rel = opt.eps_sw_rel;
  auto rhs = std::make_shared<EulerRhs>(js, s.grid.dx, n_ref, eo);
  Stepper stepper(Integrator::TvdRk3, [rhs](const State& u, State& d, double t) { (*rhs)(u, d, t); });
  StepPolicy policy{StepMode::Cfl, opt.cfl};
  const double dx = s.grid.dx;
  try {
    integrate(s.u, stepper, 0.0, p.t_final,
              [&](const State& u) { return compute_dt(policy, dx, 3, rhs->max_wave_speed(u)); });
  } catch (const BlowUp& e) {
    throw StateError(std::string("reference computation failed: ") + e.what());
  }
  ReferenceSolution ref;
  ref.kind = ReferenceSolution::Kind::FineGrid;
  ref.grid = s.grid;
  ref.components = 3;
  ref.u = std::move(s.u);
  ref.scheme = "WENO5-JS";
  return ref;
}

bool read_cached(const fs::path& dir, const std::string& key, const std::string& canon, const ProblemSpec& p,
                 std::size_t n_ref, ReferenceSolution& out) {
  const fs::path manifest = dir / (key + ".json");
  const fs::path data = dir / (key + ".bin");
  std::ifstream mf(manifest);
  if (!mf) return false;
  nlohmann::json j;
  try {
    mf >> j;
  } catch (const nlohmann::json::exception&) {
    return false;
  }
  if (j.value("canonical", std::string()) != canon) return false;
  std::ifstream df(data, std::ios::binary);
  if (!df) return false;
  out.grid = make_grid(p, n_ref);
  out.components = 3;
  out.u.resize(3 * n_ref);
  df.read(reinterpret_cast<char*>(out.u.data()), static_cast<std::streamsize>(out.u.size() * sizeof(double)));
  if (df.gcount() != static_cast<std::streamsize>(out.u.size() * sizeof(double))) return false;
  out.kind = ReferenceSolution::Kind::FineGrid;
  out.scheme = j.value("scheme", std::string("WENO5-JS"));
  out.from_cache = true;
  return true;
}

void write_cached(const fs::path& dir, const std::string& key, const std::string& canon, const ReferenceSolution& ref) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return;
  const std::string tag =
      ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + std::to_string(::getpid());
  const fs::path data = dir / (key + ".bin");
  const fs::path manifest = dir / (key + ".json");
  {
    std::ofstream df(data.string() + tag, std::ios::binary);
    df.write(reinterpret_cast<const char*>(ref.u.data()), static_cast<std::streamsize>(ref.u.size() * sizeof(double)));
    if (!df) return;
  }
  fs::rename(data.string() + tag, data, ec);
  if (ec) return;
  nlohmann::json j;
  j["canonical"] = canon;
  j["scheme"] = ref.scheme;
  j["n"] = ref.grid.n;
  j["components"] = ref.components;
  {
    std::ofstream mf(manifest.string() + tag);
    mf << j.dump(2) << "\n";
    if (!mf) return;
  }
  fs::rename(manifest.string() + tag, manifest, ec);
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, std::shared_ptr<const ReferenceSolution>>& memory_cache() {
  static std::map<std::string, std::shared_ptr<const ReferenceSolution>> c;
  return c;
}

}  // namespace

std::string reference_key(const ProblemSpec& p, const ReferenceOptions& opt, std::size_t n_ref) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical(p, opt, n_ref))));
  return problem_name(p.id) + "_" + std::to_string(n_ref) + "_" + buf;
}

std::string reference_cache_dir(const ReferenceOptions& opt) {
  if (!opt.cache_dir.empty()) return opt.cache_dir;
  if (const char* env = std::getenv("WENOMAP_REFERENCE_CACHE"); env && *env) return env;
  return "reference_cache";
}

ReferenceSolution reference(const ProblemSpec& p, std::size_t coarse_n, const ReferenceOptions& opt) {
  validate(p);
  if (!p.euler()) {
    ReferenceSolution ref;
    ref.kind = ReferenceSolution::Kind::AnalyticShift;
    ref.grid = make_grid(p, coarse_n);
    ref.components = 1;
    ref.scheme = "exact";
    ref.u.resize(coarse_n);
    const double len = p.x_hi - p.x_lo;
    for (std::size_t i = 0; i < coarse_n; ++i) {
      double xs = std::fmod(ref.grid.x(i) - p.t_final - p.x_lo, len);
      if (xs < 0.0) xs += len;
      ref.u[i] = initial_scalar(p, p.x_lo + xs);
    }
    return ref;
  }

  const std::size_t n_ref = opt.n ? opt.n : p.default_reference_n();
  const std::string canon = canonical(p, opt, n_ref);
  const std::string key = reference_key(p, opt, n_ref);
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto& mem = memory_cache();
  if (auto it = mem.find(key); it != mem.end()) return *it->second;

  const fs::path dir = reference_cache_dir(opt);
  ReferenceSolution ref;
  if (!(opt.use_cache && read_cached(dir, key, canon, p, n_ref, ref))) {
    ref = compute_fine(p, opt, n_ref);
    if (opt.use_cache) write_cached(dir, key, canon, ref);
  }
  mem[key] = std::make_shared<const ReferenceSolution>(ref);
  return ref;
}

std::vector<double> sample_reference(const ReferenceSolution& ref, const Grid& coarse, int component) {
  if (component < 0 || component >= ref.components) throw std::out_of_range("reference component");
  const std::size_t nr = ref.grid.n;
  const double* v = ref.u.data() + static_cast<std::size_t>(component) * nr;
  std::vector<double> out(coarse.n);
  if (ref.grid.n == coarse.n && ref.grid.dx == coarse.dx && ref.grid.x_lo == coarse.x_lo) {
    std::copy(v, v + nr, out.begin());
    return out;
  }
  for (std::size_t i = 0; i < coarse.n; ++i) {
    const double s = (coarse.x(i) - ref.grid.x(0)) / ref.grid.dx;
    const double nearest = std::round(s);
    if (std::abs(s - nearest) < 1e-9 && nearest >= 0.0 && nearest <= static_cast<double>(nr - 1)) {
      out[i] = v[static_cast<std::size_t>(nearest)];
      continue;
    }
    const double sc = std::clamp(s, 0.0, static_cast<double>(nr - 1));
    const auto k = std::min(static_cast<std::size_t>(sc), nr - 2);
    const double w = sc - static_cast<double>(k);
    out[i] = (1.0 - w) * v[k] + w * v[k + 1];
  }
  return out;
}

}  // namespace wenomap
