#include "wenomap/mappings.hpp"

#include <cctype>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "wenomap/errors.hpp"
#include "wenomap/mapping_eval.hpp"

namespace wenomap {
namespace {

using detail::ipow;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void check_dk(double dk) {
  require(std::isfinite(dk) && dk > 0.0 && dk < 1.0, "dk must lie in (0,1)");
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double clamp01(double w) { return std::clamp(w, 0.0, 1.0); }

void check_r_orders(int n, int m) {
  require(n >= 1 && n <= 4 && m >= 0 && m <= n,
          "R family is tabulated for 1 <= n <= 4 and 0 <= m <= n (got n=" + std::to_string(n) +
              ", m=" + std::to_string(m) + ")");
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::Identity: return "identity";
    case Family::GM: return "gm";
    case Family::PM: return "pm";
    case Family::PPM: return "ppm";
    case Family::IM: return "im";
    case Family::RM: return "rm";
    case Family::AIM: return "aim";
    case Family::R: return "r";
    case Family::PRM: return "prm";
  }
  return "identity";
}

Family family_from_name(const std::string& name) {
  static const std::map<std::string, Family> names = {
      {"identity", Family::Identity}, {"gm", Family::GM}, {"pm", Family::PM},   {"ppm", Family::PPM},
      {"im", Family::IM},             {"rm", Family::RM}, {"aim", Family::AIM}, {"r", Family::R},
      {"prm", Family::PRM}};
  std::string key = name;
  for (char& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto it = names.find(key);
  if (it == names.end()) throw ConfigError("unknown mapping family '" + name + "'");
  return it->second;
}

bool MappingSpec::piecewise() const {
  return family == Family::PM || family == Family::PPM || family == Family::R || family == Family::PRM;
}

MappingSpec make_identity(double dk) {
  check_dk(dk);
  MappingSpec s;
  s.family = Family::Identity;
  s.dk = dk;
  s.n = 0;
  s.m = 0;
  return s;
}

MappingSpec make_gm(double dk) {
  check_dk(dk);
  MappingSpec s;
  s.family = Family::GM;
  s.dk = dk;
  s.n = 2;
  s.m = 0;
  return s;
}

MappingSpec make_pm(double dk, int n) {
  check_dk(dk);
  require(n >= 1 && n <= 12, "PM order n must lie in 1..12");
  MappingSpec s;
  s.family = Family::PM;
  s.dk = dk;
  s.n = n;
  s.m = 1;
  return s;
}

MappingSpec make_ppm(double dk, int n, int m) {
  check_dk(dk);
  require(n >= 1 && n <= 12 && m >= 0 && m <= 8, "PPM orders must satisfy 1 <= n <= 12, 0 <= m <= 8");
  MappingSpec s;
  s.family = Family::PPM;
  s.dk = dk;
  s.n = n;
  s.m = m;
  return s;
}

MappingSpec make_im(double dk, int n, double A) {
  check_dk(dk);
  require(n >= 1 && n <= 12, "IM order n must lie in 1..12");
  require(std::isfinite(A) && A > 0.0, "IM parameter A must be positive");
  MappingSpec s;
  s.family = Family::IM;
  s.dk = dk;
  s.n = n;
  s.m = 0;
  s.A = A;
  return s;
}

MappingSpec make_rm(double dk, int n, int m) {
  check_dk(dk);
  require(n >= 1 && n <= 8 && m >= 0 && m + 1 < 10, "RM orders must satisfy 1 <= n <= 8, 0 <= m <= 8");
  MappingSpec s;
  s.family = Family::RM;
  s.dk = dk;
  s.n = n;
  s.m = m;
  // a_i = -C(n+1,i) (-dk)^(n+1-i) / dk for i <= m, a_{m+1} closes g(1) = 1.
  double sum = 0.0;
  double binom = 1.0;
  for (int i = 0; i <= m; ++i) {
    if (i > 0) binom = binom * (n + 2 - i) / i;
    const double a = -binom * ipow(-dk, n + 1 - i) / dk;
    s.rm_a[i] = a;
    sum += a;
  }
  s.rm_a[m + 1] = ipow(1.0 - dk, n) - sum;
  return s;
}

MappingSpec make_aim(double dk, int n, int m, double scale) {
  check_dk(dk);
  require(n >= 1 && n <= 12 && m >= 0 && m <= 8, "AIM orders must satisfy 1 <= n <= 12, 0 <= m <= 8");
  require(std::isfinite(scale) && scale >= 0.0, "AIM scale s must be nonnegative");
  MappingSpec s;
  s.family = Family::AIM;
  s.dk = dk;
  s.n = n;
  s.m = m;
  s.s = scale;
  return s;
}

MappingSpec make_aim_adaptive(double dk, int n, int m, double c) {
  MappingSpec s = make_aim(dk, n, m, 0.0);
  require(std::isfinite(c) && c > 0.0, "AIM constant c must be positive");
  s.adaptive = true;
  s.aim_c = c;
  return s;
}

RCoefficients r_coefficients(double dk, int n, int m) {
  check_r_orders(n, m);
  const double d1 = 1.0 - dk;
  RCoefficients c;
  if (m == 0) {
    c.n1 = 0;
    c.c1 = 0.0;
    c.c3 = 1.0;
    return c;
  }
  if (m == 1) {
    c.n1 = 1;
    c.c1 = (n == 1) ? 1.0 : n * ipow(d1, n - 1);
    c.c3 = -(n - 1.0);
    return c;
  }
  if (n == 4 && m == 2) {
    c.n1 = 2;
    c.c1 = 2.0 * d1 * d1;
    c.c3 = -1.0;
    c.c4 = 4.0 * d1 * d1;
    return c;
  }
  c.n1 = n;
  c.c1 = 1.0;
  c.c3 = 0.0;
  return c;
}

double r_c2_from_b(double dk, int n, int m, double b) {
  check_r_orders(n, m);
  if (m == 0) return -b;
  if (m == n) {
    const double v = b / (1.0 - b * dk);
    return (n % 2 == 1) ? v : -v;
  }
  if (m == 1) return b;
  if (n == 3 && m == 2) return 1.0 - b;
  if (n == 4 && m == 2) return -b;
  // n = 4, m = 3
  return -(1.0 - b);
}

bool r_b_admissible(double dk, int n, int m, double b) {
  check_r_orders(n, m);
  const double d1 = 1.0 - dk;
  if (!std::isfinite(b)) return false;
  if (m == 0) return b < ipow(d1, n - 1);
  if (m == n) {
    if (n % 2 == 1) return b > 0.0 && b < 1.0 / dk;
    return b < 0.0 || b > 1.0 / dk;
  }
  if (m == 1) {
    if (n == 2) return b > 1.0;
    if (n == 3) return b >= 3.0 * d1;
    return b >= 6.0 * d1 * d1;  // n = 4
  }
  if (n == 3 && m == 2) return b < 1.0;
  if (n == 4 && m == 2) return b < 3.0 * d1;
  return b > 1.0;  // n = 4, m = 3
}

bool r_c2_admissible(double dk, int n, int m, double c2) {
  check_r_orders(n, m);
  const double d1 = 1.0 - dk;
  if (!std::isfinite(c2)) return false;
  if (m == 0) return c2 > -ipow(d1, n - 1);
  if (m == n) return c2 > 0.0;
  if (m == 1) {
    if (n == 2) return c2 > 1.0;
    if (n == 3) return c2 >= 3.0 * d1;
    return c2 > 4.0 * d1 * d1;  // n = 4; smaller values leave a zero of the denominator
  }
  if (n == 3 && m == 2) return c2 > 0.0;
  if (n == 4 && m == 2) return c2 > -3.0 * d1;
  return c2 > 0.0;  // n = 4, m = 3
}

RDerivativeTargets r_derivative_targets(double dk, int n, int m, double c) {
  check_r_orders(n, m);
  const double d = 1.0 - dk;
  RDerivativeTargets t;
  switch (n * 10 + m) {
    case 10: t = {2.0 / ((c + 1.0) * d), c + 2.0}; break;
    case 11: t = {2.0 / (c * d * d), -2.0 * c}; break;
    case 20: t = {6.0 / (c * d + d * d), (c + 3.0 * d) / d}; break;
    case 21: t = {6.0 / (c * d * d - d * d), (-2.0 * c + 2.0) / d}; break;
    case 22: t = {6.0 / (c * ipow(d, 3)), 6.0 * c / d}; break;
    case 30: t = {24.0 / (c * d + ipow(d, 3)), (c + 4.0 * d * d) / (d * d)}; break;
    case 31: t = {24.0 / (c * d * d - 2.0 * ipow(d, 3)), (-2.0 * c + 6.0 * d) / (d * d)}; break;
    case 32: t = {24.0 / (c * ipow(d, 3)), 6.0 * c / (d * d)}; break;
    case 33: t = {24.0 / (c * ipow(d, 4)), -24.0 * c / (d * d)}; break;
    case 40: t = {120.0 / (c * d + ipow(d, 4)), (c + 5.0 * ipow(d, 3)) / ipow(d, 3)}; break;
    case 41: t = {120.0 / (c * d * d - 3.0 * ipow(d, 4)), (-2.0 * c + 12.0 * d * d) / ipow(d, 3)}; break;
    case 42: t = {120.0 / (c * ipow(d, 3) + 3.0 * ipow(d, 4)), (6.0 * c + 24.0 * d) / ipow(d, 3)}; break;
    case 43: t = {120.0 / (c * ipow(d, 4)), -24.0 * c / ipow(d, 3)}; break;
    case 44: t = {120.0 / (c * ipow(d, 5)), 120.0 * c / ipow(d, 3)}; break;
    default: break;
  }
  return t;
}

MappingSpec make_r(double dk, int n, int m, double c2_right, double c2_left) {
  check_dk(dk);
  check_r_orders(n, m);
  require(r_c2_admissible(dk, n, m, c2_right),
          "R_{" + std::to_string(n) + "," + std::to_string(m) + "} right coefficient c2=" + fmt(c2_right) +
              " outside its admissible range");
  require(r_c2_admissible(dk, n, m, c2_left),
          "R_{" + std::to_string(n) + "," + std::to_string(m) + "} left coefficient c2=" + fmt(c2_left) +
              " outside its admissible range");
  MappingSpec s;
  s.family = Family::R;
  s.dk = dk;
  s.n = n;
  s.m = m;
  s.c2_right = c2_right;
  s.c2_left = c2_left;
  return s;
}

MappingSpec make_r_from_b(double dk, int n, int m, double b) {
  check_dk(dk);
  check_r_orders(n, m);
  require(r_b_admissible(dk, n, m, b), "R_{" + std::to_string(n) + "," + std::to_string(m) + "} parameter b=" +
                                           fmt(b) + " outside its valid range");
  const double c2 = r_c2_from_b(dk, n, m, b);
  MappingSpec s;
  s.family = Family::R;
  s.dk = dk;
  s.n = n;
  s.m = m;
  s.b = b;
  s.from_b = true;
  s.c2_right = c2;
  s.c2_left = c2;
  return s;
}

PrmBranch prm_left_absorbed(double dk, int n, int m, int n1, const PrmBranch& u) {
  const double ratio = (1.0 - dk) / dk;
  PrmBranch out = u;
  out.c2 = std::pow(ratio, n1 + u.m1 - n) * u.c2;
  out.c1 = std::pow(ratio, m - n + 1) * u.c1;
  return out;
}

MappingSpec make_prm(double dk, int n, int m, int n1, const PrmBranch& left, const PrmBranch& right) {
  check_dk(dk);
  require(n >= 1 && n <= 12 && m >= 0 && m <= 12 && n1 >= 1 && n1 <= 12,
          "PRM orders must satisfy n >= 1, m >= 0, n1 >= 1 (each at most 12)");
  for (const PrmBranch* b : {&left, &right}) {
    const char* side = (b == &left) ? "left" : "right";
    require(std::isfinite(b->c1) && b->c1 > 0.0,
            std::string("PRM ") + side + " c1=" + fmt(b->c1) +
                " must be positive: a nonpositive c1 admits a zero of the denominator (singular mapping)");
    require(std::isfinite(b->c2) && b->c2 >= 0.0,
            std::string("PRM ") + side + " c2=" + fmt(b->c2) +
                " must be nonnegative: c1 and c2 of opposite sign admit a singular mapping");
    require(b->m1 >= 1 && b->m1 <= 16, std::string("PRM ") + side + " m1 must lie in 1..16");
  }
  MappingSpec s;
  s.family = Family::PRM;
  s.dk = dk;
  s.n = n;
  s.m = m;
  s.n1 = n1;
  s.left = left;
  s.right = right;
  return s;
}

double eval_side(const MappingSpec& spec, Side side, double omega) {
  return detail::eval_branch(spec, side, omega, detail::default_aim_scale(spec));
}

double eval_scaled(const MappingSpec& spec, double omega, double s) {
  const double w = clamp01(omega);
  const Side side = (w < spec.dk) ? Side::Left : Side::Right;
  if (spec.family == Family::AIM && s == 0.0) return w;
  return detail::eval_branch(spec, side, w, s);
}

double eval(const MappingSpec& spec, double omega) {
  return eval_scaled(spec, omega, detail::default_aim_scale(spec));
}

std::function<double(double)> left_from_right(std::function<double(double)> g_right, double dk) {
  check_dk(dk);
  return [g = std::move(g_right), dk](double w) {
    return dk / (1.0 - dk) * (1.0 - g(1.0 - (1.0 - dk) / dk * w));
  };
}

double aim_scale(std::span<const double> is, double dk, double c, double dx,
                 std::optional<std::span<const double>> other) {
  auto lambda = [dx](std::span<const double> v) {
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    return *mn / (*mx + ipow(dx, 7));
  };
  double lam = lambda(is);
  if (other) lam = std::min(lam, lambda(*other));
  return c / dk * lam;
}

NonlinearWeights map_weights(const NonlinearWeights& omega, std::span<const MappingSpec> specs) {
  if (static_cast<int>(specs.size()) != omega.r) {
    throw std::invalid_argument("map_weights: one mapping spec per sub-stencil required");
  }
  NonlinearWeights out;
  out.r = omega.r;
  double sum = 0.0;
  for (int k = 0; k < omega.r; ++k) {
    out.omega[k] = eval(specs[k], omega.omega[k]);
    sum += out.omega[k];
  }
  if (!(sum > 0.0)) throw std::logic_error("map_weights: mapped weights sum to zero (broken mapping)");
  for (int k = 0; k < omega.r; ++k) out.omega[k] /= sum;
  return out;
}

namespace {

double denominator(const MappingSpec& s, Side side, double w) {
  switch (s.family) {
    case Family::GM:
      return (1.0 - 2.0 * s.dk) * w + s.dk * s.dk;
    case Family::IM:
      return s.A * ipow(w - s.dk, s.n) + w * (1.0 - w);
    case Family::RM:
      return detail::rm_denominator(s, w);
    case Family::AIM:
      return detail::aim_denominator(s.dk, s.n, s.m, detail::default_aim_scale(s), w);
    case Family::R:
      if (side == Side::Right) return detail::r_right_denominator(s, s.c2_right, w);
      return detail::r_right_denominator(s, s.c2_left, 1.0 - (1.0 - s.dk) / s.dk * w);
    case Family::PRM:
      return detail::prm_denominator(s, side, w);
    default:
      return 1.0;
  }
}

bool branch_nonsingular(const MappingSpec& s, Side side, double lo, double hi) {
  constexpr int kSamples = 10000;
  double mn = std::numeric_limits<double>::infinity();
  double mx = 0.0;
  int sign = 0;
  for (int i = 0; i <= kSamples; ++i) {
    const double w = lo + (hi - lo) * i / kSamples;
    const double d = denominator(s, side, w);
    if (!std::isfinite(d)) return false;
    const int sg = (d > 0.0) - (d < 0.0);
    if (sg == 0) return false;
    if (sign == 0) sign = sg;
    if (sg != sign) return false;
    mn = std::min(mn, std::abs(d));
    mx = std::max(mx, std::abs(d));
  }
  return mn > 1e-12 * mx;
}

}  // namespace

bool check_singularity_free(const MappingSpec& s) {
  switch (s.family) {
    case Family::Identity:
    case Family::PM:
    case Family::PPM:
      return true;
    case Family::AIM:
      if (detail::default_aim_scale(s) == 0.0) return true;
      return branch_nonsingular(s, Side::Right, 0.0, 1.0);
    case Family::GM:
    case Family::IM:
    case Family::RM:
      return branch_nonsingular(s, Side::Right, 0.0, 1.0);
    case Family::R:
    case Family::PRM:
      return branch_nonsingular(s, Side::Left, 0.0, s.dk) && branch_nonsingular(s, Side::Right, s.dk, 1.0);
  }
  return false;
}

bool check_monotone(const MappingSpec& spec, int samples) {
  double prev = eval(spec, 0.0);
  bool dk_done = false;
  for (int i = 1; i < samples; ++i) {
    const double w = static_cast<double>(i) / (samples - 1);
    if (!dk_done && w >= spec.dk) {
      const double g = eval(spec, spec.dk);
      if (!(g >= prev - 1e-14)) return false;
      prev = g;
      dk_done = true;
    }
    const double g = eval(spec, w);
    if (!std::isfinite(g) || !(g >= prev - 1e-14)) return false;
    prev = g;
  }
  return true;
}

double fixed_point_error(const MappingSpec& spec) {
  const double e0 = std::abs(eval(spec, 0.0));
  const double ed = std::abs(eval(spec, spec.dk) - spec.dk);
  const double e1 = std::abs(eval(spec, 1.0) - 1.0);
  const double e = std::max({e0, ed, e1});
  return std::isfinite(e) ? e : std::numeric_limits<double>::infinity();
}

std::span<const OrderRequirement> order_requirements() {
  static const std::array<OrderRequirement, 14> rows = {{
      {2, 0, 3, -1, -1},
      {2, 1, 1, -2, -2},
      {3, 0, 5, -1, -1},
      {3, 1, 3, 5, 2},
      {3, 2, 2, 2, -2},
      {4, 0, 7, -1, -1},
      {4, 1, 5, 7, 2},
      {4, 2, 4, 6, 3},
      {4, 3, 3, 3, -2},
      {5, 0, 9, 9, -1},
      {5, 1, 7, 9, 2},
      {5, 2, 6, 9, 2},
      {5, 3, 5, 7, 4},
      {5, 4, 4, 4, -2},
  }};
  return rows;
}

}  // namespace wenomap
