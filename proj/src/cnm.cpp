#include <boost/math/differentiation/autodiff.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "wenomap/mapping_eval.hpp"
#include "wenomap/mappings.hpp"

namespace wenomap {
namespace {

using Real50 = boost::multiprecision::cpp_bin_float_50;
constexpr std::size_t kOrder = 9;
constexpr double kVanishRel = 1e-25;
constexpr double kFixedPointTol = 1e-12;

// Taylor-mode derivatives g^(1..kOrder) of one branch at x0, evaluated in
// 50-digit arithmetic.
std::vector<Real50> derivatives(const MappingSpec& s, Side side, double x0) {
  namespace ad = boost::math::differentiation;
  const auto x = ad::make_fvar<Real50, kOrder>(Real50(x0));
  const auto y = detail::eval_branch(s, side, x, detail::default_aim_scale(s));
  std::vector<Real50> out;
  for (std::size_t i = 1; i <= kOrder; ++i) out.push_back(y.derivative(i));
  return out;
}

struct Classified {
  DerivativeOrder report;
  std::vector<bool> zero;  // zero[i] for derivative order i (index 0 unused)
  double tol = 0.0;
};

Classified classify(const std::vector<Real50>& d, int upto, int first) {
  Classified c;
  Real50 scale = 1;
  for (int i = 1; i <= std::min<int>(upto, static_cast<int>(d.size())); ++i) scale = std::max(scale, abs(d[i - 1]));
  const Real50 tol = Real50(kVanishRel) * scale;
  c.tol = static_cast<double>(tol);
  c.zero.assign(d.size() + 1, false);
  for (std::size_t i = 1; i <= d.size(); ++i) {
    const double v = static_cast<double>(d[i - 1]);
    c.report.derivatives.push_back(v);
    if (!std::isfinite(v)) c.report.finite = false;
    c.zero[i] = abs(d[i - 1]) <= tol;
  }
  int count = 0;
  for (std::size_t i = static_cast<std::size_t>(first); i < c.zero.size() && c.zero[i]; ++i) ++count;
  c.report.vanishing = count;
  return c;
}

bool is_one(double v, double tol) { return std::abs(v - 1.0) <= std::max(tol, 1e-30); }

// Conditions at dk: g^(i) = 0 for 1 <= i <= n, g^(n+1) != 0.
bool dk_condition(const Classified& c, int n) {
  for (int i = 1; i <= n; ++i)
    if (!c.zero[i]) return false;
  return !c.zero[n + 1];
}

// Conditions at an endpoint with order m.
bool endpoint_condition(const Classified& c, int m) {
  if (m == 0) return !c.zero[1];
  const double g1 = c.report.derivatives[0];
  if (!(c.zero[1] || is_one(g1, c.tol))) return false;
  for (int i = 2; i <= m; ++i)
    if (!c.zero[i]) return false;
  return !c.zero[m + 1];
}

}  // namespace

CnmReport check_cnm(const MappingSpec& spec, int n, int m, std::optional<int> k_opt) {
  CnmReport rep;
  const int k = k_opt.value_or(m);
  rep.n = n;
  rep.m = m;
  rep.k = k;
  std::ostringstream msg;
  if (n < 0 || m < 0 || k < 0 || n + 1 > static_cast<int>(kOrder) || m + 1 > static_cast<int>(kOrder) ||
      k + 1 > static_cast<int>(kOrder)) {
    rep.differentiation_ok = false;
    rep.message = "requested orders exceed the differentiation budget";
    return rep;
  }

  rep.err_at_0 = std::abs(eval(spec, 0.0));
  rep.err_at_dk = std::abs(eval(spec, spec.dk) - spec.dk);
  rep.err_at_1 = std::abs(eval(spec, 1.0) - 1.0);
  rep.fixed_points_ok = rep.err_at_0 <= kFixedPointTol && rep.err_at_dk <= kFixedPointTol &&
                        rep.err_at_1 <= kFixedPointTol;
  if (!rep.fixed_points_ok) msg << "fixed point violated; ";

  const Side left = Side::Left, right = Side::Right;
  const Classified l_dk = classify(derivatives(spec, left, spec.dk), n + 1, 1);
  const Classified r_dk = classify(derivatives(spec, right, spec.dk), n + 1, 1);
  const Classified at0 = classify(derivatives(spec, left, 0.0), m + 1, 2);
  const Classified at1 = classify(derivatives(spec, right, 1.0), k + 1, 2);
  rep.left_at_dk = l_dk.report;
  rep.right_at_dk = r_dk.report;
  rep.at_0 = at0.report;
  rep.at_1 = at1.report;
  rep.differentiation_ok = l_dk.report.finite && r_dk.report.finite && at0.report.finite && at1.report.finite;
  if (!rep.differentiation_ok) msg << "non-finite derivative; ";

  rep.endpoint_slope_0 = at0.report.derivatives[0];
  rep.endpoint_slope_1 = at1.report.derivatives[0];

  rep.dk_ok = dk_condition(l_dk, n) && dk_condition(r_dk, n);
  if (!rep.dk_ok) {
    msg << "derivatives at dk: left vanishes to order " << l_dk.report.vanishing << ", right to order "
        << r_dk.report.vanishing << " (need exactly " << n << "); ";
  }
  rep.zero_ok = endpoint_condition(at0, m);
  if (!rep.zero_ok) msg << "endpoint 0 fails order " << m << " (slope " << rep.endpoint_slope_0 << "); ";
  rep.one_ok = endpoint_condition(at1, k);
  if (!rep.one_ok) msg << "endpoint 1 fails order " << k << " (slope " << rep.endpoint_slope_1 << "); ";

  rep.monotone = check_monotone(spec);
  rep.satisfied = rep.fixed_points_ok && rep.differentiation_ok && rep.dk_ok && rep.zero_ok && rep.one_ok;
  rep.message = rep.satisfied ? "ok" : msg.str();
  return rep;
}

}  // namespace wenomap
