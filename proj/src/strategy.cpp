#include "wenomap/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wenomap/alt_weights.hpp"
#include "wenomap/errors.hpp"
#include "wenomap/mapping_eval.hpp"

namespace wenomap {

std::string base_name(BaseScheme b) {
  switch (b) {
    case BaseScheme::JS: return "JS";
    case BaseScheme::Linear: return "linear";
    case BaseScheme::Z5: return "Z5";
    case BaseScheme::P3: return "P3";
    case BaseScheme::F3: return "F3";
    case BaseScheme::NIS5: return "NIS5";
  }
  return "?";
}

BaseScheme base_from_name(const std::string& name) {
  for (BaseScheme b : {BaseScheme::JS, BaseScheme::Linear, BaseScheme::Z5, BaseScheme::P3, BaseScheme::F3,
                       BaseScheme::NIS5}) {
    if (base_name(b) == name) return b;
  }
  throw ConfigError("unknown weighting base '" + name + "' (expected JS, linear, Z5, P3, F3 or NIS5)");
}

double WeightingStrategy::resolved_eps() const {
  if (eps) return *eps;
  if (base == BaseScheme::JS && !mapped()) return kEpsUnmapped;
  return kEpsMapped;
}

int WeightingStrategy::window_size() const { return is_upgrade3 ? 5 : 2 * r - 1; }

void validate(const WeightingStrategy& s) {
  if (s.r < kMinOrder || s.r > kMaxOrder) throw ConfigError("scheme.r must be in 2..5");
  if (s.eps && !(*s.eps > 0.0)) throw ConfigError("scheme.eps must be positive");
  if (s.mapped()) {
    if (s.base != BaseScheme::JS) throw ConfigError("scheme.mapping requires base JS");
    if (static_cast<int>(s.mapping.size()) != s.r) throw ConfigError("scheme.mapping needs one spec per sub-stencil");
    const StencilTables& t = load_tables(s.r);
    for (int k = 0; k < s.r; ++k) {
      if (std::abs(s.mapping[k].dk - t.d[k]) > 1e-15) {
        throw ConfigError("scheme.mapping[" + std::to_string(k) + "].dk does not match the linear weight");
      }
    }
  }
  if (s.is_upgrade3) {
    if (s.r != 2) throw ConfigError("scheme.is_upgrade3 requires r = 2");
    if (s.base != BaseScheme::JS && s.base != BaseScheme::Linear) throw ConfigError("scheme.is_upgrade3 requires base JS");
  }
  if ((s.base == BaseScheme::Z5 || s.base == BaseScheme::NIS5) && s.r != 3) {
    throw ConfigError("scheme.base " + base_name(s.base) + " requires r = 3");
  }
  if ((s.base == BaseScheme::P3 || s.base == BaseScheme::F3) && s.r != 2) {
    throw ConfigError("scheme.base " + base_name(s.base) + " requires r = 2");
  }
  if (s.base == BaseScheme::Z5 && s.q != 1 && s.q != 2) throw ConfigError("scheme.q must be 1 or 2");
  if (s.aim_grouped) {
    bool any_aim = false;
    for (const auto& m : s.mapping) any_aim = any_aim || (m.family == Family::AIM && m.adaptive);
    if (!any_aim) throw ConfigError("scheme.aim_grouped requires an adaptive AIM mapping");
  }
}

std::string scheme_label(const WeightingStrategy& s, const std::string& mapping_name) {
  std::string out = "WENO" + std::to_string(2 * s.r - 1) + "-";
  if (s.mapped()) {
    out += mapping_name.empty() ? family_name(s.mapping[0].family) : mapping_name;
    if (s.aim_grouped) out += "-M";
  } else if (s.base == BaseScheme::Z5) {
    out += "Z(q=" + std::to_string(s.q) + ")";
  } else {
    out += base_name(s.base);
  }
  if (s.is_upgrade3) out += "+IS3";
  return out;
}

namespace {
constexpr int kMaxPower = 8;
}  // namespace

Reconstructor::Reconstructor(WeightingStrategy s, double dx) : s_(std::move(s)), dx_(dx) {
  validate(s_);
  if (!(dx > 0.0)) throw ConfigError("grid spacing must be positive");
  t_ = &load_tables(s_.r);
  eps_ = s_.resolved_eps();
  lambda_p3_ = std::pow(dx, 1.0 / 6.0);
  eps_aim_ = std::pow(dx, 7);
  window_ = s_.window_size();
  ghost_ = s_.ghost_cells();
  for (int k = 0; k < static_cast<int>(s_.mapping.size()); ++k) {
    specs_[k] = s_.mapping[k];
    adaptive_ = adaptive_ || (specs_[k].family == Family::AIM && specs_[k].adaptive);
  }
  all_prm_ = s_.mapped();
  for (int k = 0; k < static_cast<int>(s_.mapping.size()); ++k) {
    const MappingSpec& m = specs_[k];
    if (m.family != Family::PRM) {
      all_prm_ = false;
      continue;
    }
    if (std::max({m.n, m.m + 1, m.n1, m.left.m1, m.right.m1}) > kMaxPower) {
      all_prm_ = false;
      continue;
    }
    PrmFast& f = prm_[k];
    f.dk = m.dk;
    f.n = m.n;
    f.mp1 = m.m + 1;
    f.n1 = m.n1;
    f.c1[0] = (m.n % 2 == 0 ? 1.0 : -1.0) * m.left.c1;
    f.c2[0] = ((m.n1 + m.n) % 2 == 0 ? 1.0 : -1.0) * m.left.c2;
    f.m1[0] = m.left.m1;
    f.c1[1] = m.right.c1;
    f.c2[1] = m.right.c2;
    f.m1[1] = m.right.m1;
  }
}

// Per-window kernels. W is the window length; for R = 2 with W = 5 the
// candidate window is the centred 3-point sub-window and the indicators are
// the outer WENO5 indicators.
template <int R, int W, BaseScheme B>
struct KernelAccess {
  static constexpr int kOff = (W - (2 * R - 1)) / 2;

  static void base(const Reconstructor& rc, const double* f, double* is, double* omega) {
    const StencilTables& t = *rc.t_;
    if constexpr (W == 5 && R == 2) {
      double is3[3];
      detail::indicators_r<3>(f, load_tables(3), is3);
      is[0] = is3[0];
      is[1] = is3[2];
    } else if constexpr (B == BaseScheme::NIS5) {
      detail::indicators_r<R>(f, t, is);
      detail::nis_correct(f, is);
      if (rc.s_.nis_clamp)
        for (int k = 0; k < R; ++k) is[k] = std::max(is[k], 0.0);
    } else if constexpr (B != BaseScheme::Linear) {
      detail::indicators_r<R>(f + kOff, t, is);
    }
    if constexpr (B == BaseScheme::Linear) {
      for (int k = 0; k < R; ++k) omega[k] = t.d[k];
      if constexpr (!(W == 5 && R == 2)) {
        for (int k = 0; k < R; ++k) is[k] = 0.0;
      }
      return;
    } else if constexpr (B == BaseScheme::JS || B == BaseScheme::NIS5) {
      detail::js_alpha_r<R>(is, t, rc.eps_, omega);
    } else if constexpr (B == BaseScheme::Z5) {
      detail::z5_alpha(is, t.d.data(), rc.s_.q, rc.eps_, omega);
    } else if constexpr (B == BaseScheme::P3) {
      detail::p3_alpha(is, f, t.d.data(), rc.lambda_p3_, rc.eps_, omega);
    } else if constexpr (B == BaseScheme::F3) {
      detail::f3_alpha(is, f, t.d.data(), rc.eps_, omega);
    }
    detail::normalize_r<R>(omega);
  }

  static double lambda(const Reconstructor& rc, const double* is) {
    double mn = is[0], mx = is[0];
    for (int k = 1; k < R; ++k) {
      mn = std::min(mn, is[k]);
      mx = std::max(mx, is[k]);
    }
    return mn / (mx + rc.eps_aim_);
  }

  static void map(const Reconstructor& rc, double lam, double* omega) {
    double sum = 0.0;
    if (rc.all_prm_) {
      for (int k = 0; k < R; ++k) {
        const Reconstructor::PrmFast& p = rc.prm_[k];
        const double w = omega[k];
        const double u = w - p.dk;
        const int side = w >= p.dk ? 1 : 0;
        const double z = side ? 1.0 - w : w;
        double pu[kMaxPower + 1], pz[kMaxPower + 1];
        pu[0] = pz[0] = 1.0;
        for (int j = 1; j <= kMaxPower; ++j) {
          pu[j] = pu[j - 1] * u;
          pz[j] = pz[j - 1] * z;
        }
        const double den = pu[p.n] + p.c1[side] * pz[p.mp1] + p.c2[side] * pu[p.n1] * pz[p.m1[side]];
        const double g = p.dk + pu[p.n] * u / den;
        omega[k] = g;
        sum += g;
      }
      const double inv = 1.0 / sum;
      for (int k = 0; k < R; ++k) omega[k] *= inv;
      return;
    }
    for (int k = 0; k < R; ++k) {
      const MappingSpec& spec = rc.specs_[k];
      double g;
      if (spec.family == Family::AIM && spec.adaptive) {
        g = eval_scaled(spec, omega[k], spec.aim_c / spec.dk * lam);
      } else {
        g = eval(spec, omega[k]);
      }
      omega[k] = g;
      sum += g;
    }
    const double inv = 1.0 / sum;
    for (int k = 0; k < R; ++k) omega[k] *= inv;
  }

  static double combine(const Reconstructor& rc, const double* f, const double* omega) {
    double q[R];
    detail::candidates_r<R>(f + kOff, *rc.t_, q);
    double v = 0.0;
    for (int k = 0; k < R; ++k) v += omega[k] * q[k];
    return v;
  }

  static void run(const Reconstructor& rc, const double* plus, const double* minus, std::size_t n, double* out) {
    constexpr int h = (W - 1) / 2;
    const int g = rc.ghost_;
    const bool mapped = rc.s_.mapped();
    const bool grouped = rc.s_.aim_grouped && plus && minus;
    double mirror[W]{};
    double isp[R], ism[R], wp[R], wm[R];
    for (std::size_t i = 0; i <= n; ++i) {
      // Interface x_{i-1/2}: plus window centred on cell i-1, minus window
      // centred on cell i and read in reverse.
      const double* fp = plus ? plus + (static_cast<std::ptrdiff_t>(i) + g - 1 - h) : nullptr;
      if (minus) {
        const double* c = minus + (static_cast<std::ptrdiff_t>(i) + g + h);
        for (int l = 0; l < W; ++l) mirror[l] = c[-l];
      }
      if (fp) base(rc, fp, isp, wp);
      if (minus) base(rc, mirror, ism, wm);
      if (mapped) {
        double lp = 0.0, lm = 0.0;
        if (rc.adaptive_) {
          if (fp) lp = lambda(rc, isp);
          if (minus) lm = lambda(rc, ism);
          if (grouped) lp = lm = std::min(lp, lm);
        }
        if (fp) map(rc, lp, wp);
        if (minus) map(rc, lm, wm);
      }
      double v = 0.0;
      if (fp) v += combine(rc, fp, wp);
      if (minus) v += combine(rc, mirror, wm);
      out[i] = v;
    }
  }

  static NonlinearWeights weights(const Reconstructor& rc, const double* f) {
    double is[R], w[R];
    base(rc, f, is, w);
    if (rc.s_.mapped()) map(rc, rc.adaptive_ ? lambda(rc, is) : 0.0, w);
    NonlinearWeights out;
    out.r = R;
    for (int k = 0; k < R; ++k) out.omega[k] = w[k];
    return out;
  }
};

namespace {

template <template <int, int, BaseScheme> class K, class F>
auto dispatch(const WeightingStrategy& s, F&& f) {
  const bool up = s.is_upgrade3;
  switch (s.r) {
    case 2:
      switch (s.base) {
        case BaseScheme::P3: return f(K<2, 3, BaseScheme::P3>{});
        case BaseScheme::F3: return f(K<2, 3, BaseScheme::F3>{});
        case BaseScheme::Linear: return up ? f(K<2, 5, BaseScheme::Linear>{}) : f(K<2, 3, BaseScheme::Linear>{});
        default: return up ? f(K<2, 5, BaseScheme::JS>{}) : f(K<2, 3, BaseScheme::JS>{});
      }
    case 3:
      switch (s.base) {
        case BaseScheme::Z5: return f(K<3, 5, BaseScheme::Z5>{});
        case BaseScheme::NIS5: return f(K<3, 5, BaseScheme::NIS5>{});
        case BaseScheme::Linear: return f(K<3, 5, BaseScheme::Linear>{});
        default: return f(K<3, 5, BaseScheme::JS>{});
      }
    case 4:
      return s.base == BaseScheme::Linear ? f(K<4, 7, BaseScheme::Linear>{}) : f(K<4, 7, BaseScheme::JS>{});
    default:
      return s.base == BaseScheme::Linear ? f(K<5, 9, BaseScheme::Linear>{}) : f(K<5, 9, BaseScheme::JS>{});
  }
}

}  // namespace

void Reconstructor::interfaces(const double* plus, const double* minus, std::size_t n, double* out) const {
  dispatch<KernelAccess>(s_, [&](auto k) { decltype(k)::run(*this, plus, minus, n, out); });
}

NonlinearWeights Reconstructor::weights(std::span<const double> window) const {
  if (static_cast<int>(window.size()) != window_) throw std::invalid_argument("window length does not match scheme");
  return dispatch<KernelAccess>(s_, [&](auto k) { return decltype(k)::weights(*this, window.data()); });
}

double Reconstructor::reconstruct(std::span<const double> window) const {
  const NonlinearWeights w = weights(window);
  return dispatch<KernelAccess>(s_, [&](auto k) { return decltype(k)::combine(*this, window.data(), w.omega.data()); });
}

}  // namespace wenomap
