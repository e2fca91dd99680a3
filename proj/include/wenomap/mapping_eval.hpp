#pragma once

// Scalar-generic branch formulas for every mapping family. Instantiated with
// double on the solver path and with Taylor-mode autodiff types by the
// derivative checker. Coefficients derived from dk are formed in the root
// real type so that high-precision instantiations keep the structural
// cancellations exact.

#include <type_traits>

#include "wenomap/mappings.hpp"

namespace wenomap::detail {

template <class T, class = void>
struct real_of {
  using type = T;
};
template <class T>
struct real_of<T, std::void_t<typename T::root_type>> {
  using type = typename T::root_type;
};
template <class T>
using real_of_t = typename real_of<T>::type;

template <class T>
T ipow(const T& x, int k) {
  T result = T(1);
  T base = x;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

inline double falling_ratio_coeff(int n, int m, int i) {
  // a_i = prod_{j=0}^{m-1-i} (n+j) / (m-i)!, a_m = 1
  if (i == m) return 1.0;
  double num = 1.0;
  for (int j = 0; j <= m - 1 - i; ++j) num *= static_cast<double>(n + j);
  double fact = 1.0;
  for (int j = 2; j <= m - i; ++j) fact *= static_cast<double>(j);
  return num / fact;
}

template <class T>
T gm_eval(double dk_, const T& w) {
  using R = real_of_t<T>;
  const R dk(dk_);
  return w * (w * w - R(3) * dk * w + (dk + R(1)) * dk) / ((R(1) - R(2) * dk) * w + dk * dk);
}

template <class T>
T pm_eval(double dk_, int n, Side side, const T& w) {
  using R = real_of_t<T>;
  const R dk(dk_);
  const T u = w - dk;
  if (side == Side::Left) {
    const R sign((n % 2 == 0) ? 1 : -1);
    const R coef = sign * R(n + 1) / ipow(dk, n + 1);
    return dk + coef * ipow(u, n + 1) * (w + dk / R(n + 1));
  }
  const R coef = R(n + 1) / ipow(R(1) - dk, n + 1);
  return dk - coef * ipow(u, n + 1) * (w + (dk - R(n + 2)) / R(n + 1));
}

template <class T>
T ppm_eval(double dk_, int n, int m, Side side, const T& w) {
  using R = real_of_t<T>;
  const R dk(dk_);
  const T u = w - dk;
  if (side == Side::Left) {
    T sum = T(0);
    for (int i = 0; i <= m; ++i) sum = sum + R(falling_ratio_coeff(n, m, i)) * ipow(dk, i) * ipow(w, m - i);
    const R sign((n % 2 == 0) ? 1 : -1);
    return dk + sign / ipow(dk, n + m) * ipow(u, n + 1) * sum;
  }
  const R d1 = R(1) - dk;
  const T v = R(1) - w;
  T sum = T(0);
  for (int i = 0; i <= m; ++i) sum = sum + R(falling_ratio_coeff(n, m, i)) * ipow(d1, i) * ipow(v, m - i);
  return dk + R(1) / ipow(d1, n + m) * ipow(u, n + 1) * sum;
}

template <class T>
T im_denominator(double dk_, int n, double A_, const T& w) {
  using R = real_of_t<T>;
  const R dk(dk_), A(A_);
  return A * ipow(T(w - dk), n) + w * (R(1) - w);
}

template <class T>
T im_eval(double dk_, int n, double A_, const T& w) {
  using R = real_of_t<T>;
  const R dk(dk_), A(A_);
  return dk + A * ipow(T(w - dk), n + 1) / im_denominator(dk_, n, A_, w);
}

template <class T>
T rm_denominator(const MappingSpec& s, const T& w) {
  using R = real_of_t<T>;
  if constexpr (std::is_same_v<T, double>) {
    T den = T(0);
    for (int i = s.m + 1; i >= 0; --i) den = den * w + s.rm_a[i];
    return den;
  } else {
    // Re-derive the coefficients in the working precision.
    const R dk(s.dk);
    R a[10];
    R sum(0);
    R binom(1);
    for (int i = 0; i <= s.m; ++i) {
      if (i > 0) binom = binom * R(s.n + 2 - i) / R(i);
      a[i] = -binom * ipow(R(-dk), s.n + 1 - i) / dk;
      sum += a[i];
    }
    a[s.m + 1] = ipow(R(R(1) - dk), s.n) - sum;
    T den = T(0);
    for (int i = s.m + 1; i >= 0; --i) den = den * w + a[i];
    return den;
  }
}

template <class T>
T rm_eval(const MappingSpec& s, const T& w) {
  using R = real_of_t<T>;
  const R dk(s.dk);
  return dk + ipow(T(w - dk), s.n + 1) / rm_denominator(s, w);
}

template <class T>
T aim_denominator(double dk_, int n, int m, double scale, const T& w) {
  using R = real_of_t<T>;
  const R dk(dk_);
  return ipow(T(w - dk), n) + R(scale) * ipow(T(w * (R(1) - w)), m + 1);
}

template <class T>
T aim_eval(double dk_, int n, int m, double scale, const T& w) {
  using R = real_of_t<T>;
  const R dk(dk_);
  return dk + ipow(T(w - dk), n + 1) / aim_denominator(dk_, n, m, scale, w);
}

template <class T>
T r_right_denominator(const MappingSpec& s, double c2, const T& w) {
  using R = real_of_t<T>;
  const R dk(s.dk);
  const R d1 = R(1) - dk;
  const T v = R(1) - w;
  // c1, c3, c4 as functions of dk (see r_coefficients), formed in R.
  R c1(0), c3(0), c4(0);
  int n1 = 0;
  if (s.m == 0) {
    c3 = R(1);
  } else if (s.m == 1) {
    n1 = 1;
    c1 = (s.n == 1) ? R(1) : R(s.n) * ipow(d1, s.n - 1);
    c3 = R(-(s.n - 1));
  } else if (s.n == 4 && s.m == 2) {
    n1 = 2;
    c1 = R(2) * d1 * d1;
    c3 = R(-1);
    c4 = R(4) * d1 * d1;
  } else {
    n1 = s.n;
    c1 = R(1);
  }
  T den = R(c2) * ipow(v, s.m + 1) + c3 * ipow(d1, s.n);
  if (s.m > 0) den = den + c1 * ipow(T(w - dk), n1);
  if (s.m == 2 && s.n == 4) den = den + c4 * ipow(v, s.m);
  return den;
}

template <class T>
T r_right_eval(const MappingSpec& s, double c2, const T& w) {
  using R = real_of_t<T>;
  const R dk(s.dk);
  return dk + ipow(T(w - dk), s.n + 1) / r_right_denominator(s, c2, w);
}

template <class T>
T r_left_argument(const MappingSpec& s, const T& w) {
  using R = real_of_t<T>;
  const R dk(s.dk);
  return R(1) - (R(1) - dk) / dk * w;
}

template <class T>
T r_eval(const MappingSpec& s, Side side, const T& w) {
  using R = real_of_t<T>;
  if (side == Side::Right) return r_right_eval(s, s.c2_right, w);
  const R dk(s.dk);
  return dk / (R(1) - dk) * (R(1) - r_right_eval(s, s.c2_left, r_left_argument(s, w)));
}

template <class T>
T prm_denominator(const MappingSpec& s, Side side, const T& w) {
  using R = real_of_t<T>;
  const R dk(s.dk);
  const T u = w - dk;
  if (side == Side::Right) {
    const PrmBranch& b = s.right;
    const T v = R(1) - w;
    T den = ipow(u, s.n) + R(b.c1) * ipow(v, s.m + 1);
    if (b.c2 != 0.0) den = den + R(b.c2) * ipow(u, s.n1) * ipow(v, b.m1);
    return den;
  }
  const PrmBranch& b = s.left;
  const R sign_n((s.n % 2 == 0) ? 1 : -1);
  const R sign_n1n(((s.n1 + s.n) % 2 == 0) ? 1 : -1);
  T den = ipow(u, s.n) + sign_n * R(b.c1) * ipow(w, s.m + 1);
  if (b.c2 != 0.0) den = den + sign_n1n * R(b.c2) * ipow(u, s.n1) * ipow(w, b.m1);
  return den;
}

template <class T>
T prm_eval(const MappingSpec& s, Side side, const T& w) {
  using R = real_of_t<T>;
  const R dk(s.dk);
  return dk + ipow(T(w - dk), s.n + 1) / prm_denominator(s, side, w);
}

/// Branch formula for any family. Non-piecewise families ignore `side`.
template <class T>
T eval_branch(const MappingSpec& s, Side side, const T& w, double aim_s) {
  switch (s.family) {
    case Family::Identity:
      return w;
    case Family::GM:
      return gm_eval(s.dk, w);
    case Family::PM:
      return pm_eval(s.dk, s.n, side, w);
    case Family::PPM:
      return ppm_eval(s.dk, s.n, s.m, side, w);
    case Family::IM:
      return im_eval(s.dk, s.n, s.A, w);
    case Family::RM:
      return rm_eval(s, w);
    case Family::AIM:
      if (aim_s == 0.0) return w;
      return aim_eval(s.dk, s.n, s.m, aim_s, w);
    case Family::R:
      return r_eval(s, side, w);
    case Family::PRM:
      return prm_eval(s, side, w);
  }
  return w;
}

inline double default_aim_scale(const MappingSpec& s) {
  return s.adaptive ? kAimProfileScale : s.s;
}

}  // namespace wenomap::detail
