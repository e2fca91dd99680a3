#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace wenomap {

inline constexpr int kMinOrder = 2;
inline constexpr int kMaxOrder = 5;
inline constexpr int kMaxWindow = 2 * kMaxOrder - 1;

/// Exact integer ratio used to transcribe the coefficient tables.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Coefficients of the r-stencil WENO-JS reconstruction.
///
/// Sub-stencil k covers window entries k .. k+r-1 of a (2r-1)-point window
/// centred on cell j, i.e. f_{j-r+k+l+1} for l = 0..r-1.
///
///   q_k   = sum_l a[k][l] f_{k+l}
///   IS_k  = sum_m c[m] (sum_l b[k][m][l] f_{k+l})^2,   m = 0..r-2
///
/// The exact rational transcription is kept alongside the binary values so
/// consistency checks can be done in integer arithmetic.
struct StencilTables {
  int r = 0;
  std::array<std::array<double, kMaxOrder>, kMaxOrder> a{};
  std::array<double, kMaxOrder> d{};
  std::array<std::array<std::array<double, kMaxOrder>, kMaxOrder - 1>, kMaxOrder> b{};
  std::array<double, kMaxOrder - 1> c{};

  std::array<std::array<Ratio, kMaxOrder>, kMaxOrder> a_exact{};
  std::array<Ratio, kMaxOrder> d_exact{};
  std::array<Ratio, kMaxOrder - 1> c_exact{};

  int window_size() const { return 2 * r - 1; }
  int indicator_terms() const { return r - 1; }
};

/// Returns the immutable tables for r in {2,3,4,5}; throws ConfigError otherwise.
/// Tables are validated on first load (row sums, positivity).
const StencilTables& load_tables(int r);

/// Optimal (2r-1)-point linear coefficients e_l = sum_k d_k a[k][l-k].
std::array<double, kMaxWindow> linear_scheme_coefficients(const StencilTables& t);

}  // namespace wenomap
