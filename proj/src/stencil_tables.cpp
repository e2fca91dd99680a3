#include "wenomap/stencil_tables.hpp"

#include <numeric>
#include <string>
#include <vector>

#include "wenomap/errors.hpp"

namespace wenomap {
namespace {

struct RawTables {
  int r;
  std::int64_t a_den;
  std::vector<std::vector<std::int64_t>> a_num;
  std::int64_t d_den;
  std::vector<std::int64_t> d_num;
  // b[k][m][l]; all entries are integers.
  std::vector<std::vector<std::vector<std::int64_t>>> b;
  std::vector<Ratio> c;
};

// Jiang-Shu coefficients for r = 2..5, candidate / linear weight / indicator.
const std::array<RawTables, 4>& raw_tables() {
  static const std::array<RawTables, 4> tables = {{
      {2,
       2,
       {{-1, 3}, {1, 1}},
       3,
       {1, 2},
       {{{-1, 1}}, {{-1, 1}}},
       {{1, 1}}},
      {3,
       6,
       {{2, -7, 11}, {-1, 5, 2}, {2, 5, -1}},
       10,
       {1, 6, 3},
       {{{1, -4, 3}, {1, -2, 1}}, {{-1, 0, 1}, {1, -2, 1}}, {{3, -4, 1}, {1, -2, 1}}},
       {{1, 4}, {13, 12}}},
      {4,
       12,
       {{-3, 13, -23, 25}, {1, -5, 13, 3}, {-1, 7, 7, -1}, {3, 13, -5, 1}},
       35,
       {1, 12, 18, 4},
       {{{-2, 9, -18, 11}, {-1, 4, -5, 2}, {-1, 3, -3, 1}},
        {{1, -6, 3, 2}, {0, 1, -2, 1}, {-1, 3, -3, 1}},
        {{-2, -3, 6, -1}, {1, -2, 1, 0}, {-1, 3, -3, 1}},
        {{-11, 18, -9, 2}, {2, -5, 4, -1}, {-1, 3, -3, 1}}},
       {{1, 36}, {13, 12}, {781, 720}}},
      {5,
       60,
       {{12, -63, 137, -163, 137},
        {-3, 17, -43, 77, 12},
        {2, -13, 47, 27, -3},
        {-3, 27, 47, -13, 2},
        {12, 77, -43, 17, -3}},
       126,
       {1, 20, 60, 40, 5},
       {{{3, -16, 36, -48, 25}, {119, -606, 1234, -1126, 379}, {3, -14, 24, -18, 5}, {1, -4, 6, -4, 1}},
        {{1, -6, 18, -10, -3}, {11, -44, -64, 216, -119}, {1, -6, 12, -10, 3}, {1, -4, 6, -4, 1}},
        // Central first difference; the commonly printed "9" breaks sum_l b = 0.
        {{1, -8, 0, 8, -1}, {11, -174, 326, -174, 11}, {1, -2, 0, 2, -1}, {1, -4, 6, -4, 1}},
        {{3, 10, -18, 6, -1}, {119, -216, 64, 44, -11}, {3, -10, 12, -6, 1}, {1, -4, 6, -4, 1}},
        {{25, -48, 36, -16, 3}, {379, -1126, 1234, -606, 119}, {5, -18, 24, -14, 3}, {1, -4, 6, -4, 1}}},
       {{1, 144}, {13, 202800}, {781, 2880}, {1421461, 1310400}}},
  }};
  return tables;
}

void require(bool ok, int r, const std::string& what) {
  if (!ok) throw ConfigError("stencil table r=" + std::to_string(r) + ": " + what);
}

StencilTables build(const RawTables& raw) {
  StencilTables t;
  t.r = raw.r;
  const int r = raw.r;
  require(static_cast<int>(raw.a_num.size()) == r && static_cast<int>(raw.d_num.size()) == r &&
              static_cast<int>(raw.b.size()) == r && static_cast<int>(raw.c.size()) == r - 1,
          r, "wrong table shape");

  for (int k = 0; k < r; ++k) {
    std::int64_t row_sum = 0;
    for (int l = 0; l < r; ++l) {
      const std::int64_t num = raw.a_num[k][l];
      row_sum += num;
      const std::int64_t g = std::gcd(num, raw.a_den);
      t.a_exact[k][l] = Ratio{num / g, raw.a_den / g};
      t.a[k][l] = t.a_exact[k][l].value();
    }
    require(row_sum == raw.a_den, r, "candidate row " + std::to_string(k) + " does not sum to 1");
  }

  std::int64_t d_sum = 0;
  for (int k = 0; k < r; ++k) {
    require(raw.d_num[k] > 0, r, "linear weight must be positive");
    d_sum += raw.d_num[k];
    const std::int64_t g = std::gcd(raw.d_num[k], raw.d_den);
    t.d_exact[k] = Ratio{raw.d_num[k] / g, raw.d_den / g};
    t.d[k] = t.d_exact[k].value();
  }
  require(d_sum == raw.d_den, r, "linear weights do not sum to 1");

  for (int m = 0; m < r - 1; ++m) {
    require(raw.c[m].num > 0 && raw.c[m].den > 0, r, "indicator weight must be positive");
    t.c_exact[m] = raw.c[m];
    t.c[m] = raw.c[m].value();
  }

  for (int k = 0; k < r; ++k) {
    require(static_cast<int>(raw.b[k].size()) == r - 1, r, "indicator rows");
    for (int m = 0; m < r - 1; ++m) {
      std::int64_t sum = 0;
      for (int l = 0; l < r; ++l) {
        sum += raw.b[k][m][l];
        t.b[k][m][l] = static_cast<double>(raw.b[k][m][l]);
      }
      require(sum == 0, r, "indicator row k=" + std::to_string(k) + " m=" + std::to_string(m) +
                               " does not annihilate constants");
    }
  }
  return t;
}

const std::array<StencilTables, 4>& all_tables() {
  static const std::array<StencilTables, 4> tables = [] {
    std::array<StencilTables, 4> out;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = build(raw_tables()[i]);
    return out;
  }();
  return tables;
}

}  // namespace

const StencilTables& load_tables(int r) {
  if (r < kMinOrder || r > kMaxOrder) {
    throw ConfigError("unsupported stencil order r=" + std::to_string(r) + " (expected 2..5)");
  }
  return all_tables()[static_cast<std::size_t>(r - kMinOrder)];
}

std::array<double, kMaxWindow> linear_scheme_coefficients(const StencilTables& t) {
  std::array<double, kMaxWindow> e{};
  for (int k = 0; k < t.r; ++k)
    for (int l = 0; l < t.r; ++l) e[k + l] += t.d[k] * t.a[k][l];
  return e;
}

}  // namespace wenomap
