#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "test_util.hpp"
#include "wenomap/errors.hpp"
#include "wenomap/mappings.hpp"
#include "wenomap/strategy.hpp"
#include "wenomap/suites.hpp"

using namespace wenomap;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

std::vector<double> all_linear_weights() {
  std::vector<double> out;
  for (int r = kMinOrder; r <= kMaxOrder; ++r) {
    const StencilTables& t = load_tables(r);
    for (int k = 0; k < r; ++k) out.push_back(t.d[k]);
  }
  return out;
}

double gm_oracle(double dk, double w) {
  const big d = dk, x = w;
  const big v = x * (x * x - 3 * d * x + (d + 1) * d) / ((1 - 2 * d) * x + d * d);
  return static_cast<double>(v);
}

// Both branches of the n1 = 1 piecewise rational mapping, written out.
double prm16(double dk, int n, int m, const PrmBranch& L, const PrmBranch& R, double w) {
  const big d = dk, x = w, u = x - d;
  big den;
  if (w < dk) {
    const big sgn1 = (n % 2 == 0) ? 1 : -1;  // (-1)^n
    den = pow(u, n) - sgn1 * big(L.c2) * u * pow(x, L.m1) + sgn1 * big(L.c1) * pow(x, m + 1);
  } else {
    den = pow(u, n) + big(R.c2) * u * pow(1 - x, R.m1) + big(R.c1) * pow(1 - x, m + 1);
  }
  return static_cast<double>(d + pow(u, n + 1) / den);
}

// Left branch obtained by mirroring with the right-branch coefficients.
double prm14_left(double dk, int n, int m, int n1, const PrmBranch& R, double w) {
  const big d = dk, x = w, u = x - d, q = (1 - d) / d;
  const big s2 = ((n1 + n) % 2 == 0) ? 1 : -1;
  const big s1 = (n % 2 == 0) ? 1 : -1;
  const big den = pow(u, n) + s2 * pow(q, n1 + R.m1 - n) * big(R.c2) * pow(u, n1) * pow(x, R.m1) +
                  s1 * pow(q, m - n + 1) * big(R.c1) * pow(x, m + 1);
  return static_cast<double>(d + pow(u, n + 1) / den);
}

std::vector<MappingSpec> production_specs() {
  std::vector<MappingSpec> out;
  for (int r = 2; r <= 4; ++r)
    for (const MappingSpec& s : table6_specs(r)) out.push_back(s);
  for (double dk : all_linear_weights()) {
    out.push_back(make_gm(dk));
    out.push_back(make_pm(dk, 6));
    out.push_back(make_im(dk, 2, 0.1));
    out.push_back(make_rm(dk, 6, 2));
    for (int n = 1; n <= 6; ++n)
      for (int m = 0; m <= 3; ++m) out.push_back(make_ppm(dk, n, m));
  }
  for (auto v : {Table7Variant::R322, Table7Variant::MimicPM, Table7Variant::MimicRM})
    for (const MappingSpec& s : table7_specs(v)) out.push_back(s);
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

TEST_SUITE("mappings") {
  TEST_CASE("fixed points for every family and linear weight") {
    for (double dk : all_linear_weights()) {
      std::vector<MappingSpec> specs = {make_identity(dk), make_gm(dk),         make_pm(dk, 6),
                                        make_ppm(dk, 2, 2), make_im(dk, 2, 0.1), make_rm(dk, 6, 2),
                                        make_aim(dk, 4, 2, 1e4), make_r(dk, 2, 2, 3.0, 3.0)};
      for (const MappingSpec& s : specs) {
        INFO(family_name(s.family) << " dk=" << dk);
        CHECK(fixed_point_error(s) <= 1e-12);
        CHECK(eval(s, dk) == doctest::Approx(dk).epsilon(1e-14));
      }
    }
    for (int r = 2; r <= 4; ++r)
      for (const MappingSpec& s : table6_specs(r)) CHECK(fixed_point_error(s) <= 1e-12);
  }

  TEST_CASE("g_M against a high-precision closed form") {
    const MappingSpec gm = make_gm(0.1);
    CHECK(eval(gm, 0.1) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(eval(gm, 0.0) == 0.0);
    CHECK(eval(gm, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval(make_gm(0.3), 0.5) == doctest::Approx(gm_oracle(0.3, 0.5)).epsilon(1e-14));
  }

  TEST_CASE("production PRM against an independent evaluation") {
    const PrmBranch L{1.0, 6e5, 6}, R{1.0, 6e7, 6};
    const MappingSpec s = make_prm(0.6, 2, 2, 1, L, R);
    CHECK(eval(s, 0.3) == doctest::Approx(prm16(0.6, 2, 2, L, R, 0.3)).epsilon(1e-14));
    for (int r = 2; r <= 4; ++r) {
      for (const MappingSpec& p : table6_specs(r)) {
        for (int i = 0; i <= 200; ++i) {
          const double w = i / 200.0;
          CHECK(testutil::rel_diff(eval(p, w), prm16(p.dk, p.n, p.m, p.left, p.right, w)) <= 1e-13);
        }
      }
    }
  }

  TEST_CASE("left_from_right") {
    const double dk = 0.3;
    auto id = left_from_right([](double w) { return w; }, dk);
    for (double w : {0.0, 0.05, 0.2, 0.3}) CHECK(id(w) == doctest::Approx(w).epsilon(1e-15));

    const MappingSpec rm = make_r_from_b(dk, 2, 0, 1.0 - 2.0 * dk);
    auto gl = left_from_right([&](double w) { return eval_side(rm, Side::Right, w); }, dk);
    CHECK(std::abs(gl(0.0)) <= 1e-15);
    CHECK(gl(dk) == doctest::Approx(dk).epsilon(1e-15));
    // The mirror is increasing and flat at dk, like the right branch.
    double prev = gl(0.0);
    for (int i = 1; i < 200; ++i) {
      const double w = dk * i / 199.0;
      CHECK(gl(w) >= prev);
      prev = gl(w);
    }
    CHECK(std::abs(gl(dk - 1e-4) - dk) <= 1e-6);
  }

  TEST_CASE("aim scale") {
    const std::array<double, 3> eq = {2.0, 2.0, 2.0};
    CHECK(aim_scale(eq, 0.5, 1e4, 0.01) == doctest::Approx(1e4 / 0.5).epsilon(1e-12));
    const std::array<double, 3> z = {0.0, 1.0, 1.0};
    CHECK(aim_scale(z, 0.5, 1e4, 0.01) == 0.0);
    const std::array<double, 3> is = {1.0, 2.0, 4.0};
    const double dk = 18.0 / 35.0;
    const double expect = 1e4 / dk * (1.0 / (4.0 + std::pow(0.01, 7)));
    CHECK(aim_scale(is, dk, 1e4, 0.01) == doctest::Approx(expect).epsilon(1e-14));
    const std::array<double, 3> other = {1.0, 1.0, 10.0};
    CHECK(aim_scale(is, dk, 1e4, 0.01, std::span<const double>(other)) ==
          doctest::Approx(1e4 / dk * 0.1).epsilon(1e-12));
  }

  TEST_CASE("map_weights") {
    const StencilTables& t = load_tables(3);
    const auto specs = table6_specs(3);
    NonlinearWeights d = linear_weights(t);
    NonlinearWeights m = map_weights(d, specs);
    for (int k = 0; k < 3; ++k) CHECK(m.omega[k] == doctest::Approx(t.d[k]).epsilon(1e-14));

    std::vector<MappingSpec> ids;
    for (int k = 0; k < 3; ++k) ids.push_back(make_identity(t.d[k]));
    NonlinearWeights w;
    w.r = 3;
    w.omega = {0.2, 0.5, 0.3};
    m = map_weights(w, ids);
    for (int k = 0; k < 3; ++k) CHECK(m.omega[k] == doctest::Approx(w.omega[k]).epsilon(1e-15));

    // JS weights of IS = (1,0,0), eps = 1e-40, then the production mapping.
    const double eps = 1e-40;
    big a[3] = {big(0.1) / ((big(eps) + 1) * (big(eps) + 1)), big(0.6) / (big(eps) * eps),
                big(0.3) / (big(eps) * eps)};
    const big sum = a[0] + a[1] + a[2];
    double js[3], g[3];
    big gs = 0;
    for (int k = 0; k < 3; ++k) {
      js[k] = static_cast<double>(a[k] / sum);
      g[k] = prm16(specs[k].dk, 2, 2, specs[k].left, specs[k].right, js[k]);
      gs += g[k];
    }
    w.omega = {js[0], js[1], js[2]};
    m = map_weights(w, specs);
    for (int k = 0; k < 3; ++k) CHECK(testutil::rel_diff(m.omega[k], static_cast<double>(g[k] / gs)) <= 1e-13);
  }

  TEST_CASE("check_cnm on identity, PPM and production PRM") {
    const CnmReport id = check_cnm(make_identity(0.3), 1, 1);
    CHECK_FALSE(id.satisfied);
    CHECK(id.endpoint_slope_0 == doctest::Approx(1.0));
    CHECK(id.endpoint_slope_1 == doctest::Approx(1.0));
    for (auto [n, m] : {std::pair{2, 1}, std::pair{6, 1}, std::pair{4, 3}}) {
      for (double dk : {0.1, 0.6, 0.3}) {
        const CnmReport r = check_cnm(make_ppm(dk, n, m), n, m);
        INFO("PPM n=" << n << " m=" << m << " dk=" << dk << ": " << r.message);
        CHECK(r.satisfied);
        CHECK(r.endpoint_slope_0 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.endpoint_slope_1 == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
    for (const MappingSpec& s : table6_specs(3)) {
      const CnmReport r = check_cnm(s, 2, 2);
      INFO(r.message);
      CHECK(r.satisfied);
    }
  }

  TEST_CASE("singularity freedom") {
    for (int r = 2; r <= 4; ++r)
      for (const MappingSpec& s : table6_specs(r)) CHECK(check_singularity_free(s));
    for (auto [n, m] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{2, 1}, std::pair{3, 0}}) {
      for (double c : {0.5, 2.0, 10.0}) {
        if (!r_c2_admissible(0.3, n, m, c)) continue;
        CHECK(check_singularity_free(make_r(0.3, n, m, c, c)));
      }
    }
    CHECK_FALSE(check_singularity_free(make_rm(0.6, 6, 1)));
    CHECK(check_singularity_free(make_rm(0.6, 6, 2)));
    for (const MappingSpec& s : table7_specs(Table7Variant::MimicPM)) CHECK(check_singularity_free(s));
  }

  TEST_CASE("invalid parameters throw at construction") {
    CHECK_THROWS_AS(make_prm(0.6, 2, 2, 1, PrmBranch{-1.0, 10.0, 6}, PrmBranch{1.0, 10.0, 6}), DomainError);
    CHECK_THROWS_AS(make_prm(0.6, 2, 2, 1, PrmBranch{1.0, 10.0, 6}, PrmBranch{1.0, -10.0, 6}), DomainError);
    CHECK_THROWS_AS(make_gm(0.0), DomainError);
    CHECK_THROWS_AS(make_gm(1.0), DomainError);
    CHECK_THROWS_AS(make_r_from_b(0.3, 2, 2, 1.0), DomainError);  // b inside (0, 1/dk) for even n = m
    CHECK_THROWS_AS(table6_specs(5), ConfigError);
    // Rounding drift outside [0,1] is clamped.
    const MappingSpec s = table6_specs(3)[1];
    CHECK(eval(s, -1e-17) == 0.0);
    CHECK(eval(s, 1.0 + 1e-16) == doctest::Approx(1.0));
  }

  TEST_CASE("tabulated presets") {
    const auto r2 = table6_specs(2);
    CHECK(r2[0].dk == doctest::Approx(1.0 / 3));
    CHECK(r2[0].left.c1 == 1.0);
    CHECK(r2[0].left.c2 == 7e7);
    CHECK(r2[0].left.m1 == 5);
    const auto r4 = table6_specs(4);
    CHECK(r4[3].dk == doctest::Approx(4.0 / 35));
    CHECK(r4[3].right.c1 == 1.0);
    CHECK(r4[3].right.c2 == 5e2);
    CHECK(r4[3].right.m1 == 4);
    const auto r3 = table6_specs(3);
    CHECK(r3[1].n == 2);
    CHECK(r3[1].m == 2);
    CHECK(r3[1].n1 == 1);

    const auto r322 = table7_specs(Table7Variant::R322);
    REQUIRE(r322.size() == 3);
    CHECK(r322[0].family == Family::R);
    CHECK(r322[0].c2_left * (1 - r322[0].dk) / r322[0].dk == doctest::Approx(30090.0).epsilon(1e-14));
    const auto mrm = table7_specs(Table7Variant::MimicRM);
    REQUIRE(mrm.size() == 1);
    CHECK(mrm[0].left.c1 == 1.0);
    CHECK(mrm[0].left.c2 == 7500.0);
    CHECK(mrm[0].left.m1 == 5);
    const auto mpm = table7_specs(Table7Variant::MimicPM);
    CHECK(mpm[0].left.c1 == 26.0);
    CHECK(mpm[0].left.c2 == 13.0);
    CHECK(mpm[0].left.m1 == 2);
  }

  TEST_CASE("preset fidelity against the embedded tables") {
    // Rows: "r k side c1 c2 m1" with the linear weight as a fraction.
    const char* table6 = R"(2 1/3 L 1 70000000 5
2 1/3 R 1 3000000 5
2 2/3 L 1 100000 4
2 2/3 R 1 3000000 4
3 1/10 L 1 1000000000 5
3 1/10 R 1 50000 6
3 6/10 L 1 600000 6
3 6/10 R 1 60000000 6
3 3/10 L 1 300000000 6
3 3/10 R 1 200000 6
4 1/35 L 1 1e+11 5
4 1/35 R 1 500 5
4 12/35 L 1 30000 5
4 12/35 R 1 3000 4
4 18/35 L 1 10000 5
4 18/35 R 1 20000 4
4 4/35 L 1 50000000 5
4 4/35 R 1 500 4
)";
    const char* table9 = R"(2 1/3 2/3
3 1/10 6/10 3/10
4 1/35 12/35 18/35 4/35
5 1/126 20/126 60/126 40/126 5/126
)";
    std::string got6, got9;
    for (int r = 2; r <= 4; ++r) {
      const StencilTables& t = load_tables(r);
      const auto specs = table6_specs(r);
      for (int k = 0; k < r; ++k) {
        const std::int64_t den = r == 3 ? 10 : r == 4 ? 35 : 3;
        const std::string frac = std::to_string(den * t.d_exact[k].num / t.d_exact[k].den) + "/" + std::to_string(den);
        for (auto [side, b] : {std::pair{"L", specs[k].left}, std::pair{"R", specs[k].right}}) {
          got6 += std::to_string(r) + " " + frac + " " + side + " " + fmt(b.c1) + " " + fmt(b.c2) + " " +
                  std::to_string(b.m1) + "\n";
        }
      }
    }
    for (int r = 2; r <= 5; ++r) {
      const StencilTables& t = load_tables(r);
      got9 += std::to_string(r);
      for (int k = 0; k < r; ++k) {
        // Printed with the common denominator of the table row.
        const std::int64_t den = r == 3 ? 10 : r == 4 ? 35 : r == 5 ? 126 : 3;
        CHECK(t.d_exact[k].den != 0);
        CHECK((den * t.d_exact[k].num) % t.d_exact[k].den == 0);
        got9 += " " + std::to_string(den * t.d_exact[k].num / t.d_exact[k].den) + "/" + std::to_string(den);
      }
      got9 += "\n";
    }
    CHECK(got6 == table6);
    CHECK(got9 == table9);

    const char* table7 = R"(R322 1/10 L 30090 R 676.6666
R322 6/10 L 1235.679 R 8335
R322 3/10 L 12970.7047 R 929.2592
MIMIC_PM 6/10 L 26 13 2 R 40 20 2
MIMIC_RM 6/10 L 1 7500 5 R 1000 10000 2
)";
    std::string got7;
    const char* fr[3] = {"1/10", "6/10", "3/10"};
    const auto r322 = table7_specs(Table7Variant::R322);
    for (int k = 0; k < 3; ++k) {
      const double dk = r322[k].dk;
      got7 += std::string("R322 ") + fr[k] + " L " + fmt(r322[k].c2_left * (1 - dk) / dk) + " R " +
              fmt(r322[k].c2_right) + "\n";
    }
    for (auto [name, v] : {std::pair{"MIMIC_PM", Table7Variant::MimicPM}, std::pair{"MIMIC_RM", Table7Variant::MimicRM}}) {
      const MappingSpec s = table7_specs(v).front();
      got7 += std::string(name) + " 6/10 L " + fmt(s.left.c1) + " " + fmt(s.left.c2) + " " + std::to_string(s.left.m1) +
              " R " + fmt(s.right.c1) + " " + fmt(s.right.c2) + " " + std::to_string(s.right.m1) + "\n";
    }
    CHECK(got7 == table7);
  }

  TEST_CASE("order requirement table") {
    const char* expected = R"(2 0 3 - -
2 1 1 N/A N/A
3 0 5 - -
3 1 3 5 >=2
3 2 2 2 N/A
4 0 7 - -
4 1 5 7 >=2
4 2 4 6 >=3
4 3 3 3 N/A
5 0 9 9 -
5 1 7 9 >=2
5 2 6 9 >=2
5 3 5 7 >=4
5 4 4 4 N/A
)";
    auto cell = [](int v, bool ge) -> std::string {
      if (v == -1) return "-";
      if (v == -2) return "N/A";
      return (ge ? ">=" : "") + std::to_string(v);
    };
    std::string got;
    for (const OrderRequirement& o : order_requirements()) {
      got += std::to_string(o.r) + " " + std::to_string(o.ncp) + " " + std::to_string(o.rc_js) + " " +
             cell(o.rc_mapped, false) + " " + cell(o.rcg_min, true) + "\n";
    }
    CHECK(got == expected);
  }

  TEST_CASE("monotone production specs and argmax preservation") {
    for (const MappingSpec& s : production_specs()) {
      INFO(family_name(s.family) << " dk=" << s.dk << " n=" << s.n << " m=" << s.m);
      CHECK(check_monotone(s, 10001));
    }
    // Each g_k keeps the order of its own argument.
    int swapped = 0;
    for (const MappingSpec& s : table6_specs(3)) {
      for (int trial = 0; trial < 10000; ++trial) {
        const double a = testutil::uniform(0.0, 1.0), b = testutil::uniform(0.0, 1.0);
        if ((a < b) && eval(s, a) > eval(s, b)) ++swapped;
      }
    }
    CHECK(swapped == 0);
    // With one shared mapping, the largest weight stays the largest.
    for (const MappingSpec& shared : {table6_specs(3)[1], make_gm(0.3), make_pm(0.3, 6)}) {
      const std::vector<MappingSpec> specs(3, shared);
      int moved = 0;
      for (int trial = 0; trial < 10000; ++trial) {
        NonlinearWeights w;
        w.r = 3;
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += (w.omega[k] = testutil::uniform(0.0, 1.0));
        for (int k = 0; k < 3; ++k) w.omega[k] /= s;
        const NonlinearWeights m = map_weights(w, specs);
        int a = 0, b = 0;
        for (int k = 1; k < 3; ++k) {
          if (w.omega[k] > w.omega[a]) a = k;
          if (m.omega[k] > m.omega[b]) b = k;
        }
        // Flat regions may tie two mapped weights; only a strict reversal counts.
        if (a != b && m.omega[b] > m.omega[a]) ++moved;
      }
      CHECK(moved == 0);
    }
  }

  TEST_CASE("PPM satisfies its condition for n <= 6, m <= 3") {
    for (int n = 1; n <= 6; ++n) {
      for (int m = 0; m <= 3; ++m) {
        for (double dk : {0.1, 0.6, 0.3}) {
          const CnmReport r = check_cnm(make_ppm(dk, n, m), n, m);
          INFO("PPM n=" << n << " m=" << m << " dk=" << dk << ": " << r.message);
          CHECK(r.satisfied);
        }
      }
    }
  }

  TEST_CASE("PRM endpoint order follows min(m, m1-1)") {
    for (int trial = 0; trial < 12; ++trial) {
      const int n = 1 + static_cast<int>(testutil::uniform(0, 4));
      const int m = static_cast<int>(testutil::uniform(0, n + 1));
      const double dk = testutil::uniform(0.05, 0.9);
      const PrmBranch L{testutil::uniform(0.5, 20), std::pow(10.0, testutil::uniform(0, 6)),
                        1 + static_cast<int>(testutil::uniform(0, 6))};
      const PrmBranch R{testutil::uniform(0.5, 20), std::pow(10.0, testutil::uniform(0, 6)),
                        1 + static_cast<int>(testutil::uniform(0, 6))};
      const MappingSpec s = make_prm(dk, n, m, 1, L, R);
      const CnmReport rep = check_cnm(s, n, std::min(m, L.m1 - 1), std::min(m, R.m1 - 1));
      INFO("n=" << n << " m=" << m << " m1L=" << L.m1 << " m1R=" << R.m1 << ": " << rep.message);
      CHECK(rep.satisfied);
      CHECK(check_singularity_free(s));
    }
  }

  TEST_CASE("mirrored right branch equals the closed-form left branch") {
    for (int r = 2; r <= 4; ++r) {
      for (const MappingSpec& p : table6_specs(r)) {
        const MappingSpec same = make_prm(p.dk, p.n, p.m, 1, prm_left_absorbed(p.dk, p.n, p.m, 1, p.right), p.right);
        auto gl = left_from_right([&](double w) { return eval_side(same, Side::Right, w); }, p.dk);
        for (int i = 0; i < 100; ++i) {
          const double w = p.dk * i / 99.0;
          CHECK(std::abs(gl(w) - prm14_left(p.dk, p.n, p.m, 1, p.right, w)) <= 1e-12);
          CHECK(std::abs(eval_side(same, Side::Left, w) - prm14_left(p.dk, p.n, p.m, 1, p.right, w)) <= 1e-12);
        }
      }
    }
  }

  TEST_CASE("g_M is a member of the IM and R families") {
    for (double dk : all_linear_weights()) {
      const MappingSpec gm = make_gm(dk), im = make_im(dk, 2, 1.0), rr = make_r_from_b(dk, 2, 0, 1.0 - 2.0 * dk);
      double e_im = 0.0, e_r = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const double w = i / 999.0;
        e_im = std::max(e_im, std::abs(eval(gm, w) - eval(im, w)));
        const double x = dk + (1.0 - dk) * i / 999.0;
        e_r = std::max(e_r, std::abs(eval(gm, x) - eval_side(rr, Side::Right, x)));
      }
      CHECK(e_im <= 1e-12);
      CHECK(e_r <= 1e-12);
    }
  }

  TEST_CASE("R family derivative closed forms") {
    for (int n = 1; n <= 4; ++n) {
      for (int m = 0; m <= n; ++m) {
        for (double dk : {0.1, 0.3, 0.6}) {
          for (double c : {0.7, 1.5, 4.0, 12.0}) {
            if (!r_c2_admissible(dk, n, m, c)) continue;
            const MappingSpec s = make_r(dk, n, m, c, c);
            const CnmReport rep = check_cnm(s, n, m);
            INFO("R n=" << n << " m=" << m << " dk=" << dk << " c=" << c << ": " << rep.message);
            CHECK(rep.satisfied);
            CHECK(check_singularity_free(s));
            const RDerivativeTargets t = r_derivative_targets(dk, n, m, c);
            REQUIRE(rep.right_at_dk.derivatives.size() > static_cast<std::size_t>(n));
            REQUIRE(rep.at_1.derivatives.size() > static_cast<std::size_t>(m));
            CHECK(testutil::rel_diff(rep.right_at_dk.derivatives[n], t.at_dk) <= 1e-9);
            CHECK(testutil::rel_diff(rep.at_1.derivatives[m], t.at_1) <= 1e-9);
          }
        }
      }
    }
  }

  TEST_CASE("R_{4,2} third derivative at 1 uses 24 d, not the printed 12 d") {
    const double dk = 0.3, d1 = 1.0 - dk, c = 1.5;
    const CnmReport rep = check_cnm(make_r(dk, 4, 2, c, c), 4, 2);
    const double g3 = rep.at_1.derivatives[2];
    CHECK(testutil::rel_diff(g3, (6 * c + 24 * d1) / std::pow(d1, 3)) <= 1e-9);
    CHECK(testutil::rel_diff(g3, (6 * c + 12 * d1) / std::pow(d1, 3)) > 1e-2);
  }

  TEST_CASE("reconstructor PRM weights match the generic evaluator") {
    for (int r = 2; r <= 4; ++r) {
      const StencilTables& t = load_tables(r);
      const Reconstructor rc(preset_strategy(r, "prm"), 0.01);
      const auto specs = table6_specs(r);
      for (int trial = 0; trial < 2000; ++trial) {
        const auto f = testutil::random_vector(t.window_size(), -1.0, 1.0);
        const StencilValues is = smoothness_indicators(f, t);
        const NonlinearWeights expect =
            map_weights(js_weights(std::span(is.data(), r), std::span(t.d.data(), r), 1e-40), specs);
        const NonlinearWeights got = rc.weights(f);
        for (int k = 0; k < r; ++k) CHECK(std::abs(got.omega[k] - expect.omega[k]) <= 1e-13);
      }
    }
  }
}
