#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "test_util.hpp"
#include "wenomap/harness.hpp"
#include "wenomap/suites.hpp"

using namespace wenomap;

namespace {

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

const char* kHeader = "problem,scheme,N,L1,Linf,order_L1,order_Linf,oscillation,blow_up_step,wall_ms\n";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("oscillation metric examples") {
    std::vector<double> ref(20, 0.0);
    for (std::size_t i = 10; i < 20; ++i) ref[i] = 1.0;
    CHECK(oscillation_metric(ref, ref) == 0.0);

    std::vector<double> over = ref;
    over[10] = 1.05;
    CHECK(oscillation_metric(over, ref) >= 0.05);
    over[10] = 1.1;
    CHECK(oscillation_metric(over, ref) == doctest::Approx(0.2));

    std::vector<double> dip = ref;
    dip[12] = 0.9;
    CHECK(oscillation_metric(dip, ref) == doctest::Approx(0.1));

    // A monotone smeared square wave is dissipation, not oscillation.
    std::vector<double> sq(40, 0.0), smear(40, 0.0);
    for (std::size_t i = 10; i < 30; ++i) sq[i] = 1.0;
    for (std::size_t i = 0; i < 40; ++i) {
      const double x = static_cast<double>(i);
      smear[i] = 0.5 * (std::tanh((x - 9.5) / 1.5) - std::tanh((x - 29.5) / 1.5));
    }
    CHECK(oscillation_metric(smear, sq) == doctest::Approx(0.0).scale(1.0));
    CHECK(oscillation_metric(smear, sq, false) == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS(oscillation_metric(std::vector<double>(3), std::vector<double>(4)));
  }

  TEST_CASE("error norms agree with a naive recomputation") {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 10 + static_cast<std::size_t>(testutil::uniform(0, 500));
      const auto u = testutil::random_vector(n, -2.0, 2.0), r = testutil::random_vector(n, -2.0, 2.0);
      const double dx = testutil::uniform(1e-4, 0.1);
      long double l1 = 0.0L, linf = 0.0L;
      for (std::size_t i = 0; i < n; ++i) {
        const long double d = std::fabs(static_cast<long double>(u[i]) - r[i]);
        l1 += d;
        linf = std::max(linf, d);
      }
      const Norms nm = error_norms(u, r, dx);
      CHECK(nm.l1 == doctest::Approx(static_cast<double>(l1 * dx)).epsilon(1e-14));
      CHECK(nm.linf == static_cast<double>(linf));
    }
  }

  TEST_CASE("result tables") {
    CHECK(format_results({}, OutputFormat::Csv) == kHeader);
    CHECK(format_results({}, OutputFormat::Json) == "[]\n");

    const CaseSpec c = default_case(make_problem(ProblemId::SWA1), js_strategy(2), "WENO3-JS");
    const ErrorReport rep = convergence_study(c, {20, 40, 80, 160, 320});
    REQUIRE(rep.rows.size() == 5);
    CHECK_FALSE(rep.rows[0].order_linf);
    CHECK(rep.rows[4].order_linf);
    const std::string csv = format_results({rep}, OutputFormat::Csv, true);
    CHECK(count_lines(csv) == 6);
    CHECK(csv.rfind(kHeader, 0) == 0);
    CHECK(csv == format_results({convergence_study(c, {20, 40, 80, 160, 320})}, OutputFormat::Csv, true));
    CHECK(csv.find("swa1,WENO3-JS,20,") != std::string::npos);
    // Deterministic rows end with an empty wall_ms field.
    CHECK(csv.find(",\n") != std::string::npos);

    const std::string path = "harness_test_results.csv";
    emit_results({rep}, OutputFormat::Csv, path, true);
    CHECK(read_file(path) == csv);
    std::remove(path.c_str());
    CHECK_THROWS(emit_results({rep}, OutputFormat::Csv, "/nonexistent-dir/x.csv"));
  }

  TEST_CASE("golden convergence table") {
    const CaseSpec c = default_case(make_problem(ProblemId::SWA1), js_strategy(3), "WENO5-JS");
    const std::string csv = format_results({convergence_study(c, {20, 40, 80})}, OutputFormat::Csv, true);
    CHECK(csv == read_file(WENOMAP_TEST_DATA_DIR "/golden_swa1_weno5_js.csv"));
  }

  TEST_CASE("linear scheme reaches the design order") {
    for (int r : {2, 3}) {
      const CaseSpec c = default_case(make_problem(ProblemId::SWA1), base_strategy(r, BaseScheme::Linear), "linear");
      const ErrorReport rep = convergence_study(c, {40, 80, 160});
      REQUIRE(rep.rows[2].order_linf);
      CHECK(*rep.rows[2].order_linf == doctest::Approx(2 * r - 1).epsilon(0.15 / (2 * r - 1)));
    }
  }

  TEST_CASE("run_case smoke runs") {
    WeightingStrategy up = preset_strategy(2, "prm");
    up.is_upgrade3 = true;
    CaseSpec swa = default_case(make_problem(ProblemId::SWA1), up, "WENO3-PRM+IS3");
    swa.n = 40;
    const CaseResult s = run_case(swa);
    CHECK(s.diag.completed);
    CHECK(s.state.t == 2.0);
    CHECK(s.diag.steps > 0);

    CaseSpec blast = default_case(make_problem(ProblemId::Blast), preset_strategy(3, "prm"), "WENO5-PRM");
    blast.n = 200;
    const CaseResult b = run_case(blast);
    CHECK(b.diag.completed);
    CHECK_FALSE(b.diag.blow_up);
    CHECK(b.diag.min_density > 0.0);
    CHECK(b.diag.min_pressure > 0.0);
  }

  TEST_CASE("blow-up is a recorded outcome") {
    // The unlimited linear scheme cannot keep the pressure positive at PR = 1e6.
    CaseSpec lin = default_case(make_problem(ProblemId::StrongShock), base_strategy(3, BaseScheme::Linear), "linear");
    const CaseResult a = run_case(lin);
    CHECK_FALSE(a.diag.completed);
    REQUIRE(a.diag.blow_up);
    const CaseResult b = run_case(lin);
    REQUIRE(b.diag.blow_up);
    CHECK(a.diag.blow_up->step == b.diag.blow_up->step);
    CHECK(a.diag.blow_up->cell == b.diag.blow_up->cell);
    CHECK(a.diag.blow_up->time == b.diag.blow_up->time);

    const ErrorReport rep = evaluate_case(lin);
    CHECK(rep.aborted);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].blow_up_step == a.diag.blow_up->step);
    CHECK(format_results({rep}, OutputFormat::Csv, true).find("," + std::to_string(a.diag.blow_up->step) + ",") !=
          std::string::npos);
  }

  TEST_CASE("blast wave with WENO5-Z q=1 gives the same outcome on repeat runs") {
    CaseSpec z = default_case(make_problem(ProblemId::Blast), z5_strategy(1), "WENO5-Z1");
    const CaseResult a = run_case(z), b = run_case(z);
    CHECK(a.diag.completed == b.diag.completed);
    CHECK(a.diag.steps == b.diag.steps);
    CHECK(a.state.u == b.state.u);
    MESSAGE("blast WENO5-Z1: " << std::string(a.diag.completed ? "completed" : "blew up"));
  }

  TEST_CASE("orders from consecutive rows") {
    ErrorReport r;
    r.rows.resize(2);
    r.rows[0].n = 20;
    r.rows[0].l1 = 1.0;
    r.rows[0].linf = 8.0;
    r.rows[1].n = 40;
    r.rows[1].l1 = 0.25;
    r.rows[1].linf = 1.0;
    fill_orders(r);
    CHECK(*r.rows[1].order_l1 == doctest::Approx(2.0));
    CHECK(*r.rows[1].order_linf == doctest::Approx(3.0));
    CHECK_FALSE(r.rows[0].order_l1);
  }

  TEST_CASE("parallel runs keep job order") {
    std::vector<std::function<ErrorReport()>> jobs;
    for (int i = 0; i < 8; ++i) {
      jobs.push_back([i] {
        std::this_thread::sleep_for(std::chrono::milliseconds(5 * (8 - i)));
        ErrorReport r;
        r.scheme = std::to_string(i);
        return r;
      });
    }
    for (int threads : {1, 3}) {
      const auto out = run_parallel(jobs, threads);
      REQUIRE(out.size() == 8);
      for (int i = 0; i < 8; ++i) CHECK(out[static_cast<std::size_t>(i)].scheme == std::to_string(i));
    }
  }
}
