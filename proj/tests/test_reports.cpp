#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "entangle/infotheory.hpp"
#include "entangle/reports.hpp"

using namespace entangle;

namespace {

constexpr double pi = std::numbers::pi;

SweepSpec full_turn(std::vector<SpinMagnitude> spins = {SpinMagnitude(1)}) {
  return {0.0, 2 * pi, 361, std::move(spins)};
}

const std::vector<SpinMagnitude> figure_spins{SpinMagnitude(1), SpinMagnitude(2), SpinMagnitude(4),
                                              SpinMagnitude(10)};

bool has_nan(const nlohmann::ordered_json& j) {
  if (j.is_number_float()) return !std::isfinite(j.get<double>());
  if (j.is_structured())
    for (const auto& v : j)
      if (has_nan(v)) return true;
  return false;
}

}  // namespace

TEST_CASE("sweep spec") {
  const SweepSpec s{0.0, 1.0, 5, {}};
  CHECK(s.at(0) == 0.0);
  CHECK(s.at(2) == 0.5);
  CHECK(s.at(4) == 1.0);
  CHECK_THROWS_AS(SweepSpec({0.0, 1.0, 1, {}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SweepSpec({1.0, 1.0, 5, {}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(fig_bc_epr(SweepSpec{0.0, 1.0, 5, {}}), std::invalid_argument);
}

TEST_CASE("number formatting and CSV") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3) == "0.333333333");
  CHECK(format_number(1e-20) == "1e-20");
  Table t{{"x", "y"}, {{1.0, 2.5}, {0.0, -1.0}}};
  CHECK(to_csv(t) == "x,y\n1,2.5\n0,-1\n");
  t.rows.push_back({1.0});
  CHECK_THROWS(to_csv(t));
  CHECK(to_json(Table{{"x"}, {{1.0}}})[0]["x"] == 1.0);
}

TEST_CASE("EPR conditional figures") {
  const auto fig1 = fig_epr_conditionals(full_turn(figure_spins), ConditionalColumn::p1_given_0);
  const auto fig2 = fig_epr_conditionals(full_turn(figure_spins), ConditionalColumn::p0_given_1);
  CHECK(fig1.header == std::vector<std::string>{"alpha", "p1_given_0(s=1/2)", "p1_given_0(s=1)", "p1_given_0(s=2)",
                                                "p1_given_0(s=5)"});
  REQUIRE(fig1.rows.size() == 361);
  CHECK(fig1.rows[180][0] == doctest::Approx(pi));
  CHECK(std::abs(fig1.rows[180][1]) < 1e-12);
  for (std::size_t c = 1; c <= 4; ++c) CHECK(fig2.rows[0][c] == 1.0);
  // P(1|0) falls and P(0|1) rises with s away from alpha = pi
  for (int k : {30, 60, 90, 120}) {
    for (std::size_t c = 2; c <= 4; ++c) {
      CHECK(fig1.rows[k][c] < fig1.rows[k][c - 1]);
      CHECK(fig2.rows[k][c] > fig2.rows[k][c - 1]);
    }
  }
}

TEST_CASE("EPR entropy figures") {
  const auto half = fig_epr_entropies(full_turn());
  CHECK(half.header == std::vector<std::string>{"alpha", "H_a_given_b", "H_a", "H_joint"});
  const auto& quarter = half.rows[90];
  CHECK(std::abs(quarter[1] - 1.0) < 1e-12);
  CHECK(std::abs(quarter[2] - 1.0) < 1e-12);
  CHECK(std::abs(quarter[3] - 2.0) < 1e-12);
  const auto& zero = half.rows[0];
  CHECK(zero[1] == 0.0);
  CHECK(std::abs(zero[2] - 1.0) < 1e-12);
  CHECK(std::abs(zero[3] - 1.0) < 1e-12);
  for (const auto& t : {half, fig_epr_entropies(full_turn({SpinMagnitude(4)}))})
    for (const auto& r : t.rows) {
      REQUIRE(r[1] <= r[2] + 1e-12);
      REQUIRE(r[2] <= r[3] + 1e-12);
    }
}

TEST_CASE("BC figures") {
  SweepSpec spec{0.0, pi, 181, figure_spins};
  const auto bc = fig_bc_epr(spec);
  CHECK(std::abs(bc.rows[0][1]) < 1e-15);
  // larger spins: every term collapses to H(0) > 0, leaving -2 H(0)
  for (std::size_t c = 2; c <= 4; ++c)
    CHECK(std::abs(bc.rows[0][c] + 2 * epr_conditional_entropy(figure_spins[c - 1], RelativeAngle(0.0))) < 1e-12);
  CHECK(std::abs(bc.rows[15][1] - 0.22748208354135229) < 1e-9);  // 15 degrees
  // width of the positive region shrinks with s
  std::vector<int> positive(5, 0);
  for (const auto& r : bc.rows)
    for (std::size_t c = 1; c <= 4; ++c)
      if (r[c] > 1e-12) ++positive[c];
  for (std::size_t c = 2; c <= 4; ++c) CHECK(positive[c] < positive[c - 1]);

  const auto ghz = fig_ghz_entropy(full_turn());
  CHECK(std::abs(ghz.rows[90][1] - 3.0) < 1e-12);
  CHECK(std::abs(ghz.rows.front()[1] - ghz.rows.back()[1]) < 1e-12);

  const auto bc8 = fig_bc_ghz(full_turn());
  CHECK(bc8.header == std::vector<std::string>{"phi3", "bc_reduced", "bc_general"});
  CHECK(std::abs(bc8.rows[45][1] - 1.0) < 1e-9);
  CHECK(std::abs(bc8.rows[45][2]) < 1e-12);
  for (std::size_t c = 1; c <= 2; ++c) CHECK(std::abs(bc8.rows.front()[c] - bc8.rows.back()[c]) < 1e-12);
  for (const auto& r : bc8.rows) REQUIRE(r[2] <= 1e-12);
}

TEST_CASE("figures are byte-stable and fast") {
  auto render_all = [] {
    std::string all;
    all += to_csv(fig_epr_conditionals(full_turn(figure_spins), ConditionalColumn::p1_given_0));
    all += to_csv(fig_epr_conditionals(full_turn(figure_spins), ConditionalColumn::p0_given_1));
    all += to_csv(fig_epr_entropies(full_turn()));
    all += to_csv(fig_epr_entropies(full_turn({SpinMagnitude(4)})));
    all += to_csv(fig_bc_epr(full_turn(figure_spins)));
    all += to_csv(fig_ghz_entropy(full_turn()));
    all += to_csv(fig_bc_ghz(full_turn()));
    return all;
  };
  const auto t0 = std::chrono::steady_clock::now();
  const std::string first = render_all();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(seconds < 10.0);
  CHECK(render_all() == first);
  CHECK(first.find("nan") == std::string::npos);
  CHECK(first.find('\r') == std::string::npos);
}

TEST_CASE("probes") {
  const auto epr = probe_epr(SpinMagnitude(2), pi / 2);
  CHECK(std::abs(epr["joint"]["p11"].get<double>() - 1.0 / 12) < 1e-12);
  CHECK(epr["inequalities"].size() == 4);
  for (const auto& rep : epr["inequalities"]) {
    CHECK(rep.contains("name"));
    CHECK(rep.contains("margin"));
    CHECK(rep["bounds"].contains("lower"));
  }
  for (double alpha : {0.0, pi, 2 * pi}) CHECK_FALSE(has_nan(probe_epr(SpinMagnitude(1), alpha)));
  CHECK_FALSE(has_nan(probe_epr(SpinMagnitude(100), 0.0)));

  const auto ghz = probe_ghz(AngleTriple<double>{0.0, 0.0, pi}, false);
  CHECK(std::abs(ghz["transmission"].get<double>() - 0.25) < 1e-12);
  CHECK(std::abs(ghz["joint"]["p111"].get<double>() - 0.25) < 1e-12);
  CHECK(ghz["inequalities"][4]["name"] == "bell_ghz_corrected");
  CHECK(probe_ghz(AngleTriple<double>{0.0, 0.0, pi}, true)["inequalities"][4]["name"] == "bell_ghz_literal");
  CHECK_FALSE(has_nan(probe_ghz(AngleTriple<double>{0.0, 0.0, 0.0}, false)));
}

TEST_CASE("oracle verification") {
  VerifyOptions quick;
  quick.max_twice_spin = 4;
  quick.step_deg = 15;
  quick.ghz_step_deg = 30;
  const auto ok = verify_oracle(quick);
  CHECK(ok.passed);
  CHECK(ok.max_deviation < 1e-10);
  CHECK(ok.comparisons == 4 * 24 * 4 + 12 * 12 * 12 * 8);

  VerifyOptions broken = quick;
  broken.include_ghz = false;
  broken.epr_closed_form = [](SpinMagnitude s, double alpha) {
    auto j = epr_joint(s, RelativeAngle(alpha));
    if (s.twice() == 3 && std::abs(alpha - pi / 2) < 1e-9) {
      j.p(1, 1) += 1e-6;
      j.p(0, 0) -= 1e-6;
    }
    return j;
  };
  const auto bad = verify_oracle(broken);
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_deviation == doctest::Approx(1e-6).epsilon(1e-3));
  CHECK(bad.worst_case.find("s=3/2") != std::string::npos);
  CHECK(bad.worst_case.find("alpha=1.57079633") != std::string::npos);
  CHECK(bad.to_json()["passed"] == false);

  VerifyOptions ghz_broken = quick;
  ghz_broken.max_twice_spin = 1;
  ghz_broken.ghz_closed_form = [](const AngleTriple<double>& t) {
    auto d = ghz_full_distribution(t);
    d.p(7) += 1e-8;
    return d;
  };
  const auto gbad = verify_oracle(ghz_broken);
  CHECK_FALSE(gbad.passed);
  CHECK(gbad.worst_case.find("outcome=111") != std::string::npos);

  VerifyOptions too_big;
  too_big.max_twice_spin = 51;
  CHECK_THROWS_AS(verify_oracle(too_big), std::invalid_argument);
}

TEST_CASE("sampling runs") {
  SampleRequest req;
  req.spin = SpinMagnitude(1);
  req.alpha = pi;
  req.n = 1000;
  req.seed = 42;
  std::ostringstream a, b;
  const auto summary = run_sample(req, a);
  run_sample(req, b);
  CHECK(a.str() == b.str());
  std::istringstream rows(a.str());
  std::string line;
  std::getline(rows, line);
  CHECK(line == "index,lambda_a,lambda_b");
  int count = 0;
  while (std::getline(rows, line)) {
    ++count;
    REQUIRE((line.ends_with(",0,0") || line.ends_with(",1,1")));
  }
  CHECK(count == 1000);
  CHECK(summary["std_error"].size() == 4);
  CHECK(summary["delta_sigma"].size() == 4);

  req.seed = 43;
  std::ostringstream c;
  run_sample(req, c);
  CHECK(c.str() != a.str());

  req.kind = SampleKind::lhv;
  req.alpha = 1.0;
  std::ostringstream l;
  const auto lhv = run_sample(req, l);
  CHECK(lhv["expected_single_rate"] == 0.5);

  req.kind = SampleKind::ghz;
  req.angles = {0.1, 0.2, 0.3};
  std::ostringstream g;
  const auto ghz = run_sample(req, g);
  CHECK(ghz["counts"].size() == 8);

  req.n = 11;
  req.max_samples = 10;
  std::ostringstream over;
  CHECK_THROWS_AS(run_sample(req, over), std::invalid_argument);
}
