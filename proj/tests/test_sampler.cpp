#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "entangle/epr.hpp"
#include "entangle/sampler.hpp"

using namespace entangle;

namespace {

constexpr double pi = std::numbers::pi;

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// worst |freq - expected| / sigma over the four EPR cells, sigma from the
// expected probability
double worst_sigma(const EmpiricalEstimate& est, const JointDist2<double>& joint) {
  double worst = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double p = joint(a, b);
      const double f = est.freq[(a << 1) | b];
      const double sigma = std::sqrt(p * (1 - p) / est.n);
      if (sigma == 0.0) {
        if (f != p) return 1e300;
        continue;
      }
      worst = std::max(worst, std::abs(f - p) / sigma);
    }
  return worst;
}

}  // namespace

TEST_CASE("certainty cases") {
  // s = 1/2: equal outcomes at alpha = pi, opposite outcomes at alpha = 0
  const auto same = estimate(sample_epr(SpinMagnitude(1), pi, 100000, {1, 0}), 4);
  CHECK(same.counts[0b01] == 0);
  CHECK(same.counts[0b10] == 0);
  CHECK(same.counts[0b00] + same.counts[0b11] == 100000);

  const auto anti = estimate(sample_epr(SpinMagnitude(1), 0.0, 100000, {2, 0}), 4);
  CHECK(anti.counts[0b00] == 0);
  CHECK(anti.counts[0b11] == 0);
  CHECK(anti.counts[0b01] + anti.counts[0b10] == 100000);
}

TEST_CASE("EPR frequencies converge to the closed form") {
  const std::size_t n = 1'000'000;
  for (int twice = 1; twice <= 4; ++twice)
    for (int deg = 0; deg < 360; deg += 15) {
      const double alpha = deg * pi / 180;
      const auto joint = epr_joint(SpinMagnitude(twice), RelativeAngle(alpha));
      double dev = worst_sigma(estimate(sample_epr(SpinMagnitude(twice), alpha, n, {2024, 0}, workers()), 4), joint);
      if (dev > 4.0)  // one retry on an independent stream
        dev = worst_sigma(estimate(sample_epr(SpinMagnitude(twice), alpha, n, {2024, 1}, workers()), 4), joint);
      INFO("2s = " << twice << ", alpha = " << deg);
      REQUIRE(dev <= 4.0);
    }
}

TEST_CASE("streams do not depend on the worker count") {
  const std::size_t n = 3 * kSampleBlockSize + 123;
  const auto ref = sample_epr(SpinMagnitude(3), 1.1, n, {77, 5}, 1);
  CHECK(ref.size() == n);
  for (unsigned w : {2u, 3u, 8u}) CHECK(sample_epr(SpinMagnitude(3), 1.1, n, {77, 5}, w) == ref);
  CHECK(sample_epr(SpinMagnitude(3), 1.1, n, {77, 6}, 1) != ref);
  CHECK(sample_epr(SpinMagnitude(3), 1.1, n, {78, 5}, 1) != ref);
  // a shorter stream is a prefix of a longer one
  const auto shorter = sample_epr(SpinMagnitude(3), 1.1, 1000, {77, 5}, 4);
  CHECK(std::equal(shorter.begin(), shorter.end(), ref.begin()));

  const AngleTriple<double> t{0.2, 0.9, 1.3};
  const auto g = sample_ghz(t, n, {9, 0}, 1);
  for (unsigned w : {2u, 8u}) CHECK(sample_ghz(t, n, {9, 0}, w) == g);

  const auto model = LhvModel::for_spin(SpinMagnitude(2));
  const auto l = sample_lhv_epr(model, Direction::in_plane(0.0), Direction::in_plane(1.0), n, {4, 0}, 1);
  for (unsigned w : {2u, 8u})
    CHECK(sample_lhv_epr(model, Direction::in_plane(0.0), Direction::in_plane(1.0), n, {4, 0}, w) == l);
}

TEST_CASE("GHZ sampling") {
  const std::size_t n = 1'000'000;
  const AngleTriple<double> t{0.4, 1.0, 0.3};
  const auto est = estimate(sample_ghz(t, n, {31, 0}, workers()), 8);
  const auto full = ghz_full_distribution(t);
  for (int k = 0; k < 8; ++k) {
    const double p = full.p(k);
    REQUIRE(std::abs(est.freq[k] - p) <= 4 * std::sqrt(p * (1 - p) / n));
  }
  // pair (b, c) is uniform
  for (int bc = 0; bc < 4; ++bc) {
    const double f = est.freq[bc] + est.freq[4 + bc];
    CHECK(std::abs(f - 0.25) <= 4 * std::sqrt(0.25 * 0.75 / n));
  }
  // conditional recovery P(a = 1 | b, c)
  const auto cond = ghz_conditionals(t);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      const double given = double(est.counts[4 + 2 * j + k]) / double(est.counts[2 * j + k] + est.counts[4 + 2 * j + k]);
      CHECK(std::abs(given - cond(1, j, k)) < 0.005);
    }

  const auto uniform = estimate(sample_ghz(AngleTriple<double>{pi / 2, 0.0, 0.0}, n, {32, 0}, workers()), 8);
  for (int k = 0; k < 8; ++k) REQUIRE(std::abs(uniform.freq[k] - 0.125) <= 4 * std::sqrt(0.125 * 0.875 / n));

  const auto certain = estimate(sample_ghz(AngleTriple<double>{0.0, 0.0, 0.0}, 50000, {1, 0}), 8);
  for (int k = 0; k < 8; ++k)
    if (parity(k >> 2, (k >> 1) & 1, k & 1)) CHECK(certain.counts[k] == 0);
}

TEST_CASE("local hidden-variable model") {
  const std::size_t n = 400'000;
  for (int twice : {1, 2, 4}) {
    const auto model = LhvModel::for_spin(SpinMagnitude(twice));
    const Direction d(1.0, 2.0);
    const auto est = estimate(sample_lhv_epr(model, d, d, n, {5, 0}, workers()), 4);
    CHECK(est.counts[0b01] == 0);
    CHECK(est.counts[0b10] == 0);
    const double rate = 1.0 / (twice + 1);
    CHECK(std::abs(est.freq[0b11] - rate) <= 4 * std::sqrt(rate * (1 - rate) / n));

    const auto apart = estimate(sample_lhv_epr(model, Direction::in_plane(0.0), Direction::in_plane(2.0), n, {6, 0}), 4);
    const double pa = apart.freq[0b10] + apart.freq[0b11];
    const double pb = apart.freq[0b01] + apart.freq[0b11];
    CHECK(std::abs(pa - rate) <= 4 * std::sqrt(rate * (1 - rate) / n));
    CHECK(std::abs(pb - rate) <= 4 * std::sqrt(rate * (1 - rate) / n));
  }

  // where the quantum functional peaks, the local model stays inside the band
  const AnalyzerQuad optimum{Direction::in_plane(0.0), Direction::in_plane(pi / 2), Direction::in_plane(pi / 4),
                             Direction::in_plane(3 * pi / 4)};
  const auto at_opt = lhv_bell_functional(LhvModel::for_spin(SpinMagnitude(1)), optimum, n, {99, 0}, workers());
  CHECK(at_opt.value <= 4 * at_opt.std_error);
  CHECK(at_opt.value >= -1 - 4 * at_opt.std_error);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_direction = [&] { return Direction(std::acos(2 * u(rng) - 1), 2 * pi * u(rng)); };
  for (int trial = 0; trial < 50; ++trial) {
    const SpinMagnitude s(1 + trial % 4);
    const AnalyzerQuad q{random_direction(), random_direction(), random_direction(), random_direction()};
    const auto bell = lhv_bell_functional(LhvModel::for_spin(s), q, 100'000, {100 + std::uint64_t(trial), 0}, workers());
    INFO("trial " << trial);
    REQUIRE(bell.value <= 4 * bell.std_error);
    REQUIRE(bell.value >= -1 - 4 * bell.std_error);
    REQUIRE(bell.std_error > 0.0);
  }
}

TEST_CASE("empirical entropy") {
  const auto est = estimate(sample_epr(SpinMagnitude(1), pi / 2, 1'000'000, {3, 0}, workers()), 4);
  const auto h = empirical_entropy(est);
  CHECK(std::abs(h.bits - 2.0) < 0.01);
  CHECK(h.bias == doctest::Approx(3.0 / (2 * 1e6 * std::log(2.0))));

  const auto point = estimate(OutcomeStream(10, 2), 4);
  CHECK(empirical_entropy(point).bits == 0.0);
}

TEST_CASE("stream CSV") {
  std::ostringstream epr;
  write_stream_csv(epr, OutcomeStream{0b10, 0b01, 0b11}, 2);
  CHECK(epr.str() == "index,lambda_a,lambda_b\n0,1,0\n1,0,1\n2,1,1\n");
  std::ostringstream ghz;
  write_stream_csv(ghz, OutcomeStream{0b101}, 3);
  CHECK(ghz.str() == "index,lambda_a,lambda_b,lambda_c\n0,1,0,1\n");
}
