#ifndef ENTANGLE_SAMPLER_HPP
#define ENTANGLE_SAMPLER_HPP

// Seeded Monte Carlo streams of detector outcomes.
//
// Samples are produced in fixed-size blocks; block b of stream (seed, id) has
// its own generator, so the output is identical for any worker count.
// Outcome codes pack the detector bits with particle a most significant:
// EPR (a<<1)|b, GHZ (a<<2)|(b<<1)|c.

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "entangle/geometry.hpp"
#include "entangle/ghz.hpp"
#include "entangle/spin.hpp"

namespace entangle {

struct SeedSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

inline constexpr std::size_t kSampleBlockSize = 1u << 16;

using OutcomeStream = std::vector<std::uint8_t>;

OutcomeStream sample_epr(SpinMagnitude s, double alpha, std::size_t n, SeedSpec seed, unsigned workers = 1);

OutcomeStream sample_ghz(const AngleTriple<double>& angles, std::size_t n, SeedSpec seed, unsigned workers = 1);

/// Deterministic local model: a hidden unit vector lambda drawn uniformly on
/// the sphere, and t(d, lambda) = 1 iff d.lambda < threshold. The threshold
/// 2/(2s+1) - 1 gives every analyzer a transmission rate of 1/(2s+1).
struct LhvModel {
  double threshold = 0.0;

  static LhvModel for_spin(SpinMagnitude s) { return {2.0 / (s.twice() + 1) - 1.0}; }

  int transmit(const Eigen::Vector3d& axis, const Eigen::Vector3d& lambda) const {
    return axis.dot(lambda) < threshold ? 1 : 0;
  }
};

OutcomeStream sample_lhv_epr(const LhvModel& model, const Direction& a, const Direction& b, std::size_t n,
                             SeedSpec seed, unsigned workers = 1);

/// Per-cell frequencies with binomial standard errors.
struct EmpiricalEstimate {
  std::vector<std::uint64_t> counts;
  std::uint64_t n = 0;
  std::vector<double> freq;
  std::vector<double> std_error;  // sqrt(freq (1 - freq) / n)
};

EmpiricalEstimate estimate(const OutcomeStream& stream, int outcomes);

struct EmpiricalEntropy {
  double bits = 0.0;
  double bias = 0.0;  // expected plug-in underestimate, (K - 1) / (2 n ln 2)
};

EmpiricalEntropy empirical_entropy(const EmpiricalEstimate& est);

struct EmpiricalBell {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t samples_per_setting = 0;
};

/// Bell functional p(a;b) + p(a';b) - p(a;b') + p(a';b') - p(a) - p(b) from four
/// independent LHV runs, one per analyzer pair (stream ids seed.stream_id + 0..3).
EmpiricalBell lhv_bell_functional(const LhvModel& model, const AnalyzerQuad& q, std::size_t n, SeedSpec seed,
                                  unsigned workers = 1);

/// CSV with header "index,lambda_a,lambda_b[,lambda_c]".
void write_stream_csv(std::ostream& out, const OutcomeStream& stream, int bits);

}  // namespace entangle

#endif  // ENTANGLE_SAMPLER_HPP
