#include "entangle/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <thread>

#include "entangle/epr.hpp"
#include "entangle/infotheory.hpp"

namespace entangle {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class BlockRng {
 public:
  BlockRng(SeedSpec seed, std::uint64_t block)
      : engine_(splitmix64(splitmix64(splitmix64(seed.seed) ^ seed.stream_id) ^ block)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

template <typename FillBlock>
OutcomeStream generate(std::size_t n, SeedSpec seed, unsigned workers, FillBlock fill) {
  if (n == 0) throw std::invalid_argument("sample count must be >= 1");
  OutcomeStream out(n);
  const std::size_t blocks = (n + kSampleBlockSize - 1) / kSampleBlockSize;
  auto do_block = [&](std::size_t b) {
    const std::size_t begin = b * kSampleBlockSize;
    const std::size_t end = std::min(n, begin + kSampleBlockSize);
    BlockRng rng(seed, b);
    fill(rng, std::span<std::uint8_t>(out.data() + begin, end - begin));
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, blocks));
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) do_block(b);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t b = w; b < blocks; b += workers) do_block(b);
    });
  for (auto& t : pool) t.join();
  return out;
}

Eigen::Vector3d uniform_on_sphere(BlockRng& rng) {
  const double z = 2.0 * rng.uniform() - 1.0;
  const double az = 2.0 * std::numbers::pi * rng.uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(az), r * std::sin(az), z};
}

}  // namespace

OutcomeStream sample_epr(SpinMagnitude s, double alpha, std::size_t n, SeedSpec seed, unsigned workers) {
  const auto marg = epr_marginals(s);
  const auto cond = epr_conditional(s, RelativeAngle(alpha));
  return generate(n, seed, workers, [&](BlockRng& rng, std::span<std::uint8_t> out) {
    for (auto& code : out) {
      const int b = rng.uniform() < marg(1) ? 1 : 0;
      const int a = rng.uniform() < cond(1, b) ? 1 : 0;
      code = static_cast<std::uint8_t>((a << 1) | b);
    }
  });
}

OutcomeStream sample_ghz(const AngleTriple<double>& angles, std::size_t n, SeedSpec seed, unsigned workers) {
  const auto cond = ghz_conditionals(angles);
  return generate(n, seed, workers, [&](BlockRng& rng, std::span<std::uint8_t> out) {
    for (auto& code : out) {
      const int bc = std::min(3, static_cast<int>(rng.uniform() * 4.0));
      const int a = rng.uniform() < cond.p(1, bc) ? 1 : 0;
      code = static_cast<std::uint8_t>((a << 2) | bc);
    }
  });
}

OutcomeStream sample_lhv_epr(const LhvModel& model, const Direction& a, const Direction& b, std::size_t n,
                             SeedSpec seed, unsigned workers) {
  const Eigen::Vector3d ua = a.unit_vector();
  const Eigen::Vector3d ub = b.unit_vector();
  return generate(n, seed, workers, [&](BlockRng& rng, std::span<std::uint8_t> out) {
    for (auto& code : out) {
      const Eigen::Vector3d lambda = uniform_on_sphere(rng);
      code = static_cast<std::uint8_t>((model.transmit(ua, lambda) << 1) | model.transmit(ub, lambda));
    }
  });
}

EmpiricalEstimate estimate(const OutcomeStream& stream, int outcomes) {
  if (outcomes < 1) throw std::invalid_argument("outcome count must be >= 1");
  if (stream.empty()) throw std::invalid_argument("empty outcome stream");
  EmpiricalEstimate est;
  est.counts.assign(outcomes, 0);
  for (auto code : stream) {
    if (code >= outcomes) throw std::out_of_range("outcome code outside table");
    ++est.counts[code];
  }
  est.n = stream.size();
  const double n = static_cast<double>(est.n);
  for (auto c : est.counts) {
    const double f = static_cast<double>(c) / n;
    est.freq.push_back(f);
    est.std_error.push_back(std::sqrt(f * (1.0 - f) / n));
  }
  return est;
}

EmpiricalEntropy empirical_entropy(const EmpiricalEstimate& est) {
  if (est.n == 0) throw std::invalid_argument("estimate has no samples");
  const Eigen::Map<const Eigen::VectorXd> freq(est.freq.data(), static_cast<Eigen::Index>(est.freq.size()));
  const double k = static_cast<double>(est.freq.size());
  return {shannon_entropy(freq), (k - 1.0) / (2.0 * static_cast<double>(est.n) * std::numbers::ln2)};
}

EmpiricalBell lhv_bell_functional(const LhvModel& model, const AnalyzerQuad& q, std::size_t n, SeedSpec seed,
                                  unsigned workers) {
  auto run = [&](const Direction& x, const Direction& y, std::uint64_t offset) {
    return sample_lhv_epr(model, x, y, n, {seed.seed, seed.stream_id + offset}, workers);
  };
  const double nd = static_cast<double>(n);

  // The (a, b) run supplies p(a;b), p(a) and p(b); its combined per-sample
  // variable t_a t_b - t_a - t_b carries their covariance.
  const OutcomeStream ab = run(q.a, q.b, 0);
  double sum = 0.0, sum_sq = 0.0;
  for (auto code : ab) {
    const int ta = code >> 1, tb = code & 1;
    const double g = ta * tb - ta - tb;
    sum += g;
    sum_sq += g * g;
  }
  const double mean_ab = sum / nd;
  double variance = std::max(0.0, sum_sq / nd - mean_ab * mean_ab) / nd;

  auto coincidence = [&](const OutcomeStream& st) {
    const auto est = estimate(st, 4);
    const double f = est.freq[3];
    variance += f * (1.0 - f) / nd;
    return f;
  };
  const double p_apb = coincidence(run(q.a_prime, q.b, 1));
  const double p_abp = coincidence(run(q.a, q.b_prime, 2));
  const double p_apbp = coincidence(run(q.a_prime, q.b_prime, 3));

  return {mean_ab + p_apb - p_abp + p_apbp, std::sqrt(variance), n};
}

void write_stream_csv(std::ostream& out, const OutcomeStream& stream, int bits) {
  if (bits != 2 && bits != 3) throw std::invalid_argument("streams carry 2 or 3 outcome bits");
  out << (bits == 2 ? "index,lambda_a,lambda_b\n" : "index,lambda_a,lambda_b,lambda_c\n");
  for (std::size_t i = 0; i < stream.size(); ++i) {
    out << i;
    for (int k = bits - 1; k >= 0; --k) out << ',' << ((stream[i] >> k) & 1);
    out << '\n';
  }
}

}  // namespace entangle
