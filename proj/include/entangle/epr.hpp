#ifndef ENTANGLE_EPR_HPP
#define ENTANGLE_EPR_HPP

// Closed-form outcome statistics of two spin-s particles in the singlet state
// analyzed by two projective "maximum down" polarizers. Outcome 1 is a
// transmission ("yes"), outcome 0 a block ("no").

#include <Eigen/Core>

#include <cmath>
#include <numbers>

#include "entangle/spin.hpp"

namespace entangle {

template <typename Scalar = double>
struct BinaryMarginal {
  Eigen::Matrix<Scalar, 2, 1> p;  // p(0), p(1)
  Scalar operator()(int i) const { return p(i); }
};

/// Column-stochastic table, p(i, j) = P(i | j) with j the conditioning outcome.
template <typename Scalar = double>
struct CondMatrix2 {
  Eigen::Matrix<Scalar, 2, 2> p;
  Scalar operator()(int i, int j) const { return p(i, j); }
};

/// p(i, j): i is the outcome at analyzer a, j at analyzer b.
template <typename Scalar = double>
struct JointDist2 {
  Eigen::Matrix<Scalar, 2, 2> p;
  Scalar operator()(int i, int j) const { return p(i, j); }
};

namespace detail {

// sin^{4s}(alpha/2). Integer powering up to exponent 64, log-space beyond.
template <typename Scalar>
Scalar sin_half_power(SpinMagnitude s, Scalar alpha) {
  const Scalar x = std::abs(std::sin(alpha / 2));
  if (x == 0) return Scalar(0);
  const int exponent = 2 * s.twice();
  if (exponent <= 64) {
    Scalar r = 1;
    for (int k = 0; k < exponent; ++k) r *= x;
    return r;
  }
  return std::exp(Scalar(exponent) * std::log(x));
}

}  // namespace detail

/// Single-detector statistics; independent of the analyzer orientation.
template <typename Scalar = double>
BinaryMarginal<Scalar> epr_marginals(SpinMagnitude s) {
  const Scalar d = Scalar(s.twice() + 1);
  BinaryMarginal<Scalar> m;
  m.p << Scalar(s.twice()) / d, Scalar(1) / d;
  return m;
}

template <typename Scalar = double>
CondMatrix2<Scalar> epr_conditional(SpinMagnitude s, RelativeAngle<Scalar> alpha) {
  const Scalar x = detail::sin_half_power(s, alpha.radians());
  const Scalar two_s = Scalar(s.twice());
  CondMatrix2<Scalar> c;
  c.p(0, 0) = (two_s - 1 + x) / two_s;
  c.p(1, 0) = (1 - x) / two_s;
  c.p(0, 1) = 1 - x;
  c.p(1, 1) = x;
  return c;
}

/// Joint spin transmission p(1, 1) = sin^{4s}(alpha/2) / (2s + 1).
template <typename Scalar = double>
Scalar epr_transmission(SpinMagnitude s, RelativeAngle<Scalar> alpha) {
  return detail::sin_half_power(s, alpha.radians()) / Scalar(s.twice() + 1);
}

/// Bayes product p(i, j) = P(i | j) P(j).
template <typename Scalar = double>
JointDist2<Scalar> epr_joint(SpinMagnitude s, RelativeAngle<Scalar> alpha) {
  const auto cond = epr_conditional(s, alpha);
  const auto marg = epr_marginals<Scalar>(s);
  JointDist2<Scalar> j;
  j.p = cond.p * marg.p.asDiagonal();
  return j;
}

/// Large-spin limit of the conditional matrix. Discontinuous at alpha = pi,
/// which is detected by exact comparison on the canonical angle.
template <typename Scalar = double>
CondMatrix2<Scalar> classical_limit_conditional(RelativeAngle<Scalar> alpha) {
  CondMatrix2<Scalar> c;
  if (alpha.radians() == std::numbers::pi_v<Scalar>)
    c.p << 1, 0, 0, 1;
  else
    c.p << 1, 1, 0, 0;
  return c;
}

}  // namespace entangle

#endif  // ENTANGLE_EPR_HPP
