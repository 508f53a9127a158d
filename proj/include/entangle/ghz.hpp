#ifndef ENTANGLE_GHZ_HPP
#define ENTANGLE_GHZ_HPP

// Closed-form statistics of (|+++> - |--->)/sqrt(2) measured by three
// analyzers in the x-y plane at azimuths phi1, phi2, phi3. Outcome triples
// (i, j, k) belong to particles a, b, c and are flattened as 4i + 2j + k.

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>

namespace entangle {

template <typename Scalar = double>
struct AngleTriple {
  Scalar phi1 = 0, phi2 = 0, phi3 = 0;
  Scalar sum() const { return phi1 + phi2 + phi3; }
};

template <typename Scalar>
AngleTriple(Scalar, Scalar, Scalar) -> AngleTriple<Scalar>;

/// p(i | j, k); column index 2j + k.
template <typename Scalar = double>
struct GhzCondMatrix {
  Eigen::Matrix<Scalar, 2, 4> p;
  Scalar operator()(int i, int j, int k) const { return p(i, 2 * j + k); }
};

template <typename Scalar = double>
struct GhzJointDist {
  Eigen::Matrix<Scalar, 8, 1> p;
  Scalar operator()(int i, int j, int k) const { return p(4 * i + 2 * j + k); }
};

/// Two-detector and one-detector marginals. Pair order: (a,b), (a,c), (b,c);
/// each pair table is flattened as 2 * first + second.
template <typename Scalar = double>
struct GhzMarginals {
  std::array<Eigen::Matrix<Scalar, 4, 1>, 3> pairs;
  std::array<Eigen::Matrix<Scalar, 2, 1>, 3> singles;
};

inline int parity(int i, int j, int k) { return (i ^ j ^ k) & 1; }

/// p(1,1,1) = (1 - cos phi) / 8.
template <typename Scalar = double>
Scalar ghz_transmission(const AngleTriple<Scalar>& angles) {
  return (1 - std::cos(angles.sum())) / 8;
}

/// Odd-parity outcomes carry (1 - cos phi)/2, even-parity ones (1 + cos phi)/2.
template <typename Scalar = double>
GhzCondMatrix<Scalar> ghz_conditionals(const AngleTriple<Scalar>& angles) {
  const Scalar c = std::cos(angles.sum());
  GhzCondMatrix<Scalar> m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) m.p(i, 2 * j + k) = parity(i, j, k) ? (1 - c) / 2 : (1 + c) / 2;
  return m;
}

/// Chain rule p(i,j,k) = P(i | j,k) P(j | k) P(k) with P(j | k) = P(k) = 1/2.
template <typename Scalar = double>
GhzJointDist<Scalar> ghz_full_distribution(const AngleTriple<Scalar>& angles) {
  const auto cond = ghz_conditionals(angles);
  GhzJointDist<Scalar> d;
  for (int i = 0; i < 2; ++i)
    for (int jk = 0; jk < 4; ++jk) d.p(4 * i + jk) = cond.p(i, jk) / 4;
  return d;
}

/// Marginalizes an 8-outcome table.
template <typename Scalar>
GhzMarginals<Scalar> marginalize(const GhzJointDist<Scalar>& d) {
  GhzMarginals<Scalar> m;
  for (auto& t : m.pairs) t.setZero();
  for (auto& t : m.singles) t.setZero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const Scalar v = d(i, j, k);
        m.pairs[0](2 * i + j) += v;
        m.pairs[1](2 * i + k) += v;
        m.pairs[2](2 * j + k) += v;
        m.singles[0](i) += v;
        m.singles[1](j) += v;
        m.singles[2](k) += v;
      }
  return m;
}

template <typename Scalar = double>
GhzMarginals<Scalar> ghz_pair_marginals(const AngleTriple<Scalar>& angles) {
  return marginalize(ghz_full_distribution(angles));
}

/// max |P(i | j,k) - P(i | j) P(j | k)| over all outcome triples. Zero would
/// mean the a <- b <- c sequence is Markov.
template <typename Scalar = double>
Scalar markov_violation(const AngleTriple<Scalar>& angles) {
  const auto d = ghz_full_distribution(angles);
  const auto m = marginalize(d);
  Scalar worst = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const Scalar p_jk = m.pairs[2](2 * j + k);
        const Scalar p_i_given_jk = d(i, j, k) / p_jk;
        const Scalar p_i_given_j = m.pairs[0](2 * i + j) / m.singles[1](j);
        const Scalar p_j_given_k = p_jk / m.singles[2](k);
        worst = std::max(worst, std::abs(p_i_given_jk - p_i_given_j * p_j_given_k));
      }
  return worst;
}

}  // namespace entangle

#endif  // ENTANGLE_GHZ_HPP
