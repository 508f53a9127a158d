#ifndef ENTANGLE_INFOTHEORY_HPP
#define ENTANGLE_INFOTHEORY_HPP

// Gibbs-Shannon entropies in bits. 0 log 0 is taken as 0 explicitly, so
// perfectly correlated tables never produce NaN.

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entangle/epr.hpp"
#include "entangle/ghz.hpp"
#include "entangle/spin.hpp"

namespace entangle {

inline constexpr double kNormalizationTolerance = 1e-9;

/// Finite discrete distribution with outcome labels.
class ProbTable {
 public:
  ProbTable(std::vector<std::string> labels, Eigen::VectorXd probabilities)
      : labels_(std::move(labels)), p_(std::move(probabilities)) {
    if (static_cast<Eigen::Index>(labels_.size()) != p_.size())
      throw std::invalid_argument("label count does not match probability count");
    if (p_.size() == 0) throw std::invalid_argument("empty probability table");
    if (!p_.allFinite() || (p_.array() < 0).any())
      throw std::domain_error("probabilities must be finite and nonnegative");
    if (std::abs(p_.sum() - 1.0) > kNormalizationTolerance)
      throw std::domain_error("probability table is not normalized");
  }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Eigen::VectorXd& probabilities() const noexcept { return p_; }
  Eigen::Index size() const noexcept { return p_.size(); }
  double operator[](Eigen::Index i) const { return p_(i); }

 private:
  std::vector<std::string> labels_;
  Eigen::VectorXd p_;
};

namespace detail {

template <typename Scalar>
Scalar plogp(Scalar p) {
  return p > 0 ? p * std::log2(p) : Scalar(0);
}

}  // namespace detail

/// -sum p log2 p over every coefficient of `p` (vector or matrix).
template <typename Derived>
typename Derived::Scalar shannon_entropy(const Eigen::DenseBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  const auto& a = p.derived();
  if ((a.array() < Scalar(0)).any()) throw std::domain_error("negative probability");
  if (std::abs(a.sum() - Scalar(1)) > Scalar(kNormalizationTolerance))
    throw std::domain_error("probability table is not normalized");
  Scalar h = 0;
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    for (Eigen::Index r = 0; r < a.rows(); ++r) h -= detail::plogp(a(r, c));
  return h;
}

inline double shannon_entropy(const ProbTable& t) { return shannon_entropy(t.probabilities()); }

/// H(A|B) = -sum_{ij} p(i,j) log2 p(i|j); rows index A, columns index B.
/// The conditional must be the Bayes partner of the joint.
template <typename JointDerived, typename CondDerived>
typename JointDerived::Scalar conditional_entropy(const Eigen::MatrixBase<JointDerived>& joint,
                                                  const Eigen::MatrixBase<CondDerived>& conditional) {
  using Scalar = typename JointDerived::Scalar;
  const auto& j = joint.derived();
  const auto& c = conditional.derived();
  if (j.rows() != c.rows() || j.cols() != c.cols())
    throw std::invalid_argument("joint and conditional shapes differ");
  if (std::abs(j.sum() - Scalar(1)) > Scalar(kNormalizationTolerance))
    throw std::domain_error("joint table is not normalized");
  Scalar h = 0;
  for (Eigen::Index col = 0; col < j.cols(); ++col) {
    const Scalar marginal = j.col(col).sum();
    for (Eigen::Index row = 0; row < j.rows(); ++row) {
      const Scalar pj = j(row, col);
      const Scalar pc = c(row, col);
      if (std::abs(pj - pc * marginal) > Scalar(kNormalizationTolerance))
        throw std::logic_error("joint and conditional tables are not Bayes-consistent");
      if (pj > 0) h -= pj * std::log2(pc);
    }
  }
  return h;
}

/// Divides each column by its sum; zero columns become uniform (their joint
/// weight is zero, so the choice never enters an entropy).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>
conditional_from_joint(const Eigen::MatrixBase<Derived>& joint) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> c = joint;
  for (Eigen::Index col = 0; col < c.cols(); ++col) {
    const Scalar m = c.col(col).sum();
    if (m > 0)
      c.col(col) /= m;
    else
      c.col(col).setConstant(Scalar(1) / Scalar(c.rows()));
  }
  return c;
}

template <typename Scalar = double>
Scalar binary_entropy(Scalar q) {
  constexpr Scalar slack = Scalar(1e-12);
  if (!(q >= -slack && q <= 1 + slack)) throw std::domain_error("binary entropy argument outside [0, 1]");
  if (q <= 0 || q >= 1) return Scalar(0);
  return -detail::plogp(q) - detail::plogp(Scalar(1) - q);
}

template <typename Scalar = double>
struct EprEntropySet {
  Scalar H_a, H_b, H_joint, H_a_given_b, H_b_given_a;
};

template <typename Scalar = double>
struct GhzEntropySet {
  std::array<Scalar, 3> H_singles;  // a, b, c
  std::array<Scalar, 3> H_pairs;    // (a,b), (a,c), (b,c)
  Scalar H_triple;
  Scalar H_1_given_23;
};

/// Single-analyzer entropy, -(1/(2s+1)) log2[(2s)^{2s} / (2s+1)^{2s+1}].
template <typename Scalar = double>
Scalar epr_single_entropy(SpinMagnitude s) {
  const Scalar two_s = Scalar(s.twice());
  return -(two_s * std::log2(two_s) - (two_s + 1) * std::log2(two_s + 1)) / (two_s + 1);
}

/// Closed form of H(a|b): column-weighted binary entropies of the
/// conditional matrix, P(0) h(P(1|0)) + P(1) h(P(1|1)).
template <typename Scalar = double>
Scalar epr_conditional_entropy(SpinMagnitude s, RelativeAngle<Scalar> alpha) {
  const auto c = epr_conditional(s, alpha);
  const auto m = epr_marginals<Scalar>(s);
  return m(0) * binary_entropy(c(1, 0)) + m(1) * binary_entropy(c(1, 1));
}

template <typename Scalar = double>
EprEntropySet<Scalar> epr_entropies(SpinMagnitude s, RelativeAngle<Scalar> alpha) {
  const auto joint = epr_joint(s, alpha).p;
  const auto cond = epr_conditional(s, alpha).p;
  const Eigen::Matrix<Scalar, 2, 2> joint_ba = joint.transpose();
  EprEntropySet<Scalar> e;
  e.H_a = epr_single_entropy<Scalar>(s);
  e.H_b = e.H_a;
  e.H_joint = shannon_entropy(joint);
  e.H_a_given_b = conditional_entropy(joint, cond);
  e.H_b_given_a = conditional_entropy(joint_ba, conditional_from_joint(joint_ba));
  return e;
}

/// H(a | b, c) for one angle triple, h((1 - cos phi)/2).
template <typename Scalar = double>
Scalar ghz_conditional_entropy(const AngleTriple<Scalar>& angles) {
  return binary_entropy((1 - std::cos(angles.sum())) / 2);
}

/// Reshapes an 8-outcome table into rows i (particle a), columns 2j + k.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 4> ghz_joint_by_condition(const GhzJointDist<Scalar>& d) {
  Eigen::Matrix<Scalar, 2, 4> m;
  for (int i = 0; i < 2; ++i)
    for (int jk = 0; jk < 4; ++jk) m(i, jk) = d.p(4 * i + jk);
  return m;
}

/// Singles and pairs come from marginalizing the full table; the triple and
/// conditional entropies use the closed form 2 + h((1 - cos phi)/2).
template <typename Scalar = double>
GhzEntropySet<Scalar> ghz_entropies(const AngleTriple<Scalar>& angles) {
  const auto m = ghz_pair_marginals(angles);
  GhzEntropySet<Scalar> e;
  for (int t = 0; t < 3; ++t) {
    e.H_singles[t] = shannon_entropy(m.singles[t]);
    e.H_pairs[t] = shannon_entropy(m.pairs[t]);
  }
  e.H_1_given_23 = ghz_conditional_entropy(angles);
  e.H_triple = 2 + e.H_1_given_23;
  return e;
}

}  // namespace entangle

#endif  // ENTANGLE_INFOTHEORY_HPP
