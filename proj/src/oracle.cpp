#include "entangle/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace entangle::oracle {

namespace {

void check_ceiling(SpinMagnitude s) {
  if (s.twice() > kMaxTwiceSpin)
    throw std::invalid_argument("spin " + s.label() + " exceeds the oracle ceiling of 25");
}

// <psi| A (x) B |psi> for psi stored row-major as Psi(k_a, k_b):
// equals tr(Psi^dagger A Psi B^T).
double two_body_expectation(const ComplexMatrix& psi, const ComplexMatrix& a, const ComplexMatrix& b) {
  const Complex v = (psi.adjoint() * a * psi * b.transpose()).trace();
  return v.real();
}

}  // namespace

Ladder spin_ladder(SpinMagnitude s) {
  const int d = s.dimension();
  const double sv = s.value();
  ComplexMatrix plus = ComplexMatrix::Zero(d, d);
  for (int k = 0; k + 1 < d; ++k) {
    const double m = -sv + k;
    plus(k + 1, k) = std::sqrt(sv * (sv + 1) - m * (m + 1));
  }
  ComplexMatrix minus = plus.adjoint();
  return {std::move(plus), std::move(minus)};
}

ComplexMatrix spin_z(SpinMagnitude s) {
  const int d = s.dimension();
  Eigen::VectorXcd diag(d);
  for (int k = 0; k < d; ++k) diag(k) = -s.value() + k;
  return diag.asDiagonal();
}

StateVector rotated_down_state(SpinMagnitude s, const Direction& dir) {
  check_ceiling(s);
  const auto [plus, minus] = spin_ladder(s);
  const Complex tau = 0.5 * dir.theta * std::exp(Complex(0.0, -dir.phi));
  const ComplexMatrix generator = tau * plus - std::conj(tau) * minus;
  // generator is anti-Hermitian: i*generator = V diag(w) V^dagger, so
  // exp(generator) = V diag(e^{-i w}) V^dagger.
  const ComplexMatrix hermitian = Complex(0.0, 1.0) * generator;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian);
  if (eig.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const Eigen::VectorXd& w = eig.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(Complex(0.0, -w(k)));
  const ComplexMatrix& v = eig.eigenvectors();
  // Only column 0 (|-s>) of the exponential is needed.
  return v * phases.asDiagonal() * v.row(0).adjoint();
}

ComplexMatrix rotated_projector(SpinMagnitude s, const Direction& dir) {
  const StateVector v = rotated_down_state(s, dir);
  return v * v.adjoint();
}

StateVector singlet_state(SpinMagnitude s) {
  const int d = s.dimension();
  StateVector psi = StateVector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int ka = 0; ka < d; ++ka) {
    const int kb = d - 1 - ka;  // m_b = -m_a
    psi(ka * d + kb) = (ka % 2 == 0 ? amp : -amp);  // (-1)^{s+m_a} = (-1)^{k_a}
  }
  return psi;
}

JointDist2<double> epr_joint_oracle(SpinMagnitude s, const Direction& a, const Direction& b) {
  check_ceiling(s);
  const int d = s.dimension();
  const StateVector psi_vec = singlet_state(s);
  const ComplexMatrix psi = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      psi_vec.data(), d, d);
  const ComplexMatrix identity = ComplexMatrix::Identity(d, d);
  const ComplexMatrix pa1 = rotated_projector(s, a);
  const ComplexMatrix pb1 = rotated_projector(s, b);
  const ComplexMatrix pa[2] = {identity - pa1, pa1};
  const ComplexMatrix pb[2] = {identity - pb1, pb1};
  JointDist2<double> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.p(i, j) = two_body_expectation(psi, pa[i], pb[j]);
  return out;
}

StateVector ghz_state() {
  StateVector psi = StateVector::Zero(8);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(7) = -1.0 / std::sqrt(2.0);
  return psi;
}

Eigen::Matrix2cd in_plane_projector(double phi) {
  Eigen::Vector2cd up;
  up << 1.0 / std::sqrt(2.0), std::exp(Complex(0.0, phi)) / std::sqrt(2.0);
  return up * up.adjoint();
}

ProbTable ghz_joint_oracle(double phi1, double phi2, double phi3) {
  const StateVector psi = ghz_state();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const double phis[3] = {phi1, phi2, phi3};
  Eigen::Matrix2cd proj[3][2];
  for (int t = 0; t < 3; ++t) {
    proj[t][1] = in_plane_projector(phis[t]);
    proj[t][0] = id - proj[t][1];
  }
  Eigen::VectorXd probs(8);
  std::vector<std::string> labels;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        // (A (x) B (x) C)_{(x y z),(x' y' z')} = A_{x x'} B_{y y'} C_{z z'}
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(8);
        for (int r = 0; r < 8; ++r)
          for (int c = 0; c < 8; ++c)
            out(r) += proj[0][i](r >> 2, c >> 2) * proj[1][j]((r >> 1) & 1, (c >> 1) & 1) *
                      proj[2][k](r & 1, c & 1) * psi(c);
        probs(4 * i + 2 * j + k) = out.squaredNorm();
        labels.push_back(std::to_string(i) + std::to_string(j) + std::to_string(k));
      }
  return ProbTable(std::move(labels), std::move(probs));
}

}  // namespace entangle::oracle
