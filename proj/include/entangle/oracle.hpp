#ifndef ENTANGLE_ORACLE_HPP
#define ENTANGLE_ORACLE_HPP

// Brute-force Hilbert-space reference for the closed forms in epr.hpp and
// ghz.hpp.
//
// Basis conventions:
//   single spin-s: index k <-> m = -s + k, k = 0 .. 2s
//   two spins:     index k_a * (2s+1) + k_b (particle a slowest)
//   three qubits:  bit 0 <-> |+>, bit 1 <-> |->, index 4 b_a + 2 b_b + b_c

#include <Eigen/Dense>

#include <complex>
#include <utility>

#include "entangle/epr.hpp"
#include "entangle/geometry.hpp"
#include "entangle/infotheory.hpp"
#include "entangle/spin.hpp"

namespace entangle::oracle {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Largest spin the oracle accepts by default, (2s+1)^2 = 2601 joint states.
inline constexpr int kMaxTwiceSpin = 50;

struct Ladder {
  ComplexMatrix plus;
  ComplexMatrix minus;
};

/// S+ and S- with <m+1|S+|m> = sqrt(s(s+1) - m(m+1)).
Ladder spin_ladder(SpinMagnitude s);

/// diag(-s, ..., s)
ComplexMatrix spin_z(SpinMagnitude s);

/// exp(tau S+ - tau* S-)|-s> with tau = (theta/2) e^{-i phi}. Its mean spin
/// is s (n_x, n_y, -n_z) for n = dir.unit_vector(); the map preserves angles
/// between analyzers, which is all the singlet statistics see.
StateVector rotated_down_state(SpinMagnitude s, const Direction& dir);

/// |a><a| for the rotated maximum-down state.
ComplexMatrix rotated_projector(SpinMagnitude s, const Direction& dir);

/// sum_m (-1)^{s+m} / sqrt(2s+1) |m, -m>
StateVector singlet_state(SpinMagnitude s);

/// <psi| Pi_a(i) (x) Pi_b(j) |psi> with Pi(1) = P and Pi(0) = I - P.
JointDist2<double> epr_joint_oracle(SpinMagnitude s, const Direction& a, const Direction& b);

/// (|+++> - |--->)/sqrt(2)
StateVector ghz_state();

/// Projector onto spin-up along (cos phi, sin phi, 0).
Eigen::Matrix2cd in_plane_projector(double phi);

/// Full 8-outcome distribution, labels "000" .. "111" in index order 4i+2j+k.
ProbTable ghz_joint_oracle(double phi1, double phi2, double phi3);

}  // namespace entangle::oracle

#endif  // ENTANGLE_ORACLE_HPP
