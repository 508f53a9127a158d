#ifndef ENTANGLE_INEQUALITIES_HPP
#define ENTANGLE_INEQUALITIES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entangle/geometry.hpp"
#include "entangle/ghz.hpp"
#include "entangle/spin.hpp"
#include "json.hpp"

namespace entangle {

/// Numeric slack separating saturation of a bound from its violation.
inline constexpr double kViolationSlack = 1e-12;

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
  double margin = 0.0;  // > 0 means violated by that amount
  bool violated = false;
  std::vector<std::pair<std::string, double>> inputs;
};

/// Fills margin and violated from lhs and the bounds present.
InequalityReport make_report(std::string name, double lhs, std::optional<double> lower,
                             std::optional<double> upper,
                             std::vector<std::pair<std::string, double>> inputs);

nlohmann::ordered_json to_json(const InequalityReport& r);

// ---- probability Bell inequalities ----------------------------------------

/// p(a;b) + p(a';b) - p(a;b') + p(a';b') - p(a) - p(b) for coplanar analyzer
/// angles; bounds [-1, 0].
double bell_epr_lhs(SpinMagnitude s, double a, double a_prime, double b, double b_prime);
InequalityReport bell_epr(SpinMagnitude s, double a, double a_prime, double b, double b_prime);

struct GhzBellAngles {
  double phi1 = 0, phi1_prime = 0, phi2 = 0, phi2_prime = 0, phi3 = 0;
};

/// Three-particle generalization with phi3 fixed; bounds [-p(phi3), 0].
/// `corrected` replaces the literal p(phi1'; phi1; phi3) term with
/// p(phi1'; phi2; phi3).
double bell_ghz_lhs(const GhzBellAngles& g, bool corrected);
InequalityReport bell_ghz(const GhzBellAngles& g, bool corrected);

// ---- entropic inequalities --------------------------------------------------

/// Braunstein-Caves: H(a|b) - H(a|b') - H(a'|b') - H(a'|b) <= 0, each term
/// evaluated on the 4-outcome tables at the pairwise relative angle.
InequalityReport bc_epr_general(SpinMagnitude s, const AnalyzerQuad& q);

/// Coplanar reduction H(3 alpha) - 3 H(alpha) <= 0.
double bc_epr_coplanar_lhs(SpinMagnitude s, double alpha);
InequalityReport bc_epr_coplanar(SpinMagnitude s, double alpha);

/// H(phi1|phi2 phi3) - H(phi1|phi2' phi3) - H(phi1'|phi2' phi3) - H(phi1'|phi2 phi3) <= 0.
InequalityReport bc_ghz(const GhzBellAngles& g);

/// The fixed geometry phi1 = pi/4, phi1' = 3pi/4, phi2 = 0, phi2' = pi/2.
GhzBellAngles bc_ghz_geometry(double phi3);

/// H(pi/4 + phi3) - 3 H(3pi/4 + phi3) with H(t) = h((1 - cos t)/2); bound 0.
double bc_ghz_reduced_lhs(double phi3);
InequalityReport bc_ghz_reduced(double phi3);

/// H(13) - H(1) + H(23) - H(2) >= 0.
InequalityReport lieb_ruskai_ghz(const AngleTriple<double>& angles);

/// H(123) - H(2) - [H(12) - H(2)] - [H(32) - H(2)] <= 0.
InequalityReport three_party_subadditivity(const AngleTriple<double>& angles);

/// |H(a) - H(b)| <= H(a;b) <= H(a) + H(b).
InequalityReport araki_lieb_epr(SpinMagnitude s, double alpha);

// ---- grid scans -------------------------------------------------------------

struct GridAxis {
  std::string name;
  double start = 0.0;
  double step = 0.0;
  std::int64_t count = 1;

  double at(std::int64_t k) const { return start + static_cast<double>(k) * step; }
};

inline constexpr std::int64_t kMaxScanEvaluations = 100'000'000;

struct ScanResult {
  double max_margin = 0.0;
  std::vector<double> argmax;
  std::int64_t evaluations = 0;
};

/// Functional evaluated at one grid point; returns the violation margin.
using MarginFunction = std::function<double(std::span<const double>)>;

/// Row-major scan (last axis fastest). Ties resolve to the first grid point
/// in scan order, independent of `workers`. Throws std::invalid_argument for
/// grids larger than kMaxScanEvaluations.
ScanResult scan_max_violation(const MarginFunction& margin, const std::vector<GridAxis>& grid,
                              unsigned workers = 0);

/// Maximum of the Bell functional for spin s with a fixed at 0 and a', b, b'
/// on a grid of `step_deg` degrees over the full circle.
ScanResult scan_bell_epr(SpinMagnitude s, double step_deg = 1.0, unsigned workers = 0);

/// Maximum of the coplanar BC functional over alpha in (0, pi].
ScanResult scan_bc_epr(SpinMagnitude s, double step_deg = 0.1, unsigned workers = 0);

/// Maximum of the GHZ Bell functional over phi1, phi1', phi2, phi2' at fixed phi3.
ScanResult scan_bell_ghz(double phi3, bool corrected, double step_deg = 10.0, unsigned workers = 0);

}  // namespace entangle

#endif  // ENTANGLE_INEQUALITIES_HPP
