#ifndef ENTANGLE_REPORTS_HPP
#define ENTANGLE_REPORTS_HPP

// Figure sweeps, point probes, oracle verification and sampling summaries
// behind the command-line front end. Everything here is a pure function of
// its arguments so output files are byte-stable.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "entangle/epr.hpp"
#include "entangle/ghz.hpp"
#include "entangle/spin.hpp"
#include "json.hpp"

namespace entangle {

/// Inclusive grid start, start + h, ..., end with `steps` points.
struct SweepSpec {
  double start = 0.0;
  double end = 0.0;
  int steps = 0;
  std::vector<SpinMagnitude> spins;

  void validate() const;
  double at(int k) const;
};

/// Numeric table with a constant column count; first column is the sweep
/// variable in radians.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// 9 significant digits, "%.9g".
std::string format_number(double v);

/// UTF-8, comma separated, header row, LF line endings.
std::string to_csv(const Table& t);
nlohmann::ordered_json to_json(const Table& t);

enum class ConditionalColumn { p1_given_0, p0_given_1 };

Table fig_epr_conditionals(const SweepSpec& spec, ConditionalColumn column);
/// alpha, H_a_given_b, H_a, H_joint for the first spin in the spec.
Table fig_epr_entropies(const SweepSpec& spec);
Table fig_bc_epr(const SweepSpec& spec);
/// phi, H_triple with phi1 = phi, phi2 = phi3 = 0.
Table fig_ghz_entropy(const SweepSpec& spec);
/// phi3, the reduced BC functional and the general one at the fixed geometry.
Table fig_bc_ghz(const SweepSpec& spec);

nlohmann::ordered_json probe_epr(SpinMagnitude s, double alpha);
nlohmann::ordered_json probe_ghz(const AngleTriple<double>& angles, bool literal_bell);

// ---- oracle verification ----------------------------------------------------

using EprClosedForm = std::function<JointDist2<double>(SpinMagnitude, double)>;
using GhzClosedForm = std::function<GhzJointDist<double>(const AngleTriple<double>&)>;

struct VerifyOptions {
  int max_twice_spin = 10;
  double step_deg = 5.0;
  bool include_ghz = true;
  double ghz_step_deg = 10.0;
  double tolerance = 1e-10;
  EprClosedForm epr_closed_form;  // defaults to epr_joint
  GhzClosedForm ghz_closed_form;  // defaults to ghz_full_distribution
};

struct VerifyReport {
  bool passed = false;
  double max_deviation = 0.0;
  std::int64_t comparisons = 0;
  std::string worst_case;

  nlohmann::ordered_json to_json() const;
};

/// Throws std::invalid_argument when max_twice_spin exceeds the oracle ceiling.
VerifyReport verify_oracle(const VerifyOptions& options);

// ---- sampling ---------------------------------------------------------------

enum class SampleKind { epr, ghz, lhv };

struct SampleRequest {
  SampleKind kind = SampleKind::epr;
  SpinMagnitude spin{1};
  double alpha = 0.0;                 // epr and lhv: b sits at alpha from a
  AngleTriple<double> angles{};       // ghz
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  unsigned workers = 1;
  std::size_t max_samples = 100'000'000;
};

/// Writes the outcome stream as CSV and returns the summary (counts,
/// frequencies, standard errors, closed-form deltas in sigma units).
nlohmann::ordered_json run_sample(const SampleRequest& req, std::ostream& csv);

}  // namespace entangle

#endif  // ENTANGLE_REPORTS_HPP
