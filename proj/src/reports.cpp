#include "entangle/reports.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "entangle/geometry.hpp"
#include "entangle/inequalities.hpp"
#include "entangle/infotheory.hpp"
#include "entangle/oracle.hpp"
#include "entangle/sampler.hpp"

namespace entangle {

using json = nlohmann::ordered_json;

void SweepSpec::validate() const {
  if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
  if (!(start < end)) throw std::invalid_argument("sweep start must be below sweep end");
}

double SweepSpec::at(int k) const {
  if (k == steps - 1) return end;
  return start + (end - start) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.header.size(); ++c) out += (c ? "," : "") + t.header[c];
  out += '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.header.size()) throw std::logic_error("row width differs from header");
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + format_number(row[c]);
    out += '\n';
  }
  return out;
}

json to_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t c = 0; c < row.size(); ++c) r[t.header[c]] = row[c];
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

std::string spin_tag(SpinMagnitude s) { return "(s=" + s.label() + ")"; }

const std::vector<SpinMagnitude>& require_spins(const SweepSpec& spec) {
  if (spec.spins.empty()) throw std::invalid_argument("sweep needs at least one spin");
  return spec.spins;
}

}  // namespace

Table fig_epr_conditionals(const SweepSpec& spec, ConditionalColumn column) {
  spec.validate();
  const auto& spins = require_spins(spec);
  Table t;
  t.header.push_back("alpha");
  const char* prefix = column == ConditionalColumn::p1_given_0 ? "p1_given_0" : "p0_given_1";
  for (auto s : spins) t.header.push_back(prefix + spin_tag(s));
  for (int k = 0; k < spec.steps; ++k) {
    const double alpha = spec.at(k);
    std::vector<double> row{alpha};
    for (auto s : spins) {
      const auto c = epr_conditional(s, RelativeAngle(alpha));
      row.push_back(column == ConditionalColumn::p1_given_0 ? c(1, 0) : c(0, 1));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table fig_epr_entropies(const SweepSpec& spec) {
  spec.validate();
  const SpinMagnitude s = require_spins(spec).front();
  Table t;
  t.header = {"alpha", "H_a_given_b", "H_a", "H_joint"};
  for (int k = 0; k < spec.steps; ++k) {
    const double alpha = spec.at(k);
    const auto e = epr_entropies(s, RelativeAngle(alpha));
    t.rows.push_back({alpha, e.H_a_given_b, e.H_a, e.H_joint});
  }
  return t;
}

Table fig_bc_epr(const SweepSpec& spec) {
  spec.validate();
  const auto& spins = require_spins(spec);
  Table t;
  t.header.push_back("alpha");
  for (auto s : spins) t.header.push_back("bc_lhs" + spin_tag(s));
  for (int k = 0; k < spec.steps; ++k) {
    const double alpha = spec.at(k);
    std::vector<double> row{alpha};
    for (auto s : spins) row.push_back(bc_epr_coplanar_lhs(s, alpha));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table fig_ghz_entropy(const SweepSpec& spec) {
  spec.validate();
  Table t;
  t.header = {"phi", "H_triple"};
  for (int k = 0; k < spec.steps; ++k) {
    const double phi = spec.at(k);
    t.rows.push_back({phi, ghz_entropies(AngleTriple<double>{phi, 0.0, 0.0}).H_triple});
  }
  return t;
}

Table fig_bc_ghz(const SweepSpec& spec) {
  spec.validate();
  Table t;
  t.header = {"phi3", "bc_reduced", "bc_general"};
  for (int k = 0; k < spec.steps; ++k) {
    const double phi3 = spec.at(k);
    t.rows.push_back({phi3, bc_ghz_reduced_lhs(phi3), bc_ghz(bc_ghz_geometry(phi3)).lhs});
  }
  return t;
}

json probe_epr(SpinMagnitude s, double alpha) {
  const RelativeAngle angle(alpha);
  const auto m = epr_marginals(s);
  const auto c = epr_conditional(s, angle);
  const auto j = epr_joint(s, angle);
  const auto e = epr_entropies(s, angle);
  const AnalyzerQuad layout = coplanar_layout(alpha);

  json out;
  out["kind"] = "epr";
  out["inputs"] = {{"spin", s.label()}, {"twice_spin", s.twice()}, {"alpha", angle.radians()}};
  out["marginals"] = {{"p0", m(0)}, {"p1", m(1)}};
  out["conditional"] = {{"p0_given_0", c(0, 0)}, {"p1_given_0", c(1, 0)}, {"p0_given_1", c(0, 1)},
                        {"p1_given_1", c(1, 1)}};
  out["joint"] = {{"p00", j(0, 0)}, {"p01", j(0, 1)}, {"p10", j(1, 0)}, {"p11", j(1, 1)}};
  out["transmission"] = epr_transmission(s, angle);
  out["entropies"] = {{"H_a", e.H_a},
                      {"H_b", e.H_b},
                      {"H_joint", e.H_joint},
                      {"H_a_given_b", e.H_a_given_b},
                      {"H_b_given_a", e.H_b_given_a},
                      {"joint_minus_single", e.H_joint - e.H_a},
                      {"additivity_gap", e.H_a + e.H_b - e.H_joint}};
  out["inequalities"] = json::array({
      to_json(araki_lieb_epr(s, angle.radians())),
      to_json(bc_epr_coplanar(s, angle.radians())),
      to_json(bc_epr_general(s, layout)),
      to_json(bell_epr(s, 0.0, 2 * angle.radians(), 3 * angle.radians(), angle.radians())),
  });
  return out;
}

json probe_ghz(const AngleTriple<double>& angles, bool literal_bell) {
  const auto d = ghz_full_distribution(angles);
  const auto c = ghz_conditionals(angles);
  const auto m = marginalize(d);
  const auto e = ghz_entropies(angles);

  json out;
  out["kind"] = "ghz";
  out["inputs"] = {{"phi1", angles.phi1}, {"phi2", angles.phi2}, {"phi3", angles.phi3}, {"phi", angles.sum()}};
  out["transmission"] = ghz_transmission(angles);
  json dist = json::object(), cond = json::object();
  for (int i = 0; i < 2; ++i)
    for (int jj = 0; jj < 2; ++jj)
      for (int k = 0; k < 2; ++k) {
        const std::string bits = std::to_string(i) + std::to_string(jj) + std::to_string(k);
        dist["p" + bits] = d(i, jj, k);
        cond["p" + bits.substr(0, 1) + "_given_" + bits.substr(1)] = c(i, jj, k);
      }
  out["joint"] = std::move(dist);
  out["conditional"] = std::move(cond);
  const char* pair_names[3] = {"ab", "ac", "bc"};
  json pairs = json::object();
  for (int p = 0; p < 3; ++p)
    pairs[pair_names[p]] = {m.pairs[p](0), m.pairs[p](1), m.pairs[p](2), m.pairs[p](3)};
  out["pair_marginals"] = std::move(pairs);
  out["single_marginals"] = {{"a", {m.singles[0](0), m.singles[0](1)}},
                             {"b", {m.singles[1](0), m.singles[1](1)}},
                             {"c", {m.singles[2](0), m.singles[2](1)}}};
  out["entropies"] = {{"H_singles", e.H_singles},
                      {"H_pairs", e.H_pairs},
                      {"H_triple", e.H_triple},
                      {"H_1_given_23", e.H_1_given_23}};
  out["markov_violation"] = markov_violation(angles);
  const GhzBellAngles geometry = bc_ghz_geometry(angles.phi3);
  out["inequalities"] = json::array({
      to_json(lieb_ruskai_ghz(angles)),
      to_json(three_party_subadditivity(angles)),
      to_json(bc_ghz_reduced(angles.phi3)),
      to_json(bc_ghz(geometry)),
      to_json(bell_ghz(geometry, !literal_bell)),
  });
  return out;
}

json VerifyReport::to_json() const {
  json j;
  j["passed"] = passed;
  j["max_deviation"] = max_deviation;
  j["comparisons"] = comparisons;
  j["worst_case"] = worst_case;
  return j;
}

VerifyReport verify_oracle(const VerifyOptions& options) {
  if (options.max_twice_spin < 1 || options.max_twice_spin > oracle::kMaxTwiceSpin)
    throw std::invalid_argument("max spin must lie in [1/2, 25]");
  if (!(options.step_deg > 0.0) || !(options.ghz_step_deg > 0.0))
    throw std::invalid_argument("grid steps must be positive");
  const EprClosedForm epr = options.epr_closed_form
                                ? options.epr_closed_form
                                : EprClosedForm([](SpinMagnitude s, double a) { return epr_joint(s, RelativeAngle(a)); });
  const GhzClosedForm ghz = options.ghz_closed_form ? options.ghz_closed_form
                                                    : GhzClosedForm([](const AngleTriple<double>& t) {
                                                        return ghz_full_distribution(t);
                                                      });

  VerifyReport rep;
  auto record = [&](double dev, const std::string& where) {
    ++rep.comparisons;
    if (!(dev <= rep.max_deviation)) {
      rep.max_deviation = std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev;
      rep.worst_case = where;
    }
  };

  const int n_alpha = static_cast<int>(std::llround(360.0 / options.step_deg));
  const Direction a = Direction::in_plane(0.0);
  for (int twice = 1; twice <= options.max_twice_spin; ++twice) {
    const SpinMagnitude s(twice);
    for (int k = 0; k < n_alpha; ++k) {
      const double alpha = degrees_to_radians(k * options.step_deg);
      const auto closed = epr(s, alpha);
      const auto brute = oracle::epr_joint_oracle(s, a, Direction::in_plane(alpha));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          record(std::abs(closed(i, j) - brute(i, j)), "epr s=" + s.label() + " alpha=" + format_number(alpha) +
                                                           " cell=(" + std::to_string(i) + "," +
                                                           std::to_string(j) + ")");
    }
  }

  if (options.include_ghz) {
    const int n_phi = static_cast<int>(std::llround(360.0 / options.ghz_step_deg));
    for (int x = 0; x < n_phi; ++x)
      for (int y = 0; y < n_phi; ++y)
        for (int z = 0; z < n_phi; ++z) {
          const AngleTriple<double> t{degrees_to_radians(x * options.ghz_step_deg),
                                      degrees_to_radians(y * options.ghz_step_deg),
                                      degrees_to_radians(z * options.ghz_step_deg)};
          const auto closed = ghz(t);
          const ProbTable brute = oracle::ghz_joint_oracle(t.phi1, t.phi2, t.phi3);
          for (int c = 0; c < 8; ++c)
            record(std::abs(closed.p(c) - brute[c]), "ghz phi=(" + format_number(t.phi1) + "," +
                                                         format_number(t.phi2) + "," + format_number(t.phi3) +
                                                         ") outcome=" + brute.labels()[c]);
        }
  }
  rep.passed = rep.max_deviation < options.tolerance;
  return rep;
}

json run_sample(const SampleRequest& req, std::ostream& csv) {
  if (req.n < 1) throw std::invalid_argument("sample count must be >= 1");
  if (req.n > req.max_samples)
    throw std::invalid_argument("sample count " + std::to_string(req.n) + " exceeds cap " +
                                std::to_string(req.max_samples));
  const SeedSpec seed{req.seed, req.stream_id};
  json summary;
  json params;
  OutcomeStream stream;
  std::vector<double> closed;
  int bits = 2;
  switch (req.kind) {
    case SampleKind::epr: {
      summary["kind"] = "epr";
      params = {{"spin", req.spin.label()}, {"alpha", req.alpha}};
      stream = sample_epr(req.spin, req.alpha, req.n, seed, req.workers);
      const auto j = epr_joint(req.spin, RelativeAngle(req.alpha));
      closed = {j(0, 0), j(0, 1), j(1, 0), j(1, 1)};
      break;
    }
    case SampleKind::ghz: {
      summary["kind"] = "ghz";
      params = {{"phi1", req.angles.phi1}, {"phi2", req.angles.phi2}, {"phi3", req.angles.phi3}};
      stream = sample_ghz(req.angles, req.n, seed, req.workers);
      const auto d = ghz_full_distribution(req.angles);
      closed.assign(d.p.data(), d.p.data() + 8);
      bits = 3;
      break;
    }
    case SampleKind::lhv: {
      summary["kind"] = "lhv";
      params = {{"spin", req.spin.label()}, {"alpha", req.alpha}};
      stream = sample_lhv_epr(LhvModel::for_spin(req.spin), Direction::in_plane(0.0),
                              Direction::in_plane(req.alpha), req.n, seed, req.workers);
      break;
    }
  }
  write_stream_csv(csv, stream, bits);
  if (!csv) throw std::runtime_error("failed writing sample stream");

  const int outcomes = 1 << bits;
  const auto est = estimate(stream, outcomes);
  summary["params"] = std::move(params);
  summary["n"] = est.n;
  summary["seed"] = req.seed;
  summary["stream_id"] = req.stream_id;
  summary["counts"] = est.counts;
  summary["freq"] = est.freq;
  summary["std_error"] = est.std_error;
  if (!closed.empty()) {
    json delta = json::array();
    for (int c = 0; c < outcomes; ++c) {
      const double diff = est.freq[c] - closed[c];
      if (est.std_error[c] > 0)
        delta.push_back(diff / est.std_error[c]);
      else
        delta.push_back(diff == 0.0 ? json(0.0) : json(nullptr));
    }
    summary["closed_form"] = closed;
    summary["delta_sigma"] = std::move(delta);
  } else {
    // The local model only pins the single-detector rates.
    const double expected = 1.0 / (req.spin.twice() + 1);
    const double ra = est.freq[2] + est.freq[3];
    const double rb = est.freq[1] + est.freq[3];
    const double se = std::sqrt(expected * (1 - expected) / static_cast<double>(est.n));
    summary["expected_single_rate"] = expected;
    summary["single_rates"] = {ra, rb};
    summary["single_rate_delta_sigma"] = {(ra - expected) / se, (rb - expected) / se};
  }
  const auto h = empirical_entropy(est);
  summary["entropy"] = {{"plugin_bits", h.bits}, {"bias_bits", h.bias}};
  return summary;
}

}  // namespace entangle
