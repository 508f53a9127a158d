// Command-line front end: point probes, figure sweeps, violation scans,
// Monte Carlo runs and oracle verification.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entangle/inequalities.hpp"
#include "entangle/reports.hpp"
#include "entangle/spin.hpp"

using namespace entangle;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

struct SpinFlags {
  std::vector<std::string> spins;
  std::optional<int> twice_spin;

  std::vector<SpinMagnitude> resolve(const std::vector<std::string>& fallback) const {
    if (twice_spin) return {SpinMagnitude(*twice_spin)};
    std::vector<SpinMagnitude> out;
    for (const auto& text : spins.empty() ? fallback : spins) out.push_back(SpinMagnitude::parse(text));
    return out;
  }
};

struct SweepFlags {
  double start = 0.0;
  double end = kTwoPi;
  bool end_set = false;
  int steps = 361;
};

void add_spin_flags(CLI::App* cmd, SpinFlags& f, bool many) {
  auto* opt = cmd->add_option("--spin", f.spins, many ? "spin values s, e.g. 1/2,1,2,5" : "spin value s, e.g. 1/2");
  if (many)
    opt->delimiter(',');
  else
    opt->expected(1);
  cmd->add_option("--twice-spin", f.twice_spin, "spin given as the integer 2s")->excludes(opt);
}

void add_sweep_flags(CLI::App* cmd, SweepFlags& f) {
  cmd->add_option("--start", f.start, "first grid value (radians)");
  cmd->add_option("--end", f.end, "last grid value (radians, default 2pi)")->each([&f](const std::string&) {
    f.end_set = true;
  });
  cmd->add_option("--steps", f.steps, "grid points, endpoints included")->check(CLI::PositiveNumber);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + out_path + "'");
}

double to_radians(double v, bool degrees) { return degrees ? degrees_to_radians(v) : v; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EPR spin-s and GHZ correlation statistics, Bell-type inequalities and figure data"};
  app.require_subcommand(1);

  bool degrees = false;
  std::string out_path;
  std::string format = "csv";
  app.add_flag("--degrees", degrees, "angle flags are in degrees (output stays in radians)");

  // probe
  auto* probe = app.add_subcommand("probe", "all statistics and inequality reports at one point");
  probe->require_subcommand(1);
  auto* probe_epr_cmd = probe->add_subcommand("epr", "two spin-s particles in the singlet state");
  SpinFlags probe_spin;
  double alpha = 0.0;
  add_spin_flags(probe_epr_cmd, probe_spin, false);
  probe_epr_cmd->add_option("--alpha", alpha, "relative analyzer angle")->required();
  auto* probe_ghz_cmd = probe->add_subcommand("ghz", "three-qubit GHZ state");
  double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0;
  bool literal = false;
  probe_ghz_cmd->add_option("--phi1", phi1, "azimuth of analyzer 1");
  probe_ghz_cmd->add_option("--phi2", phi2, "azimuth of analyzer 2");
  probe_ghz_cmd->add_option("--phi3", phi3, "azimuth of analyzer 3");
  probe_ghz_cmd->add_flag("--literal-eq31", literal, "use the p(phi1'; phi1; phi3) term in the three-particle Bell form");
  for (auto* c : {probe_epr_cmd, probe_ghz_cmd}) {
    c->add_flag("--degrees", degrees, "angle flags are in degrees");
    c->add_option("--out", out_path, "output file (default stdout)");
  }

  // fig
  auto* fig = app.add_subcommand("fig", "figure data as CSV sweeps");
  fig->require_subcommand(1);
  SpinFlags fig_spin;
  SweepFlags sweep;
  std::string column = "p10";
  auto* fig_cond = fig->add_subcommand("epr-cond", "P(1|0) or P(0|1) against alpha for several spins");
  fig_cond->add_option("--column", column, "p10 (P(1|0)) or p01 (P(0|1))")->check(CLI::IsMember({"p10", "p01"}));
  add_spin_flags(fig_cond, fig_spin, true);
  auto* fig_ent = fig->add_subcommand("epr-entropy", "H(a|b), H(a), H(a;b) against alpha for one spin");
  add_spin_flags(fig_ent, fig_spin, false);
  auto* fig_bc = fig->add_subcommand("bc-epr", "coplanar Braunstein-Caves difference against alpha");
  add_spin_flags(fig_bc, fig_spin, true);
  auto* fig_ghz_ent = fig->add_subcommand("ghz-entropy", "three-particle entropy against phi");
  auto* fig_bc_ghz_cmd = fig->add_subcommand("bc-ghz", "three-particle BC differences against phi3");
  for (auto* c : {fig_cond, fig_ent, fig_bc, fig_ghz_ent, fig_bc_ghz_cmd}) {
    add_sweep_flags(c, sweep);
    c->add_flag("--degrees", degrees, "sweep bounds are in degrees");
    c->add_option("--out", out_path, "output file (default stdout)");
    c->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  }

  // bell-scan
  auto* scan = app.add_subcommand("bell-scan", "grid search for the largest violation");
  std::string target = "epr";
  SpinFlags scan_spin;
  double step_deg = 0.0;
  unsigned workers = 0;
  double scan_phi3 = 0.0;
  scan->add_option("--target", target, "epr (probability Bell), bc-epr (coplanar BC) or ghz")
      ->check(CLI::IsMember({"epr", "bc-epr", "ghz"}));
  add_spin_flags(scan, scan_spin, false);
  scan->add_option("--step-deg", step_deg, "grid step in degrees (default 1, 0.1 for bc-epr, 10 for ghz)");
  scan->add_option("--phi3", scan_phi3, "fixed third azimuth for the ghz target");
  scan->add_flag("--literal-eq31", literal, "use the p(phi1'; phi1; phi3) term in the three-particle Bell form");
  scan->add_flag("--degrees", degrees, "angle flags are in degrees");
  scan->add_option("--workers", workers, "threads (0 = hardware concurrency)");

  // sample
  auto* sample = app.add_subcommand("sample", "seeded Monte Carlo outcome streams");
  std::string kind = "epr";
  SpinFlags sample_spin;
  std::size_t n = 1000;
  std::uint64_t seed = 0, stream_id = 0;
  std::size_t max_samples = 100'000'000;
  std::string summary_path;
  unsigned sample_workers = 1;
  sample->add_option("kind", kind, "epr, ghz or lhv")->required()->check(CLI::IsMember({"epr", "ghz", "lhv"}));
  add_spin_flags(sample, sample_spin, false);
  sample->add_option("--alpha", alpha, "relative analyzer angle (epr, lhv)");
  sample->add_option("--phi1", phi1, "azimuth of analyzer 1 (ghz)");
  sample->add_option("--phi2", phi2, "azimuth of analyzer 2 (ghz)");
  sample->add_option("--phi3", phi3, "azimuth of analyzer 3 (ghz)");
  sample->add_option("-n,--samples", n, "number of samples")->check(CLI::PositiveNumber);
  sample->add_option("--seed", seed, "64-bit seed");
  sample->add_option("--stream", stream_id, "stream id");
  sample->add_option("--max-samples", max_samples, "refuse larger runs");
  sample->add_option("--workers", sample_workers, "threads (output does not depend on this)");
  sample->add_option("--out", out_path, "CSV outcome stream path")->required();
  sample->add_option("--summary", summary_path, "summary JSON path (default stdout)");
  sample->add_flag("--degrees", degrees, "angle flags are in degrees");

  // verify
  auto* verify = app.add_subcommand("verify", "closed forms against the Hilbert-space oracle");
  verify->require_subcommand(1);
  auto* verify_oracle_cmd = verify->add_subcommand("oracle", "elementwise comparison on angle grids");
  std::string max_spin = "5";
  double verify_step = 5.0, ghz_step = 10.0;
  bool no_ghz = false;
  verify_oracle_cmd->add_option("--max-spin", max_spin, "largest spin s checked (at most 25)");
  verify_oracle_cmd->add_option("--step-deg", verify_step, "EPR angle grid step in degrees");
  verify_oracle_cmd->add_option("--ghz-step-deg", ghz_step, "GHZ tri-angle grid step in degrees");
  verify_oracle_cmd->add_flag("--no-ghz", no_ghz, "skip the GHZ leg");

  CLI11_PARSE(app, argc, argv);

  try {
    if (probe->parsed()) {
      nlohmann::ordered_json j;
      if (probe_epr_cmd->parsed()) {
        const auto spins = probe_spin.resolve({});
        if (spins.empty()) throw CLI::RequiredError("--spin or --twice-spin");
        j = probe_epr(spins.front(), to_radians(alpha, degrees));
      } else {
        j = probe_ghz({to_radians(phi1, degrees), to_radians(phi2, degrees), to_radians(phi3, degrees)},
                      literal);
      }
      emit(j.dump(2) + "\n", out_path);
      return 0;
    }

    if (fig->parsed()) {
      SweepSpec spec;
      spec.start = to_radians(sweep.start, degrees);
      spec.end = sweep.end_set ? to_radians(sweep.end, degrees) : kTwoPi;
      spec.steps = sweep.steps;
      Table t;
      if (fig_cond->parsed()) {
        spec.spins = fig_spin.resolve({"1/2", "1", "2", "5"});
        t = fig_epr_conditionals(spec, column == "p10" ? ConditionalColumn::p1_given_0 : ConditionalColumn::p0_given_1);
      } else if (fig_ent->parsed()) {
        spec.spins = fig_spin.resolve({"1/2"});
        t = fig_epr_entropies(spec);
      } else if (fig_bc->parsed()) {
        spec.spins = fig_spin.resolve({"1/2", "1", "2", "5"});
        t = fig_bc_epr(spec);
      } else if (fig_ghz_ent->parsed()) {
        t = fig_ghz_entropy(spec);
      } else {
        t = fig_bc_ghz(spec);
      }
      emit(format == "json" ? to_json(t).dump(2) + "\n" : to_csv(t), out_path);
      return 0;
    }

    if (scan->parsed()) {
      ScanResult r;
      nlohmann::ordered_json j;
      j["target"] = target;
      if (target == "ghz") {
        const double p3 = to_radians(scan_phi3, degrees);
        r = scan_bell_ghz(p3, !literal, step_deg > 0 ? step_deg : 10.0, workers);
        j["phi3"] = p3;
        j["corrected"] = !literal;
        j["axes"] = {"phi1", "phi1_prime", "phi2", "phi2_prime"};
      } else {
        const SpinMagnitude s = scan_spin.resolve({"1/2"}).front();
        j["spin"] = s.label();
        if (target == "epr") {
          r = scan_bell_epr(s, step_deg > 0 ? step_deg : 1.0, workers);
          j["axes"] = {"a_prime", "b", "b_prime"};
        } else {
          r = scan_bc_epr(s, step_deg > 0 ? step_deg : 0.1, workers);
          j["axes"] = {"alpha"};
        }
      }
      j["max_margin"] = r.max_margin;
      j["argmax"] = r.argmax;
      j["evaluations"] = r.evaluations;
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (sample->parsed()) {
      SampleRequest req;
      req.kind = kind == "epr" ? SampleKind::epr : kind == "ghz" ? SampleKind::ghz : SampleKind::lhv;
      req.spin = sample_spin.resolve({"1/2"}).front();
      req.alpha = to_radians(alpha, degrees);
      req.angles = {to_radians(phi1, degrees), to_radians(phi2, degrees), to_radians(phi3, degrees)};
      req.n = n;
      req.seed = seed;
      req.stream_id = stream_id;
      req.workers = sample_workers;
      req.max_samples = max_samples;
      if (n > max_samples) throw CLI::ValidationError("--samples", "exceeds --max-samples");
      std::ofstream csv(out_path, std::ios::binary);
      if (!csv) throw std::runtime_error("cannot open '" + out_path + "' for writing");
      const auto summary = run_sample(req, csv);
      csv.close();
      if (!csv) throw std::runtime_error("failed writing '" + out_path + "'");
      emit(summary.dump(2) + "\n", summary_path);
      return 0;
    }

    if (verify_oracle_cmd->parsed()) {
      VerifyOptions opt;
      const SpinMagnitude s = SpinMagnitude::parse(max_spin);
      if (s.twice() > 50) throw CLI::ValidationError("--max-spin", "exceeds the oracle ceiling of 25");
      opt.max_twice_spin = s.twice();
      opt.step_deg = verify_step;
      opt.ghz_step_deg = ghz_step;
      opt.include_ghz = !no_ghz;
      const auto rep = verify_oracle(opt);
      std::cout << rep.to_json().dump(2) << "\n";
      return rep.passed ? 0 : 1;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
