#include "entangle/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "entangle/epr.hpp"
#include "entangle/infotheory.hpp"

namespace entangle {

namespace {

constexpr double kPi = std::numbers::pi;

double epr_pair_conditional_entropy(SpinMagnitude s, const Direction& x, const Direction& y) {
  const RelativeAngle alpha(angle_between(x, y));
  return conditional_entropy(epr_joint(s, alpha).p, epr_conditional(s, alpha).p);
}

double ghz_term_conditional_entropy(double x, double y, double z) {
  const AngleTriple<double> t{x, y, z};
  return conditional_entropy(ghz_joint_by_condition(ghz_full_distribution(t)), ghz_conditionals(t).p);
}

std::vector<std::pair<std::string, double>> ghz_inputs(const GhzBellAngles& g) {
  return {{"phi1", g.phi1}, {"phi1_prime", g.phi1_prime}, {"phi2", g.phi2}, {"phi2_prime", g.phi2_prime},
          {"phi3", g.phi3}};
}

std::vector<std::pair<std::string, double>> triple_inputs(const AngleTriple<double>& t) {
  return {{"phi1", t.phi1}, {"phi2", t.phi2}, {"phi3", t.phi3}};
}

double margin_of(double lhs, std::optional<double> lower, std::optional<double> upper) {
  double m = -std::numeric_limits<double>::infinity();
  if (upper) m = std::max(m, lhs - *upper);
  if (lower) m = std::max(m, *lower - lhs);
  return m;
}

}  // namespace

InequalityReport make_report(std::string name, double lhs, std::optional<double> lower,
                             std::optional<double> upper,
                             std::vector<std::pair<std::string, double>> inputs) {
  if (!lower && !upper) throw std::invalid_argument("an inequality needs at least one bound");
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.lower_bound = lower;
  r.upper_bound = upper;
  r.margin = margin_of(lhs, lower, upper);
  r.violated = r.margin > kViolationSlack;
  r.inputs = std::move(inputs);
  return r;
}

nlohmann::ordered_json to_json(const InequalityReport& r) {
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = v;
  nlohmann::ordered_json bounds = nlohmann::ordered_json::object();
  bounds["lower"] = r.lower_bound ? nlohmann::ordered_json(*r.lower_bound) : nlohmann::ordered_json(nullptr);
  bounds["upper"] = r.upper_bound ? nlohmann::ordered_json(*r.upper_bound) : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["inputs"] = std::move(inputs);
  j["lhs"] = r.lhs;
  j["bounds"] = std::move(bounds);
  j["margin"] = r.margin;
  j["violated"] = r.violated;
  return j;
}

double bell_epr_lhs(SpinMagnitude s, double a, double a_prime, double b, double b_prime) {
  auto p = [s](double x, double y) { return epr_transmission(s, RelativeAngle(x - y)); };
  const double single = 1.0 / (s.twice() + 1);
  return p(a, b) + p(a_prime, b) - p(a, b_prime) + p(a_prime, b_prime) - single - single;
}

InequalityReport bell_epr(SpinMagnitude s, double a, double a_prime, double b, double b_prime) {
  return make_report("bell_epr", bell_epr_lhs(s, a, a_prime, b, b_prime), -1.0, 0.0,
                     {{"twice_spin", s.twice()}, {"a", a}, {"a_prime", a_prime}, {"b", b}, {"b_prime", b_prime}});
}

double bell_ghz_lhs(const GhzBellAngles& g, bool corrected) {
  auto p = [&](double x, double y) { return ghz_transmission(AngleTriple<double>{x, y, g.phi3}); };
  const auto marg = ghz_pair_marginals(AngleTriple<double>{g.phi1, g.phi2, g.phi3});
  const double p13 = marg.pairs[1](3);  // p(phi1; phi3)
  const double p23 = marg.pairs[2](3);  // p(phi2; phi3)
  const double disputed = corrected ? p(g.phi1_prime, g.phi2) : p(g.phi1_prime, g.phi1);
  return p(g.phi1, g.phi2) + disputed + p(g.phi1, g.phi2_prime) - p(g.phi1_prime, g.phi2_prime) - p13 - p23;
}

InequalityReport bell_ghz(const GhzBellAngles& g, bool corrected) {
  const double single3 = ghz_pair_marginals(AngleTriple<double>{g.phi1, g.phi2, g.phi3}).singles[2](1);
  auto inputs = ghz_inputs(g);
  inputs.emplace_back("corrected", corrected ? 1.0 : 0.0);
  return make_report(corrected ? "bell_ghz_corrected" : "bell_ghz_literal", bell_ghz_lhs(g, corrected), -single3,
                     0.0, std::move(inputs));
}

InequalityReport bc_epr_general(SpinMagnitude s, const AnalyzerQuad& q) {
  const double lhs = epr_pair_conditional_entropy(s, q.a, q.b) - epr_pair_conditional_entropy(s, q.a, q.b_prime) -
                     epr_pair_conditional_entropy(s, q.a_prime, q.b_prime) -
                     epr_pair_conditional_entropy(s, q.a_prime, q.b);
  return make_report("bc_epr_general", lhs, std::nullopt, 0.0,
                     {{"twice_spin", s.twice()},
                      {"a.b", angle_between(q.a, q.b)},
                      {"a.b_prime", angle_between(q.a, q.b_prime)},
                      {"a_prime.b_prime", angle_between(q.a_prime, q.b_prime)},
                      {"a_prime.b", angle_between(q.a_prime, q.b)}});
}

double bc_epr_coplanar_lhs(SpinMagnitude s, double alpha) {
  return epr_conditional_entropy(s, RelativeAngle(3 * alpha)) - 3 * epr_conditional_entropy(s, RelativeAngle(alpha));
}

InequalityReport bc_epr_coplanar(SpinMagnitude s, double alpha) {
  return make_report("bc_epr_coplanar", bc_epr_coplanar_lhs(s, alpha), std::nullopt, 0.0,
                     {{"twice_spin", s.twice()}, {"alpha", alpha}});
}

InequalityReport bc_ghz(const GhzBellAngles& g) {
  const double lhs = ghz_term_conditional_entropy(g.phi1, g.phi2, g.phi3) -
                     ghz_term_conditional_entropy(g.phi1, g.phi2_prime, g.phi3) -
                     ghz_term_conditional_entropy(g.phi1_prime, g.phi2_prime, g.phi3) -
                     ghz_term_conditional_entropy(g.phi1_prime, g.phi2, g.phi3);
  return make_report("bc_ghz", lhs, std::nullopt, 0.0, ghz_inputs(g));
}

GhzBellAngles bc_ghz_geometry(double phi3) { return {kPi / 4, 3 * kPi / 4, 0.0, kPi / 2, phi3}; }

double bc_ghz_reduced_lhs(double phi3) {
  auto H = [](double t) { return binary_entropy((1 - std::cos(t)) / 2); };
  return H(kPi / 4 + phi3) - 3 * H(3 * kPi / 4 + phi3);
}

InequalityReport bc_ghz_reduced(double phi3) {
  return make_report("bc_ghz_reduced", bc_ghz_reduced_lhs(phi3), std::nullopt, 0.0, {{"phi3", phi3}});
}

InequalityReport lieb_ruskai_ghz(const AngleTriple<double>& angles) {
  const auto m = ghz_pair_marginals(angles);
  const double lhs = shannon_entropy(m.pairs[1]) - shannon_entropy(m.singles[0]) + shannon_entropy(m.pairs[2]) -
                     shannon_entropy(m.singles[1]);
  return make_report("lieb_ruskai_ghz", lhs, 0.0, std::nullopt, triple_inputs(angles));
}

InequalityReport three_party_subadditivity(const AngleTriple<double>& angles) {
  const auto d = ghz_full_distribution(angles);
  const auto m = marginalize(d);
  const double h2 = shannon_entropy(m.singles[1]);
  const double h123 = shannon_entropy(d.p);
  const double h12 = shannon_entropy(m.pairs[0]);
  const double h32 = shannon_entropy(m.pairs[2]);
  const double lhs = h123 - h2 - (h12 - h2) - (h32 - h2);
  return make_report("three_party_subadditivity", lhs, std::nullopt, 0.0, triple_inputs(angles));
}

InequalityReport araki_lieb_epr(SpinMagnitude s, double alpha) {
  const auto e = epr_entropies(s, RelativeAngle(alpha));
  return make_report("araki_lieb_epr", e.H_joint, std::abs(e.H_a - e.H_b), e.H_a + e.H_b,
                     {{"twice_spin", s.twice()}, {"alpha", alpha}});
}

ScanResult scan_max_violation(const MarginFunction& margin, const std::vector<GridAxis>& grid, unsigned workers) {
  if (grid.empty()) throw std::invalid_argument("scan grid has no axes");
  std::int64_t total = 1;
  for (const auto& axis : grid) {
    if (axis.count < 1) throw std::invalid_argument("axis '" + axis.name + "' has no points");
    if (total > kMaxScanEvaluations / axis.count)
      throw std::invalid_argument("scan grid exceeds " + std::to_string(kMaxScanEvaluations) + " evaluations");
    total *= axis.count;
  }
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, total));

  struct Best {
    double value = -std::numeric_limits<double>::infinity();
    std::int64_t index = -1;
  };
  const auto n_axes = grid.size();
  auto run = [&](std::int64_t begin, std::int64_t end) {
    Best best;
    std::vector<double> point(n_axes);
    for (std::int64_t idx = begin; idx < end; ++idx) {
      std::int64_t rem = idx;
      for (std::size_t a = n_axes; a-- > 0;) {
        point[a] = grid[a].at(rem % grid[a].count);
        rem /= grid[a].count;
      }
      const double v = margin(point);
      if (best.index < 0 || v > best.value) best = {v, idx};
    }
    return best;
  };

  std::vector<Best> partial(workers);
  if (workers == 1) {
    partial[0] = run(0, total);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::int64_t begin = total * w / workers;
      const std::int64_t end = total * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] { partial[w] = run(begin, end); });
    }
    for (auto& t : pool) t.join();
  }
  // Chunks are ordered, so a strict comparison keeps the first occurrence.
  Best best = partial[0];
  for (unsigned w = 1; w < workers; ++w)
    if (partial[w].value > best.value) best = partial[w];

  ScanResult result;
  result.max_margin = best.value;
  result.evaluations = total;
  result.argmax.resize(n_axes);
  std::int64_t rem = best.index;
  for (std::size_t a = n_axes; a-- > 0;) {
    result.argmax[a] = grid[a].at(rem % grid[a].count);
    rem /= grid[a].count;
  }
  return result;
}

namespace {

std::int64_t full_circle_count(double step_deg) {
  if (!(step_deg > 0.0)) throw std::invalid_argument("grid step must be positive");
  return std::llround(360.0 / step_deg);
}

}  // namespace

ScanResult scan_bell_epr(SpinMagnitude s, double step_deg, unsigned workers) {
  const std::int64_t n = full_circle_count(step_deg);
  const double step = degrees_to_radians(step_deg);
  const std::vector<GridAxis> grid = {{"a_prime", 0.0, step, n}, {"b", 0.0, step, n}, {"b_prime", 0.0, step, n}};
  // Every pairwise difference is a whole number of grid steps, so the joint
  // transmission is tabulated once per step count.
  std::vector<double> transmission(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k)
    transmission[static_cast<std::size_t>(k)] = epr_transmission(s, RelativeAngle(static_cast<double>(k) * step));
  const double singles = 2.0 / (s.twice() + 1);
  return scan_max_violation(
      [&, n, step](std::span<const double> x) {
        const std::int64_t ap = std::llround(x[0] / step), b = std::llround(x[1] / step),
                           bp = std::llround(x[2] / step);
        auto p = [&](std::int64_t i, std::int64_t j) {
          return transmission[static_cast<std::size_t>(((i - j) % n + n) % n)];
        };
        const double lhs = p(0, b) + p(ap, b) - p(0, bp) + p(ap, bp) - singles;
        return std::max(lhs, -1.0 - lhs);
      },
      grid, workers);
}

ScanResult scan_bc_epr(SpinMagnitude s, double step_deg, unsigned workers) {
  const std::int64_t n = std::llround(180.0 / step_deg);
  if (!(step_deg > 0.0) || n < 1) throw std::invalid_argument("grid step must be positive and at most 180 degrees");
  const double step = degrees_to_radians(step_deg);
  return scan_max_violation([s](std::span<const double> x) { return bc_epr_coplanar_lhs(s, x[0]); },
                            {{"alpha", step, step, n}}, workers);
}

ScanResult scan_bell_ghz(double phi3, bool corrected, double step_deg, unsigned workers) {
  const std::int64_t n = full_circle_count(step_deg);
  const double step = degrees_to_radians(step_deg);
  const std::vector<GridAxis> grid = {
      {"phi1", 0.0, step, n}, {"phi1_prime", 0.0, step, n}, {"phi2", 0.0, step, n}, {"phi2_prime", 0.0, step, n}};
  return scan_max_violation(
      [phi3, corrected](std::span<const double> x) {
        const double lhs = bell_ghz_lhs({x[0], x[1], x[2], x[3], phi3}, corrected);
        return std::max(lhs, -0.5 - lhs);
      },
      grid, workers);
}

}  // namespace entangle
