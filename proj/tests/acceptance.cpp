// Acceptance suite: one PASS/FAIL line per criterion with the measured
// quantities and wall time. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "tpe/bounds.hpp"
#include "tpe/energies.hpp"
#include "tpe/gaussmap.hpp"
#include "tpe/minimize.hpp"
#include "tpe/quadrature.hpp"

using namespace tpe;

namespace {

constexpr double kPi = 3.14159265358979323846;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

CurveSamples arc_fixture(const FourierCurve& c, int n = kDefaultSamples) {
  return resample_arclength(rescale_to_length(c, 1.0), n);
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + what + (ok ? "" : " [FAILED]");
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

struct Criterion {
  int id;
  std::string name;
  double time_limit;  ///< seconds, <= 0 for none
  std::function<Outcome()> run;
};

Outcome circle_saturation() {
  Outcome o;
  const EnergyValue v = tp_energy(sample(make_circle(1.0), 256), 4.0, 2.0);
  o.require(rel(v.value, kPi * kPi) <= 1e-6, fmt("TP(4,2) = %.12f, rel err %.2e", v.value, rel(v.value, kPi * kPi)));
  return o;
}

Outcome bound_formula() {
  Outcome o;
  const CurveSamples c = sample(make_circle(1.0), 256);
  const double grid[][2] = {{3, 2}, {3.5, 2}, {4, 2}, {4.5, 2}, {2, 1}, {2.5, 1.5}, {5, 3}};
  for (const auto& pq : grid) {
    const double err = rel(tp_energy(c, pq[0], pq[1]).value, tp_lower_bound(1.0, pq[0], pq[1]).value);
    o.require(err <= 1e-4, fmt("(%g,", pq[0]) + fmt("%g) ", pq[1]) + fmt("%.1e", err));
  }
  return o;
}

Outcome gamma_identity() {
  Outcome o;
  for (double a : {-0.9, -0.5, 0.0, 1.0, 2.0, 3.0}) {
    const GradedRule rule = graded_nodes(4096, effective_grading(4.0, a));
    double sum = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      sum += rule.weights[j] * std::pow(std::sin(kPi * rule.endpoint_distance[j]), a);
    }
    const double err = rel(sum, sin_power_integral(a));
    o.require(err <= 1e-8, fmt("a=%g %.1e", a, err));
  }
  return o;
}

Outcome fenchel() {
  Outcome o;
  for (const auto& [name, c] : {std::pair<const char*, FourierCurve>{"circle", make_circle(1.0)},
                                {"ellipse", make_ellipse(2.0, 1.0)}}) {
    const FenchelReport r = fenchel_report(c, kDefaultSamples);
    o.require(std::abs(r.slack_u) <= 1e-4 && std::abs(r.slack_w) <= 1e-4,
              std::string(name) + fmt(" slacks %.1e/%.1e", r.slack_u, r.slack_w));
  }
  for (const auto& [name, c] : {std::pair<const char*, FourierCurve>{"trefoil", make_trefoil(1.0)},
                                {"perturbed(3,0.3)", make_perturbed_circle(1.0, 3, 0.3)}}) {
    const FenchelReport r = fenchel_report(c, kDefaultSamples);
    o.require(r.slack_u > 0.01, std::string(name) + fmt(" min-u slack %.3e", r.slack_u));
    o.require(r.slack_w > 0.01, std::string(name) + fmt(" min-w slack %.3e", r.slack_w));
  }
  return o;
}

Outcome minorants() {
  Outcome o;
  for (const auto& [name, c] : {std::pair<const char*, FourierCurve>{"ellipse", make_ellipse(2.0, 1.0)},
                                {"perturbed(3,0.05)", make_perturbed_circle(1.0, 3, 0.05)}}) {
    const CurveSamples s = arc_fixture(c);
    const EnergyValue tp4 = tp_energy(s, 4.0, 2.0);
    const EnergyValue g4 = g_energy(s, 4.0, 2.0);
    const EnergyValue tp3 = tp_energy(s, 3.0, 2.0);
    const EnergyValue f3 = f_energy(s, 3.0, 2.0);
    o.require(g4.value <= tp4.value + 3.0 * (tp4.error_estimate + g4.error_estimate),
              std::string(name) + fmt(" G=%.6f TP=%.6f", g4.value, tp4.value));
    o.require(f3.value <= tp3.value + 3.0 * (tp3.error_estimate + f3.error_estimate),
              std::string(name) + fmt(" F=%.6f TP=%.6f", f3.value, tp3.value));
  }
  const CurveSamples c = sample(make_circle(1.0), 256);
  const double eg = rel(g_energy(c, 4.0, 2.0).value, tp_energy(c, 4.0, 2.0).value);
  const double ef = rel(f_energy(c, 3.0, 2.0).value, tp_energy(c, 3.0, 2.0).value);
  o.require(eg <= 1e-5 && ef <= 1e-5, fmt("circle G/TP %.1e, F/TP %.1e", eg, ef));
  return o;
}

Outcome homogeneity_reparametrization() {
  Outcome o;
  const FourierCurve e = make_ellipse(2.0, 1.0);
  const CurveSamples base = sample(e, 128);
  double worst = 0.0;
  for (double lambda : {0.5, 2.0}) {
    const CurveSamples scaled = sample(e.scaled(lambda), 128);
    for (const auto& [p, q] : {std::pair{3.0, 2.0}, {4.0, 2.0}, {4.5, 2.0}, {2.5, 1.5}}) {
      EnergySpec spec;
      spec.p = p;
      spec.q = q;
      const double e0 = evaluate_on_grid(base, spec, 128, 4.0);
      const double e1 = evaluate_on_grid(scaled, spec, 128, 4.0);
      worst = std::max(worst, rel(e1, std::pow(lambda, q + 2.0 - p) * e0));
    }
  }
  o.require(worst <= 1e-12, fmt("scaling rel err %.1e", worst));
  const FourierCurve unit = rescale_to_length(e, 1.0);
  const EnergyValue a = tp_energy(sample(unit, 256), 4.0, 2.0);
  const EnergyValue b = tp_energy(resample_arclength(unit, 256), 4.0, 2.0);
  const double allowed = 3.0 * (a.error_estimate + b.error_estimate);
  o.require(std::abs(a.value - b.value) <= allowed,
            fmt("reparametrization |dTP| = %.2e, allowed %.2e", std::abs(a.value - b.value), allowed));
  return o;
}

Outcome willmore() {
  Outcome o;
  const double bound = willmore_lower_bound(1.0, 0.5, 1.0).value;
  const double disk = willmore_fractional(sample(make_circle(1.0), 256), 0.5, 1.0).value;
  o.require(rel(disk, bound) <= 1e-4, fmt("disk W = %.10f, bound %.10f", disk, bound));
  const double ell = willmore_fractional(arc_fixture(make_ellipse(2.0, 1.0)), 0.5, 1.0).value;
  o.require(ell > 1.01 * bound, fmt("ellipse W/bound = %.4f", ell / bound));
  return o;
}

Outcome wirtinger() {
  Outcome o;
  const WirtingerResult c = wirtinger_check(sample(make_circle(1.0), kDefaultSamples), 0.3);
  o.require(std::abs(c.lhs - c.rhs) <= 1e-10, fmt("circle |lhs - rhs| = %.1e", std::abs(c.lhs - c.rhs)));
  const WirtingerResult e = wirtinger_check(arc_fixture(make_ellipse(2.0, 1.0)), 0.3);
  o.require(e.rhs - e.lhs > 1e-4, fmt("ellipse rhs - lhs = %.3e", e.rhs - e.lhs));
  return o;
}

Outcome minimization() {
  Outcome o;
  MinimizeConfig cfg;
  cfg.max_iters = 500;
  const MinimizeReport r = descend(make_ellipse(1.5, 1.0), cfg);
  o.require(r.bound_gap <= 5e-3 && r.circle_deviation <= 1e-2,
            fmt("gap %.2e, deviation %.2e", r.bound_gap, r.circle_deviation) + ", " +
                std::to_string(r.iterations_used) + " iters");
  for (const auto& [p, q] : {std::pair{4.0, 2.0}, {3.0, 2.0}}) {
    EnergySpec spec;
    spec.p = p;
    spec.q = q;
    for (int mode : {2, 3, 4}) {
      const double gap = perturbation_gap(spec, mode, 0.05);
      o.require(gap > 0.0, fmt("(%g,2)", p) + " mode " + std::to_string(mode) + fmt(" gap %.2e", gap));
    }
  }
  return o;
}

Outcome divergence() {
  Outcome o;
  const CurveSamples c = sample(make_circle(1.0), 256);
  EnergySpec spec;
  spec.p = 5.2;
  spec.q = 2.0;
  QuadratureSpec quad;
  quad.doubling_rounds = 3;
  const ConvergenceStudy st =
      convergence_study([&](int n) { return evaluate_on_grid(c, spec, n, quad.grading_exponent); }, quad);
  std::string values;
  for (double v : st.values) values += (values.empty() ? "" : " ") + fmt("%.4g", v);
  o.require(!st.converged && st.values.size() == 4, "values " + values);
  o.require(!tp_energy(c, 5.2, 2.0).converged, "tp_energy not converged");
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "circle saturation TP(4,2)", 1.0, circle_saturation},
      {2, "circle saturation across the bound formula", 10.0, bound_formula},
      {3, "gamma formula vs graded quadrature", 1.0, gamma_identity},
      {4, "Fenchel inequalities and rigidity", 5.0, fenchel},
      {5, "minorant chains", 0.0, minorants},
      {6, "homogeneity and reparametrization", 0.0, homogeneity_reparametrization},
      {7, "fractional Willmore bound", 0.0, willmore},
      {8, "Wirtinger inequality", 0.0, wirtinger},
      {9, "minimization evidence", 60.0, minimization},
      {10, "divergence detection", 0.0, divergence},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0.0) o.require(secs < c.time_limit, fmt("time %.2f s < %g s", secs, c.time_limit));
    else o.detail += fmt("; time %.2f s", secs);
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
