#include "tpe/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace tpe {

void QuadratureSpec::validate() const {
  if (n_u < 16 || n_u % 2 != 0 || n_w < 16 || n_w % 2 != 0) {
    throw std::invalid_argument("QuadratureSpec: N_u and N_w must be even and >= 16");
  }
  if (!(grading_exponent >= 1.0 && grading_exponent <= 8.0)) {
    throw std::invalid_argument("QuadratureSpec: grading exponent must lie in [1, 8]");
  }
  if (doubling_rounds < 1) throw std::invalid_argument("QuadratureSpec: doubling_rounds must be >= 1");
  if (!(convergence_rtol > 0.0)) throw std::invalid_argument("QuadratureSpec: convergence_rtol must be > 0");
}

GradedRule graded_nodes(int n, double exponent) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("graded_nodes: N must be even and >= 2");
  if (!(exponent >= 1.0)) throw std::invalid_argument("graded_nodes: exponent must be >= 1");

  GradedRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.endpoint_distance.resize(n);
  const double h = 1.0 / n;
  double total = 0.0;
  for (int j = 0; j < n / 2; ++j) {
    // Lower half; the upper half is its mirror image.
    const double t = (j + 0.5) * h;
    // w = 1 / (1 + r), 1 - w = r / (1 + r) with r = ((1 - t) / t)^g
    const double r = std::exp(exponent * (std::log1p(-t) - std::log(t)));
    const double w = 1.0 / (1.0 + r);
    const double c = r / (1.0 + r);
    const double weight = exponent * w * c * (1.0 / t + 1.0 / (1.0 - t)) * h;
    rule.nodes[j] = {w, w};
    rule.nodes[n - 1 - j] = {c, -w};
    rule.weights[j] = weight;
    rule.weights[n - 1 - j] = weight;
    rule.endpoint_distance[j] = w;
    rule.endpoint_distance[n - 1 - j] = w;
    total += 2.0 * weight;
  }
  if (exponent != 1.0) {
    for (double& wt : rule.weights) wt /= total;
  }
  return rule;
}

double effective_grading(double base, double endpoint_exponent) {
  if (!(endpoint_exponent > -1.0)) return base;
  return std::clamp(std::max(base, 4.0 / (endpoint_exponent + 1.0)), 1.0, kMaxGrading);
}

double periodic_trapezoid(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("periodic_trapezoid: no samples");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

ConvergenceStudy convergence_study(const std::function<double(int)>& evaluator,
                                   const QuadratureSpec& spec) {
  if (spec.doubling_rounds < 1) throw std::invalid_argument("convergence_study: need >= 1 doubling round");
  ConvergenceStudy study;
  int n = spec.n_w;
  for (int r = 0; r <= spec.doubling_rounds; ++r) {
    study.grid_sizes.push_back(n);
    study.values.push_back(evaluator(n));
    n *= 2;
  }
  const auto& v = study.values;
  const std::size_t m = v.size();
  const double last = v[m - 1];
  const double diff = last - v[m - 2];
  study.converged = std::isfinite(last) && std::abs(diff) <= spec.convergence_rtol * std::abs(last);

  study.observed_order = std::numeric_limits<double>::quiet_NaN();
  study.richardson_estimate = last;
  if (m >= 3) {
    const double prev_diff = v[m - 2] - v[m - 3];
    if (diff != 0.0 && prev_diff != 0.0) {
      study.observed_order = std::log2(std::abs(prev_diff / diff));
    }
  }
  if (std::isfinite(study.observed_order) && study.observed_order > 0.0) {
    study.richardson_estimate = last + diff / (std::exp2(study.observed_order) - 1.0);
  }
  return study;
}

QuadratureSpec parse_quad_flag(const std::string& text, QuadratureSpec base) {
  std::stringstream ss(text);
  std::string item;
  std::vector<std::string> parts;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("--quad expects NU,NW,G, got '" + text + "'");
  try {
    base.n_u = std::stoi(parts[0]);
    base.n_w = std::stoi(parts[1]);
    base.grading_exponent = std::stod(parts[2]);
  } catch (const std::exception&) {
    throw std::invalid_argument("--quad expects NU,NW,G, got '" + text + "'");
  }
  base.validate();
  return base;
}

}  // namespace tpe
