// Quadrature rules for periodic and endpoint-singular integrands, and
// grid-doubling convergence studies.
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tpe/secant.hpp"

namespace tpe {

struct QuadratureSpec {
  int n_u = 256;
  int n_w = 256;
  double grading_exponent = 4.0;
  int doubling_rounds = 3;
  double convergence_rtol = 1e-6;

  /// Throws std::invalid_argument unless n_u, n_w >= 16 (even) and the
  /// grading exponent lies in [1, 8].
  void validate() const;
};

/// Nodes in (0, 1) clustered at both endpoints.
struct GradedRule {
  std::vector<Offset> nodes;   ///< w and its signed torus representative
  std::vector<double> weights;
  /// min(w, 1 - w) of each node, computed without cancellation.
  std::vector<double> endpoint_distance;
};

/// Midpoint rule in t pulled back through the sigmoidal map
/// w(t) = t^g / (t^g + (1 - t)^g), which behaves like t^g at t = 0 (and
/// symmetrically at t = 1) and is smooth in between. g = 1 gives the uniform
/// midpoint rule. Weights are normalized to sum to one.
GradedRule graded_nodes(int n, double exponent);

/// Grading exponent for an integrand ~ w^a at the endpoints: at least `base`,
/// and large enough that the pulled-back integrand vanishes like t^3 so the
/// midpoint rule converges at fourth order. Capped at kMaxGrading so that
/// the smallest offsets (about (2N)^-g) stay far above the double underflow
/// threshold even after squaring.
inline constexpr double kMaxGrading = 32.0;
double effective_grading(double base, double endpoint_exponent);

/// Mean of periodic samples (trapezoid rule on a uniform periodic grid).
double periodic_trapezoid(std::span<const double> values);

struct ConvergenceStudy {
  std::vector<int> grid_sizes;
  std::vector<double> values;
  double richardson_estimate = 0.0;
  double observed_order = 0.0;
  bool converged = false;
};

/// Evaluates on N, 2N, ..., 2^rounds N with N = spec.n_w.
/// converged <=> |v_last - v_prev| <= rtol |v_last|.
ConvergenceStudy convergence_study(const std::function<double(int)>& evaluator,
                                   const QuadratureSpec& spec);

/// Parses the `--quad NU,NW,G` flag value.
QuadratureSpec parse_quad_flag(const std::string& text, QuadratureSpec base = {});

}  // namespace tpe
