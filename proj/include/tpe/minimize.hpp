// Steepest descent over Fourier coefficients at fixed curve length.
#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "tpe/curves.hpp"
#include "tpe/energies.hpp"
#include "tpe/quadrature.hpp"

namespace tpe {

struct StepRule {
  double initial_step = 1e-3;
  double shrink = 0.5;
  double armijo = 1e-4;
};

struct MinimizeConfig {
  EnergySpec spec;
  int modes = 5;
  int dims = 2;
  double target_length = 1.0;
  int max_iters = 500;
  double grad_step = 1e-6;
  StepRule step_rule;
  double stop_grad_norm = 1e-4;
  /// Grid for the objective (single level, no doubling). The reported final
  /// energy uses `final_quad`.
  QuadratureSpec quad{64, 64, 4.0, 3, 1e-6};
  QuadratureSpec final_quad;

  /// Throws std::invalid_argument on out-of-range settings or on kinds the
  /// minimizer does not support (I1, I2, I3 and the slices).
  void validate() const;
};

enum class Termination { grad_norm, max_iters, line_search_failure };
std::string to_string(Termination t);

struct MinimizeReport {
  std::vector<double> energies;  ///< objective per accepted iterate, start included
  FourierCurve final_coeffs{2, {{{}, {}}, {{}, {}}}};
  double final_energy = 0.0;     ///< final curve on config.final_quad
  double final_grad_norm = 0.0;
  double circle_deviation = 0.0;
  double bound_gap = 0.0;        ///< (final_energy - bound) / bound
  int iterations_used = 0;
  Termination terminated_by = Termination::max_iters;
};

/// Coefficients a_k, b_k (k >= 1) of every dimension in the order
/// d-major, then k, then (a, b). The constant terms are not parameters.
Eigen::VectorXd pack_coefficients(const FourierCurve& curve);
FourierCurve unpack_coefficients(const FourierCurve& like, const Eigen::VectorXd& x);

/// Objective: rescale to the target length, sample (arc-length when the
/// functional requires it) and evaluate on config.quad. +infinity when the
/// curve is not embedded or otherwise invalid.
double energy_of_coeffs(const FourierCurve& coeffs, const MinimizeConfig& config);

/// Central differences; one-sided where the stencil hits the barrier.
Eigen::VectorXd gradient_fd(const FourierCurve& coeffs, const MinimizeConfig& config);

MinimizeReport descend(const FourierCurve& start, const MinimizeConfig& config);

/// Coefficient of variation of |gamma - centroid| over constant-speed samples.
double circle_deviation(const FourierCurve& curve, int n = kDefaultSamples);

/// Sharp lower bound matching spec.kind at length L (TP, TPClassic, G, F,
/// Willmore); NaN for kinds without one.
double bound_for(const EnergySpec& spec, double length);

/// energy(perturbed_circle(1, mode, eps)) - energy(circle of length 1).
double perturbation_gap(const EnergySpec& spec, int mode, double eps, const QuadratureSpec& quad = {});

}  // namespace tpe
