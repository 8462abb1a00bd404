// Command-line front end: energy, bound, fenchel, verify, sweep, minimize.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "tpe/curves.hpp"
#include "tpe/quadrature.hpp"

namespace tpe {

struct CliConfig {
  std::string subcommand;
  std::string curve = "circle";
  double p = 4.0;
  double q = 2.0;
  double s = 0.5;
  double wp = 1.0;                ///< Willmore exponent
  std::optional<double> length;   ///< rescale the curve to this length when set
  std::string kind = "TP";
  bool willmore = false;
  bool arclength = false;
  double slice = 0.5;
  std::string z = "u";
  QuadratureSpec quad;
  std::string out;                ///< output path; stdout when empty
  std::string format = "json";
  std::string only;               ///< verify: comma-separated groups
  std::optional<double> strict;   ///< verify: replaces every tolerance
  int n = kDefaultSamples;        ///< fenchel grid size
  std::string qs = "1.5,2,3";     ///< sweep
  std::string ps;                 ///< sweep, explicit p list
  int p_auto = 8;                 ///< sweep, points in [q+1, 2q+0.9] when ps is empty
  // minimize
  int modes = 5;
  int dims = 2;
  int max_iters = 500;
  double grad_step = 1e-6;
  double initial_step = 1e-3;
  double shrink = 0.5;
  double armijo = 1e-4;
  double stop_grad_norm = 1e-4;
  std::string opt_quad = "64,64,4";
  std::string trace;              ///< CSV of per-iteration energies
};

/// Exit codes: 0 success; 1 invalid input; 2 energy not converged
/// (divergence); 3 verify failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run_energy(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_bound(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_fenchel(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_verify(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_sweep(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_minimize(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Fixture grammar: circle, ellipse:a:b, perturbed:mode:eps, trefoil[:scale],
/// figure-eight, or a path to a curve JSON file.
FourierCurve parse_curve(const std::string& text);

}  // namespace tpe
