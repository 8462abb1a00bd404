#include "tpe/gaussmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace tpe {

GaussEval gauss_eval(const Secant& secant, double length) {
  const double chord = secant.chord.norm();
  if (!(chord >= kDegenerateChord * length)) {
    throw GeometryError("gauss_eval: coincident points (chord below 1e-14 L); samples are not embedded");
  }
  GaussEval g;
  g.chord = chord;
  g.phi = secant.chord / chord;
  g.du_norm = project_perp(g.phi, secant.tangent_change).norm() / chord;
  // |P_perp[phi] t2| = |t2| |P_perp[t2] phi|, and the latter is exact near the diagonal.
  g.dw_norm = secant.tangent_end.norm() * secant.normal_end.norm() / (chord * chord);
  g.inv_tp_radius = 2.0 * secant.normal_start.norm() / (chord * chord);
  return g;
}

GaussEval gauss_eval(const CurveSamples& samples, int i, int j_offset) {
  const int n = samples.size();
  if (i < 0 || i >= n) throw std::out_of_range("gauss_eval: sample index out of range");
  const int j = ((j_offset % n) + n) % n;
  if (j == 0) throw std::invalid_argument("gauss_eval: offset must be nonzero modulo N");
  return gauss_eval(secant_at(samples, i, grid_offset(j, n)), samples.length());
}

namespace {

int snap_offset(double w, int n) {
  if (!(w > 0.0 && w < 1.0)) throw std::invalid_argument("path_length_u: w must lie in (0, 1)");
  const int j = static_cast<int>(std::lround(w * n));
  return std::clamp(j, 1, n - 1);
}

double endpoint_limit(const CurveSamples& samples, int i) {
  return 0.5 * samples.curvatures()[i] * samples.speeds()[i];
}

}  // namespace

PathLength path_length_u(const CurveSamples& samples, double w) {
  const int n = samples.size();
  const int j = snap_offset(w, n);
  const SecantKernel kernel(samples, {grid_offset(j, n)});
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += gauss_eval(kernel(i, 0), samples.length()).du_norm;
  return {sum / n, static_cast<double>(j) / n};
}

double path_length_w(const CurveSamples& samples, int i) {
  const int n = samples.size();
  if (i < 0 || i >= n) throw std::out_of_range("path_length_w: sample index out of range");
  double sum = endpoint_limit(samples, i);
  for (int j = 1; j < n; ++j) {
    sum += gauss_eval(secant_at(samples, i, grid_offset(j, n)), samples.length()).dw_norm;
  }
  return sum / n;
}

FenchelReport fenchel_report(const FourierCurve& curve, int n) {
  return fenchel_report(resample_arclength(curve, n));
}

FenchelReport fenchel_report(const CurveSamples& samples) {
  const int n = samples.size();
  const SecantKernel kernel(samples, grid_offsets(n));
  std::vector<double> path_u(n - 1, 0.0);
  std::vector<double> path_w(n, 0.0);
  for (int i = 0; i < n; ++i) {
    path_w[i] = endpoint_limit(samples, i);
    for (int j = 0; j < kernel.cols(); ++j) {
      const GaussEval g = gauss_eval(kernel(i, j), samples.length());
      path_u[j] += g.du_norm;
      path_w[i] += g.dw_norm;
    }
  }

  FenchelReport r;
  r.n = n;
  r.min_path_u = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n - 1; ++j) {
    const double v = path_u[j] / n;
    if (v < r.min_path_u) {
      r.min_path_u = v;
      r.argmin_w = kernel.offset(j).w;
    }
  }
  r.min_path_w = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double v = path_w[i] / n;
    if (v < r.min_path_w) {
      r.min_path_w = v;
      r.argmin_u = samples.parameter(i);
    }
  }
  r.slack_u = r.min_path_u - 2.0 * std::numbers::pi;
  r.slack_w = r.min_path_w - std::numbers::pi;
  return r;
}

}  // namespace tpe
