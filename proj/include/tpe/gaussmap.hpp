// The Gauss map phi(u, w) = (gamma(u + w) - gamma(u)) / |gamma(u + w) - gamma(u)|,
// its partial derivatives and the path lengths of its coordinate slices.
#pragma once

#include "tpe/curves.hpp"
#include "tpe/secant.hpp"

namespace tpe {

struct GaussEval {
  Vec3 phi;
  double du_norm = 0.0;        ///< |d phi / du|
  double dw_norm = 0.0;        ///< |d phi / dw|
  double chord = 0.0;          ///< |gamma(u + w) - gamma(u)|
  double inv_tp_radius = 0.0;  ///< 1 / r_TP(u, u + w)
};

/// Chords shorter than this fraction of the length are treated as coincident
/// points.
inline constexpr double kDegenerateChord = 1e-14;

/// Throws GeometryError if the chord is degenerate relative to `length`.
GaussEval gauss_eval(const Secant& secant, double length);

/// Gauss map between samples i and i + j_offset (mod N).
GaussEval gauss_eval(const CurveSamples& samples, int i, int j_offset);

struct PathLength {
  double value = 0.0;
  double w = 0.0;  ///< offset actually used, snapped to the sample grid
};

/// int_0^1 |d phi / du (u, w)| du with w snapped to the nearest j/N, j != 0.
PathLength path_length_u(const CurveSamples& samples, double w);

/// int_0^1 |d phi / dw (u_i, w)| dw. Trapezoid rule over the grid offsets;
/// both endpoint limits equal kappa |gamma'| / 2.
double path_length_w(const CurveSamples& samples, int i);

struct FenchelReport {
  double min_path_u = 0.0;  ///< min over grid w of path_length_u
  double argmin_w = 0.0;
  double min_path_w = 0.0;  ///< min over grid u of path_length_w
  double argmin_u = 0.0;
  double slack_u = 0.0;     ///< min_path_u - 2 pi
  double slack_w = 0.0;     ///< min_path_w - pi
  int n = 0;
};

/// Both Fenchel-type minima on an N-point constant-speed sampling.
FenchelReport fenchel_report(const FourierCurve& curve, int n);
FenchelReport fenchel_report(const CurveSamples& samples);

}  // namespace tpe
