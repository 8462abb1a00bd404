// Tangent-point energies, their Gauss-map minorants, fractional Willmore
// energies and the generic functionals I1, I2, I3.
//
// Double integrals run over u in a periodic grid (the samples) and over the
// offset w in (0, 1) with an endpoint-graded rule, so u + w never coincides
// with u. Every EnergyValue is computed on the requested grid and once more
// with both grid sizes doubled; the difference is the error estimate.
#pragma once

#include <functional>
#include <string>

#include "tpe/curves.hpp"
#include "tpe/quadrature.hpp"

namespace tpe {

enum class EnergyKind { TP, TPClassic, G, GSliceW, F, FSliceU, Willmore, I1, I2, I3 };
enum class ZVariable { u, w };

std::string to_string(EnergyKind kind);
EnergyKind energy_kind_from_string(const std::string& name);

struct EnergySpec {
  EnergyKind kind = EnergyKind::TP;
  double p = 4.0;
  double q = 2.0;
  double s = 0.5;            ///< Willmore only
  double slice_value = 0.5;  ///< w for GSliceW, u for FSliceU
  ZVariable z_variable = ZVariable::u;

  double alpha() const { return p - q; }
  double beta() const { return 2.0 * q - p; }
  /// Exponent a of the w^a behaviour of the integrand at the diagonal.
  double endpoint_exponent() const;
  /// Parameter-range checks; throws std::invalid_argument.
  void validate() const;
  /// True if the functional is defined on constant-speed samples only.
  bool requires_arclength() const;
};

struct EnergyValue {
  double value = 0.0;
  double error_estimate = 0.0;
  int n_u = 0;
  int n_w = 0;
  bool converged = false;
};

using ScalarFn = std::function<double(double)>;

EnergyValue tp_energy(const CurveSamples& samples, double p, double q, const QuadratureSpec& quad = {});
/// Double integral of r_TP^{-q} |gamma'(u)| |gamma'(u + w)|.
EnergyValue tp_classic(const CurveSamples& samples, double q, const QuadratureSpec& quad = {});

EnergyValue g_energy(const CurveSamples& samples, double p, double q, const QuadratureSpec& quad = {});
/// G_w = int (|d phi/du| / 2)^q |gamma(u + w) - gamma(u)|^{2q-p} du at w
/// snapped to the sample grid.
double g_slice_w(const CurveSamples& samples, double p, double q, double w);

/// Arc-length samples only.
EnergyValue f_energy(const CurveSamples& samples, double p, double q, const QuadratureSpec& quad = {});
/// F_u at sample i: int_0^1 |P_perp[gamma'(u)] phi|^beta |d phi/dw|^alpha dw.
double f_slice_u(const CurveSamples& samples, double p, double q, int i, const QuadratureSpec& quad = {});

/// Nonlocal mean curvature at sample i with c_s = 1 for a convex planar curve.
double nonlocal_mean_curvature(const CurveSamples& samples, int i, double s, const QuadratureSpec& quad = {});
/// Same integral written as int |d phi/dw| |gamma(u + w) - gamma(u)|^{-s} dw.
double nonlocal_mean_curvature_gauss(const CurveSamples& samples, int i, double s,
                                     const QuadratureSpec& quad = {});
/// int |H(x)|^p |gamma'(x)| dx.
EnergyValue willmore_fractional(const CurveSamples& samples, double s, double p, const QuadratureSpec& quad = {});

/// int int f(|d phi/dz|) du dw, no speed weights.
EnergyValue functional_I1(const CurveSamples& samples, const ScalarFn& f, ZVariable z,
                          const QuadratureSpec& quad = {});
/// int int f(|d phi/du|) / g(|gamma(u + w) - gamma(u)|^2) du dw; arc-length samples only.
EnergyValue functional_I2(const CurveSamples& samples, const ScalarFn& f, const ScalarFn& g,
                          const QuadratureSpec& quad = {});
/// int int g(<t(u), phi>) |d phi/dw| du dw.
EnergyValue functional_I3(const CurveSamples& samples, const ScalarFn& g, const QuadratureSpec& quad = {});

struct WirtingerResult {
  double lhs = 0.0;    ///< int |gamma(t + shift) - gamma(t)|^2 dt
  double rhs = 0.0;    ///< (sin(pi shift) / pi)^2 int |gamma'|^2 dt
  double shift = 0.0;  ///< snapped to the sample grid
};

WirtingerResult wirtinger_check(const CurveSamples& samples, double shift);

/// Dispatch on spec.kind. I-functionals use f = identity and g = 1.
EnergyValue evaluate(const CurveSamples& samples, const EnergySpec& spec, const QuadratureSpec& quad = {});

/// Single-grid value of `spec` on the samples' own u-grid and `n_w` graded
/// w-nodes. No error estimate, no embeddedness scan.
double evaluate_on_grid(const CurveSamples& samples, const EnergySpec& spec, int n_w, double grading);

}  // namespace tpe
