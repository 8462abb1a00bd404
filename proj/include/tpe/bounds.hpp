// Closed-form sharp lower bounds and (p, q) parameter-region classification.
#pragma once

#include <string>
#include <vector>

namespace tpe {

/// Gamma function for x > 0 (Lanczos, g = 7, nine coefficients).
double gamma_fn(double x);

/// int_0^1 sin(pi w)^a dw = Gamma((a+1)/2) / (sqrt(pi) Gamma((a+2)/2)), a > -1.
double sin_power_integral(double a);

enum class BoundFormula { tp_sharp, willmore, g_slice, f_slice };

struct BoundValue {
  double value = 0.0;
  BoundFormula formula = BoundFormula::tp_sharp;
  double length = 1.0;
  double p = 0.0;
  double q = 0.0;
  double s = 0.0;
};

/// L^{q+2-p} pi^{p-q} int_0^1 sin(pi w)^{2q-p} dw; requires 2q - p > -1.
BoundValue tp_lower_bound(double length, double p, double q);

/// L^{1-ps} (pi^{1+s} int_0^1 sin(pi w)^{-s} dw)^p; s in (0,1), p >= 1.
BoundValue willmore_lower_bound(double length, double s, double p);

/// pi^{p-q} sin(pi w)^{2q-p}: sharp lower bound of the G-slice at w (length 1).
BoundValue g_slice_lower_bound(double p, double q, double w);

/// pi int_0^1 sin(pi w)^{q-1} dw: sharp lower bound of the F-slice in the
/// lower limit case p = q + 1 (length 1).
BoundValue f_slice_lower_bound(double q);

enum class RegionFlag {
  repulsive,
  mildly_repulsive,
  lower_limit,
  infinite_energy,
  bound_valid_all,
  bound_valid_convex_only,
  no_minimizer,
};

std::string to_string(RegionFlag flag);

struct ParamRegion {
  std::vector<RegionFlag> flags;  ///< in enum order

  bool has(RegionFlag f) const;
  std::vector<std::string> names() const;
};

/// Boundary tolerance used for interval membership.
inline constexpr double kRegionTol = 1e-12;

ParamRegion classify_region(double p, double q);

struct SigmaMu {
  double sigma;
  double mu;
};

/// sigma = (2q-p) q / (2q-p+1), mu = (2q-p)(q-p+1) / (2q-p+1). Verifies
/// sigma + mu = 2q-p, sigma/(sigma+mu) + sigma = q and
/// 2 sigma/(sigma+mu) + sigma - mu = p (the last two when sigma + mu != 0).
SigmaMu sigma_mu(double p, double q);

}  // namespace tpe
