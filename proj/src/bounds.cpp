#include "tpe/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tpe {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_gamma(double x) {
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  }
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) series += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * series;
}

bool close(double a, double b) { return std::abs(a - b) <= kRegionTol * std::max(1.0, std::abs(b)); }

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be > 0");
  return lanczos_gamma(x);
}

double sin_power_integral(double a) {
  if (!(a > -1.0)) throw std::domain_error("sin_power_integral: a must be > -1 (integral diverges)");
  return gamma_fn(0.5 * (a + 1.0)) / (std::sqrt(std::numbers::pi) * gamma_fn(0.5 * (a + 2.0)));
}

BoundValue tp_lower_bound(double length, double p, double q) {
  if (!(length > 0.0)) throw std::invalid_argument("tp_lower_bound: length must be > 0");
  const double a = 2.0 * q - p;
  if (!(a > -1.0)) throw std::domain_error("tp_lower_bound: 2q - p must be > -1");
  BoundValue b;
  b.value = std::pow(length, q + 2.0 - p) * std::pow(std::numbers::pi, p - q) * sin_power_integral(a);
  b.formula = BoundFormula::tp_sharp;
  b.length = length;
  b.p = p;
  b.q = q;
  return b;
}

BoundValue willmore_lower_bound(double length, double s, double p) {
  if (!(length > 0.0)) throw std::invalid_argument("willmore_lower_bound: length must be > 0");
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("willmore_lower_bound: s must lie in (0, 1)");
  if (!(p >= 1.0)) throw std::domain_error("willmore_lower_bound: p must be >= 1");
  const double base = std::pow(std::numbers::pi, 1.0 + s) * sin_power_integral(-s);
  BoundValue b;
  b.value = std::pow(length, 1.0 - p * s) * std::pow(base, p);
  b.formula = BoundFormula::willmore;
  b.length = length;
  b.p = p;
  b.s = s;
  return b;
}

BoundValue g_slice_lower_bound(double p, double q, double w) {
  if (!(w > 0.0 && w < 1.0)) throw std::domain_error("g_slice_lower_bound: w must lie in (0, 1)");
  BoundValue b;
  b.value = std::pow(std::numbers::pi, p - q) * std::pow(std::sin(std::numbers::pi * w), 2.0 * q - p);
  b.formula = BoundFormula::g_slice;
  b.p = p;
  b.q = q;
  return b;
}

BoundValue f_slice_lower_bound(double q) {
  BoundValue b;
  b.value = std::numbers::pi * sin_power_integral(q - 1.0);
  b.formula = BoundFormula::f_slice;
  b.p = q + 1.0;
  b.q = q;
  return b;
}

std::string to_string(RegionFlag flag) {
  switch (flag) {
    case RegionFlag::repulsive: return "repulsive";
    case RegionFlag::mildly_repulsive: return "mildly_repulsive";
    case RegionFlag::lower_limit: return "lower_limit";
    case RegionFlag::infinite_energy: return "infinite_energy";
    case RegionFlag::bound_valid_all: return "bound_valid_all";
    case RegionFlag::bound_valid_convex_only: return "bound_valid_convex_only";
    case RegionFlag::no_minimizer: return "no_minimizer";
  }
  return "unknown";
}

bool ParamRegion::has(RegionFlag f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::vector<std::string> ParamRegion::names() const {
  std::vector<std::string> out;
  for (auto f : flags) out.push_back(to_string(f));
  return out;
}

ParamRegion classify_region(double p, double q) {
  // Interval helpers with explicit endpoint handling.
  auto ge = [](double x, double lo) { return x > lo || close(x, lo); };
  auto gt = [](double x, double lo) { return x > lo && !close(x, lo); };
  auto le = [](double x, double hi) { return x < hi || close(x, hi); };
  auto lt = [](double x, double hi) { return x < hi && !close(x, hi); };

  const bool lower_limit = close(p, q + 1.0);
  const bool q_above_one = gt(q, 1.0);
  const bool q_at_least_one = ge(q, 1.0);

  ParamRegion r;
  if (q_above_one && ge(p, q + 2.0) && lt(p, 2.0 * q + 1.0)) r.flags.push_back(RegionFlag::repulsive);
  if (gt(p, q + 1.0) && lt(p, q + 2.0)) r.flags.push_back(RegionFlag::mildly_repulsive);
  if (lower_limit) r.flags.push_back(RegionFlag::lower_limit);
  if (q_above_one && ge(p, 2.0 * q + 1.0)) r.flags.push_back(RegionFlag::infinite_energy);
  const bool blue = ge(p, q + 1.0) && lt(p, 2.0 * q + 1.0) && ge(p, 2.0 * q - 2.0) && le(p, 4.0 * q - 2.0);
  if (q_at_least_one && (blue || lower_limit)) r.flags.push_back(RegionFlag::bound_valid_all);
  if (q_at_least_one && gt(p, 2.0 * q) && lt(p, 2.0 * q + 1.0)) {
    r.flags.push_back(RegionFlag::bound_valid_convex_only);
  }
  if (lt(p, q + 1.0)) r.flags.push_back(RegionFlag::no_minimizer);
  return r;
}

SigmaMu sigma_mu(double p, double q) {
  const double a = 2.0 * q - p;
  const double denom = a + 1.0;
  if (std::abs(denom) <= kRegionTol) throw std::domain_error("sigma_mu: 2q - p + 1 must be nonzero");
  const SigmaMu sm{a * q / denom, a * (q - p + 1.0) / denom};

  auto check = [](double got, double want, const char* what) {
    if (std::abs(got - want) > 1e-12 * std::max(1.0, std::abs(want))) {
      throw std::logic_error(std::string("sigma_mu: identity violated: ") + what);
    }
  };
  const double sum = sm.sigma + sm.mu;
  check(sum, a, "sigma + mu = 2q - p");
  if (sum != 0.0) {
    check(sm.sigma / sum + sm.sigma, q, "sigma/(sigma+mu) + sigma = q");
    check(2.0 * sm.sigma / sum + sm.sigma - sm.mu, p, "2 sigma/(sigma+mu) + sigma - mu = p");
  }
  return sm;
}

}  // namespace tpe
