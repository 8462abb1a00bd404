#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tpe/curves.hpp"
#include "trig.hpp"

namespace tpe {

using detail::kTwoPi;

namespace {

constexpr int kMaxSpeedGrid = 1 << 15;
constexpr double kInversionTol = 1e-12;
constexpr double kNewtonStop = 1e-7;

}  // namespace

ArclengthMap::ArclengthMap(std::shared_ptr<const FourierCurve> curve) : curve_(std::move(curve)) {
  // Real DFT of the speed; doubled until the upper half of the spectrum has
  // decayed to rounding level.
  int n = std::max(128, 16 * curve_->modes());
  while (true) {
    std::vector<double> speed(n);
    for (int j = 0; j < n; ++j) speed[j] = curve_->derivative(static_cast<double>(j) / n).norm();
    std::vector<cplx> roots(n);
    for (int m = 0; m < n; ++m) roots[m] = detail::unit_phase(-1, static_cast<double>(m) / n);

    double mean = 0.0;
    for (double v : speed) mean += v;
    mean /= n;
    const int kmax = n / 2 - 1;
    std::vector<cplx> coeffs(kmax);
    for (int k = 1; k <= kmax; ++k) {
      cplx acc = 0.0;
      for (int j = 0; j < n; ++j) acc += speed[j] * roots[(static_cast<long>(k) * j) % n];
      coeffs[k - 1] = acc * (2.0 / n);
    }
    double tail = 0.0;
    for (int k = kmax / 2; k <= kmax; ++k) tail = std::max(tail, std::abs(coeffs[k - 1]));

    if (tail <= 1e-15 * mean || n >= kMaxSpeedGrid) {
      // Drop terms whose contribution to l(u + du) - l(u) is below rounding.
      int keep = kmax;
      while (keep > 0 && std::abs(coeffs[keep - 1]) <= 1e-17 * mean * kTwoPi * keep) --keep;
      coeffs.resize(keep);
      length_ = mean;
      speed_coeffs_ = std::move(coeffs);
      arc_coeffs_.resize(keep);
      for (int k = 1; k <= keep; ++k) arc_coeffs_[k - 1] = speed_coeffs_[k - 1] / cplx(0.0, kTwoPi * k);
      break;
    }
    n *= 2;
  }
  if (!(length_ > 0.0)) throw GeometryError("ArclengthMap: curve has zero length");
}

double ArclengthMap::arc_between(double u, double du) const {
  // l(u) = L u + Re sum c_k (e^{i w_k u} - 1) / (i w_k)
  const int kmax = static_cast<int>(speed_coeffs_.size());
  if (kmax == 0) return length_ * du;
  const cplx z1 = detail::unit_phase(1, u);
  const cplx d1 = detail::unit_phase(1, du);
  const cplx e1 = detail::expm1_phase(1, du);
  cplx z = z1;
  cplx e = e1;
  double sum = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) {
      z *= z1;
      e = d1 * e + e1;  // e^{i(k) x} - 1 from e^{i(k-1) x} - 1
    }
    sum += (arc_coeffs_[k - 1] * z * e).real();
  }
  return length_ * du + sum;
}

double ArclengthMap::parameter_offset(double u, double ds) const {
  if (ds == 0.0) return 0.0;
  const double target = ds * length_;
  double lo = ds > 0.0 ? 0.0 : -1.0;
  double hi = ds > 0.0 ? 1.0 : 0.0;
  double x = target / curve_->derivative(u).norm();
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

  for (int iter = 0; iter < 200; ++iter) {
    const double f = arc_between(u, x) - target;
    if (f == 0.0) return x;
    if (f > 0.0) hi = x; else lo = x;
    const double slope = curve_->derivative(u + x).norm();
    const double next = x - f / slope;
    if (next > lo && next < hi) {
      const double step = std::abs(next - x);
      x = next;
      // Newton error after a step of relative size 1e-7 is O(1e-14) relative.
      if (step <= kNewtonStop * std::abs(x)) return x;
    } else {
      x = 0.5 * (lo + hi);
      if (hi - lo <= kInversionTol * std::abs(target / length_)) return x;
    }
  }
  throw GeometryError("ArclengthMap: arc-length inversion did not converge (degenerate parametrization)");
}

double ArclengthMap::parameter_at(double s) const {
  double u = parameter_offset(0.0, s);
  u -= std::floor(u);
  return u;
}

}  // namespace tpe
