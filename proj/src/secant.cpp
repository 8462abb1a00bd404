#include "tpe/secant.hpp"

#include <cmath>
#include <stdexcept>

#include "trig.hpp"

namespace tpe {

using detail::kTwoPi;

Vec3 project_perp(const Vec3& v, const Vec3& x) {
  const double vv = v.squaredNorm();
  if (!(vv > 0.0)) throw std::invalid_argument("project_perp: direction vector must be nonzero");
  return x - v * (v.dot(x) / vv);
}

Offset grid_offset(int j, int n) {
  const double w = static_cast<double>(j) / n;
  return {w, 2 * j <= n ? w : -static_cast<double>(n - j) / n};
}

std::vector<Offset> grid_offsets(int n) {
  std::vector<Offset> out;
  out.reserve(n - 1);
  for (int j = 1; j < n; ++j) out.push_back(grid_offset(j, n));
  return out;
}

SecantKernel::SecantKernel(const CurveSamples& samples, std::vector<Offset> offsets)
    : samples_(&samples),
      offsets_(std::move(offsets)),
      modes_(samples.curve().modes()),
      dims_(samples.dims()) {
  if (samples.is_reparametrized()) return;
  const auto& curve = samples.curve();
  const int m = modes_;
  expm1_.resize(offsets_.size() * m);
  expm1_linear_.resize(offsets_.size() * m);
  for (std::size_t j = 0; j < offsets_.size(); ++j) {
    for (int k = 1; k <= m; ++k) {
      expm1_[j * m + (k - 1)] = detail::expm1_phase(k, offsets_[j].signed_);
      expm1_linear_[j * m + (k - 1)] = detail::expm1_phase_linear(k, offsets_[j].signed_);
    }
  }
  const int n = samples.size();
  weighted_phase_.resize(static_cast<std::size_t>(n) * m * dims_);
  for (int i = 0; i < n; ++i) {
    for (int k = 1; k <= m; ++k) {
      const cplx z = detail::unit_phase(k, samples.curve_parameters()[i]);
      for (int d = 0; d < dims_; ++d) {
        weighted_phase_[(static_cast<std::size_t>(i) * m + (k - 1)) * dims_ + d] =
            curve.complex_coeff(d, k) * z;
      }
    }
  }
}

Secant SecantKernel::operator()(int i, int j) const {
  return samples_->is_reparametrized() ? reparametrized(i, j) : native(i, j);
}

Secant SecantKernel::native(int i, int j) const {
  const int m = modes_;
  Vec3 chord = Vec3::Zero();
  Vec3 rem_start = Vec3::Zero();  // gamma(u+d) - gamma(u) - d gamma'(u)
  Vec3 rem_end = Vec3::Zero();    // gamma(u) - gamma(u+d) + d gamma'(u+d)
  Vec3 t_start = Vec3::Zero();
  Vec3 dt = Vec3::Zero();
  for (int k = 1; k <= m; ++k) {
    const cplx e = expm1_[j * m + (k - 1)];
    const cplx f = expm1_linear_[j * m + (k - 1)];
    const cplx ik(0.0, kTwoPi * k);
    const cplx end_phase = 1.0 + e;
    const cplx f_back = std::conj(f);  // e^{-i x} - 1 + i x
    for (int d = 0; d < dims_; ++d) {
      const cplx cz = weighted_phase_[(static_cast<std::size_t>(i) * m + (k - 1)) * dims_ + d];
      chord[d] += (cz * e).real();
      rem_start[d] += (cz * f).real();
      rem_end[d] += (cz * end_phase * f_back).real();
      t_start[d] += (ik * cz).real();
      dt[d] += (ik * cz * e).real();
    }
  }
  Secant s;
  s.chord = chord;
  s.tangent_start = t_start;
  s.tangent_end = t_start + dt;
  s.tangent_change = dt;
  s.normal_start = project_perp(t_start, rem_start);
  s.normal_end = -project_perp(s.tangent_end, rem_end);
  return s;
}

Secant SecantKernel::reparametrized(int i, int j) const {
  return secant_at(*samples_, i, offsets_[j]);
}

namespace {

// Fourier-parameter offset matching an arc-length offset. Offsets on the
// sample grid are read off the sample parameters.
double curve_offset(const CurveSamples& samples, int i, const Offset& off) {
  const int n = samples.size();
  const double scaled = off.signed_ * n;
  const double j = std::round(scaled);
  if (j != 0.0 && std::abs(scaled - j) <= 1e-9) {
    const auto params = samples.curve_parameters();
    const int jj = static_cast<int>(((static_cast<long>(j) % n) + n) % n);
    double du = params[(i + jj) % n] - params[i];
    if (off.signed_ > 0.0 && du <= 0.0) du += 1.0;
    if (off.signed_ < 0.0 && du >= 0.0) du -= 1.0;
    return du;
  }
  return samples.arclength_map()->parameter_offset(samples.curve_parameters()[i], off.signed_);
}

}  // namespace

Secant secant_at(const CurveSamples& samples, int i, const Offset& off) {
  const auto& curve = samples.curve();
  const ArclengthMap* map = samples.arclength_map();
  const double u = samples.curve_parameters()[i];
  const double du = map ? curve_offset(samples, i, off) : off.signed_;

  const Vec3 g1 = curve.derivative(u);
  const Vec3 dg = curve.derivative_difference(u, du);
  const Vec3 g2 = g1 + dg;

  Secant s;
  s.chord = curve.difference(u, du);
  s.normal_start = project_perp(g1, curve.difference_remainder(u, du));
  // Base the backward remainder at u + du so the pair (u, u + du) is consistent
  // in phase; the O(eps) shift of the whole pair is harmless.
  s.normal_end = -project_perp(g2, curve.difference_remainder(u + du, -du));
  if (!map) {
    s.tangent_start = g1;
    s.tangent_end = g2;
    s.tangent_change = dg;
    return s;
  }
  const double total = map->length();
  const double s1 = g1.norm();
  const double s2 = g2.norm();
  // t2 - t1 = dg / s2 + g1 (s1 - s2) / (s1 s2) with s2 - s1 from a difference of squares.
  const double ds = dg.dot(g1 + g2) / (s1 + s2);
  const Vec3 dt = dg / s2 - g1 * (ds / (s1 * s2));
  s.tangent_start = g1 * (total / s1);
  s.tangent_end = g2 * (total / s2);
  s.tangent_change = dt * total;
  return s;
}

}  // namespace tpe
