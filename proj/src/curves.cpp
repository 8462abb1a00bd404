#include "tpe/curves.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "trig.hpp"

namespace tpe {

using detail::kTwoPi;

FourierCurve::FourierCurve(int dims, std::vector<std::vector<FourierMode>> coeffs)
    : dims_(dims), modes_(0), coeffs_(std::move(coeffs)) {
  if (dims_ != 2 && dims_ != 3) {
    throw std::invalid_argument("FourierCurve: dims must be 2 or 3, got " + std::to_string(dims_));
  }
  if (static_cast<int>(coeffs_.size()) != dims_) {
    throw std::invalid_argument("FourierCurve: expected one coefficient list per dimension");
  }
  const std::size_t len = coeffs_.front().size();
  for (const auto& c : coeffs_) {
    if (c.size() != len) throw std::invalid_argument("FourierCurve: ragged coefficient lists");
    for (const auto& m : c) {
      if (!std::isfinite(m.a) || !std::isfinite(m.b)) {
        throw std::invalid_argument("FourierCurve: non-finite coefficient");
      }
    }
  }
  if (len < 2) throw std::invalid_argument("FourierCurve: need at least one mode (M >= 1)");
  modes_ = static_cast<int>(len) - 1;
}

Vec3 FourierCurve::position(double u) const {
  Vec3 out = Vec3::Zero();
  for (int k = 1; k <= modes_; ++k) {
    const cplx z = detail::unit_phase(k, u);
    for (int d = 0; d < dims_; ++d) out[d] += (complex_coeff(d, k) * z).real();
  }
  for (int d = 0; d < dims_; ++d) out[d] += 0.5 * coeffs_[d][0].a;
  return out;
}

Vec3 FourierCurve::derivative(double u) const {
  Vec3 out = Vec3::Zero();
  for (int k = 1; k <= modes_; ++k) {
    const cplx z = cplx(0.0, kTwoPi * k) * detail::unit_phase(k, u);
    for (int d = 0; d < dims_; ++d) out[d] += (complex_coeff(d, k) * z).real();
  }
  return out;
}

Vec3 FourierCurve::second_derivative(double u) const {
  Vec3 out = Vec3::Zero();
  for (int k = 1; k <= modes_; ++k) {
    const double w = kTwoPi * k;
    const cplx z = -w * w * detail::unit_phase(k, u);
    for (int d = 0; d < dims_; ++d) out[d] += (complex_coeff(d, k) * z).real();
  }
  return out;
}

Vec3 FourierCurve::difference(double u, double du) const {
  Vec3 out = Vec3::Zero();
  for (int k = 1; k <= modes_; ++k) {
    const cplx z = detail::unit_phase(k, u) * detail::expm1_phase(k, du);
    for (int d = 0; d < dims_; ++d) out[d] += (complex_coeff(d, k) * z).real();
  }
  return out;
}

Vec3 FourierCurve::difference_remainder(double u, double du) const {
  Vec3 out = Vec3::Zero();
  for (int k = 1; k <= modes_; ++k) {
    const cplx z = detail::unit_phase(k, u) * detail::expm1_phase_linear(k, du);
    for (int d = 0; d < dims_; ++d) out[d] += (complex_coeff(d, k) * z).real();
  }
  return out;
}

Vec3 FourierCurve::derivative_difference(double u, double du) const {
  Vec3 out = Vec3::Zero();
  for (int k = 1; k <= modes_; ++k) {
    const cplx z =
        cplx(0.0, kTwoPi * k) * detail::unit_phase(k, u) * detail::expm1_phase(k, du);
    for (int d = 0; d < dims_; ++d) out[d] += (complex_coeff(d, k) * z).real();
  }
  return out;
}

FourierCurve FourierCurve::scaled(double factor) const {
  auto c = coeffs_;
  for (auto& dim : c) {
    for (auto& m : dim) {
      m.a *= factor;
      m.b *= factor;
    }
  }
  return FourierCurve(dims_, std::move(c));
}

FourierCurve FourierCurve::with_modes(int modes) const {
  if (modes < 1) throw std::invalid_argument("FourierCurve::with_modes: modes must be >= 1");
  auto c = coeffs_;
  for (auto& dim : c) dim.resize(static_cast<std::size_t>(modes) + 1);
  return FourierCurve(dims_, std::move(c));
}

// ---------------------------------------------------------------------------
// Sampling

CurveSamples CurveSamples::build(std::shared_ptr<const FourierCurve> curve,
                                 std::shared_ptr<const ArclengthMap> map, int n) {
  if (n < 16 || n % 2 != 0) {
    throw std::invalid_argument("sample: grid size must be even and >= 16, got " +
                                std::to_string(n));
  }
  CurveSamples s;
  s.curve_ = std::move(curve);
  s.arclength_ = std::move(map);
  s.points_.resize(n);
  s.tangents_.resize(n);
  s.speeds_.resize(n);
  s.curvatures_.resize(n);
  s.curve_params_.resize(n);

  const FourierCurve& c = *s.curve_;
  const double total = s.arclength_ ? s.arclength_->length() : 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.arclength_ ? s.arclength_->parameter_at(static_cast<double>(i) / n)
                                  : static_cast<double>(i) / n;
    const Vec3 d1 = c.derivative(u);
    const double speed = d1.norm();
    if (!(speed > 0.0)) {
      throw GeometryError("sample: curve is not regular at u = " + std::to_string(u));
    }
    s.curve_params_[i] = u;
    s.points_[i] = c.position(u);
    s.tangents_[i] = s.arclength_ ? Vec3(d1 * (total / speed)) : d1;
    s.speeds_[i] = s.arclength_ ? total : speed;
    s.curvatures_[i] = d1.cross(c.second_derivative(u)).norm() / (speed * speed * speed);
  }

  if (s.arclength_) {
    s.length_ = total;
    s.is_arclength_ = true;
  } else {
    double sum = 0.0;
    for (double v : s.speeds_) sum += v;
    s.length_ = sum / n;
    double dev = 0.0;
    for (double v : s.speeds_) dev = std::max(dev, std::abs(v - s.length_));
    s.is_arclength_ = dev <= 1e-8 * s.length_;
  }
  return s;
}

CurveSamples CurveSamples::resampled(int n) const { return build(curve_, arclength_, n); }

CurveSamples sample(const FourierCurve& curve, int n) {
  return CurveSamples::build(std::make_shared<const FourierCurve>(curve), nullptr, n);
}

CurveSamples resample_arclength(const FourierCurve& curve, int n) {
  auto handle = std::make_shared<const FourierCurve>(curve);
  auto map = std::make_shared<const ArclengthMap>(handle);
  return CurveSamples::build(std::move(handle), std::move(map), n);
}

double curve_length(const FourierCurve& curve) {
  // Trapezoid on a trigonometric polynomial's speed converges geometrically.
  int n = std::max(64, 8 * (curve.modes() + 1));
  auto trapezoid = [&](int m) {
    double sum = 0.0;
    for (int i = 0; i < m; ++i) sum += curve.derivative(static_cast<double>(i) / m).norm();
    return sum / m;
  };
  double prev = trapezoid(n);
  for (int round = 0; round < 10; ++round) {
    n *= 2;
    const double next = trapezoid(n);
    if (std::abs(next - prev) <= 1e-15 * next) return next;
    prev = next;
  }
  return prev;
}

FourierCurve rescale_to_length(const FourierCurve& curve, double length) {
  if (!(length > 0.0)) throw std::invalid_argument("rescale_to_length: target length must be > 0");
  const double current = curve_length(curve);
  if (!(current > 0.0)) throw GeometryError("rescale_to_length: curve has zero length");
  return curve.scaled(length / current);
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

std::vector<std::vector<FourierMode>> zero_coeffs(int dims, int modes) {
  return std::vector<std::vector<FourierMode>>(dims, std::vector<FourierMode>(modes + 1));
}

}  // namespace

FourierCurve make_circle(double length, int dims) {
  if (dims != 2 && dims != 3) throw std::invalid_argument("make_circle: dims must be 2 or 3");
  if (!(length > 0.0)) throw std::invalid_argument("make_circle: length must be > 0");
  const double r = length / kTwoPi;
  auto c = zero_coeffs(dims, 1);
  c[0][1].a = r;
  c[1][1].b = r;
  return FourierCurve(dims, std::move(c));
}

FourierCurve make_ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("make_ellipse: semi-axes must be > 0");
  auto c = zero_coeffs(2, 1);
  c[0][1].a = a;
  c[1][1].b = b;
  return FourierCurve(2, std::move(c));
}

FourierCurve make_perturbed_circle(double length, int mode, double eps) {
  if (mode < 2) throw std::invalid_argument("make_perturbed_circle: mode must be >= 2");
  if (!(std::abs(eps) < 1.0)) throw std::invalid_argument("make_perturbed_circle: |eps| must be < 1");
  // (1 + eps cos k t)(cos t, sin t) expanded with product-to-sum identities.
  auto c = zero_coeffs(2, mode + 1);
  c[0][1].a += 1.0;
  c[1][1].b += 1.0;
  c[0][mode + 1].a += 0.5 * eps;
  c[0][mode - 1].a += 0.5 * eps;
  c[1][mode + 1].b += 0.5 * eps;
  c[1][mode - 1].b -= 0.5 * eps;
  return rescale_to_length(FourierCurve(2, std::move(c)), length);
}

FourierCurve make_trefoil(double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("make_trefoil: scale must be > 0");
  auto c = zero_coeffs(3, 5);
  c[0][1].a = 0.5;
  c[0][2].a = 2.0;
  c[0][5].a = 0.5;
  c[1][1].b = -0.5;
  c[1][2].b = 2.0;
  c[1][5].b = 0.5;
  c[2][3].b = 1.0;
  return FourierCurve(3, std::move(c)).scaled(scale);
}

FourierCurve make_figure_eight() {
  auto c = zero_coeffs(2, 2);
  c[0][2].b = 1.0;
  c[1][1].b = 1.0;
  return FourierCurve(2, std::move(c));
}

// ---------------------------------------------------------------------------
// Predicates

bool is_embedded_check(const CurveSamples& samples, double tol) {
  const auto pts = samples.points();
  const int n = samples.size();
  const double threshold = tol * samples.length();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int gap = std::min(j - i, n - (j - i));
      const double ratio = (pts[i] - pts[j]).norm() * n / gap;
      if (!(ratio >= threshold)) return false;
    }
  }
  return true;
}

int orientation(const CurveSamples& samples) {
  if (samples.dims() != 2) throw GeometryError("orientation: planar (dims = 2) curves only");
  const auto p = samples.points();
  const auto t = samples.tangents();
  double area = 0.0;
  for (int i = 0; i < samples.size(); ++i) area += p[i].x() * t[i].y() - p[i].y() * t[i].x();
  return area >= 0.0 ? 1 : -1;
}

ConvexityReport is_convex_planar(const CurveSamples& samples) {
  const auto pts = samples.points();
  const auto tan = samples.tangents();
  const auto speed = samples.speeds();
  const int n = samples.size();

  ConvexityReport report;
  Vec3 e1 = Vec3::UnitX();
  Vec3 e2 = Vec3::UnitY();

  if (samples.dims() == 2) {
    report.is_planar = true;
  } else {
    Vec3 centroid = Vec3::Zero();
    for (const auto& p : pts) centroid += p;
    centroid /= n;
    Eigen::MatrixXd centered(n, 3);
    for (int i = 0; i < n; ++i) centered.row(i) = (pts[i] - centroid).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    const Vec3 normal = svd.matrixV().col(2);
    double diameter = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) diameter = std::max(diameter, (pts[i] - pts[j]).norm());
    }
    double off_plane = 0.0;
    for (int i = 0; i < n; ++i) off_plane = std::max(off_plane, std::abs(normal.dot(pts[i] - centroid)));
    report.is_planar = off_plane <= 1e-9 * diameter;
    e1 = svd.matrixV().col(0);
    e2 = normal.cross(e1);
  }

  if (!report.is_planar) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      const Vec3& a = tan[i];
      const Vec3& b = tan[(i + 1) % n];
      total += std::atan2(a.cross(b).norm(), a.dot(b));
    }
    report.total_turning = total;
    return report;
  }

  std::vector<double> turn(n);
  std::vector<double> kappa(n);
  double total = 0.0;
  double max_kappa = 0.0;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const double a0 = std::atan2(tan[i].dot(e2), tan[i].dot(e1));
    const double a1 = std::atan2(tan[j].dot(e2), tan[j].dot(e1));
    double d = a1 - a0;
    while (d > std::numbers::pi) d -= kTwoPi;
    while (d <= -std::numbers::pi) d += kTwoPi;
    turn[i] = d;
    total += d;
    const double ds = 0.5 * (speed[i] + speed[j]) / n;
    kappa[i] = d / ds;
    max_kappa = std::max(max_kappa, std::abs(kappa[i]));
  }
  const double sign = total >= 0.0 ? 1.0 : -1.0;
  double min_signed = sign * kappa[0];
  for (double k : kappa) min_signed = std::min(min_signed, sign * k);

  report.total_turning = total;
  report.min_signed_curvature = min_signed;
  report.is_convex = min_signed >= -1e-9 * max_kappa && std::abs(std::abs(total) - kTwoPi) <= 1e-3;
  return report;
}

}  // namespace tpe
