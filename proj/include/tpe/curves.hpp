// Closed curves as truncated Fourier series, their samplings and basic
// geometric predicates.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpe {

using Vec3 = Eigen::Vector3d;
using cplx = std::complex<double>;

/// Raised for invalid curve data or geometric preconditions that do not hold
/// (non-embedded samples, degenerate parametrizations, ...).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FourierMode {
  double a = 0.0;
  double b = 0.0;
};

/// gamma_d(u) = a_0/2 + sum_k a_k cos(2 pi k u) + b_k sin(2 pi k u), u in [0,1).
///
/// Planar curves are stored with dims() == 2; every vector-valued accessor
/// returns a Vec3 whose third component is zero in that case.
class FourierCurve {
 public:
  /// coeffs[d][k] for k = 0..M; all dimensions must share the same M >= 1.
  FourierCurve(int dims, std::vector<std::vector<FourierMode>> coeffs);

  int dims() const { return dims_; }
  int modes() const { return modes_; }
  const FourierMode& mode(int d, int k) const { return coeffs_[d][k]; }
  const std::vector<std::vector<FourierMode>>& coefficients() const { return coeffs_; }

  Vec3 position(double u) const;
  Vec3 derivative(double u) const;
  Vec3 second_derivative(double u) const;

  /// gamma(u + du) - gamma(u), free of cancellation for small |du|.
  Vec3 difference(double u, double du) const;
  /// gamma(u + du) - gamma(u) - du * gamma'(u), accurate to relative rounding
  /// even when it is O(du^2).
  Vec3 difference_remainder(double u, double du) const;
  /// gamma'(u + du) - gamma'(u).
  Vec3 derivative_difference(double u, double du) const;

  /// Complex coefficient c_k = a_k - i b_k of dimension d, k >= 1, so that
  /// the k-th term equals Re(c_k exp(2 pi i k u)).
  cplx complex_coeff(int d, int k) const { return {coeffs_[d][k].a, -coeffs_[d][k].b}; }

  FourierCurve scaled(double factor) const;
  /// Same curve with the highest mode raised to `modes` (zero padding) or
  /// truncated to it.
  FourierCurve with_modes(int modes) const;

 private:
  int dims_;
  int modes_;
  std::vector<std::vector<FourierMode>> coeffs_;
};

/// Inverse of the normalized cumulative arc length s(u) = l(u) / L.
///
/// The speed |gamma'| is expanded into its (rapidly decaying) Fourier series
/// so that l(u + du) - l(u) can be evaluated without cancellation; parameter
/// offsets are then found by safeguarded Newton iteration.
class ArclengthMap {
 public:
  explicit ArclengthMap(std::shared_ptr<const FourierCurve> curve);

  double length() const { return length_; }
  /// u with l(u) = s L, for s in [0, 1).
  double parameter_at(double s) const;
  /// du with l(u + du) - l(u) = ds L. |ds| < 1; negative ds walks backwards.
  double parameter_offset(double u, double ds) const;
  /// l(u + du) - l(u).
  double arc_between(double u, double du) const;
  int series_modes() const { return static_cast<int>(speed_coeffs_.size()); }

 private:
  std::shared_ptr<const FourierCurve> curve_;
  double length_ = 0.0;
  std::vector<cplx> speed_coeffs_;  // k = 1..K of speed(u) = L + Re sum c_k e^{2 pi i k u}
  std::vector<cplx> arc_coeffs_;    // c_k / (2 pi i k)
};

/// Uniform-grid evaluations of a curve, either in its native Fourier
/// parametrization or in the constant-speed reparametrization.
///
/// Samples keep a handle on the underlying curve so integrators can evaluate
/// secants at off-grid offsets exactly.
class CurveSamples {
 public:
  int size() const { return static_cast<int>(points_.size()); }
  int dims() const { return curve_->dims(); }
  double parameter(int i) const { return static_cast<double>(i) / size(); }

  std::span<const Vec3> points() const { return points_; }
  std::span<const Vec3> tangents() const { return tangents_; }
  std::span<const double> speeds() const { return speeds_; }
  /// Unsigned curvature at each sample (geometric, parametrization free).
  std::span<const double> curvatures() const { return curvatures_; }
  /// Fourier parameter u of each sample (identical to i/N unless arc-length).
  std::span<const double> curve_parameters() const { return curve_params_; }

  double length() const { return length_; }
  bool is_arclength() const { return is_arclength_; }
  /// True when produced by resample_arclength (speeds exactly L by construction).
  bool is_reparametrized() const { return arclength_ != nullptr; }

  const FourierCurve& curve() const { return *curve_; }
  std::shared_ptr<const FourierCurve> curve_handle() const { return curve_; }
  const ArclengthMap* arclength_map() const { return arclength_.get(); }

  /// Same curve and parametrization kind sampled on a grid of size n.
  CurveSamples resampled(int n) const;

 private:
  friend CurveSamples sample(const FourierCurve&, int);
  friend CurveSamples resample_arclength(const FourierCurve&, int);
  static CurveSamples build(std::shared_ptr<const FourierCurve> curve,
                            std::shared_ptr<const ArclengthMap> map, int n);

  std::shared_ptr<const FourierCurve> curve_;
  std::shared_ptr<const ArclengthMap> arclength_;
  std::vector<Vec3> points_;
  std::vector<Vec3> tangents_;
  std::vector<double> speeds_;
  std::vector<double> curvatures_;
  std::vector<double> curve_params_;
  double length_ = 0.0;
  bool is_arclength_ = false;
};

struct ConvexityReport {
  bool is_planar = false;
  bool is_convex = false;
  /// Signed total turning of the tangent for planar curves; total absolute
  /// curvature for non-planar ones.
  double total_turning = 0.0;
  /// Smallest curvature sample, signed relative to the curve's orientation
  /// (so convex curves report a nonnegative value). Zero for non-planar input.
  double min_signed_curvature = 0.0;
};

// Fixtures.
FourierCurve make_circle(double length, int dims = 2);
FourierCurve make_ellipse(double a, double b);
/// Radial perturbation r(theta) = R (1 + eps cos(k theta)) rescaled to `length`.
FourierCurve make_perturbed_circle(double length, int mode, double eps);
/// (2,3)-torus knot (2 + cos 3t)(cos 2t, sin 2t) + (0, 0, sin 3t), scaled.
FourierCurve make_trefoil(double scale);
/// (sin 4 pi u, sin 2 pi u): self-intersecting at the origin.
FourierCurve make_figure_eight();

constexpr int kDefaultSamples = 256;

/// Exact evaluation of gamma and gamma' at u_i = i/N. N >= 16 and even.
CurveSamples sample(const FourierCurve& curve, int n);
/// Samples at equispaced arc length; speeds equal L exactly.
CurveSamples resample_arclength(const FourierCurve& curve, int n);

/// Length by the periodic trapezoid rule on a grid fine enough to be
/// converged to rounding.
double curve_length(const FourierCurve& curve);

bool is_embedded_check(const CurveSamples& samples, double tol = 1e-3);
ConvexityReport is_convex_planar(const CurveSamples& samples);
FourierCurve rescale_to_length(const FourierCurve& curve, double length);

/// Sign of the enclosed signed area: +1 counterclockwise, -1 clockwise.
/// Planar curves only.
int orientation(const CurveSamples& samples);

}  // namespace tpe
