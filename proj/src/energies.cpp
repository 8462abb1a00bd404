#include "tpe/energies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "tpe/gaussmap.hpp"
#include "tpe/secant.hpp"

namespace tpe {

namespace {

constexpr double kPi = std::numbers::pi;

struct KindName {
  EnergyKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {EnergyKind::TP, "TP"},           {EnergyKind::TPClassic, "TPClassic"},
    {EnergyKind::G, "G"},             {EnergyKind::GSliceW, "GSliceW"},
    {EnergyKind::F, "F"},             {EnergyKind::FSliceU, "FSliceU"},
    {EnergyKind::Willmore, "Willmore"}, {EnergyKind::I1, "I1"},
    {EnergyKind::I2, "I2"},           {EnergyKind::I3, "I3"},
};

// Coincidence test relative to the parameter distance |w| of the pair, so
// the tiny offsets of graded rules are not mistaken for self-contact.
double checked_chord(const Secant& s, double length, const Offset& off) {
  const double c = s.chord.norm();
  if (!(c >= kDegenerateChord * length * std::abs(off.signed_))) {
    throw GeometryError("energy: coincident points (chord below 1e-14 L); samples are not embedded");
  }
  return c;
}

// Sum over the sample grid of the graded w-integral of `integrand`,
// divided by N (periodic trapezoid in u).
template <class Integrand>
double double_integral(const CurveSamples& samples, const GradedRule& rule, Integrand&& integrand) {
  const SecantKernel kernel(samples, rule.nodes);
  double total = 0.0;
  for (int i = 0; i < kernel.rows(); ++i) {
    double row = 0.0;
    for (int j = 0; j < kernel.cols(); ++j) {
      const Secant s = kernel(i, j);
      row += rule.weights[j] * integrand(s, checked_chord(s, samples.length(), rule.nodes[j]));
    }
    total += row;
  }
  return total / kernel.rows();
}

// Pointwise integrands. All are written as scale-free ratios times a power
// of the chord so that offsets down to ~1e-120 neither overflow nor underflow.
double tp_integrand(const Secant& s, double c, double p, double q) {
  const double ratio = s.normal_start.norm() / (c * c);
  return std::pow(ratio, q) * std::pow(c, 2.0 * q - p) * s.tangent_start.norm() * s.tangent_end.norm();
}

double du_norm(const Secant& s, double c) { return project_perp(s.chord, s.tangent_change).norm() / c; }

double dw_norm(const Secant& s, double c) { return s.tangent_end.norm() * s.normal_end.norm() / (c * c); }

// < n_in(y), x - y > |gamma'(y)| / |x - y|^{2+s} with y = gamma(u + w).
double mean_curvature_integrand(const Secant& s, double c, double sigma, int orient) {
  const Vec3& t = s.tangent_end;
  const Vec3& n = s.normal_end;
  return -orient * (t.x() * n.y() - t.y() * n.x()) / std::pow(c, 2.0 + sigma);
}

class GridLevels {
 public:
  explicit GridLevels(const CurveSamples& samples) : base_(samples) {}
  const CurveSamples& at(int n) {
    if (base_.size() == n) return base_;
    if (!cache_ || cache_->size() != n) cache_ = base_.resampled(n);
    return *cache_;
  }

 private:
  const CurveSamples& base_;
  std::optional<CurveSamples> cache_;
};

// Value on (n_u, n_w) plus one doubling of both grid sizes.
template <class Level>
EnergyValue with_doubling(const QuadratureSpec& quad, Level&& level) {
  quad.validate();
  EnergyValue v;
  v.n_u = quad.n_u;
  v.n_w = quad.n_w;
  v.value = level(quad.n_u, quad.n_w);
  const double fine = level(2 * quad.n_u, 2 * quad.n_w);
  v.error_estimate = std::abs(fine - v.value);
  v.converged = std::isfinite(v.value) && std::isfinite(fine) && v.error_estimate <= quad.convergence_rtol * std::abs(fine);
  if (!std::isfinite(v.error_estimate)) v.error_estimate = std::numeric_limits<double>::infinity();
  return v;
}

void require_embedded(const CurveSamples& samples, const char* who) {
  if (!is_embedded_check(samples)) {
    throw GeometryError(std::string(who) + ": samples are not embedded (chord / parameter distance below 1e-3 L)");
  }
}

void require_arclength(const CurveSamples& samples, const char* who) {
  if (!samples.is_arclength()) {
    throw std::invalid_argument(std::string(who) + ": requires arc-length (constant-speed) samples");
  }
}

int require_convex_planar(const CurveSamples& samples, const char* who) {
  if (samples.dims() != 2) throw GeometryError(std::string(who) + ": requires a planar (dims = 2) curve");
  if (!is_convex_planar(samples).is_convex) throw GeometryError(std::string(who) + ": requires a convex curve");
  return orientation(samples);
}

void check_pq(double p, double q, const char* who) {
  if (!(p >= 0.0) || !(q > 0.0)) throw std::invalid_argument(std::string(who) + ": requires p >= 0 and q > 0");
}

void check_willmore(double s, double p, const char* who) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument(std::string(who) + ": requires s in (0, 1)");
  if (!(p >= 1.0)) throw std::invalid_argument(std::string(who) + ": requires p >= 1");
}

double tp_level(const CurveSamples& samples, double p, double q, const GradedRule& rule) {
  return double_integral(samples, rule, [&](const Secant& s, double c) { return tp_integrand(s, c, p, q); });
}

double tp_classic_level(const CurveSamples& samples, double q, const GradedRule& rule) {
  return double_integral(samples, rule, [&](const Secant& s, double c) {
    return std::pow(2.0 * s.normal_start.norm() / (c * c), q) * s.tangent_start.norm() * s.tangent_end.norm();
  });
}

double g_level(const CurveSamples& samples, double p, double q, const GradedRule& rule) {
  return double_integral(samples, rule, [&](const Secant& s, double c) {
    return std::pow(0.5 * du_norm(s, c), q) * std::pow(c, 2.0 * q - p);
  });
}

double f_level(const CurveSamples& samples, double p, double q, const GradedRule& rule) {
  const double alpha = p - q;
  const double beta = 2.0 * q - p;
  return double_integral(samples, rule, [&](const Secant& s, double c) {
    return std::pow(s.normal_start.norm() / c, beta) * std::pow(dw_norm(s, c), alpha);
  });
}

std::vector<double> mean_curvatures(const CurveSamples& samples, double sigma, const GradedRule& rule, int orient) {
  const double length = samples.length();
  const SecantKernel kernel(samples, rule.nodes);
  std::vector<double> h(kernel.rows(), 0.0);
  for (int i = 0; i < kernel.rows(); ++i) {
    for (int j = 0; j < kernel.cols(); ++j) {
      const Secant s = kernel(i, j);
      h[i] += rule.weights[j] * mean_curvature_integrand(s, checked_chord(s, length, rule.nodes[j]), sigma, orient);
    }
  }
  return h;
}

double willmore_level(const CurveSamples& samples, double sigma, double p, const GradedRule& rule, int orient) {
  const auto h = mean_curvatures(samples, sigma, rule, orient);
  double sum = 0.0;
  for (int i = 0; i < samples.size(); ++i) sum += std::pow(std::abs(h[i]), p) * samples.speeds()[i];
  return sum / samples.size();
}

double i1_level(const CurveSamples& samples, const ScalarFn& f, ZVariable z, const GradedRule& rule) {
  return double_integral(samples, rule, [&](const Secant& s, double c) {
    return f(z == ZVariable::u ? du_norm(s, c) : dw_norm(s, c));
  });
}

double i2_level(const CurveSamples& samples, const ScalarFn& f, const ScalarFn& g, const GradedRule& rule) {
  return double_integral(samples, rule, [&](const Secant& s, double c) {
    return f(du_norm(s, c)) / g(c * c);
  });
}

double i3_level(const CurveSamples& samples, const ScalarFn& g, const GradedRule& rule) {
  return double_integral(samples, rule, [&](const Secant& s, double c) {
    const double cos_angle = s.tangent_start.dot(s.chord) / (s.tangent_start.norm() * c);
    return g(cos_angle) * dw_norm(s, c);
  });
}

int slice_index(const CurveSamples& samples, double u) {
  const int n = samples.size();
  const long i = std::lround(u * n);
  return static_cast<int>(((i % n) + n) % n);
}

double g_slice_on(const CurveSamples& samples, double p, double q, int j) {
  const int n = samples.size();
  const SecantKernel kernel(samples, {grid_offset(j, n)});
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const Secant s = kernel(i, 0);
    const double c = checked_chord(s, samples.length(), kernel.offset(0));
    sum += std::pow(0.5 * du_norm(s, c), q) * std::pow(c, 2.0 * q - p);
  }
  return sum / n;
}

double f_slice_on(const CurveSamples& samples, double p, double q, int i, const GradedRule& rule) {
  const double alpha = p - q;
  const double beta = 2.0 * q - p;
  double sum = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const Secant s = secant_at(samples, i, rule.nodes[j]);
    const double c = checked_chord(s, samples.length(), rule.nodes[j]);
    sum += rule.weights[j] * std::pow(s.normal_start.norm() / c, beta) * std::pow(dw_norm(s, c), alpha);
  }
  return sum;
}

const ScalarFn kIdentity = [](double x) { return x; };
const ScalarFn kOne = [](double) { return 1.0; };

}  // namespace

std::string to_string(EnergyKind kind) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  return "unknown";
}

EnergyKind energy_kind_from_string(const std::string& name) {
  for (const auto& kn : kKindNames) {
    if (name == kn.name) return kn.kind;
  }
  throw std::invalid_argument("unknown energy kind '" + name + "'");
}

double EnergySpec::endpoint_exponent() const {
  switch (kind) {
    case EnergyKind::TP:
    case EnergyKind::G:
    case EnergyKind::GSliceW:
      return 2.0 * q - p;
    case EnergyKind::F:
    case EnergyKind::FSliceU:
      return beta();
    case EnergyKind::Willmore:
      return -s;
    default:
      return 0.0;
  }
}

void EnergySpec::validate() const {
  switch (kind) {
    case EnergyKind::Willmore:
      check_willmore(s, p, "EnergySpec");
      break;
    case EnergyKind::I1:
    case EnergyKind::I2:
    case EnergyKind::I3:
      break;
    case EnergyKind::GSliceW:
      check_pq(p, q, "EnergySpec");
      if (!(slice_value > 0.0 && slice_value < 1.0)) {
        throw std::invalid_argument("EnergySpec: slice w must lie in (0, 1)");
      }
      break;
    default:
      check_pq(p, q, "EnergySpec");
  }
}

bool EnergySpec::requires_arclength() const {
  return kind == EnergyKind::F || kind == EnergyKind::FSliceU || kind == EnergyKind::I2;
}

EnergyValue tp_energy(const CurveSamples& samples, double p, double q, const QuadratureSpec& quad) {
  check_pq(p, q, "tp_energy");
  require_embedded(samples, "tp_energy");
  const double g = effective_grading(quad.grading_exponent, 2.0 * q - p);
  GridLevels levels(samples);
  return with_doubling(quad, [&](int nu, int nw) { return tp_level(levels.at(nu), p, q, graded_nodes(nw, g)); });
}

EnergyValue tp_classic(const CurveSamples& samples, double q, const QuadratureSpec& quad) {
  check_pq(2.0 * q, q, "tp_classic");
  require_embedded(samples, "tp_classic");
  const double g = effective_grading(quad.grading_exponent, 0.0);
  GridLevels levels(samples);
  return with_doubling(quad, [&](int nu, int nw) { return tp_classic_level(levels.at(nu), q, graded_nodes(nw, g)); });
}

EnergyValue g_energy(const CurveSamples& samples, double p, double q, const QuadratureSpec& quad) {
  check_pq(p, q, "g_energy");
  require_embedded(samples, "g_energy");
  const double g = effective_grading(quad.grading_exponent, 2.0 * q - p);
  GridLevels levels(samples);
  return with_doubling(quad, [&](int nu, int nw) { return g_level(levels.at(nu), p, q, graded_nodes(nw, g)); });
}

double g_slice_w(const CurveSamples& samples, double p, double q, double w) {
  check_pq(p, q, "g_slice_w");
  if (!(w > 0.0 && w < 1.0)) throw std::invalid_argument("g_slice_w: w must lie in (0, 1)");
  const int n = samples.size();
  const int j = std::clamp(static_cast<int>(std::lround(w * n)), 1, n - 1);
  return g_slice_on(samples, p, q, j);
}

EnergyValue f_energy(const CurveSamples& samples, double p, double q, const QuadratureSpec& quad) {
  check_pq(p, q, "f_energy");
  require_arclength(samples, "f_energy");
  require_embedded(samples, "f_energy");
  const double g = effective_grading(quad.grading_exponent, 2.0 * q - p);
  GridLevels levels(samples);
  return with_doubling(quad, [&](int nu, int nw) { return f_level(levels.at(nu), p, q, graded_nodes(nw, g)); });
}

double f_slice_u(const CurveSamples& samples, double p, double q, int i, const QuadratureSpec& quad) {
  check_pq(p, q, "f_slice_u");
  require_arclength(samples, "f_slice_u");
  if (i < 0 || i >= samples.size()) throw std::out_of_range("f_slice_u: sample index out of range");
  const double g = effective_grading(quad.grading_exponent, 2.0 * q - p);
  return f_slice_on(samples, p, q, i, graded_nodes(quad.n_w, g));
}

double nonlocal_mean_curvature(const CurveSamples& samples, int i, double s, const QuadratureSpec& quad) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("nonlocal_mean_curvature: requires s in (0, 1)");
  if (i < 0 || i >= samples.size()) throw std::out_of_range("nonlocal_mean_curvature: sample index out of range");
  const int orient = require_convex_planar(samples, "nonlocal_mean_curvature");
  const GradedRule rule = graded_nodes(quad.n_w, effective_grading(quad.grading_exponent, -s));
  double h = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const Secant sec = secant_at(samples, i, rule.nodes[j]);
    h += rule.weights[j] * mean_curvature_integrand(sec, checked_chord(sec, samples.length(), rule.nodes[j]), s, orient);
  }
  return h;
}

double nonlocal_mean_curvature_gauss(const CurveSamples& samples, int i, double s, const QuadratureSpec& quad) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("nonlocal_mean_curvature: requires s in (0, 1)");
  if (i < 0 || i >= samples.size()) throw std::out_of_range("nonlocal_mean_curvature: sample index out of range");
  require_convex_planar(samples, "nonlocal_mean_curvature");
  const GradedRule rule = graded_nodes(quad.n_w, effective_grading(quad.grading_exponent, -s));
  double h = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const Secant sec = secant_at(samples, i, rule.nodes[j]);
    const double c = checked_chord(sec, samples.length(), rule.nodes[j]);
    h += rule.weights[j] * dw_norm(sec, c) * std::pow(c, -s);
  }
  return h;
}

EnergyValue willmore_fractional(const CurveSamples& samples, double s, double p, const QuadratureSpec& quad) {
  check_willmore(s, p, "willmore_fractional");
  const int orient = require_convex_planar(samples, "willmore_fractional");
  const double g = effective_grading(quad.grading_exponent, -s);
  GridLevels levels(samples);
  return with_doubling(quad, [&](int nu, int nw) {
    return willmore_level(levels.at(nu), s, p, graded_nodes(nw, g), orient);
  });
}

EnergyValue functional_I1(const CurveSamples& samples, const ScalarFn& f, ZVariable z, const QuadratureSpec& quad) {
  require_embedded(samples, "functional_I1");
  GridLevels levels(samples);
  return with_doubling(quad, [&](int nu, int nw) {
    return i1_level(levels.at(nu), f, z, graded_nodes(nw, quad.grading_exponent));
  });
}

EnergyValue functional_I2(const CurveSamples& samples, const ScalarFn& f, const ScalarFn& g, const QuadratureSpec& quad) {
  require_arclength(samples, "functional_I2");
  require_embedded(samples, "functional_I2");
  GridLevels levels(samples);
  return with_doubling(quad, [&](int nu, int nw) {
    return i2_level(levels.at(nu), f, g, graded_nodes(nw, quad.grading_exponent));
  });
}

EnergyValue functional_I3(const CurveSamples& samples, const ScalarFn& g, const QuadratureSpec& quad) {
  require_embedded(samples, "functional_I3");
  GridLevels levels(samples);
  return with_doubling(quad, [&](int nu, int nw) {
    return i3_level(levels.at(nu), g, graded_nodes(nw, quad.grading_exponent));
  });
}

WirtingerResult wirtinger_check(const CurveSamples& samples, double shift) {
  const int n = samples.size();
  const long j = std::lround(shift * n);
  const int jj = static_cast<int>(((j % n) + n) % n);
  WirtingerResult r;
  r.shift = static_cast<double>(j) / n;
  const auto pts = samples.points();
  double lhs = 0.0;
  double energy = 0.0;
  for (int i = 0; i < n; ++i) {
    lhs += (pts[(i + jj) % n] - pts[i]).squaredNorm();
    energy += samples.speeds()[i] * samples.speeds()[i];
  }
  const double factor = std::sin(kPi * r.shift) / kPi;
  r.lhs = lhs / n;
  r.rhs = factor * factor * energy / n;
  return r;
}

EnergyValue evaluate(const CurveSamples& samples, const EnergySpec& spec, const QuadratureSpec& quad) {
  spec.validate();
  switch (spec.kind) {
    case EnergyKind::TP:
      return tp_energy(samples, spec.p, spec.q, quad);
    case EnergyKind::TPClassic:
      return tp_classic(samples, spec.q, quad);
    case EnergyKind::G:
      return g_energy(samples, spec.p, spec.q, quad);
    case EnergyKind::F:
      return f_energy(samples, spec.p, spec.q, quad);
    case EnergyKind::Willmore:
      return willmore_fractional(samples, spec.s, spec.p, quad);
    case EnergyKind::I1:
      return functional_I1(samples, kIdentity, spec.z_variable, quad);
    case EnergyKind::I2:
      return functional_I2(samples, kIdentity, kOne, quad);
    case EnergyKind::I3:
      return functional_I3(samples, kOne, quad);
    case EnergyKind::GSliceW: {
      require_embedded(samples, "g_slice_w");
      GridLevels levels(samples);
      return with_doubling(quad, [&](int nu, int) { return g_slice_w(levels.at(nu), spec.p, spec.q, spec.slice_value); });
    }
    case EnergyKind::FSliceU: {
      require_arclength(samples, "f_slice_u");
      require_embedded(samples, "f_slice_u");
      const double g = effective_grading(quad.grading_exponent, spec.beta());
      GridLevels levels(samples);
      return with_doubling(quad, [&](int nu, int nw) {
        const CurveSamples& level = levels.at(nu);
        return f_slice_on(level, spec.p, spec.q, slice_index(level, spec.slice_value), graded_nodes(nw, g));
      });
    }
  }
  throw std::logic_error("evaluate: unhandled energy kind");
}

double evaluate_on_grid(const CurveSamples& samples, const EnergySpec& spec, int n_w, double grading) {
  const GradedRule rule = graded_nodes(n_w, effective_grading(grading, spec.endpoint_exponent()));
  switch (spec.kind) {
    case EnergyKind::TP:
      return tp_level(samples, spec.p, spec.q, rule);
    case EnergyKind::TPClassic:
      return tp_classic_level(samples, spec.q, rule);
    case EnergyKind::G:
      return g_level(samples, spec.p, spec.q, rule);
    case EnergyKind::F:
      return f_level(samples, spec.p, spec.q, rule);
    case EnergyKind::Willmore:
      return willmore_level(samples, spec.s, spec.p, rule, require_convex_planar(samples, "willmore_fractional"));
    case EnergyKind::I1:
      return i1_level(samples, kIdentity, spec.z_variable, graded_nodes(n_w, grading));
    case EnergyKind::I2:
      return i2_level(samples, kIdentity, kOne, graded_nodes(n_w, grading));
    case EnergyKind::I3:
      return i3_level(samples, kOne, graded_nodes(n_w, grading));
    case EnergyKind::GSliceW:
      return g_slice_w(samples, spec.p, spec.q, spec.slice_value);
    case EnergyKind::FSliceU:
      return f_slice_on(samples, spec.p, spec.q, slice_index(samples, spec.slice_value), rule);
  }
  throw std::logic_error("evaluate_on_grid: unhandled energy kind");
}

}  // namespace tpe
