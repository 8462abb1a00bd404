#include "tpe/minimize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tpe/bounds.hpp"

namespace tpe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinStep = 1e-20;

FourierCurve adapt(const FourierCurve& start, int modes, int dims) {
  auto coeffs = start.with_modes(modes).coefficients();
  if (dims == start.dims()) return FourierCurve(dims, std::move(coeffs));
  if (dims == 3) {
    coeffs.emplace_back(coeffs.front().size());
    return FourierCurve(3, std::move(coeffs));
  }
  for (const auto& m : coeffs[2]) {
    if (m.a != 0.0 || m.b != 0.0) throw std::invalid_argument("descend: cannot drop a non-planar third dimension");
  }
  coeffs.pop_back();
  return FourierCurve(2, std::move(coeffs));
}

}  // namespace

void MinimizeConfig::validate() const {
  spec.validate();
  switch (spec.kind) {
    case EnergyKind::TP:
    case EnergyKind::TPClassic:
    case EnergyKind::G:
    case EnergyKind::F:
    case EnergyKind::Willmore:
      break;
    default:
      throw std::invalid_argument("minimize: energy kind " + to_string(spec.kind) + " is not supported");
  }
  if (modes < 1 || modes > 8) throw std::invalid_argument("minimize: modes must lie in [1, 8]");
  if (dims != 2 && dims != 3) throw std::invalid_argument("minimize: dims must be 2 or 3");
  if (!(target_length > 0.0)) throw std::invalid_argument("minimize: target_length must be > 0");
  if (max_iters < 0) throw std::invalid_argument("minimize: max_iters must be >= 0");
  if (!(grad_step >= 1e-7 && grad_step <= 1e-3)) throw std::invalid_argument("minimize: grad_step must lie in [1e-7, 1e-3]");
  if (!(step_rule.armijo > 0.0 && step_rule.armijo < 0.5)) {
    throw std::invalid_argument("minimize: Armijo constant must lie in (0, 0.5)");
  }
  if (!(step_rule.shrink > 0.0 && step_rule.shrink < 1.0)) throw std::invalid_argument("minimize: shrink must lie in (0, 1)");
  if (!(step_rule.initial_step > 0.0)) throw std::invalid_argument("minimize: initial_step must be > 0");
  if (!(stop_grad_norm >= 0.0)) throw std::invalid_argument("minimize: stop_grad_norm must be >= 0");
  quad.validate();
  final_quad.validate();
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::grad_norm: return "grad_norm";
    case Termination::max_iters: return "max_iters";
    case Termination::line_search_failure: return "line_search_failure";
  }
  return "unknown";
}

Eigen::VectorXd pack_coefficients(const FourierCurve& curve) {
  const int m = curve.modes();
  Eigen::VectorXd x(2 * m * curve.dims());
  int idx = 0;
  for (int d = 0; d < curve.dims(); ++d) {
    for (int k = 1; k <= m; ++k) {
      x[idx++] = curve.mode(d, k).a;
      x[idx++] = curve.mode(d, k).b;
    }
  }
  return x;
}

FourierCurve unpack_coefficients(const FourierCurve& like, const Eigen::VectorXd& x) {
  auto coeffs = like.coefficients();
  const int m = like.modes();
  if (x.size() != 2 * m * like.dims()) throw std::invalid_argument("unpack_coefficients: size mismatch");
  int idx = 0;
  for (int d = 0; d < like.dims(); ++d) {
    for (int k = 1; k <= m; ++k) {
      coeffs[d][k].a = x[idx++];
      coeffs[d][k].b = x[idx++];
    }
  }
  return FourierCurve(like.dims(), std::move(coeffs));
}

double energy_of_coeffs(const FourierCurve& coeffs, const MinimizeConfig& config) {
  try {
    const FourierCurve curve = rescale_to_length(coeffs, config.target_length);
    const CurveSamples samples = config.spec.requires_arclength() ? resample_arclength(curve, config.quad.n_u)
                                                                   : sample(curve, config.quad.n_u);
    if (!is_embedded_check(samples)) return kInf;
    const double e = evaluate_on_grid(samples, config.spec, config.quad.n_w, config.quad.grading_exponent);
    return std::isfinite(e) ? e : kInf;
  } catch (const std::exception&) {
    return kInf;
  }
}

Eigen::VectorXd gradient_fd(const FourierCurve& coeffs, const MinimizeConfig& config) {
  const Eigen::VectorXd x = pack_coefficients(coeffs);
  const double h = config.grad_step;
  Eigen::VectorXd g(x.size());
  double center = std::numeric_limits<double>::quiet_NaN();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x;
    Eigen::VectorXd xm = x;
    xp[i] += h;
    xm[i] -= h;
    const double ep = energy_of_coeffs(unpack_coefficients(coeffs, xp), config);
    const double em = energy_of_coeffs(unpack_coefficients(coeffs, xm), config);
    if (std::isfinite(ep) && std::isfinite(em)) {
      g[i] = (ep - em) / (2.0 * h);
      continue;
    }
    if (std::isnan(center)) center = energy_of_coeffs(coeffs, config);
    if (!std::isfinite(center)) throw GeometryError("gradient_fd: objective is not finite at the current point");
    if (std::isfinite(ep)) {
      g[i] = (ep - center) / h;
    } else if (std::isfinite(em)) {
      g[i] = (center - em) / h;
    } else {
      g[i] = 0.0;
    }
  }
  return g;
}

double circle_deviation(const FourierCurve& curve, int n) {
  const CurveSamples s = resample_arclength(curve, n);
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : s.points()) centroid += p;
  centroid /= n;
  double mean = 0.0;
  double sq = 0.0;
  for (const auto& p : s.points()) {
    const double r = (p - centroid).norm();
    mean += r;
    sq += r * r;
  }
  mean /= n;
  const double var = std::max(0.0, sq / n - mean * mean);
  return std::sqrt(var) / mean;
}

double bound_for(const EnergySpec& spec, double length) {
  switch (spec.kind) {
    case EnergyKind::TP:
    case EnergyKind::G:
    case EnergyKind::F:
      return tp_lower_bound(length, spec.p, spec.q).value;
    case EnergyKind::TPClassic:
      return std::pow(2.0, spec.q) * tp_lower_bound(length, 2.0 * spec.q, spec.q).value;
    case EnergyKind::Willmore:
      return willmore_lower_bound(length, spec.s, spec.p).value;
    default:
      return std::numeric_limits<double>::quiet_NaN();
  }
}

MinimizeReport descend(const FourierCurve& start, const MinimizeConfig& config) {
  config.validate();
  FourierCurve current = rescale_to_length(adapt(start, config.modes, config.dims), config.target_length);
  double energy = energy_of_coeffs(current, config);
  if (!std::isfinite(energy)) throw GeometryError("descend: start curve is not embedded or not admissible");

  MinimizeReport report;
  report.energies.push_back(energy);
  double step = config.step_rule.initial_step;
  Eigen::VectorXd grad = gradient_fd(current, config);
  report.terminated_by = Termination::max_iters;

  int iter = 0;
  for (; iter < config.max_iters; ++iter) {
    const double gnorm2 = grad.squaredNorm();
    if (std::sqrt(gnorm2) <= config.stop_grad_norm) {
      report.terminated_by = Termination::grad_norm;
      break;
    }
    const Eigen::VectorXd x = pack_coefficients(current);
    bool accepted = false;
    while (step >= kMinStep) {
      FourierCurve trial = unpack_coefficients(current, x - step * grad);
      const double e = energy_of_coeffs(trial, config);
      if (std::isfinite(e) && e <= energy - config.step_rule.armijo * step * gnorm2 && e < energy) {
        current = rescale_to_length(trial, config.target_length);
        energy = e;
        accepted = true;
        break;
      }
      step *= config.step_rule.shrink;
    }
    if (!accepted) {
      report.terminated_by = Termination::line_search_failure;
      break;
    }
    report.energies.push_back(energy);
    step *= 2.0;
    grad = gradient_fd(current, config);
  }
  if (report.terminated_by == Termination::max_iters && iter == config.max_iters &&
      grad.norm() <= config.stop_grad_norm) {
    report.terminated_by = Termination::grad_norm;
  }

  report.iterations_used = iter;
  report.final_coeffs = current;
  report.final_grad_norm = grad.norm();
  report.circle_deviation = circle_deviation(current);
  const CurveSamples final_samples = config.spec.requires_arclength()
                                         ? resample_arclength(current, config.final_quad.n_u)
                                         : sample(current, config.final_quad.n_u);
  report.final_energy =
      evaluate_on_grid(final_samples, config.spec, config.final_quad.n_w, config.final_quad.grading_exponent);
  const double bound = bound_for(config.spec, config.target_length);
  report.bound_gap = (report.final_energy - bound) / bound;
  return report;
}

double perturbation_gap(const EnergySpec& spec, int mode, double eps, const QuadratureSpec& quad) {
  auto energy = [&](const FourierCurve& c) {
    const CurveSamples s = spec.requires_arclength() ? resample_arclength(c, quad.n_u) : sample(c, quad.n_u);
    return evaluate(s, spec, quad).value;
  };
  const FourierCurve perturbed = make_perturbed_circle(1.0, mode, eps);
  return energy(perturbed) - energy(make_circle(1.0));
}

}  // namespace tpe
