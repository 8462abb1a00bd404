#include "tpe/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "tpe/bounds.hpp"
#include "tpe/energies.hpp"
#include "tpe/gaussmap.hpp"
#include "tpe/minimize.hpp"
#include "tpe/serialize.hpp"

namespace tpe {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double to_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid number '" + text + "' in " + what);
  }
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    if (!part.empty()) out.push_back(to_double(part, what));
  }
  return out;
}

// Writes to --out when given, otherwise to `out`.
void emit(const CliConfig& config, std::ostream& out, const std::string& text) {
  if (config.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write output file '" + config.out + "'");
  file << text;
}

FourierCurve prepared_curve(const CliConfig& config) {
  FourierCurve curve = parse_curve(config.curve);
  if (config.length) curve = rescale_to_length(curve, *config.length);
  return curve;
}

EnergySpec energy_spec(const CliConfig& config) {
  EnergySpec spec;
  spec.kind = config.willmore ? EnergyKind::Willmore : energy_kind_from_string(config.kind);
  spec.p = spec.kind == EnergyKind::Willmore ? config.wp : config.p;
  spec.q = config.q;
  spec.s = config.s;
  spec.slice_value = config.slice;
  if (config.z == "u") {
    spec.z_variable = ZVariable::u;
  } else if (config.z == "w") {
    spec.z_variable = ZVariable::w;
  } else {
    throw std::invalid_argument("--z must be 'u' or 'w'");
  }
  spec.validate();
  return spec;
}

std::string join_flags(const ParamRegion& region) {
  std::string out;
  for (const auto& name : region.names()) out += (out.empty() ? "" : ";") + name;
  return out;
}

Json region_json(const ParamRegion& region) {
  Json flags = Json::array();
  for (const auto& name : region.names()) flags.push_back(name);
  return flags;
}

double bound_or_nan(double length, double p, double q) {
  if (!(2.0 * q - p > -1.0)) return std::numeric_limits<double>::quiet_NaN();
  return tp_lower_bound(length, p, q).value;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string group;
  std::string name;
  double tolerance;
  // Returns the measured violation; the check passes when it is <= tolerance.
  std::function<double()> measure;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

CurveSamples arc_fixture(const FourierCurve& c, int n = kDefaultSamples) {
  return resample_arclength(rescale_to_length(c, 1.0), n);
}

std::vector<Check> verify_checks() {
  std::vector<Check> checks;
  const QuadratureSpec quad;

  checks.push_back({"circle", "gauss_map_constant_speed", 1e-10, [] {
    const CurveSamples c = sample(make_circle(1.0), 64);
    double worst = 0.0;
    for (int i = 0; i < c.size(); ++i) {
      for (int j = 1; j < c.size(); ++j) {
        const GaussEval g = gauss_eval(c, i, j);
        worst = std::max({worst, std::abs(g.du_norm - 2 * kPi), std::abs(g.dw_norm - kPi),
                          std::abs(g.inv_tp_radius - 2 * kPi)});
      }
    }
    return worst;
  }});
  checks.push_back({"circle", "chord_closed_form", 1e-12, [] {
    const CurveSamples c = sample(make_circle(1.0), 64);
    double worst = 0.0;
    for (int i = 0; i < c.size(); ++i) {
      for (int j = 1; j < c.size(); ++j) {
        const double w = static_cast<double>(j) / c.size();
        worst = std::max(worst, std::abs(gauss_eval(c, i, j).chord - std::sin(kPi * w) / kPi));
      }
    }
    return worst;
  }});
  checks.push_back({"circle", "tp_saturates_bound", 1e-4, [quad] {
    const CurveSamples c = sample(make_circle(1.0), quad.n_u);
    const double grid[][2] = {{3, 2}, {3.5, 2}, {4, 2}, {4.5, 2}, {2, 1}, {2.5, 1.5}, {5, 3}};
    double worst = 0.0;
    for (const auto& pq : grid) {
      worst = std::max(worst, rel(tp_energy(c, pq[0], pq[1], quad).value, tp_lower_bound(1.0, pq[0], pq[1]).value));
    }
    return worst;
  }});

  checks.push_back({"homogeneity", "tp_scaling", 1e-12, [] {
    const FourierCurve e = make_ellipse(2.0, 1.0);
    const CurveSamples base = sample(e, 128);
    double worst = 0.0;
    for (double lambda : {0.5, 2.0}) {
      const CurveSamples scaled = sample(e.scaled(lambda), 128);
      for (const auto& pq : {std::pair{3.0, 2.0}, std::pair{4.0, 2.0}, std::pair{4.5, 2.0}}) {
        EnergySpec spec;
        spec.p = pq.first;
        spec.q = pq.second;
        const double e0 = evaluate_on_grid(base, spec, 128, 4.0);
        const double e1 = evaluate_on_grid(scaled, spec, 128, 4.0);
        worst = std::max(worst, rel(e1, std::pow(lambda, spec.q + 2.0 - spec.p) * e0));
      }
    }
    return worst;
  }});

  // Violations beyond 3x the combined error estimate (plus a rounding floor).
  checks.push_back({"reparametrization", "tp_arclength_invariance", 0.0, [quad] {
    const FourierCurve e = rescale_to_length(make_ellipse(2.0, 1.0), 1.0);
    const EnergyValue a = tp_energy(sample(e, quad.n_u), 4.0, 2.0, quad);
    const EnergyValue b = tp_energy(resample_arclength(e, quad.n_u), 4.0, 2.0, quad);
    const double allowed = 3.0 * (a.error_estimate + b.error_estimate) + 1e-12 * std::abs(a.value);
    return std::max(0.0, std::abs(a.value - b.value) - allowed);
  }});

  checks.push_back({"minorant", "g_and_f_below_tp", 0.0, [quad] {
    double worst = 0.0;
    for (const auto& c : {make_ellipse(2.0, 1.0), make_perturbed_circle(1.0, 3, 0.05)}) {
      const CurveSamples s = arc_fixture(c, quad.n_u);
      const EnergyValue tp4 = tp_energy(s, 4.0, 2.0, quad);
      const EnergyValue g4 = g_energy(s, 4.0, 2.0, quad);
      const EnergyValue tp3 = tp_energy(s, 3.0, 2.0, quad);
      const EnergyValue f3 = f_energy(s, 3.0, 2.0, quad);
      const double tol_g = 3.0 * (tp4.error_estimate + g4.error_estimate) + 1e-12 * tp4.value;
      const double tol_f = 3.0 * (tp3.error_estimate + f3.error_estimate) + 1e-12 * tp3.value;
      worst = std::max({worst, g4.value - tp4.value - tol_g, f3.value - tp3.value - tol_f});
    }
    return std::max(0.0, worst);
  }});
  checks.push_back({"minorant", "equality_at_circle", 1e-5, [quad] {
    const CurveSamples c = sample(make_circle(1.0), quad.n_u);
    return std::max(rel(g_energy(c, 4.0, 2.0, quad).value, tp_energy(c, 4.0, 2.0, quad).value),
                    rel(f_energy(c, 3.0, 2.0, quad).value, tp_energy(c, 3.0, 2.0, quad).value));
  }});

  checks.push_back({"fenchel", "inequality_all_fixtures", 1e-4, [] {
    double worst = 0.0;
    for (const auto& c : {make_circle(1.0), make_ellipse(2.0, 1.0), make_trefoil(1.0), make_perturbed_circle(1.0, 3, 0.3)}) {
      const FenchelReport r = fenchel_report(c, kDefaultSamples);
      worst = std::max({worst, -r.slack_u, -r.slack_w});
    }
    return worst;
  }});
  checks.push_back({"fenchel", "equality_convex", 1e-4, [] {
    double worst = 0.0;
    for (const auto& c : {make_circle(1.0), make_ellipse(2.0, 1.0)}) {
      const FenchelReport r = fenchel_report(c, kDefaultSamples);
      worst = std::max({worst, std::abs(r.slack_u), std::abs(r.slack_w)});
    }
    return worst;
  }});
  checks.push_back({"fenchel", "strict_trefoil", 0.0, [] {
    const FenchelReport r = fenchel_report(make_trefoil(1.0), kDefaultSamples);
    return std::max(0.0, 0.01 - std::min(r.slack_u, r.slack_w));
  }});
  checks.push_back({"fenchel", "strict_nonconvex_w", 0.0, [] {
    const FenchelReport r = fenchel_report(make_perturbed_circle(1.0, 3, 0.3), kDefaultSamples);
    return std::max(0.0, 0.01 - r.slack_w);
  }});

  checks.push_back({"wirtinger", "equality_circle", 1e-10, [] {
    const WirtingerResult r = wirtinger_check(sample(make_circle(1.0), kDefaultSamples), 0.25);
    return std::abs(r.lhs - r.rhs);
  }});
  checks.push_back({"wirtinger", "strict_ellipse", 0.0, [] {
    const WirtingerResult r = wirtinger_check(arc_fixture(make_ellipse(2.0, 1.0)), 0.3);
    return std::max(0.0, 1e-4 - (r.rhs - r.lhs));
  }});

  checks.push_back({"bounds", "gamma_formula_vs_quadrature", 1e-8, [] {
    double worst = 0.0;
    for (double a : {-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0}) {
      const GradedRule rule = graded_nodes(4096, effective_grading(4.0, a));
      double sum = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        sum += rule.weights[j] * std::pow(std::sin(kPi * rule.endpoint_distance[j]), a);
      }
      worst = std::max(worst, rel(sum, sin_power_integral(a)));
    }
    return worst;
  }});
  return checks;
}

// ---------------------------------------------------------------------------
// --config JSON -> flags

std::vector<std::string> config_flags(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config file must hold a JSON object");
  std::vector<std::string> args;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string flag = "--" + it.key();
    const Json& v = it.value();
    if (v.is_boolean()) {
      if (v.get<bool>()) args.push_back(flag);
    } else if (v.is_array()) {
      std::string joined;
      for (const auto& x : v) {
        joined += (joined.empty() ? "" : ",") + (x.is_string() ? x.get<std::string>() : format_double(x.get<double>()));
      }
      args.push_back(flag);
      args.push_back(joined);
    } else if (v.is_string()) {
      args.push_back(flag);
      args.push_back(v.get<std::string>());
    } else if (v.is_number_integer()) {
      args.push_back(flag);
      args.push_back(std::to_string(v.get<long long>()));
    } else if (v.is_number()) {
      args.push_back(flag);
      args.push_back(format_double(v.get<double>()));
    } else {
      throw std::invalid_argument("config key '" + it.key() + "' has an unsupported value type");
    }
  }
  return args;
}

}  // namespace

FourierCurve parse_curve(const std::string& text) {
  const auto parts = split(text, ':');
  const std::string name = parts.empty() ? "" : parts[0];
  auto arg = [&](std::size_t i) { return to_double(parts.at(i), "curve '" + text + "'"); };
  auto expect = [&](std::size_t n) {
    if (parts.size() != n) throw std::invalid_argument("curve '" + text + "': wrong number of arguments");
  };
  if (name == "circle") {
    if (parts.size() == 1) return make_circle(1.0);
    expect(2);
    return make_circle(arg(1));
  }
  if (name == "ellipse") {
    expect(3);
    if (!(arg(1) > 0.0 && arg(2) > 0.0)) throw std::invalid_argument("ellipse: semi-axes must be > 0");
    return make_ellipse(arg(1), arg(2));
  }
  if (name == "perturbed") {
    expect(3);
    return make_perturbed_circle(1.0, static_cast<int>(arg(1)), arg(2));
  }
  if (name == "trefoil") {
    if (parts.size() == 1) return make_trefoil(1.0);
    expect(2);
    return make_trefoil(arg(1));
  }
  if (name == "figure-eight") return make_figure_eight();
  return read_curve_file(text);
}

int run_energy(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const EnergySpec spec = energy_spec(config);
  const FourierCurve curve = prepared_curve(config);
  const CurveSamples samples = (spec.requires_arclength() || config.arclength) ? resample_arclength(curve, config.quad.n_u)
                                                                                : sample(curve, config.quad.n_u);
  const EnergyValue v = evaluate(samples, spec, config.quad);
  if (config.format == "csv") {
    std::string text = csv_row({"kind", "p", "q", "s", "value", "error_estimate", "N_u", "N_w", "converged"});
    text += csv_row({to_string(spec.kind), csv_number(spec.p), csv_number(spec.q), csv_number(spec.s),
                     csv_number(v.value), csv_number(v.error_estimate), std::to_string(v.n_u),
                     std::to_string(v.n_w), v.converged ? "true" : "false"});
    emit(config, out, text);
  } else {
    emit(config, out, dump_json(to_json(v, spec)));
  }
  if (!v.converged) {
    err << "energy: not converged under grid doubling (diverged); relative change "
        << format_double(v.error_estimate / std::abs(v.value)) << "\n";
    return 2;
  }
  return 0;
}

int run_bound(const CliConfig& config, std::ostream& out, std::ostream&) {
  const double length = config.length.value_or(1.0);
  Json j;
  if (config.willmore) {
    j["s"] = config.s;
    j["p"] = config.wp;
    j["L"] = length;
    j["bound"] = willmore_lower_bound(length, config.s, config.wp).value;
  } else {
    const ParamRegion region = classify_region(config.p, config.q);
    j["p"] = config.p;
    j["q"] = config.q;
    j["L"] = length;
    j["bound"] = bound_or_nan(length, config.p, config.q);
    j["region_flags"] = region_json(region);
  }
  emit(config, out, dump_json(j));
  return 0;
}

int run_fenchel(const CliConfig& config, std::ostream& out, std::ostream&) {
  emit(config, out, dump_json(to_json(fenchel_report(prepared_curve(config), config.n))));
  return 0;
}

int run_verify(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<std::string> only;
  if (!config.only.empty()) only = split(config.only, ',');
  const auto checks = verify_checks();
  for (const auto& g : only) {
    const bool known = std::any_of(checks.begin(), checks.end(), [&](const Check& c) { return c.group == g; });
    if (!known) throw std::invalid_argument("--only: unknown check group '" + g + "'");
  }

  std::ostringstream table;
  std::string csv = csv_row({"check", "pass", "violation", "tolerance"});
  Json rows = Json::array();
  std::string first_failure;
  for (const auto& c : checks) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.group) == only.end()) continue;
    const double tol = config.strict.value_or(c.tolerance);
    double measured = std::numeric_limits<double>::quiet_NaN();
    std::string note;
    try {
      measured = c.measure();
    } catch (const std::exception& e) {
      note = e.what();
    }
    const bool pass = measured <= tol;
    const std::string label = c.group + "/" + c.name;
    if (!pass && first_failure.empty()) first_failure = label;
    char line[256];
    std::snprintf(line, sizeof line, "%-48s %s  violation %.3e  tol %.1e%s%s\n", label.c_str(), pass ? "PASS" : "FAIL",
                  measured, tol, note.empty() ? "" : "  ", note.c_str());
    table << line;
    Json row;
    row["check"] = label;
    row["pass"] = pass;
    row["violation"] = measured;
    row["tolerance"] = tol;
    rows.push_back(row);
    csv += csv_row({label, pass ? "true" : "false", csv_number(measured), csv_number(tol)});
  }
  if (config.format == "json") {
    emit(config, out, dump_json(rows));
  } else if (config.format == "csv") {
    emit(config, out, csv);
  } else {
    emit(config, out, table.str());
  }
  if (!first_failure.empty()) {
    err << "verify: invariant failed: " << first_failure << "\n";
    return 3;
  }
  return 0;
}

int run_sweep(const CliConfig& config, std::ostream& out, std::ostream&) {
  const double length = config.length.value_or(1.0);
  const FourierCurve fixture = rescale_to_length(parse_curve(config.curve), length);
  const CurveSamples fixture_samples = sample(fixture, config.quad.n_u);
  const CurveSamples circle = sample(make_circle(length), config.quad.n_u);
  const std::vector<double> qs = parse_list(config.qs, "--qs");
  if (qs.empty()) throw std::invalid_argument("--qs: empty list");
  const std::vector<double> explicit_ps = parse_list(config.ps, "--ps");
  if (explicit_ps.empty() && config.p_auto < 2) throw std::invalid_argument("--p-auto needs at least 2 points");

  std::string csv = csv_row({"p", "q", "region_flags", "bound", "tp_circle", "tp_fixture", "slack", "status"});
  Json rows = Json::array();
  for (double q : qs) {
    std::vector<double> ps = explicit_ps;
    if (ps.empty()) {
      const double lo = q + 1.0;
      const double hi = 2.0 * q + 0.9;
      for (int i = 0; i < config.p_auto; ++i) ps.push_back(lo + (hi - lo) * i / (config.p_auto - 1));
    }
    for (double p : ps) {
      const ParamRegion region = classify_region(p, q);
      const double bound = bound_or_nan(length, p, q);
      const EnergyValue tc = tp_energy(circle, p, q, config.quad);
      const EnergyValue tf = tp_energy(fixture_samples, p, q, config.quad);
      const bool ok = tc.converged && tf.converged;
      const double slack = ok ? tf.value - bound : std::numeric_limits<double>::quiet_NaN();
      const std::string status = ok ? "ok" : "diverged";
      csv += csv_row({csv_number(p), csv_number(q), join_flags(region), csv_number(bound), csv_number(tc.value),
                      csv_number(tf.value), csv_number(slack), status});
      Json row;
      row["p"] = p;
      row["q"] = q;
      row["region_flags"] = region_json(region);
      row["bound"] = bound;
      row["tp_circle"] = tc.value;
      row["tp_fixture"] = tf.value;
      row["slack"] = slack;
      row["status"] = status;
      rows.push_back(row);
    }
  }
  emit(config, out, config.format == "json" ? dump_json(rows) : csv);
  return 0;
}

int run_minimize(const CliConfig& config, std::ostream& out, std::ostream&) {
  MinimizeConfig mc;
  mc.spec = energy_spec(config);
  mc.modes = config.modes;
  mc.dims = config.dims;
  mc.target_length = config.length.value_or(1.0);
  mc.max_iters = config.max_iters;
  mc.grad_step = config.grad_step;
  mc.step_rule = {config.initial_step, config.shrink, config.armijo};
  mc.stop_grad_norm = config.stop_grad_norm;
  mc.quad = parse_quad_flag(config.opt_quad, mc.quad);
  mc.final_quad = config.quad;
  const MinimizeReport report = descend(parse_curve(config.curve), mc);
  emit(config, out, dump_json(to_json(report, mc)));
  if (!config.trace.empty()) {
    std::ofstream file(config.trace, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write trace file '" + config.trace + "'");
    file << csv_row({"iteration", "energy"});
    for (std::size_t i = 0; i < report.energies.size(); ++i) {
      file << csv_row({std::to_string(i), csv_number(report.energies[i])});
    }
  }
  return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  CliConfig config;
  std::string quad_text;

  CLI::App app{"Tangent-point, Willmore and Gauss-map energies of closed curves", "tpe"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;

  auto common = [&](CLI::App* sub) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--config", config_path, "JSON file whose keys mirror the flags");
    sub->add_option("--curve", config.curve, "circle | ellipse:a:b | perturbed:mode:eps | trefoil | curve.json");
    sub->add_option("--p", config.p, "exponent p");
    sub->add_option("--q", config.q, "exponent q");
    sub->add_option("--s", config.s, "fractional order s (Willmore)");
    sub->add_option("--wp", config.wp, "Willmore exponent p");
    sub->add_option("--length", config.length, "rescale the curve to this length");
    sub->add_option("--quad", quad_text, "NU,NW,G");
    sub->add_option("--out", config.out, "output file");
    sub->add_option("--format", config.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--willmore", config.willmore, "fractional Willmore energy instead of --kind");
  };

  auto* energy = app.add_subcommand("energy", "evaluate an energy functional");
  common(energy);
  energy->add_option("--kind", config.kind, "TP | TPClassic | G | GSliceW | F | FSliceU | Willmore | I1 | I2 | I3");
  energy->add_option("--slice", config.slice, "w for GSliceW, u for FSliceU");
  energy->add_option("--z", config.z, "u | w (I1)");
  energy->add_flag("--arclength", config.arclength, "resample to constant speed first");

  auto* bound = app.add_subcommand("bound", "sharp lower bound and (p, q) region flags");
  common(bound);

  auto* fenchel = app.add_subcommand("fenchel", "Fenchel-type path-length minima of the Gauss map");
  common(fenchel);
  fenchel->add_option("--n", config.n, "grid size");

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  common(verify);
  verify->add_option("--only", config.only, "comma-separated groups: circle, homogeneity, reparametrization, "
                                            "minorant, fenchel, wirtinger, bounds");
  verify->add_option("--strict", config.strict, "replace every tolerance by this value");

  auto* sweep = app.add_subcommand("sweep", "TP versus the sharp bound over a (p, q) grid");
  common(sweep);
  sweep->add_option("--qs", config.qs, "comma-separated q values");
  sweep->add_option("--ps", config.ps, "comma-separated p values (default: --p-auto points in [q+1, 2q+0.9])");
  sweep->add_option("--p-auto", config.p_auto, "number of p values per q");

  auto* minimize = app.add_subcommand("minimize", "descend an energy at fixed length");
  common(minimize);
  minimize->add_option("--kind", config.kind, "TP | TPClassic | G | F | Willmore");
  minimize->add_option("--modes", config.modes, "Fourier modes M <= 8");
  minimize->add_option("--dims", config.dims, "2 or 3");
  minimize->add_option("--max-iters", config.max_iters, "iteration limit");
  minimize->add_option("--grad-step", config.grad_step, "finite-difference step");
  minimize->add_option("--initial-step", config.initial_step, "initial line-search step");
  minimize->add_option("--shrink", config.shrink, "backtracking factor");
  minimize->add_option("--armijo", config.armijo, "Armijo constant");
  minimize->add_option("--stop-grad", config.stop_grad_norm, "gradient-norm stopping threshold");
  minimize->add_option("--opt-quad", config.opt_quad, "objective grid NU,NW,G");
  minimize->add_option("--trace", config.trace, "CSV file of per-iteration energies");

  try {
    // Config-file values go first so explicit flags override them.
    const auto it = std::find(args.begin(), args.end(), "--config");
    if (it != args.end()) {
      if (it + 1 == args.end()) throw std::invalid_argument("--config needs a file argument");
      const auto extra = config_flags(*(it + 1));
      const auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.rfind("-", 0) != 0; });
      const auto pos = sub == args.end() ? args.begin() : sub + 1;
      args.insert(pos, extra.begin(), extra.end());
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (!quad_text.empty()) config.quad = parse_quad_flag(quad_text);
    const auto* sub = app.get_subcommands().front();
    config.subcommand = sub->get_name();
    if (sub->count("--curve") == 0) {
      if (config.subcommand == "sweep") config.curve = "ellipse:2:1";
      if (config.subcommand == "minimize") config.curve = "ellipse:1.5:1";
    }
    if (sub->count("--format") == 0) {
      if (config.subcommand == "sweep") config.format = "csv";
      if (config.subcommand == "verify") config.format = "table";
    }
    if (config.subcommand == "energy") return run_energy(config, out, err);
    if (config.subcommand == "bound") return run_bound(config, out, err);
    if (config.subcommand == "fenchel") return run_fenchel(config, out, err);
    if (config.subcommand == "verify") return run_verify(config, out, err);
    if (config.subcommand == "sweep") return run_sweep(config, out, err);
    return run_minimize(config, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tpe
