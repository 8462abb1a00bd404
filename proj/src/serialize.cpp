#include "tpe/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tpe {

namespace {

void dump_value(const Json& j, std::ostringstream& os, int indent) {
  const std::string pad(indent + 2, ' ');
  const std::string close(indent, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        dump_value(it.value(), os, indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      os << "[";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << (flat ? ", " : ",");
        first = false;
        if (!flat) os << "\n" << pad;
        dump_value(v, os, indent + 2);
      }
      if (!flat) os << "\n" << close;
      os << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const Json& j) {
  std::ostringstream os;
  dump_value(j, os, 0);
  os << "\n";
  return os.str();
}

Json curve_to_json(const FourierCurve& curve) {
  Json coeffs = Json::array();
  for (int d = 0; d < curve.dims(); ++d) {
    Json dim = Json::array();
    for (int k = 0; k <= curve.modes(); ++k) dim.push_back(Json::array({curve.mode(d, k).a, curve.mode(d, k).b}));
    coeffs.push_back(std::move(dim));
  }
  Json j;
  j["dims"] = curve.dims();
  j["modes"] = curve.modes();
  j["coeffs"] = std::move(coeffs);
  return j;
}

FourierCurve curve_from_json(const Json& j) {
  try {
    const int dims = j.at("dims").get<int>();
    const int modes = j.at("modes").get<int>();
    const Json& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != dims) {
      throw std::invalid_argument("curve JSON: 'coeffs' must hold one list per dimension");
    }
    std::vector<std::vector<FourierMode>> c(dims);
    for (int d = 0; d < dims; ++d) {
      const Json& list = coeffs[d];
      if (static_cast<int>(list.size()) != modes + 1) {
        throw std::invalid_argument("curve JSON: each dimension needs modes + 1 pairs [a_k, b_k], k = 0..M");
      }
      for (const auto& pair : list) {
        if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument("curve JSON: coefficients must be [a, b] pairs");
        c[d].push_back({pair[0].get<double>(), pair[1].get<double>()});
      }
    }
    return FourierCurve(dims, std::move(c));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("curve JSON: ") + e.what());
  }
}

FourierCurve read_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open curve file '" + path + "' (not a builtin fixture either)");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("curve file '" + path + "': " + e.what());
  }
  return curve_from_json(j);
}

void write_curve_file(const FourierCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write curve file '" + path + "'");
  out << dump_json(curve_to_json(curve));
}

Json to_json(const EnergyValue& v, const EnergySpec& spec) {
  Json j;
  j["kind"] = to_string(spec.kind);
  j["p"] = spec.p;
  j["q"] = spec.q;
  j["s"] = spec.s;
  j["value"] = v.value;
  j["error_estimate"] = v.error_estimate;
  j["N_u"] = v.n_u;
  j["N_w"] = v.n_w;
  j["converged"] = v.converged;
  return j;
}

Json to_json(const FenchelReport& r) {
  Json j;
  j["min_path_u"] = r.min_path_u;
  j["argmin_w"] = r.argmin_w;
  j["min_path_v"] = r.min_path_w;
  j["argmin_u"] = r.argmin_u;
  j["slack_u"] = r.slack_u;
  j["slack_w"] = r.slack_w;
  j["N"] = r.n;
  return j;
}

Json to_json(const MinimizeReport& r, const MinimizeConfig& config) {
  Json j;
  j["kind"] = to_string(config.spec.kind);
  j["p"] = config.spec.p;
  j["q"] = config.spec.q;
  j["s"] = config.spec.s;
  j["target_length"] = config.target_length;
  j["iterations_used"] = r.iterations_used;
  j["terminated_by"] = to_string(r.terminated_by);
  j["final_energy"] = r.final_energy;
  j["final_grad_norm"] = r.final_grad_norm;
  j["circle_deviation"] = r.circle_deviation;
  j["bound_gap"] = r.bound_gap;
  j["energies"] = r.energies;
  j["final_coeffs"] = curve_to_json(r.final_coeffs);
  return j;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_number(double x) { return std::isfinite(x) ? format_double(x) : ""; }

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

}  // namespace tpe
