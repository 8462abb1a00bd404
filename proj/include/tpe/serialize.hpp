// JSON and CSV output with fixed float formatting.
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "tpe/bounds.hpp"
#include "tpe/curves.hpp"
#include "tpe/energies.hpp"
#include "tpe/gaussmap.hpp"
#include "tpe/minimize.hpp"

namespace tpe {

using Json = nlohmann::ordered_json;

/// Doubles as %.17g, non-finite numbers as null, two-space indentation.
std::string dump_json(const Json& j);

/// {dims, modes, coeffs: [[[a_0, b_0], [a_1, b_1], ...] per dimension]}.
Json curve_to_json(const FourierCurve& curve);
FourierCurve curve_from_json(const Json& j);
FourierCurve read_curve_file(const std::string& path);
void write_curve_file(const FourierCurve& curve, const std::string& path);

Json to_json(const EnergyValue& v, const EnergySpec& spec);
Json to_json(const FenchelReport& r);
Json to_json(const MinimizeReport& r, const MinimizeConfig& config);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& text);
std::string csv_number(double x);
std::string csv_row(const std::vector<std::string>& fields);

/// %.17g, or "nan" / "inf" / "-inf".
std::string format_double(double x);

}  // namespace tpe
