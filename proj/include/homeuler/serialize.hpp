#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "homeuler/classify.hpp"
#include "homeuler/field.hpp"
#include "homeuler/period.hpp"
#include "homeuler/profile.hpp"

namespace homeuler::io {

using Json = nlohmann::ordered_json;

/// Shortest-form-independent float text: 17 significant digits, always with a
/// decimal point or exponent; non-finite values become null.
std::string format_double(double v);

/// Compact JSON with every float printed by format_double. Key order is
/// insertion order, so equal inputs give byte-identical output.
std::string dump(const Json& value);

/// {"kind": ...} plus "count"/"windings" when finite and "boundary_grazing"
/// when a scan reported any.
Json to_json(const ClassificationResult& result);

/// {lambda, bernoulli, pressure, winding, type, theta[], psi[], psi_prime[]}.
Json to_json(const SolutionProfile& profile);
SolutionProfile profile_from_json(const Json& j);

Json to_json(const EllipticOrbit& orbit);
Json to_json(const PeriodTable& table);
Json to_json(const FieldGrid& field);

/// Header "s,pressure,period".
std::string period_table_csv(const PeriodTable& table);
/// Header "r,theta,u_r,u_theta,p", r-major.
std::string field_csv(const FieldGrid& field);

SolutionProfile read_profile(const std::filesystem::path& path);
/// Writes `text` to `path`; errors carry the path.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace homeuler::io
