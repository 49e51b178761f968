#include "homeuler/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "homeuler/errors.hpp"

namespace homeuler::io {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace {

void dump_into(const Json& v, std::string& out) {
  switch (v.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        dump_into(item, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        dump_into(v[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: out += format_double(v.get<double>()); break;
    default: out += v.dump(); break;
  }
}

std::vector<double> number_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw DomainError(std::string("profile: missing array '") + key + "'");
  }
  std::vector<double> out;
  out.reserve(j[key].size());
  for (const auto& x : j[key]) {
    if (!x.is_number()) throw DomainError(std::string("profile: non-numeric entry in '") + key + "'");
    out.push_back(x.get<double>());
  }
  return out;
}

double number(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw DomainError(std::string("profile: missing number '") + key + "'");
  }
  return j[key].get<double>();
}

}  // namespace

std::string dump(const Json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

Json to_json(const ClassificationResult& r) {
  Json j;
  j["kind"] = std::string(to_string(r.kind));
  if (r.kind == ResultKind::finite) {
    j["count"] = r.count();
    j["windings"] = r.windings;
  }
  if (!r.boundary_grazing.empty()) j["boundary_grazing"] = r.boundary_grazing;
  return j;
}

Json to_json(const SolutionProfile& p) {
  Json j;
  j["lambda"] = p.lambda;
  j["bernoulli"] = p.bernoulli;
  j["pressure"] = p.pressure;
  j["winding"] = p.winding;
  j["type"] = std::string(to_string(p.type));
  j["theta"] = p.theta;
  j["psi"] = p.psi;
  j["psi_prime"] = p.psi_prime;
  return j;
}

SolutionProfile profile_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("profile: expected a JSON object");
  SolutionProfile p;
  p.lambda = number(j, "lambda");
  p.bernoulli = number(j, "bernoulli");
  p.pressure = number(j, "pressure");
  if (!j.contains("winding") || !j["winding"].is_number_integer()) {
    throw DomainError("profile: missing integer 'winding'");
  }
  p.winding = j["winding"].get<int>();
  if (!j.contains("type") || !j["type"].is_string()) throw DomainError("profile: missing string 'type'");
  p.type = profile_type_from_string(j["type"].get<std::string>());
  p.theta = number_array(j, "theta");
  p.psi = number_array(j, "psi");
  p.psi_prime = number_array(j, "psi_prime");
  validate_profile_grid(p);
  return p;
}

Json to_json(const EllipticOrbit& o) {
  Json j;
  j["lambda"] = o.params.lambda;
  j["bernoulli"] = o.params.bernoulli;
  j["pressure"] = o.pressure;
  j["x_minus"] = o.x_minus;
  j["x_plus"] = o.x_plus;
  j["T"] = o.period;
  return j;
}

Json to_json(const PeriodTable& t) {
  Json j;
  j["lambda"] = t.params.lambda;
  j["bernoulli"] = t.params.bernoulli;
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back(Json{{"s", r.s}, {"pressure", r.pressure}, {"period", r.period}});
  j["rows"] = std::move(rows);
  return j;
}

Json to_json(const FieldGrid& f) {
  Json j;
  j["lambda"] = f.lambda;
  j["orientation"] = f.spec.orientation == Orientation::standard ? "standard" : "flipped";
  j["r"] = f.r;
  j["theta"] = f.theta;
  std::vector<double> ur, ut, p;
  ur.reserve(f.values.size());
  ut.reserve(f.values.size());
  p.reserve(f.values.size());
  for (const auto& v : f.values) {
    ur.push_back(v.u_r);
    ut.push_back(v.u_theta);
    p.push_back(v.p);
  }
  j["layout"] = "r-major";
  j["u_r"] = std::move(ur);
  j["u_theta"] = std::move(ut);
  j["p"] = std::move(p);
  return j;
}

std::string period_table_csv(const PeriodTable& t) {
  std::string out = "s,pressure,period\n";
  for (const auto& r : t.rows) {
    out += format_double(r.s) + ',' + format_double(r.pressure) + ',' + format_double(r.period) + '\n';
  }
  return out;
}

std::string field_csv(const FieldGrid& f) {
  std::string out = "r,theta,u_r,u_theta,p\n";
  for (std::size_t i = 0; i < f.r.size(); ++i) {
    for (std::size_t k = 0; k < f.theta.size(); ++k) {
      const auto& v = f.at(i, k);
      out += format_double(f.r[i]) + ',' + format_double(f.theta[k]) + ',' + format_double(v.u_r) + ',' +
             format_double(v.u_theta) + ',' + format_double(v.p) + '\n';
    }
  }
  return out;
}

SolutionProfile read_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("'" + path.string() + "': " + e.what());
  }
  try {
    return profile_from_json(j);
  } catch (const DomainError& e) {
    throw DomainError("'" + path.string() + "': " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw DomainError("write to '" + path.string() + "' failed");
}

}  // namespace homeuler::io
