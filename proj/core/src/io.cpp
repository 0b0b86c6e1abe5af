#include "qtel/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qtel/errors.hpp"

namespace qtel {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

Mat4c parse_matrix(const json& rows) {
  if (!rows.is_array() || rows.size() != 4)
    throw ParseError("matrix: expected 4 rows");
  Mat4c m;
  for (int i = 0; i < 4; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != 4) {
      std::ostringstream os;
      os << "matrix[" << i << "]: expected 4 entries";
      throw ParseError(os.str());
    }
    for (int j = 0; j < 4; ++j) {
      const json& entry = row[static_cast<std::size_t>(j)];
      std::ostringstream os;
      os << "matrix[" << i << "][" << j << "]";
      if (!entry.is_array() || entry.size() != 2)
        throw ParseError(os.str() + ": expected a [re, im] pair");
      const double re = require_number(entry[0], os.str() + " re");
      const double im = require_number(entry[1], os.str() + " im");
      m(i, j) = cplx(re, im);
    }
  }
  return m;
}

double require_param(const std::map<std::string, double>& params,
                     const std::string& family, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end())
    throw ParseError("family " + family + ": missing parameter '" + key + "'");
  return it->second;
}

std::string json_matrix2c(const Mat2c& m) {
  std::string out = "[";
  for (int i = 0; i < 2; ++i) {
    out += i ? ",[" : "[";
    for (int j = 0; j < 2; ++j) {
      out += j ? ",[" : "[";
      out += format_sig(m(i, j).real(), 15) + "," + format_sig(m(i, j).imag(), 15);
      out += "]";
    }
    out += "]";
  }
  return out + "]";
}

std::string json_vec3(const Vec3r& v, int digits) {
  return "[" + format_sig(v[0], digits) + "," + format_sig(v[1], digits) + "," +
         format_sig(v[2], digits) + "]";
}

void append_report_fields(std::string& out, const TeleportationReport& r) {
  out += "\"max_fidelity\":" + format_sig(r.max_fidelity, 15);
  out += ",\"fidelity_deviation\":" + format_sig(r.fidelity_deviation, 15);
  out += ",\"fef\":" + format_sig(r.fully_entangled_fraction, 15);
  out += ",\"det_t\":" + format_sig(r.det_t, 15);
  out += ",\"singular_values\":" + json_vec3(r.singular_values, 15);
  out += std::string(",\"useful\":") + (r.useful ? "true" : "false");
  out += std::string(",\"universal\":") + (r.universal ? "true" : "false");
  out += std::string(",\"branch\":\"") + branch_name(r.branch) + "\"";
}

}  // namespace

std::string format_sig(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  // JSON numbers require a leading digit; %g never emits a bare dot, and
  // "inf"/"nan" cannot occur for the finite quantities reported here.
  return buf;
}

DensityMatrix load_state_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("state file: expected a JSON object");

  if (doc.contains("matrix")) {
    return DensityMatrix(parse_matrix(doc["matrix"]));
  }
  if (doc.contains("family")) {
    if (!doc["family"].is_string())
      throw ParseError("family: expected a string");
    std::map<std::string, double> params;
    if (doc.contains("params")) {
      if (!doc["params"].is_object())
        throw ParseError("params: expected an object");
      for (const auto& [key, value] : doc["params"].items())
        params[key] = require_number(value, "params." + key);
    }
    return make_family_state(doc["family"].get<std::string>(), params);
  }
  throw ParseError("state file: expected a 'matrix' or 'family' key");
}

DensityMatrix load_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open state file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_state_json(buffer.str());
}

DensityMatrix make_family_state(const std::string& family,
                                const std::map<std::string, double>& params) {
  if (family == "werner") return werner(require_param(params, family, "p0"));
  if (family == "bell_diagonal")
    return bell_diagonal(
        require_param(params, family, "p0"), require_param(params, family, "p1"),
        require_param(params, family, "p2"), require_param(params, family, "p3"));
  if (family == "bell_rank2") {
    const double p0 = require_param(params, family, "p0");
    if (!(p0 >= 0.0 && p0 <= 1.0))
      throw InvalidParameter("bell_rank2: p0 must be in [0, 1]");
    return bell_diagonal(p0, 1.0 - p0, 0.0, 0.0);
  }
  if (family == "pure_schmidt") {
    if (params.count("a") || params.count("b")) {
      return pure_schmidt(require_param(params, family, "a"),
                          require_param(params, family, "b"));
    }
    double a2;
    if (params.count("a2"))
      a2 = params.at("a2");
    else if (params.count("b2"))
      a2 = 1.0 - params.at("b2");
    else
      throw ParseError("family pure_schmidt: expected {a, b}, {a2}, or {b2}");
    if (!(a2 >= 0.5 && a2 <= 1.0))
      throw InvalidParameter("pure_schmidt: a^2 must be in [0.5, 1]");
    return pure_schmidt(std::sqrt(a2), std::sqrt(1.0 - a2));
  }
  if (family == "example1") return x_state_rank3(require_param(params, family, "p"));
  if (family == "example2") return x_state_rank4(require_param(params, family, "p"));
  throw ParseError("unknown family '" + family + "'");
}

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> params;
  if (text.empty()) return params;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError("params: expected k=v, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      params[key] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ParseError("params: '" + key + "' has a non-numeric value '" + value +
                       "'");
    }
  }
  return params;
}

const char* branch_name(Branch b) {
  return b == Branch::DetPositive ? "DetPositive" : "DetNonPositive";
}

std::string report_json(const TeleportationReport& r) {
  std::string out = "{";
  append_report_fields(out, r);
  return out + "}";
}

std::string report_json(const TeleportationReport& r, const CanonicalForm& cf,
                        const Mat3r& t) {
  std::string out = "{";
  append_report_fields(out, r);
  out += ",\"canonical\":{";
  out += "\"u1\":" + json_matrix2c(cf.u1);
  out += ",\"u2\":" + json_matrix2c(cf.u2);
  out += ",\"diag\":" + json_vec3(cf.diag, 15);
  out += ",\"t_sym_eigenvalues\":" +
         json_vec3(eig3_symmetric(0.5 * (t + t.transpose())), 15);
  out += "}";
  return out + "}";
}

SweepFamily sweep_family_from_name(const std::string& name) {
  if (name == "werner") return SweepFamily::Werner;
  if (name == "bell_rank2") return SweepFamily::BellRank2;
  if (name == "pure_schmidt") return SweepFamily::PureSchmidt;
  if (name == "example1") return SweepFamily::XStateRank3;
  if (name == "example2") return SweepFamily::XStateRank4;
  throw ParseError("unknown sweep family '" + name + "'");
}

const char* sweep_param_name(SweepFamily family) {
  switch (family) {
    case SweepFamily::Werner:
    case SweepFamily::BellRank2:
      return "p0";
    case SweepFamily::PureSchmidt:
      return "b2";
    case SweepFamily::XStateRank3:
    case SweepFamily::XStateRank4:
      return "p";
  }
  return "param";
}

DensityMatrix sweep_state(SweepFamily family, double param) {
  switch (family) {
    case SweepFamily::Werner:
      return werner(param);
    case SweepFamily::BellRank2:
      if (!(param >= 0.0 && param <= 1.0))
        throw InvalidParameter("bell_rank2: p0 must be in [0, 1]");
      return bell_diagonal(param, 1.0 - param, 0.0, 0.0);
    case SweepFamily::PureSchmidt: {
      if (!(param >= 0.0 && param <= 0.5))
        throw InvalidParameter("pure_schmidt sweep: b^2 must be in [0, 0.5]");
      return pure_schmidt(std::sqrt(1.0 - param), std::sqrt(param));
    }
    case SweepFamily::XStateRank3:
      return x_state_rank3(param);
    case SweepFamily::XStateRank4:
      return x_state_rank4(param);
  }
  throw InvalidParameter("sweep_state: unknown family");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.steps < 2) throw InvalidParameter("sweep: steps must be >= 2");
  if (!(spec.start < spec.stop)) throw InvalidParameter("sweep: start must be < stop");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.steps));
  for (int i = 0; i < spec.steps; ++i) {
    const double param =
        spec.start + (spec.stop - spec.start) * i / (spec.steps - 1);
    rows.push_back({param, classify(sweep_state(spec.family, param))});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "param,F,Delta,useful,universal,det_t,s1,s2,s3\n";
  for (const SweepRow& row : rows) {
    out += format_sig(row.param, 10);
    out += "," + format_sig(row.report.max_fidelity, 10);
    out += "," + format_sig(row.report.fidelity_deviation, 10);
    out += row.report.useful ? ",1" : ",0";
    out += row.report.universal ? ",1" : ",0";
    out += "," + format_sig(row.report.det_t, 10);
    for (int i = 0; i < 3; ++i)
      out += "," + format_sig(row.report.singular_values[i], 10);
    out += "\n";
  }
  return out;
}

}  // namespace qtel
