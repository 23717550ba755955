#include "chaoscalc/json_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "chaoscalc/errors.hpp"

namespace chaoscalc {

namespace {

const Json& require_field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw InvalidInput(std::string(what) + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(std::string(what) + ": missing field \"" + key + "\"");
  return *it;
}

ChaosKind kind_from_json(const Json& j, const char* what) {
  const Json& k = require_field(j, "kind", what);
  if (!k.is_string()) throw InvalidInput(std::string(what) + ": \"kind\" must be a string");
  return parse_chaos_kind(k.get<std::string>());
}

std::vector<double> numbers_from_json(const Json& a, const char* key, const char* what) {
  if (!a.is_array()) throw InvalidInput(std::string(what) + ": \"" + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(a.size());
  for (const auto& v : a) {
    if (!v.is_number()) throw InvalidInput(std::string(what) + ": \"" + key + "\" must hold numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

OutputFormat parse_output_format(std::string_view tag) {
  if (tag == "json") return OutputFormat::json;
  if (tag == "csv") return OutputFormat::csv;
  throw InvalidInput("unknown output format \"" + std::string(tag) + "\" (expected json or csv)");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(const CoefficientSequence& seq) {
  Json j;
  j["kind"] = std::string(to_string(seq.kind));
  j["lambda"] = seq.lambdas;
  return j;
}

CoefficientSequence coefficients_from_json(const Json& j) {
  const ChaosKind kind = kind_from_json(j, "coefficients");
  return CoefficientSequence(kind, numbers_from_json(require_field(j, "lambda", "coefficients"), "lambda", "coefficients"));
}

Json order_sequence_to_json(const OrderSequence& s, std::string_view field) {
  Json j;
  j["kind"] = std::string(to_string(s.kind));
  j["max_order"] = s.max_order();
  j[std::string(field)] = std::vector<double>(s.values.begin() + 1, s.values.end());
  return j;
}

MomentSequence moments_from_json(const Json& j) {
  const ChaosKind kind = kind_from_json(j, "moments");
  auto v = numbers_from_json(require_field(j, "moments", "moments"), "moments", "moments");
  v.insert(v.begin(), 1.0);
  return MomentSequence(kind, std::move(v));
}

CumulantSequence cumulants_from_json(const Json& j) {
  const ChaosKind kind = kind_from_json(j, "cumulants");
  auto v = numbers_from_json(require_field(j, "cumulants", "cumulants"), "cumulants", "cumulants");
  v.insert(v.begin(), 0.0);
  return CumulantSequence(kind, std::move(v));
}

Json to_json(const Rational& q) {
  Json j;
  j["num"] = boost::multiprecision::numerator(q).str();
  j["den"] = boost::multiprecision::denominator(q).str();
  j["value"] = static_cast<double>(q);
  return j;
}

Json to_json(const CriterionReport& r) {
  Json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["gap"] = r.gap;
  j["verdict"] = std::string(to_string(r.verdict));
  j["tolerance"] = r.tolerance;
  return j;
}

std::string render_report(const std::vector<CriterionReport>& reports, OutputFormat format) {
  if (format == OutputFormat::json) {
    Json a = Json::array();
    for (const auto& r : reports) a.push_back(to_json(r));
    return a.dump(2);
  }
  std::ostringstream out;
  out << "name,lhs,rhs,gap,verdict,tolerance\n";
  for (const auto& r : reports) {
    out << csv_field(r.name) << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
        << format_double(r.gap) << ',' << to_string(r.verdict) << ',' << format_double(r.tolerance) << '\n';
  }
  return out.str();
}

OptimizationProblem problem_from_json(const Json& j) {
  const char* what = "optimization problem";
  OptimizationProblem p;
  p.kind = kind_from_json(j, what);
  const Json& k = require_field(j, "k", what);
  if (!k.is_number_integer()) throw InvalidInput("optimization problem: \"k\" must be an integer");
  p.k = k.get<int>();
  if (const auto it = j.find("objective"); it != j.end()) {
    const auto o = it->get<std::string>();
    if (o == "minimize_mu4") p.objective = MomentObjective::minimize_mu4;
    else if (o == "maximize_mu4") p.objective = MomentObjective::maximize_mu4;
    else throw InvalidInput("optimization problem: objective must be minimize_mu4 or maximize_mu4");
  }
  if (const auto it = j.find("constraints"); it != j.end()) {
    if (!it->is_array()) throw InvalidInput("optimization problem: \"constraints\" must be an array");
    for (const auto& c : *it) {
      const Json& order = require_field(c, "order", what);
      const Json& target = require_field(c, "target", what);
      if (!order.is_number_integer() || !target.is_number()) {
        throw InvalidInput("optimization problem: constraint needs integer order and numeric target");
      }
      p.constraints.push_back(MomentConstraint{order.get<int>(), target.get<double>()});
    }
  }
  if (const auto it = j.find("sign_pattern"); it != j.end()) {
    if (!it->is_array()) throw InvalidInput("optimization problem: \"sign_pattern\" must be an array");
    for (const auto& s : *it) {
      if (!s.is_number_integer()) throw InvalidInput("optimization problem: sign pattern entries must be +1 or -1");
      p.sign_pattern.push_back(s.get<int>());
    }
  }
  if (const auto it = j.find("restarts"); it != j.end()) p.restarts = it->get<int>();
  if (const auto it = j.find("seed"); it != j.end()) p.seed = it->get<std::uint64_t>();
  if (const auto it = j.find("constraint_tol"); it != j.end()) p.constraint_tol = it->get<double>();
  if (const auto it = j.find("stationarity_tol"); it != j.end()) p.stationarity_tol = it->get<double>();
  p.validate();
  return p;
}

Json to_json(const OptimizationResult& r) {
  Json j;
  j["lambdas"] = to_json(r.lambdas);
  j["objective_value"] = r.objective_value;
  j["constraint_violation"] = r.constraint_violation;
  j["kkt_residual"] = r.kkt_residual;
  j["converged"] = r.converged;
  j["restarts_used"] = r.restarts_used;
  j["best_restart"] = r.best_restart;
  return j;
}

}  // namespace chaoscalc
