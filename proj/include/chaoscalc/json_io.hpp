#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chaoscalc/criteria.hpp"
#include "chaoscalc/moments.hpp"
#include "chaoscalc/optimizer.hpp"
#include "chaoscalc/spectral.hpp"

namespace chaoscalc {

using Json = nlohmann::ordered_json;

enum class OutputFormat { json, csv };
/// Throws InvalidInput on anything other than "json" or "csv".
OutputFormat parse_output_format(std::string_view tag);

/// {"kind": "...", "lambda": [...]}
Json to_json(const CoefficientSequence& seq);
CoefficientSequence coefficients_from_json(const Json& j);

/// {"kind": "...", "<field>": [v_1, ..., v_R]}; slot 0 is implied.
Json order_sequence_to_json(const OrderSequence& s, std::string_view field);
MomentSequence moments_from_json(const Json& j);
CumulantSequence cumulants_from_json(const Json& j);

/// {"num": "...", "den": "...", "value": double}. Integers are strings so
/// that nothing is lost beyond 2^53.
Json to_json(const Rational& q);

Json to_json(const CriterionReport& r);
/// JSON array of report objects, or CSV with header name,lhs,rhs,gap,verdict,tolerance.
std::string render_report(const std::vector<CriterionReport>& reports, OutputFormat format);

OptimizationProblem problem_from_json(const Json& j);
Json to_json(const OptimizationResult& r);

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

}  // namespace chaoscalc
