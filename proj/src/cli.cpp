#include "chaoscalc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "chaoscalc/criteria.hpp"
#include "chaoscalc/errors.hpp"
#include "chaoscalc/monte_carlo.hpp"
#include "chaoscalc/moments.hpp"
#include "chaoscalc/optimizer.hpp"

namespace chaoscalc {

namespace {

constexpr const char* kSubcommands[] = {"cumulants", "moments", "invert", "check",
                                        "w2gap",     "simulate", "gue",   "optimize"};

constexpr const char* kDescriptions[] = {
    "Cumulants from spectral coefficients, or exact target values",
    "Moments from coefficients or cumulants",
    "Cumulants from a moment sequence",
    "Evaluate every applicable criterion and report verdicts",
    "Moment-based W2 gap to the target law",
    "Monte Carlo draws, empirical moments and W2 to the target",
    "Free moments estimated from GUE matrices",
    "Extremize the fourth moment under moment constraints"};

int cap_from_env(const char* name, int fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1 || v > 64) {
    throw InvalidInput(std::string(name) + " must be an integer in 1..64, got \"" + raw + "\"");
  }
  return static_cast<int>(v);
}

bool has(const Json& j, const char* key) { return j.is_object() && j.contains(key); }

bool wants_target(const Json& j) { return has(j, "target") && j["target"].is_boolean() && j["target"].get<bool>(); }

ChaosKind kind_of(const Json& j) {
  if (!has(j, "kind") || !j["kind"].is_string()) throw InvalidInput("input: missing string field \"kind\"");
  return parse_chaos_kind(j["kind"].get<std::string>());
}

void write_order_csv(std::ostream& out, const OrderSequence& s) {
  out << "order,value\n";
  for (int r = 1; r <= s.max_order(); ++r) out << r << ',' << format_double(s[r]) << '\n';
}

void emit_sequence(std::ostream& out, const CommandRequest& req, const OrderSequence& s, std::string_view field,
                   const ExactSequence* exact = nullptr) {
  if (req.format == OutputFormat::csv) {
    write_order_csv(out, s);
    return;
  }
  Json j = order_sequence_to_json(s, field);
  if (exact != nullptr) {
    Json e = Json::array();
    for (std::size_t r = 1; r < exact->values.size(); ++r) e.push_back(to_json(exact->values[r]));
    j["exact"] = std::move(e);
  }
  out << j.dump(2) << '\n';
}

int run_cumulants(const CommandRequest& req, std::ostream& out) {
  if (wants_target(req.input)) {
    const auto exact = target_cumulants(kind_of(req.input), req.max_order);
    emit_sequence(out, req, to_cumulants(exact), "cumulants", &exact);
    return exit_code::ok;
  }
  const auto seq = coefficients_from_json(req.input);
  emit_sequence(out, req, cumulants_from_coefficients(seq, req.max_order), "cumulants");
  return exit_code::ok;
}

int run_moments(const CommandRequest& req, std::ostream& out) {
  if (wants_target(req.input)) {
    const auto exact = target_moments(kind_of(req.input), req.max_order);
    emit_sequence(out, req, to_moments(exact), "moments", &exact);
    return exit_code::ok;
  }
  const CumulantSequence c = has(req.input, "cumulants")
                                 ? cumulants_from_json(req.input)
                                 : cumulants_from_coefficients(coefficients_from_json(req.input), req.max_order);
  const MomentSequence m = req.method == "enumeration"
                               ? moments_from_cumulants_enum(c, req.max_order, caps_from_environment())
                               : moments_from_cumulants_recursive(c, req.max_order);
  emit_sequence(out, req, m, "moments");
  return exit_code::ok;
}

int run_invert(const CommandRequest& req, std::ostream& out) {
  const auto m = moments_from_json(req.input);
  emit_sequence(out, req, cumulants_from_moments(m, std::min(req.max_order, m.max_order())), "cumulants");
  return exit_code::ok;
}

std::string suffixed(std::string name, const std::string& suffix) { return name + "[" + suffix + "]"; }

// Runs `body`, turning a failed mathematical hypothesis into a note on stderr.
template <typename F>
void applicable(std::ostream& err, const std::string& label, F&& body) {
  try {
    body();
  } catch (const PreconditionError& e) {
    err << "skipped " << label << ": " << e.what() << '\n';
  }
}

int run_check(const CommandRequest& req, std::ostream& out, std::ostream& err) {
  const auto seq = coefficients_from_json(req.input);
  const int R = std::max(req.max_order, 6);
  const auto c = cumulants_from_coefficients(seq, R);
  const auto m = moments_from_cumulants_recursive(c, R);
  const double tol = req.tolerance;
  std::vector<CriterionReport> reports;
  auto add = [&](CriterionReport r, const std::string& suffix) {
    if (!suffix.empty()) r.name = suffixed(r.name, suffix);
    reports.push_back(std::move(r));
  };

  const bool normalized = std::abs(seq.sum_of_squares() - 1.0) <= kNormalizationTolerance;
  if (normalized) {
    add(characterization_check(seq, tol), "");
    add(polynomial_identity_check(seq, tol), "");
    const double coupled = coupling_distance(seq, target_coefficients(seq.kind));
    const double formula = target_distance_squared_formula(seq);
    add(make_report("target_distance_formula", coupled * coupled, formula, coupled * coupled - formula, tol), "");
  } else {
    err << "skipped characterization, polynomial_identity, target_distance_formula: sum of squares is "
        << format_double(seq.sum_of_squares()) << ", not 1\n";
  }

  for (int n = 2; 2 * n <= R; ++n) {
    for (int k = n - 2; k >= 1; k -= 2) {
      const double d = delta_gap(c, n, k);
      add(make_report("delta_gap_nonnegative", d, 0.0, d, tol), "n=" + std::to_string(n) + ",m=" + std::to_string(k));
      if (normalized && k >= 2) {
        const double lower = delta_gap(c, n - 1, k - 1);
        add(make_report("delta_gap_chain", d, 2.0 * lower, 2.0 * lower - d, tol),
            "n=" + std::to_string(n) + ",m=" + std::to_string(k));
      }
    }
  }
  if (c[2] > 0.0) {
    for (int r = 3; 2 * r <= R; ++r) add(cumulant_ladder_report(c, r, tol), "r=" + std::to_string(r));
  }
  for (int r = 3; 2 * r <= R; ++r) {
    applicable(err, "moment_lower_bound[r=" + std::to_string(r) + "]",
               [&] { add(moment_lower_bound_report(m, r, tol), "r=" + std::to_string(r)); });
  }
  for (int hi = 3; 2 * hi <= R; ++hi) {
    for (int lo = 2; lo < hi; ++lo) {
      const std::string tag = "m=" + std::to_string(lo) + ",n=" + std::to_string(hi);
      applicable(err, "moment_gap_ratio[" + tag + "]", [&] { add(moment_gap_ratio_report(m, lo, hi, tol), tag); });
    }
  }
  for (int r = 2; 2 * r <= R; ++r) {
    applicable(err, "symmetric_upper_bound[r=" + std::to_string(r) + "]", [&] {
      for (auto& rep : symmetric_upper_bound_report(seq, r, tol)) add(std::move(rep), "r=" + std::to_string(r));
    });
  }
  for (int n = 3; n <= R; ++n) {
    for (auto& rep : hypercontractivity_report(c, m, n, tol)) add(std::move(rep), "n=" + std::to_string(n));
  }

  out << render_report(reports, req.format);
  if (req.format == OutputFormat::json) out << '\n';
  if (req.strict) {
    for (const auto& r : reports)
      if (r.verdict == Verdict::violated) return exit_code::violated;
  }
  return exit_code::ok;
}

int run_w2gap(const CommandRequest& req, std::ostream& out, std::ostream& err) {
  const MomentSequence m =
      has(req.input, "moments")
          ? moments_from_json(req.input)
          : moments_from_cumulants_recursive(
                cumulants_from_coefficients(coefficients_from_json(req.input), std::max(req.max_order, 6)),
                std::max(req.max_order, 6));
  const double sextic = w2_gap(m, {W2GapMode::Kind::sextic, 3});
  std::vector<std::pair<int, double>> even;
  for (int r = 2; 2 * r <= m.max_order(); ++r) {
    applicable(err, "w2gap even_2r[r=" + std::to_string(r) + "]",
               [&] { even.emplace_back(r, w2_gap(m, {W2GapMode::Kind::even_2r, r})); });
  }
  if (req.format == OutputFormat::csv) {
    out << "mode,r,value\nsextic,3," << format_double(sextic) << '\n';
    for (const auto& [r, v] : even) out << "even_2r," << r << ',' << format_double(v) << '\n';
    return exit_code::ok;
  }
  Json j;
  j["kind"] = std::string(to_string(m.kind));
  j["sextic"] = sextic;
  Json e = Json::array();
  for (const auto& [r, v] : even) e.push_back(Json{{"r", r}, {"value", v}});
  j["even_2r"] = std::move(e);
  out << j.dump(2) << '\n';
  return exit_code::ok;
}

int run_simulate(const CommandRequest& req, std::ostream& out) {
  const auto seq = coefficients_from_json(req.input);
  const std::uint64_t seed = req.seed.value_or(kDefaultSeed);
  const auto batch = sample_classical(seq, req.samples, seed, req.threads);
  if (req.format == OutputFormat::csv) {
    write_batch_csv(out, batch, seq);
    return exit_code::ok;
  }
  const auto empirical = empirical_moments(batch, req.max_order);
  const auto exact = moments_from_cumulants_recursive(cumulants_from_coefficients(seq, req.max_order), req.max_order);
  // Reference batch from the target law on the next seed.
  const auto reference = sample_classical(target_coefficients(ChaosKind::classical), req.samples, seed + 1, req.threads);
  Json j;
  j["kind"] = "classical";
  j["lambda"] = seq.lambdas;
  j["seed"] = seed;
  j["samples"] = req.samples;
  j["empirical_moments"] = std::vector<double>(empirical.values.begin() + 1, empirical.values.end());
  j["exact_moments"] = std::vector<double>(exact.values.begin() + 1, exact.values.end());
  j["w2_to_target"] = empirical_wasserstein2(batch, reference);
  out << j.dump(2) << '\n';
  return exit_code::ok;
}

int run_gue(const CommandRequest& req, std::ostream& out) {
  const auto seq = coefficients_from_json(req.input);
  const std::uint64_t seed = req.seed.value_or(kDefaultSeed);
  const int R = std::min(req.max_order - req.max_order % 2, 12);
  const auto est = gue_free_moment_estimates(seq, R, req.matrix_size, req.replicas, seed, req.threads);
  const auto exact = moments_from_cumulants_recursive(cumulants_from_coefficients(seq, R), R);
  if (req.format == OutputFormat::csv) {
    out << "order,estimate,std_error,exact\n";
    for (const auto& e : est)
      out << e.order << ',' << format_double(e.estimate) << ',' << format_double(e.std_error) << ','
          << format_double(exact[e.order]) << '\n';
    return exit_code::ok;
  }
  Json j;
  j["kind"] = "free";
  j["matrix_size"] = req.matrix_size;
  j["replicas"] = req.replicas;
  j["seed"] = seed;
  Json a = Json::array();
  for (const auto& e : est) {
    a.push_back(Json{{"order", e.order}, {"estimate", e.estimate}, {"std_error", e.std_error}, {"exact", exact[e.order]}});
  }
  j["estimates"] = std::move(a);
  out << j.dump(2) << '\n';
  return exit_code::ok;
}

int run_optimize(const CommandRequest& req, std::ostream& out, std::ostream& err) {
  OptimizationProblem p = problem_from_json(req.input);
  if (req.seed) p.seed = *req.seed;
  const auto result = minimize_fourth_moment(p, req.threads);
  out << to_json(result).dump(2) << '\n';
  if (!result.converged) {
    err << "optimizer did not converge: constraint violation " << format_double(result.constraint_violation)
        << ", kkt residual " << format_double(result.kkt_residual) << '\n';
    return exit_code::numerical_failure;
  }
  return exit_code::ok;
}

}  // namespace

void CommandRequest::validate() const {
  if (std::find(std::begin(kSubcommands), std::end(kSubcommands), subcommand) == std::end(kSubcommands)) {
    throw InvalidInput("unknown subcommand \"" + subcommand + "\"");
  }
  if (max_order < 2 || max_order > 40) throw InvalidInput("--max-order must be in 2..40");
  if (samples < 1) throw InvalidInput("--samples must be positive");
  if (matrix_size < 1) throw InvalidInput("--matrix-size must be positive");
  if (replicas < 1) throw InvalidInput("--replicas must be positive");
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw InvalidInput("--tolerance must be positive");
  if (method != "recursive" && method != "enumeration") {
    throw InvalidInput("--method must be recursive or enumeration");
  }
}

EnumerationCaps caps_from_environment() {
  EnumerationCaps caps;
  caps.set_partitions = cap_from_env("CHAOSCALC_SET_PARTITION_CAP", caps.set_partitions);
  caps.noncrossing = cap_from_env("CHAOSCALC_NONCROSSING_CAP", caps.noncrossing);
  return caps;
}

int dispatch(const CommandRequest& req, std::ostream& out, std::ostream& err) {
  try {
    req.validate();
    const auto& s = req.subcommand;
    if (s == "cumulants") return run_cumulants(req, out);
    if (s == "moments") return run_moments(req, out);
    if (s == "invert") return run_invert(req, out);
    if (s == "check") return run_check(req, out, err);
    if (s == "w2gap") return run_w2gap(req, out, err);
    if (s == "simulate") return run_simulate(req, out);
    if (s == "gue") return run_gue(req, out);
    return run_optimize(req, out, err);
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
  } catch (const UnsupportedKind& e) {
    err << "unsupported: " << e.what() << '\n';
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << '\n';
  }
  return exit_code::invalid_input;
}

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moment, cumulant and criterion calculus for second-chaos variables"};
  app.require_subcommand(1);

  CommandRequest req;
  std::string input_path = "-";
  std::string seed_text;
  std::string format_text = "json";

  for (std::size_t i = 0; i < std::size(kSubcommands); ++i) {
    const char* name = kSubcommands[i];
    CLI::App* sub = app.add_subcommand(name, kDescriptions[i]);
    sub->add_option("input", input_path, "JSON input file, '-' for stdin");
    sub->add_option("--max-order", req.max_order, "Highest order R");
    sub->add_option("--seed", seed_text, "RNG seed (decimal or 0x hex; default 0xC0FFEE)");
    sub->add_option("--samples", req.samples, "Monte Carlo draws");
    sub->add_option("--matrix-size", req.matrix_size, "GUE matrix dimension");
    sub->add_option("--replicas", req.replicas, "GUE replicas");
    sub->add_option("--tolerance", req.tolerance, "Relative tolerance for verdicts");
    sub->add_option("--format", format_text, "json or csv");
    sub->add_option("--method", req.method, "moments: recursive or enumeration");
    sub->add_option("--threads", req.threads, "Worker threads, 0 = hardware");
    sub->add_flag("--strict", req.strict, "Exit 2 when any verdict is violated");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::invalid_input;
  }
  req.subcommand = app.get_subcommands().front()->get_name();

  try {
    req.format = parse_output_format(format_text);
    if (!seed_text.empty()) {
      std::size_t used = 0;
      req.seed = std::stoull(seed_text, &used, 0);
      if (used != seed_text.size()) throw InvalidInput("--seed: trailing characters in \"" + seed_text + "\"");
    }
    std::stringstream buffer;
    if (input_path == "-") {
      buffer << in.rdbuf();
    } else {
      std::ifstream file(input_path);
      if (!file) throw InvalidInput("cannot open " + input_path);
      buffer << file.rdbuf();
    }
    req.input = Json::parse(buffer.str());
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_code::invalid_input;
  } catch (const std::logic_error& e) {  // stoull
    err << "invalid input: --seed: " << e.what() << '\n';
    return exit_code::invalid_input;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_code::invalid_input;
  }
  return dispatch(req, out, err);
}

}  // namespace chaoscalc
