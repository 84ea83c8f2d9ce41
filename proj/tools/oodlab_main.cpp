#include "oodlab/alpha.hpp"
#include "oodlab/bounds.hpp"
#include "oodlab/dyadic.hpp"
#include "oodlab/errors.hpp"
#include "oodlab/experiments.hpp"
#include "oodlab/hypothesis.hpp"
#include "oodlab/json_io.hpp"
#include "oodlab/version.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace {

using oodlab::Rat;
using json = oodlab::io::json;

struct OutputOptions {
  std::string format = "json";
  std::string out_path;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out_path, "Write the report to this path");
}

// Fallback CSV for scalar reports: one key,value row per top-level scalar.
std::string flat_csv(const json& doc) {
  std::ostringstream out;
  out << "key,value\n";
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object() || value.is_array()) {
      out << key << ',' << value.dump() << '\n';
    } else if (value.is_string()) {
      out << key << ',' << value.get<std::string>() << '\n';
    } else {
      out << key << ',' << value.dump() << '\n';
    }
  }
  return out.str();
}

void emit(const OutputOptions& opts, const json& doc,
          const std::string& csv_text = "") {
  const std::string text = opts.format == "csv"
                               ? (csv_text.empty() ? flat_csv(doc) : csv_text)
                               : oodlab::io::dump_pretty(doc);
  if (opts.out_path.empty())
    std::cout << text;
  else
    oodlab::io::write_text_file(opts.out_path, text);
}

std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw oodlab::ValidationError("parameter",
                                    "params must be key=value pairs: " + item);
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double param_double(const std::map<std::string, std::string>& params,
                    const std::string& key) {
  auto it = params.find(key);
  if (it == params.end())
    throw oodlab::ValidationError("parameter", "missing parameter: " + key);
  return std::stod(it->second);
}

int param_int(const std::map<std::string, std::string>& params,
              const std::string& key) {
  auto it = params.find(key);
  if (it == params.end())
    throw oodlab::ValidationError("parameter", "missing parameter: " + key);
  return std::stoi(it->second);
}

double param_or(const std::map<std::string, std::string>& params,
                const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : std::stod(it->second);
}

double parse_base(const std::string& text, double fallback) {
  if (text.empty()) return fallback;
  if (text == "e") return oodlab::bounds::kNaturalBase;
  if (text == "2") return 2.0;
  return std::stod(text);
}

struct BoundsInvocation {
  std::string name;
  std::string params;
  std::string base;
};

json run_bounds_calculator(const BoundsInvocation& inv) {
  namespace b = oodlab::bounds;
  const auto params = parse_params(inv.params);
  json doc = oodlab::io::report_envelope("bounds");
  doc["name"] = inv.name;
  std::ostringstream formula;
  double value = 0;

  if (inv.name == "blumer") {
    const double d = param_double(params, "d"), eps = param_double(params, "epsilon"),
                 delta = param_double(params, "delta"), c = param_or(params, "C", 1.0);
    const double base = parse_base(inv.base, b::kNaturalBase);
    value = b::blumer_sample_bound(d, eps, delta, c, base);
    formula << c << " * " << d << " / " << eps << " * log(1 / (" << delta
            << " * " << eps << "))";
  } else if (inv.name == "alpha-sample") {
    const double d = param_double(params, "d"), alpha = param_double(params, "alpha"),
                 delta = param_double(params, "delta"), c = param_or(params, "C", 1.0);
    value = b::alpha_sample_bound(d, alpha, delta, c,
                                  parse_base(inv.base, b::kNaturalBase));
    formula << c << " * " << d << " / " << alpha << " * log(1 / (" << delta
            << " * " << alpha << "))";
  } else if (inv.name == "union") {
    const double d = param_double(params, "d"), m = param_double(params, "M");
    value = b::union_vc_bound(d, m, parse_base(inv.base, b::kNaturalBase));
    formula << "4 * " << d << " + 10 * log(" << m << ")";
  } else if (inv.name == "sparse") {
    const double d = param_double(params, "d_k"), k = param_double(params, "k"),
                 n = param_double(params, "n");
    value = b::sparse_vc_bound(d, k, n, parse_base(inv.base, b::kNaturalBase));
    formula << "4 * " << d << " + 10 * " << k << " * log(" << n << ")";
  } else if (inv.name == "sparse-ood") {
    const double d = param_double(params, "d_k"), k = param_double(params, "k"),
                 n = param_double(params, "n"), rate = param_double(params, "rate"),
                 delta = param_double(params, "delta"), c = param_or(params, "C", 1.0);
    value = b::sparse_ood_sample_bound(d, k, n, rate, delta, c,
                                       parse_base(inv.base, b::kNaturalBase));
    formula << c << " * (" << d << " + " << k << " * log(" << n << ")) / "
            << rate << " * log(1 / (" << delta << " * " << rate << "))";
  } else if (inv.name == "semialgebraic") {
    const int t = param_int(params, "t"), ell = param_int(params, "ell"),
              n = param_int(params, "n");
    value = b::semialgebraic_vc_bound(t, ell, n, parse_base(inv.base, 2.0));
    formula << "2 * " << t << " * C(" << n << "+" << ell << "," << ell
            << ") * log2(" << t << " * " << (t + 1) << " * C(" << n << "+"
            << ell << "," << ell << "))";
  } else if (inv.name == "subspace") {
    const int n = param_int(params, "n"), ell = param_int(params, "ell"),
              k = param_int(params, "k"), t = param_int(params, "t");
    value = b::subspace_junta_vc_bound(n, ell, k, t, parse_base(inv.base, 2.0));
    doc["parameter_count"] = b::parameter_count(n, ell, k, t).str();
    formula << "2 * (" << k << "*" << n << " + " << t << " * C(" << k << "+"
            << ell << "," << ell << ")) * log2(12 * " << t << " * "
            << (ell + 1) << ")";
  } else if (inv.name == "t-combination") {
    const double d = param_double(params, "d"), t = param_double(params, "t"),
                 r = param_double(params, "r");
    value = b::t_combination_vc_bound(d, t, r, parse_base(inv.base, 2.0));
    formula << "2 * " << d << " * log2(12 * " << t << " * " << r << ")";
  } else if (inv.name == "monomials") {
    const int k = param_int(params, "k"), ell = param_int(params, "ell");
    const auto count = b::monomial_count(k, ell);
    doc["value_exact"] = count.str();
    value = count.convert_to<double>();
    formula << "C(" << k << "+" << ell << "," << ell << ")";
  } else if (inv.name == "parameter-count") {
    const int n = param_int(params, "n"), ell = param_int(params, "ell"),
              k = param_int(params, "k"), t = param_int(params, "t");
    const auto count = b::parameter_count(n, ell, k, t);
    doc["value_exact"] = count.str();
    value = count.convert_to<double>();
    formula << k << "*" << n << " + " << t << " * C(" << k << "+" << ell << ","
            << ell << ")";
  } else {
    throw oodlab::ValidationError("parameter",
                                  "unknown bound name: " + inv.name);
  }
  doc["value"] = value;
  doc["formula"] = formula.str();
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oodlab: exact calculators and reproducible experiments for "
               "out-of-distribution generalization analysis"};
  app.set_version_flag("--version", std::string(oodlab::kVersion));
  app.require_subcommand(1);
  std::function<int()> action;

  // ---- alpha ----------------------------------------------------------------
  auto* alpha_cmd = app.add_subcommand(
      "alpha", "Worst-case probability amplification between distributions");
  alpha_cmd->require_subcommand(1);
  struct {
    std::string d_path, dprime_path, epsilon = "0";
    std::size_t cap = 22;
    std::uint64_t budget = 10'000'000;
    OutputOptions out;
  } alpha_args;

  auto* alpha_exact_cmd = alpha_cmd->add_subcommand(
      "exact", "Exact optimum over deterministic events\n"
               "  example: oodlab alpha exact --d D.json --dprime Dp.json "
               "--epsilon 0.3");
  alpha_exact_cmd->add_option("--d", alpha_args.d_path, "Training distribution")
      ->required();
  alpha_exact_cmd
      ->add_option("--dprime", alpha_args.dprime_path, "Test distribution")
      ->required();
  alpha_exact_cmd
      ->add_option("--epsilon", alpha_args.epsilon,
                   "Event mass threshold (rational or decimal)")
      ->required();
  alpha_exact_cmd->add_option("--cap", alpha_args.cap,
                              "Support cap for the exact search");
  alpha_exact_cmd->add_option("--budget", alpha_args.budget,
                              "Branch-and-bound node budget");
  add_output_options(alpha_exact_cmd, alpha_args.out);
  alpha_exact_cmd->callback([&]() {
    action = [&]() {
      const auto d = oodlab::io::distribution_from_json(
          oodlab::io::load_json_file(alpha_args.d_path));
      const auto dp = oodlab::io::distribution_from_json(
          oodlab::io::load_json_file(alpha_args.dprime_path));
      const Rat eps = oodlab::rat_from_string(alpha_args.epsilon);
      const auto result =
          oodlab::alpha_exact(oodlab::AlphaQuery{d, dp, eps},
                              oodlab::AlphaOptions{alpha_args.cap,
                                                   alpha_args.budget});
      emit(alpha_args.out,
           oodlab::io::alpha_result_to_json(result, d.space(), eps));
      return 0;
    };
  });

  auto* alpha_bounds_cmd = alpha_cmd->add_subcommand(
      "bounds", "Fractional-relaxation sandwich (scales past the exact cap)\n"
                "  example: oodlab alpha bounds --d D.json --dprime Dp.json "
                "--epsilon 1/2");
  alpha_bounds_cmd->add_option("--d", alpha_args.d_path, "Training distribution")
      ->required();
  alpha_bounds_cmd
      ->add_option("--dprime", alpha_args.dprime_path, "Test distribution")
      ->required();
  alpha_bounds_cmd
      ->add_option("--epsilon", alpha_args.epsilon, "Event mass threshold")
      ->required();
  add_output_options(alpha_bounds_cmd, alpha_args.out);
  alpha_bounds_cmd->callback([&]() {
    action = [&]() {
      const auto d = oodlab::io::distribution_from_json(
          oodlab::io::load_json_file(alpha_args.d_path));
      const auto dp = oodlab::io::distribution_from_json(
          oodlab::io::load_json_file(alpha_args.dprime_path));
      const Rat eps = oodlab::rat_from_string(alpha_args.epsilon);
      const auto bounds = oodlab::alpha_bounds(oodlab::AlphaQuery{d, dp, eps});
      emit(alpha_args.out,
           oodlab::io::alpha_bounds_to_json(bounds, d.space(), eps));
      return 0;
    };
  });

  struct {
    double k = 1.0;
    double epsilon = 0.5;
    std::string direction = "uniform-to-exponential";
    int grid = 0;
    OutputOptions out;
  } closed_args;
  auto* alpha_closed_cmd = alpha_cmd->add_subcommand(
      "closed-form", "Closed form for the uniform[0,K] / Exp(1) pair\n"
                     "  example: oodlab alpha closed-form --K 1 --epsilon 0.5 "
                     "--direction uniform-to-exponential --grid 10000");
  alpha_closed_cmd->add_option("--K", closed_args.k, "Uniform range endpoint")
      ->required();
  alpha_closed_cmd
      ->add_option("--epsilon", closed_args.epsilon, "Event mass threshold")
      ->required();
  alpha_closed_cmd
      ->add_option("--direction", closed_args.direction, "Which side trains")
      ->check(CLI::IsMember(
          {"uniform-to-exponential", "exponential-to-uniform"}));
  alpha_closed_cmd->add_option(
      "--grid", closed_args.grid,
      "Also cross-check against an exact solve on this many bins");
  add_output_options(alpha_closed_cmd, closed_args.out);
  alpha_closed_cmd->callback([&]() {
    action = [&]() {
      const auto direction =
          closed_args.direction == "uniform-to-exponential"
              ? oodlab::AlphaDirection::kUniformToExponential
              : oodlab::AlphaDirection::kExponentialToUniform;
      const double value = oodlab::alpha_uniform_exponential(
          closed_args.k, closed_args.epsilon, direction);
      json doc = oodlab::io::report_envelope("alpha-closed-form");
      doc["K"] = closed_args.k;
      doc["epsilon"] = closed_args.epsilon;
      doc["direction"] = closed_args.direction;
      doc["alpha"] = value;
      if (closed_args.grid > 0) {
        const auto pair = oodlab::discretize_uniform_exponential(
            closed_args.k, closed_args.grid);
        const bool uniform_trains =
            direction == oodlab::AlphaDirection::kUniformToExponential;
        const auto& train =
            uniform_trains ? pair.uniform_part : pair.exponential_part;
        const auto& test =
            uniform_trains ? pair.exponential_part : pair.uniform_part;
        oodlab::AlphaOptions options;
        options.support_cap = static_cast<std::size_t>(closed_args.grid) + 1;
        const auto exact = oodlab::alpha_exact(
            oodlab::AlphaQuery{train, test,
                               oodlab::rat_from_double(closed_args.epsilon)},
            options);
        doc["grid"] = closed_args.grid;
        doc["discretized_alpha"] = oodlab::rat_to_double(exact.value);
        doc["abs_difference"] =
            std::abs(oodlab::rat_to_double(exact.value) - value);
      }
      emit(closed_args.out, doc);
      return 0;
    };
  });

  // ---- vc -------------------------------------------------------------------
  auto* vc_cmd = app.add_subcommand(
      "vc", "Shattering searches and exact VC-dimension");
  vc_cmd->require_subcommand(1);
  struct {
    std::string class_path, points_path;
    int cap = 20;
    OutputOptions out;
  } vc_args;

  auto* vc_exact_cmd = vc_cmd->add_subcommand(
      "exact", "Exact VC-dimension with a maximum shattered witness\n"
               "  example: oodlab vc exact --class C.json");
  vc_exact_cmd->add_option("--class", vc_args.class_path, "Class description")
      ->required();
  vc_exact_cmd->add_option("--cap", vc_args.cap, "Search cap");
  add_output_options(vc_exact_cmd, vc_args.out);
  vc_exact_cmd->callback([&]() {
    action = [&]() {
      const auto cls = oodlab::io::class_from_json(
          oodlab::io::load_json_file(vc_args.class_path));
      const auto result = oodlab::vc_dimension_exact(cls, vc_args.cap);
      emit(vc_args.out, oodlab::io::vc_result_to_json(result, cls.space()));
      return result.capped ? 3 : 0;
    };
  });

  auto* vc_shatters_cmd = vc_cmd->add_subcommand(
      "shatters", "Check one point set\n"
                  "  example: oodlab vc shatters --class C.json --points P.json");
  vc_shatters_cmd->add_option("--class", vc_args.class_path, "Class description")
      ->required();
  vc_shatters_cmd
      ->add_option("--points", vc_args.points_path, "Point list (JSON array)")
      ->required();
  vc_shatters_cmd->add_option("--cap", vc_args.cap, "Point-count cap");
  add_output_options(vc_shatters_cmd, vc_args.out);
  vc_shatters_cmd->callback([&]() {
    action = [&]() {
      const auto cls = oodlab::io::class_from_json(
          oodlab::io::load_json_file(vc_args.class_path));
      const auto points = oodlab::io::points_from_json(
          cls.space(), oodlab::io::load_json_file(vc_args.points_path));
      const auto outcome = oodlab::shatters(
          cls, points, static_cast<std::size_t>(vc_args.cap));
      emit(vc_args.out,
           oodlab::io::shatter_outcome_to_json(outcome, cls.space()));
      return 0;
    };
  });

  auto* vc_sauer_cmd = vc_cmd->add_subcommand(
      "sauer", "Compare the class size against the Sauer bound\n"
               "  example: oodlab vc sauer --class C.json");
  vc_sauer_cmd->add_option("--class", vc_args.class_path, "Class description")
      ->required();
  vc_sauer_cmd->add_option("--cap", vc_args.cap, "VC search cap");
  add_output_options(vc_sauer_cmd, vc_args.out);
  vc_sauer_cmd->callback([&]() {
    action = [&]() {
      const auto cls = oodlab::io::class_from_json(
          oodlab::io::load_json_file(vc_args.class_path));
      emit(vc_args.out,
           oodlab::io::sauer_to_json(oodlab::sauer_check(cls, vc_args.cap)));
      return 0;
    };
  });

  // ---- bounds ----------------------------------------------------------------
  BoundsInvocation bounds_args;
  OutputOptions bounds_out;
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "Closed-form VC and sample-complexity calculators\n"
                "  example: oodlab bounds union --params d=3,M=100");
  bounds_cmd
      ->add_option("name", bounds_args.name,
                   "blumer | alpha-sample | union | sparse | sparse-ood | "
                   "semialgebraic | subspace | t-combination | monomials | "
                   "parameter-count")
      ->required();
  bounds_cmd->add_option("--params", bounds_args.params,
                         "Comma-separated key=value list")
      ->required();
  bounds_cmd->add_option("--base", bounds_args.base,
                         "Log base override (e, 2, or a number)");
  add_output_options(bounds_cmd, bounds_out);
  bounds_cmd->callback([&]() {
    action = [&]() {
      emit(bounds_out, run_bounds_calculator(bounds_args));
      return 0;
    };
  });

  // ---- experiment / sweep ------------------------------------------------------
  struct {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    OutputOptions out;
  } exp_args, sweep_args;

  auto* exp_cmd = app.add_subcommand(
      "experiment", "Run a scenario described by a JSON config\n"
                    "  example: oodlab experiment --config grue.json --seed 7");
  exp_cmd->add_option("--config", exp_args.config_path, "Config file")
      ->required();
  exp_cmd->add_option("--seed", exp_args.seed, "Override the config seed");
  add_output_options(exp_cmd, exp_args.out);
  exp_cmd->callback([&]() {
    action = [&]() {
      json doc = oodlab::io::load_json_file(exp_args.config_path);
      const std::string scenario =
          doc.contains("scenario") && doc["scenario"].is_string()
              ? doc["scenario"].get<std::string>()
              : throw oodlab::ValidationError("config",
                                              "config needs a scenario tag");
      if (exp_args.seed) doc["seed"] = *exp_args.seed;
      if (scenario == "grue" || scenario == "xor_pixel") {
        const auto config = oodlab::io::contrast_config_from_json(doc);
        const auto report = scenario == "grue" ? oodlab::run_grue(config)
                                               : oodlab::run_xor_pixel(config);
        emit(exp_args.out, oodlab::io::contrast_report_to_json(report),
             oodlab::io::contrast_report_to_csv(report));
        return 0;
      }
      if (scenario == "marginal_match" || scenario == "alpha_shift") {
        const auto config = oodlab::io::instance_config_from_json(doc);
        const auto report = scenario == "marginal_match"
                                ? oodlab::run_marginal_match(config)
                                : oodlab::run_alpha_shift(config);
        emit(exp_args.out,
             oodlab::io::identity_report_to_json(report, scenario));
        return report.violations == 0 ? 0 : 1;
      }
      if (scenario == "subspace_transfer") {
        const auto config = oodlab::io::subspace_config_from_json(doc);
        const auto report = oodlab::run_subspace_transfer(config);
        emit(exp_args.out, oodlab::io::subspace_report_to_json(report));
        if (report.precondition_rejections > 0)
          throw oodlab::PreconditionError(
              "projection pushforwards diverged in a matched run");
        return report.violations == 0 ? 0 : 1;
      }
      if (scenario == "marginal_check") {
        oodlab::io::check_keys(
            doc, {"scenario", "d", "dprime", "class", "h", "f", "seed"},
            "marginal check");
        const auto d = oodlab::io::distribution_from_json(
            oodlab::io::load_json_file(doc["d"].get<std::string>()));
        const auto dp = oodlab::io::distribution_from_json(
            oodlab::io::load_json_file(doc["dprime"].get<std::string>()));
        const auto cls = oodlab::io::class_from_json(
            oodlab::io::load_json_file(doc["class"].get<std::string>()));
        const auto h_index = doc["h"].get<std::size_t>();
        const auto f_index = doc["f"].get<std::size_t>();
        if (h_index >= cls.size() || f_index >= cls.size())
          throw oodlab::ValidationError("config",
                                        "member index out of range");
        const auto check = oodlab::marginal_match_check(
            d, dp, cls.members()[h_index], cls.members()[f_index]);
        json report = oodlab::io::report_envelope("marginal-check");
        report["precondition_ok"] = check.precondition_ok;
        if (check.precondition_ok) {
          report["agreement_d"] = oodlab::rat_to_string(check.agreement_d);
          report["agreement_dprime"] =
              oodlab::rat_to_string(check.agreement_d_prime);
          report["equal"] = check.equal;
        }
        emit(exp_args.out, report);
        if (!check.precondition_ok)
          throw oodlab::PreconditionError(
              "marginals differ on the joint relevant feature set");
        return check.equal ? 0 : 1;
      }
      if (scenario == "transfer_check") {
        oodlab::io::check_keys(doc, {"scenario", "f", "h", "d", "dprime", "seed"},
                               "transfer check");
        const auto f = oodlab::io::junta_from_json(oodlab::io::load_json_file(
            doc["f"].get<std::string>()));
        const auto h = oodlab::io::junta_from_json(oodlab::io::load_json_file(
            doc["h"].get<std::string>()));
        const auto d = oodlab::io::measure_from_json(oodlab::io::load_json_file(
            doc["d"].get<std::string>()));
        const auto dp = oodlab::io::measure_from_json(
            oodlab::io::load_json_file(doc["dprime"].get<std::string>()));
        const auto check = oodlab::transfer_identity_check(f, h, d, dp);
        json report = oodlab::io::report_envelope("transfer-check");
        report["precondition_ok"] = check.precondition_ok;
        if (check.precondition_ok) {
          report["agreement_d"] = oodlab::rat_to_string(check.agreement_d);
          report["agreement_dprime"] =
              oodlab::rat_to_string(check.agreement_d_prime);
          report["equal"] = check.equal;
        }
        emit(exp_args.out, report);
        if (!check.precondition_ok)
          throw oodlab::PreconditionError(
              "projected pushforwards of D and D' differ");
        return check.equal ? 0 : 1;
      }
      throw oodlab::ValidationError("config",
                                    "unknown scenario: " + scenario);
    };
  });

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Sample-complexity sweep over an m-grid\n"
               "  example: oodlab sweep --config sweep.json --format csv");
  sweep_cmd->add_option("--config", sweep_args.config_path, "Config file")
      ->required();
  sweep_cmd->add_option("--seed", sweep_args.seed, "Override the config seed");
  add_output_options(sweep_cmd, sweep_args.out);
  sweep_cmd->callback([&]() {
    action = [&]() {
      json doc = oodlab::io::load_json_file(sweep_args.config_path);
      if (sweep_args.seed) doc["seed"] = *sweep_args.seed;
      const auto config = oodlab::io::sweep_config_from_json(doc);
      const auto report = oodlab::sample_complexity_sweep(config);
      emit(sweep_args.out, oodlab::io::sweep_report_to_json(report),
           oodlab::io::sweep_report_to_csv(report));
      return 0;
    };
  });

  // ---- shatter (square-wave construction) ---------------------------------------
  struct {
    std::string labels;
    int m = 0;
    bool all = false;
    OutputOptions out;
  } shatter_args;
  auto* shatter_cmd = app.add_subcommand(
      "shatter", "Replay the square-wave direction shattering construction\n"
                 "  examples: oodlab shatter --labels 101\n"
                 "            oodlab shatter --m 12 --all");
  shatter_cmd->add_option("--labels", shatter_args.labels,
                          "Bit string to realize");
  shatter_cmd->add_option("--m", shatter_args.m, "Point count for --all");
  shatter_cmd->add_flag("--all", shatter_args.all,
                        "Verify every labeling of m points");
  add_output_options(shatter_cmd, shatter_args.out);
  shatter_cmd->callback([&]() {
    action = [&]() {
      json doc = oodlab::io::report_envelope("square-wave-shatter");
      if (shatter_args.all) {
        if (shatter_args.m < 1 || shatter_args.m > 24)
          throw oodlab::ValidationError("parameter",
                                        "--all needs 1 <= m <= 24");
        const std::size_t total = std::size_t{1} << shatter_args.m;
        std::size_t verified = 0;
        for (std::size_t code = 0; code < total; ++code) {
          std::vector<uint8_t> labels(shatter_args.m);
          for (int i = 0; i < shatter_args.m; ++i)
            labels[i] =
                static_cast<uint8_t>((code >> (shatter_args.m - 1 - i)) & 1);
          if (oodlab::verify_shatter(labels)) ++verified;
        }
        doc["m"] = shatter_args.m;
        doc["labelings"] = total;
        doc["verified"] = verified;
        doc["all_verified"] = verified == total;
        emit(shatter_args.out, doc);
        return verified == total ? 0 : 1;
      }
      if (shatter_args.labels.empty())
        throw oodlab::ValidationError("parameter",
                                      "need --labels or --m with --all");
      std::vector<uint8_t> labels;
      for (char c : shatter_args.labels) {
        if (c != '0' && c != '1')
          throw oodlab::ValidationError("parameter",
                                        "labels must be 0/1 characters");
        labels.push_back(static_cast<uint8_t>(c - '0'));
      }
      const auto weight = oodlab::shattering_weight(labels);
      doc["labels"] = shatter_args.labels;
      doc["cos_theta"] = weight.to_string();
      doc["verified"] = oodlab::verify_shatter(labels);
      emit(shatter_args.out, doc);
      return doc["verified"].get<bool>() ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const oodlab::SizeCapError& e) {
    std::cerr << "error (size cap): " << e.what() << "\n";
    return 3;
  } catch (const oodlab::PreconditionError& e) {
    std::cerr << "error (precondition): " << e.what() << "\n";
    return 4;
  } catch (const oodlab::ValidationError& e) {
    std::cerr << "error (validation): " << e.what() << "\n";
    return 2;
  } catch (const oodlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
