// Command-line front end over the nilgauss C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "nilgauss/nilgauss.h"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config;
  std::string out;
  std::string format = "json";
  std::optional<double> tol;
  std::optional<unsigned long long> seed;
  std::string point;
  std::string example;
};

struct Failure {
  int code;
  std::string message;
};

std::string take(char* s) {
  std::string out = s ? s : "";
  ng_string_free(s);
  return out;
}

json read_config(const std::string& path) {
  if (path.empty()) throw Failure{kExitConfig, "--config is required"};
  std::ifstream in(path);
  if (!in) throw Failure{kExitConfig, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw Failure{kExitConfig, path + ": " + e.what()};
  }
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(opt.out);
  if (!out) throw Failure{kExitConfig, "cannot write " + opt.out};
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

void apply_overrides(const Options& opt, json& cfg) {
  if (opt.seed) cfg["seed"] = *opt.seed;
  if (opt.tol) {
    json tol = json::object();
    for (const char* key : {"harmonicity", "oracle_abs", "oracle_rel", "prop3", "jacobi",
                            "corollary1", "gauss_codazzi", "cmc"}) {
      tol[key] = *opt.tol;
    }
    cfg["tolerances"] = tol;
  }
}

int run_config(const Options& opt, json cfg) {
  apply_overrides(opt, cfg);
  if (opt.format != "json" && opt.format != "csv") {
    throw Failure{kExitConfig, "--format must be json or csv"};
  }
  ng_report* report = nullptr;
  const std::string text = cfg.dump();
  if (ng_job_run(text.c_str(), &report) != NG_OK) {
    throw Failure{kExitConfig, ng_last_error()};
  }
  char* body = nullptr;
  const ng_status st =
      opt.format == "csv" ? ng_report_csv(report, &body) : ng_report_json(report, &body);
  const bool passed = ng_report_passed(report) != 0;
  ng_report_free(report);
  if (st != NG_OK) throw Failure{kExitConfig, ng_last_error()};
  emit(opt, take(body));
  return passed ? kExitPass : kExitCheckFailure;
}

int cmd_validate(const Options& opt) {
  const json doc = read_config(opt.config);
  json result;
  int code = kExitPass;
  if (doc.is_object() && doc.contains("chart")) {
    char* problems = nullptr;
    const ng_status st = ng_job_validate(doc.dump().c_str(), &problems);
    if (problems) {
      result = {{"kind", "job"}, {"problems", json::parse(take(problems))}};
    } else {
      result = {{"kind", "job"}, {"problems", {ng_last_error()}}};
    }
    result["valid"] = st == NG_OK;
    if (st != NG_OK) code = kExitConfig;
  } else {
    const json spec = doc.is_object() && doc.contains("algebra") ? doc["algebra"] : doc;
    ng_algebra* alg = nullptr;
    if (ng_algebra_from_json(spec.dump().c_str(), &alg) != NG_OK) {
      throw Failure{kExitConfig, ng_last_error()};
    }
    int ok = 0;
    char* report = nullptr;
    const double tol = opt.tol.value_or(1e-10);
    const ng_status st = ng_algebra_validate(alg, tol, &ok, &report);
    int htype = 0;
    ng_algebra_is_heisenberg_type(alg, tol, &htype);
    result = {{"kind", "algebra"},
              {"dim_total", ng_algebra_dim_total(alg)},
              {"dim_center", ng_algebra_dim_center(alg)},
              {"heisenberg_type", htype == 1},
              {"valid", ok == 1}};
    ng_algebra_free(alg);
    if (st != NG_OK) throw Failure{kExitConfig, ng_last_error()};
    result["report"] = json::parse(take(report));
    if (!ok) code = kExitCheckFailure;
  }
  emit(opt, result.dump(2));
  return code;
}

int cmd_report(const Options& opt) {
  json cfg = read_config(opt.config);
  if (opt.point.empty()) throw Failure{kExitConfig, "--point is required"};
  json point = json::array();
  std::stringstream ss(opt.point);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      point.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{kExitConfig, "--point must be comma-separated numbers"};
    }
  }
  cfg.erase("grid");
  cfg["points"] = json::array({point});
  return run_config(opt, cfg);
}

int cmd_compare(const Options& opt) {
  json cfg = read_config(opt.config);
  json methods = cfg.value("methods", json::array());
  if (!methods.is_array()) throw Failure{kExitConfig, "methods must be a list"};
  bool closed = false;
  bool oracle = false;
  for (const auto& m : methods) {
    if (m == "numeric_oracle") {
      oracle = true;
    } else {
      closed = true;
    }
  }
  if (!closed) methods.push_back("general");
  if (!oracle) methods.push_back("numeric_oracle");
  cfg["methods"] = methods;
  return run_config(opt, cfg);
}

int cmd_examples_list(const Options& opt) {
  char* names = nullptr;
  if (ng_examples_list(&names) != NG_OK) throw Failure{kExitConfig, ng_last_error()};
  json out = json::array();
  for (const auto& n : json::parse(take(names))) {
    char* cfg = nullptr;
    if (ng_example_config(n.get<std::string>().c_str(), &cfg) != NG_OK) {
      throw Failure{kExitConfig, ng_last_error()};
    }
    const json c = json::parse(take(cfg));
    out.push_back({{"name", n}, {"description", c.value("description", "")}});
  }
  emit(opt, out.dump(2));
  return kExitPass;
}

int cmd_examples_run(const Options& opt) {
  char* cfg = nullptr;
  if (ng_example_config(opt.example.c_str(), &cfg) != NG_OK) {
    throw Failure{kExitConfig, ng_last_error()};
  }
  return run_config(opt, json::parse(take(cfg)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplacian of the Gauss map for hypersurfaces in 2-step nilpotent Lie groups"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config) cmd->add_option("--config", opt.config, "Job or algebra JSON")->required();
    cmd->add_option("--out", opt.out, "Write output to this file");
    cmd->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--tol", opt.tol, "Override every check tolerance");
    cmd->add_option("--seed", opt.seed, "Override the config seed");
  };

  auto* validate = app.add_subcommand("validate", "Validate an algebra or a job config");
  add_common(validate, true);
  auto* report = app.add_subcommand("report", "Evaluate a job at a single parameter point");
  add_common(report, true);
  report->add_option("--point", opt.point, "Comma-separated parameters")->required();
  auto* sweep = app.add_subcommand("sweep", "Evaluate a job over its grid");
  add_common(sweep, true);
  auto* compare = app.add_subcommand("compare", "Closed form against the numeric oracle");
  add_common(compare, true);
  auto* examples = app.add_subcommand("examples", "Built-in jobs");
  examples->require_subcommand(1);
  auto* list = examples->add_subcommand("list", "List built-in jobs");
  add_common(list, false);
  auto* run = examples->add_subcommand("run", "Run a built-in job");
  add_common(run, false);
  run->add_option("name", opt.example, "Example name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*validate) return cmd_validate(opt);
    if (*report) return cmd_report(opt);
    if (*sweep) return run_config(opt, read_config(opt.config));
    if (*compare) return cmd_compare(opt);
    if (*list) return cmd_examples_list(opt);
    if (*run) return cmd_examples_run(opt);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
