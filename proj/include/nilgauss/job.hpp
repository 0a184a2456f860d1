#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilgauss/laplacian.hpp"

namespace nilgauss {

inline const std::vector<std::string> kCheckNames = {"harmonicity", "prop3",         "corollary1",
                                                     "jacobi",      "gauss_codazzi", "cmc"};

struct Tolerances {
  double harmonicity = 1e-3;
  double oracle_abs = 5e-4;
  double oracle_rel = 5e-4;
  double prop3 = 1e-6;
  double jacobi = 5e-4;
  double corollary1 = 5e-4;
  double gauss_codazzi = 5e-4;
  double ab_identity = 1e-10;
  double cmc = 1e-6;
};

struct JobConfig {
  nlohmann::json echo;  // normalized config, defaults filled in
  std::shared_ptr<const SurfaceChart> chart;
  std::vector<Eigen::VectorXd> points;
  std::vector<Method> methods;
  std::vector<std::string> checks;
  Tolerances tol;
  FdOptions fd;
  FrameOptions frame;
  std::optional<Eigen::VectorXd> jacobi_vector;
  std::optional<bool> expect_harmonic;
  std::uint64_t seed = 0;
};

// Every problem found in the document, in a fixed order. Empty iff
// parse_job_config succeeds.
std::vector<std::string> config_problems(const nlohmann::json& doc);

// Throws Error(Config) listing all problems.
JobConfig parse_job_config(const nlohmann::json& doc);

struct JobResult {
  nlohmann::json report;
  bool passed = false;
};

JobResult run_job(const JobConfig& config);

// One line per row: parameters, H, |B|^2, defect, normal coefficient per
// method.
std::string report_to_csv(const nlohmann::json& report);

std::vector<std::string> example_names();
nlohmann::json example_config(const std::string& name);  // throws Config

}  // namespace nilgauss
