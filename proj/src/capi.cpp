#include "nilgauss/nilgauss.h"

#include <cstdlib>
#include <cstring>
#include <span>
#include <string>

#include "nilgauss/algebra.hpp"
#include "nilgauss/error.hpp"
#include "nilgauss/expression.hpp"
#include "nilgauss/job.hpp"

using nlohmann::json;

struct ng_algebra {
  nilgauss::NilpotentAlgebra alg;
};

struct ng_expression {
  nilgauss::ExpressionTree tree;
};

struct ng_report {
  nilgauss::JobResult result;
};

namespace {

thread_local std::string last_error;

ng_status status_of(nilgauss::ErrorCode code) {
  using nilgauss::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return NG_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return NG_ERR_DIMENSION;
    case ErrorCode::NotInSubspace: return NG_ERR_NOT_IN_SUBSPACE;
    case ErrorCode::RankDeficient: return NG_ERR_RANK_DEFICIENT;
    case ErrorCode::BoundaryProximity: return NG_ERR_BOUNDARY;
    case ErrorCode::WrongAlgebra: return NG_ERR_WRONG_ALGEBRA;
    case ErrorCode::WrongFrame: return NG_ERR_WRONG_FRAME;
    case ErrorCode::Parse: return NG_ERR_PARSE;
    case ErrorCode::Config: return NG_ERR_CONFIG;
  }
  return NG_ERR_INTERNAL;
}

template <class F>
ng_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return NG_OK;
  } catch (const nilgauss::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("JSON: ") + e.what();
    return NG_ERR_PARSE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NG_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return NG_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw nilgauss::Error(nilgauss::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

Eigen::VectorXd vec(const ng_algebra* a, const double* p) {
  return Eigen::Map<const Eigen::VectorXd>(p, a->alg.dim_total());
}

}  // namespace

extern "C" {

const char* ng_last_error(void) { return last_error.c_str(); }

const char* ng_status_name(ng_status status) {
  switch (status) {
    case NG_OK: return "ok";
    case NG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case NG_ERR_DIMENSION: return "dimension mismatch";
    case NG_ERR_NOT_IN_SUBSPACE: return "not in subspace";
    case NG_ERR_RANK_DEFICIENT: return "rank deficient";
    case NG_ERR_BOUNDARY: return "boundary proximity";
    case NG_ERR_WRONG_ALGEBRA: return "wrong algebra";
    case NG_ERR_WRONG_FRAME: return "wrong frame";
    case NG_ERR_PARSE: return "parse error";
    case NG_ERR_CONFIG: return "configuration error";
    case NG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ng_string_free(char* s) { std::free(s); }

ng_status ng_algebra_from_json(const char* text, ng_algebra** out) {
  return guarded([&] {
    require(text, "json");
    require(out, "out");
    *out = new ng_algebra{nilgauss::algebra_from_json(json::parse(text))};
  });
}

ng_status ng_algebra_heisenberg(int m, ng_algebra** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ng_algebra{nilgauss::heisenberg(m)};
  });
}

void ng_algebra_free(ng_algebra* alg) { delete alg; }

int ng_algebra_dim_total(const ng_algebra* alg) { return alg ? alg->alg.dim_total() : 0; }
int ng_algebra_dim_center(const ng_algebra* alg) { return alg ? alg->alg.dim_center() : 0; }

ng_status ng_algebra_validate(const ng_algebra* alg, double tol, int* ok, char** report_json) {
  return guarded([&] {
    require(alg, "algebra");
    const auto report = nilgauss::validate(alg->alg, tol);
    if (ok) *ok = report.ok() ? 1 : 0;
    if (report_json) *report_json = dup_string(nilgauss::to_json(report).dump());
  });
}

ng_status ng_algebra_is_heisenberg_type(const ng_algebra* alg, double tol, int* out) {
  return guarded([&] {
    require(alg, "algebra");
    require(out, "out");
    *out = nilgauss::is_heisenberg_type(alg->alg, tol) ? 1 : 0;
  });
}

ng_status ng_algebra_bracket(const ng_algebra* alg, const double* x, const double* y, double* out) {
  return guarded([&] {
    require(alg, "algebra");
    require(x, "x");
    require(y, "y");
    require(out, "out");
    const Eigen::VectorXd r = alg->alg.bracket(vec(alg, x), vec(alg, y));
    std::copy(r.data(), r.data() + r.size(), out);
  });
}

ng_status ng_algebra_j_apply(const ng_algebra* alg, const double* z, const double* x, double* out) {
  return guarded([&] {
    require(alg, "algebra");
    require(z, "z");
    require(x, "x");
    require(out, "out");
    const Eigen::VectorXd r = alg->alg.j_apply(vec(alg, z), vec(alg, x));
    std::copy(r.data(), r.data() + r.size(), out);
  });
}

ng_status ng_expression_parse(const char* text, ng_expression** out, size_t* offset) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    try {
      *out = new ng_expression{nilgauss::parse_expression(text)};
    } catch (const nilgauss::ParseError& e) {
      if (offset) *offset = e.offset();
      throw;
    }
  });
}

ng_status ng_expression_eval(const ng_expression* e, const double* params, size_t count, double* out) {
  return guarded([&] {
    require(e, "expression");
    require(out, "out");
    if (count > 0) require(params, "params");
    *out = e->tree.evaluate<double>(std::span<const double>(params, count));
  });
}

void ng_expression_free(ng_expression* e) { delete e; }

ng_status ng_job_validate(const char* config_json, char** problems_json) {
  std::vector<std::string> problems;
  ng_status st = guarded([&] {
    require(config_json, "config");
    problems = nilgauss::config_problems(json::parse(config_json));
    if (problems_json) *problems_json = dup_string(json(problems).dump());
  });
  if (st != NG_OK) return st;
  if (!problems.empty()) {
    last_error = problems.front();
    return NG_ERR_CONFIG;
  }
  return NG_OK;
}

ng_status ng_job_run(const char* config_json, ng_report** out) {
  return guarded([&] {
    require(config_json, "config");
    require(out, "out");
    const auto cfg = nilgauss::parse_job_config(json::parse(config_json));
    *out = new ng_report{nilgauss::run_job(cfg)};
  });
}

int ng_report_passed(const ng_report* report) { return report && report->result.passed ? 1 : 0; }

ng_status ng_report_json(const ng_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = dup_string(report->result.report.dump(2));
  });
}

ng_status ng_report_csv(const ng_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = dup_string(nilgauss::report_to_csv(report->result.report));
  });
}

void ng_report_free(ng_report* report) { delete report; }

ng_status ng_examples_list(char** names_json) {
  return guarded([&] {
    require(names_json, "out");
    *names_json = dup_string(json(nilgauss::example_names()).dump());
  });
}

ng_status ng_example_config(const char* name, char** config_json) {
  return guarded([&] {
    require(name, "name");
    require(config_json, "out");
    *config_json = dup_string(nilgauss::example_config(name).dump(2));
  });
}

}  // extern "C"
