#include "nilgauss/job.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "nilgauss/catalog.hpp"
#include "nilgauss/checks.hpp"
#include "nilgauss/error.hpp"
#include "nilgauss/geometry.hpp"

namespace nilgauss {

using nlohmann::json;

namespace {

const std::set<std::string> kTopLevelKeys = {
    "name",   "description", "algebra",        "model",           "chart",
    "orientation", "domain", "grid",           "points",          "methods",
    "checks", "tolerances",  "fd",             "jacobi_vector",   "seed",
    "completion_seed",       "frame",          "expect_harmonic"};

const std::vector<std::string> kCatalog = {"nil_foliation_leaf", "nil_vertical_plane",
                                           "nil_cylinder", "graph", "random_graph", "custom"};

bool is_non_negative_integer(const json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

bool is_nil_catalog(const std::string& name) { return name.rfind("nil_", 0) == 0; }

std::string catalog_name(const json& chart) {
  if (chart.is_string()) return chart.get<std::string>();
  if (chart.is_object()) {
    if (chart.contains("catalog") && chart["catalog"].is_string()) return chart["catalog"];
    if (chart.contains("coords")) return "custom";
  }
  return "";
}

bool is_heisenberg_algebra(const NilpotentAlgebra& alg) {
  return alg.dim_center() == 1 && alg.dim_v() % 2 == 0 && is_heisenberg_type(alg);
}

std::vector<double> to_vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

Eigen::VectorXd from_json_vec(const json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

bool is_number_array(const json& j, std::size_t size) {
  if (!j.is_array() || j.size() != size) return false;
  return std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_number(); });
}

struct Builder {
  const json& doc;
  std::vector<std::string> problems;
  JobConfig cfg;

  void problem(const std::string& p) { problems.push_back(p); }

  void run() {
    if (!doc.is_object()) {
      problem("config must be a JSON object");
      return;
    }
    for (const auto& [key, _] : doc.items()) {
      if (!kTopLevelKeys.count(key)) problem("unknown config key '" + key + "'");
    }
    cfg.echo = doc;

    if (doc.contains("seed")) {
      if (is_non_negative_integer(doc["seed"])) {
        cfg.seed = doc["seed"].get<std::uint64_t>();
      } else {
        problem("seed must be a non-negative integer");
      }
    }
    cfg.echo["seed"] = cfg.seed;

    const json chart_spec = doc.value("chart", json());
    const std::string catalog = catalog_name(chart_spec);
    if (chart_spec.is_null()) {
      problem("chart is required");
    } else if (std::find(kCatalog.begin(), kCatalog.end(), catalog) == kCatalog.end()) {
      problem("unknown chart '" + (catalog.empty() ? chart_spec.dump() : catalog) + "'");
    }
    const bool nil_chart = is_nil_catalog(catalog);

    // Algebra and model.
    std::optional<NilpotentAlgebra> alg;
    const json alg_spec = doc.contains("algebra") ? doc["algebra"]
                                                  : (nil_chart ? json("heisenberg:1") : json());
    if (alg_spec.is_null()) {
      problem("algebra is required");
    } else {
      try {
        alg = algebra_from_json(alg_spec);
        const ValidationReport rep = validate(*alg);
        for (const auto& v : rep.violations) {
          problem("algebra violates '" + v.invariant + "' (magnitude " +
                  std::to_string(v.magnitude) + ")");
        }
        if (!rep.ok()) alg.reset();
      } catch (const Error& e) {
        problem(std::string("algebra: ") + e.what());
      }
    }
    cfg.echo["algebra"] = alg_spec;
    const std::string model_name =
        doc.contains("model") && doc["model"].is_string() ? doc["model"].get<std::string>()
                                                          : (nil_chart ? "nil_polarized" : "exp");
    if (doc.contains("model") && !doc["model"].is_string()) problem("model must be a string");
    if (model_name != "exp" && model_name != "nil_polarized") {
      problem("unknown model '" + model_name + "'");
    }
    if (nil_chart && model_name != "nil_polarized") {
      problem("chart '" + catalog + "' lives in the nil_polarized model");
    }
    cfg.echo["model"] = model_name;
    std::shared_ptr<const CoordinateModel> model;
    if (alg && (model_name == "exp" || model_name == "nil_polarized")) {
      try {
        model = std::make_shared<const CoordinateModel>(model_by_name(model_name, *alg));
      } catch (const Error& e) {
        problem(std::string("model: ") + e.what());
      }
    }
    const int n = model ? model->dim() - 1 : -1;

    // Domain.
    std::optional<Box> domain;
    if (doc.contains("domain")) {
      const json& d = doc["domain"];
      Box box;
      bool ok = d.is_array();
      if (ok) {
        for (const auto& axis : d) {
          if (!is_number_array(axis, 2) || !(axis[0].get<double>() < axis[1].get<double>())) {
            ok = false;
            break;
          }
          box.bounds.emplace_back(axis[0].get<double>(), axis[1].get<double>());
        }
      }
      if (!ok) {
        problem("domain must be a list of [lo, hi] pairs with lo < hi");
      } else if (n >= 0 && box.dim() != n) {
        problem("domain has " + std::to_string(box.dim()) + " axes, chart needs " +
                std::to_string(n));
      } else {
        domain = box;
      }
    } else if (n >= 0) {
      if (catalog == "nil_foliation_leaf") {
        domain = Box{{{-3.0, 3.0}, {-1.0, 1.0}}};
      } else if (catalog == "nil_vertical_plane") {
        domain = Box{{{-1.0, 1.0}, {-1.0, 1.0}}};
      } else if (catalog == "random_graph") {
        domain = Box{std::vector<std::pair<double, double>>(n, {-0.5, 0.5})};
      } else {
        problem("domain is required for chart '" + catalog + "'");
      }
    }
    if (domain) {
      json d = json::array();
      for (const auto& [lo, hi] : domain->bounds) d.push_back({lo, hi});
      cfg.echo["domain"] = d;
    }

    // Chart.
    int orientation = 0;
    if (doc.contains("orientation")) {
      if (doc["orientation"] == 1 || doc["orientation"] == -1) {
        orientation = doc["orientation"].get<int>();
      } else {
        problem("orientation must be 1 or -1");
      }
    }
    if (model && domain && !catalog.empty()) {
      try {
        cfg.chart = std::make_shared<const SurfaceChart>(build_chart(chart_spec, catalog, model, *domain));
        if (orientation != 0) {
          cfg.chart = std::make_shared<const SurfaceChart>(cfg.chart->with_orientation(orientation));
        }
        cfg.echo["orientation"] = cfg.chart->orientation();
      } catch (const Error& e) {
        problem(std::string("chart: ") + e.what());
      }
    }

    // FD options.
    if (doc.contains("fd")) {
      const json& fd = doc["fd"];
      if (!fd.is_object()) {
        problem("fd must be an object");
      } else {
        for (const auto& [key, value] : fd.items()) {
          if (key == "base_step") {
            if (value.is_number() && value.get<double>() > 0) {
              cfg.fd.base_step = value;
            } else {
              problem("fd.base_step must be positive");
            }
          } else if (key == "levels") {
            if (value.is_number_integer() && value.get<int>() >= 1 && value.get<int>() <= 4) {
              cfg.fd.levels = value;
            } else {
              problem("fd.levels must be an integer in 1..4");
            }
          } else {
            problem("unknown fd key '" + key + "'");
          }
        }
      }
    }
    cfg.echo["fd"] = {{"base_step", cfg.fd.base_step}, {"levels", cfg.fd.levels}};

    // Points.
    const double margin = 3.0 * cfg.fd.base_step;
    if (doc.contains("points")) {
      const json& pts = doc["points"];
      if (!pts.is_array() || pts.empty()) {
        problem("points must be a non-empty list");
      } else if (n >= 0) {
        for (const auto& p : pts) {
          if (!is_number_array(p, static_cast<std::size_t>(n))) {
            problem("every point needs " + std::to_string(n) + " coordinates");
            break;
          }
          const Eigen::VectorXd u = from_json_vec(p);
          if (domain && !domain->contains(u, margin)) {
            problem("point " + p.dump() + " is not inside the domain with margin " +
                    std::to_string(margin));
          }
          cfg.points.push_back(u);
        }
      }
    } else {
      std::vector<int> counts;
      const json grid = doc.value("grid", json(3));
      if (grid.is_number_integer()) {
        counts.assign(std::max(n, 0), grid.get<int>());
      } else if (grid.is_array() &&
                 std::all_of(grid.begin(), grid.end(), [](const json& g) { return g.is_number_integer(); })) {
        for (const auto& g : grid) counts.push_back(g);
        if (n >= 0 && static_cast<int>(counts.size()) != n) {
          problem("grid needs one count per parameter axis (" + std::to_string(n) + ")");
        }
      } else {
        problem("grid must be an integer or a list of integers");
      }
      if (std::any_of(counts.begin(), counts.end(), [](int c) { return c < 2; })) {
        problem("grid resolution must be at least 2 per axis");
      } else if (domain && static_cast<int>(counts.size()) == domain->dim()) {
        cfg.points = grid_points(*domain, counts, margin);
      }
      cfg.echo["grid"] = grid;
    }

    // Methods and checks.
    if (!doc.contains("methods") || !doc["methods"].is_array() || doc["methods"].empty()) {
      if (doc.contains("methods") && !doc["methods"].is_array()) {
        problem("methods must be a list");
      } else {
        problem("no methods requested");
      }
    } else {
      for (const auto& m : doc["methods"]) {
        try {
          cfg.methods.push_back(method_from_string(m.is_string() ? m.get<std::string>() : m.dump()));
        } catch (const Error& e) {
          problem(e.what());
        }
      }
    }
    const bool heis = alg && is_heisenberg_algebra(*alg);
    for (Method m : cfg.methods) {
      if (m == Method::HType && alg && !is_heisenberg_type(*alg)) {
        problem("method h_type needs an algebra of Heisenberg type");
      }
      if (m == Method::Heisenberg && alg && !heis) {
        problem("method heisenberg needs a Heisenberg algebra");
      }
    }
    if (doc.contains("checks")) {
      if (!doc["checks"].is_array()) {
        problem("checks must be a list");
      } else {
        for (const auto& c : doc["checks"]) {
          const std::string name = c.is_string() ? c.get<std::string>() : c.dump();
          if (std::find(kCheckNames.begin(), kCheckNames.end(), name) == kCheckNames.end()) {
            problem("unknown check '" + name + "'");
          } else {
            cfg.checks.push_back(name);
          }
        }
      }
    }
    auto wants = [&](const std::string& c) {
      return std::find(cfg.checks.begin(), cfg.checks.end(), c) != cfg.checks.end();
    };
    if (wants("prop3") && alg && !heis) problem("check prop3 needs a Heisenberg algebra");
    if (wants("gauss_codazzi") && alg && !(heis && alg->dim_total() == 3)) {
      problem("check gauss_codazzi needs a surface in Nil (heisenberg:1)");
    }
    cfg.echo["methods"] = json::array();
    for (Method m : cfg.methods) cfg.echo["methods"].push_back(to_string(m));
    cfg.echo["checks"] = cfg.checks;

    // Frame.
    const std::string frame = doc.value("frame", std::string("auto"));
    if (frame == "generic") {
      cfg.frame.kind = FrameKind::Generic;
    } else if (frame == "heisenberg") {
      cfg.frame.kind = FrameKind::Heisenberg;
      if (alg && !heis) problem("frame heisenberg needs a Heisenberg algebra");
    } else if (frame != "auto") {
      problem("frame must be auto, generic or heisenberg");
    }
    if ((wants("prop3") || std::count(cfg.methods.begin(), cfg.methods.end(), Method::Heisenberg)) &&
        frame == "generic") {
      problem("heisenberg method and prop3 check need the heisenberg frame");
    }
    cfg.echo["frame"] = frame;
    if (doc.contains("completion_seed")) {
      if (is_non_negative_integer(doc["completion_seed"])) {
        cfg.frame.completion_seed = doc["completion_seed"].get<std::uint64_t>();
      } else {
        problem("completion_seed must be a non-negative integer");
      }
    }

    // Tolerances.
    std::map<std::string, double*> tol_fields = {
        {"harmonicity", &cfg.tol.harmonicity}, {"oracle_abs", &cfg.tol.oracle_abs},
        {"oracle_rel", &cfg.tol.oracle_rel},   {"prop3", &cfg.tol.prop3},
        {"jacobi", &cfg.tol.jacobi},           {"corollary1", &cfg.tol.corollary1},
        {"gauss_codazzi", &cfg.tol.gauss_codazzi}, {"ab_identity", &cfg.tol.ab_identity},
        {"cmc", &cfg.tol.cmc}};
    if (doc.contains("tolerances")) {
      if (!doc["tolerances"].is_object()) {
        problem("tolerances must be an object");
      } else {
        for (const auto& [key, value] : doc["tolerances"].items()) {
          auto it = tol_fields.find(key);
          if (it == tol_fields.end()) {
            problem("unknown tolerance '" + key + "'");
          } else if (!value.is_number() || !(value.get<double>() > 0)) {
            problem("tolerance '" + key + "' must be positive");
          } else {
            *it->second = value;
          }
        }
      }
    }
    json tol = json::object();
    for (const auto& [key, ptr] : tol_fields) tol[key] = *ptr;
    cfg.echo["tolerances"] = tol;

    if (doc.contains("jacobi_vector")) {
      if (!model || !is_number_array(doc["jacobi_vector"], static_cast<std::size_t>(model->dim()))) {
        problem("jacobi_vector needs one entry per algebra dimension");
      } else {
        Eigen::VectorXd v = from_json_vec(doc["jacobi_vector"]);
        if (v.norm() == 0.0) {
          problem("jacobi_vector must be nonzero");
        } else {
          cfg.jacobi_vector = v / v.norm();
        }
      }
    }
    if (doc.contains("expect_harmonic")) {
      if (doc["expect_harmonic"].is_boolean()) {
        cfg.expect_harmonic = doc["expect_harmonic"].get<bool>();
      } else {
        problem("expect_harmonic must be true or false");
      }
    }
  }

  SurfaceChart build_chart(const json& spec, const std::string& catalog,
                           const std::shared_ptr<const CoordinateModel>& model, const Box& domain) {
    auto field = [&](const char* key) -> std::string {
      if (!spec.is_object() || !spec.contains(key) || !spec[key].is_string()) {
        throw Error(ErrorCode::Config, "chart '" + catalog + "' needs string field '" + key + "'");
      }
      return spec[key];
    };
    if (catalog == "nil_foliation_leaf") {
      Eigen::Vector3d p = Eigen::Vector3d::Zero();
      if (spec.is_object() && spec.contains("point")) {
        if (!is_number_array(spec["point"], 3)) {
          throw Error(ErrorCode::Config, "nil_foliation_leaf point needs 3 coordinates");
        }
        p = from_json_vec(spec["point"]);
      }
      return nil_foliation_leaf(p, domain);
    }
    if (catalog == "nil_vertical_plane") return nil_vertical_plane(domain);
    if (catalog == "nil_cylinder") return cylinder_chart(field("f1"), field("f2"), domain);
    if (catalog == "graph") {
      int axis = model->dim();
      if (spec.contains("axis")) {
        if (!spec["axis"].is_number_integer()) throw Error(ErrorCode::Config, "graph axis must be an integer");
        axis = spec["axis"];
      }
      return graph_chart(model, field("height"), axis - 1, domain);
    }
    if (catalog == "random_graph") {
      SurfaceChart c = graph_chart(model, random_height(model->dim() - 1, cfg.seed),
                                   model->dim() - 1, domain);
      cfg.echo["chart"] = {{"catalog", "random_graph"}, {"height", c.coords().back().source()}};
      return c;
    }
    const json& coords = spec["coords"];
    if (!coords.is_array()) throw Error(ErrorCode::Config, "chart coords must be a list of strings");
    std::vector<ExpressionTree> trees;
    for (const auto& c : coords) {
      if (!c.is_string()) throw Error(ErrorCode::Config, "chart coords must be a list of strings");
      trees.push_back(parse_expression(c.get<std::string>()));
    }
    return SurfaceChart(model, std::move(trees), domain, 1, "custom");
  }

  static std::vector<Eigen::VectorXd> grid_points(const Box& box, const std::vector<int>& counts,
                                                  double margin) {
    std::vector<Eigen::VectorXd> out;
    const int dim = box.dim();
    std::vector<int> idx(dim, 0);
    while (true) {
      Eigen::VectorXd u(dim);
      for (int a = 0; a < dim; ++a) {
        const double lo = box.bounds[a].first + margin;
        const double hi = box.bounds[a].second - margin;
        u(a) = lo + (hi - lo) * idx[a] / (counts[a] - 1);
      }
      out.push_back(u);
      int a = dim - 1;
      while (a >= 0 && ++idx[a] == counts[a]) idx[a--] = 0;
      if (a < 0) break;
    }
    return out;
  }
};

json error_json(const std::exception& e) {
  json j = {{"message", e.what()}};
  if (const auto* err = dynamic_cast<const Error*>(&e)) j["code"] = to_string(err->code());
  return j;
}

json report_json(const LaplacianReport& r) {
  json terms = json::object();
  for (const auto& t : r.terms) terms[t.name] = to_vec(t.values);
  return {{"coeffs", to_vec(r.coeffs)},
          {"terms", terms},
          {"tangential_norm", r.tangential_norm},
          {"normal_coeff", r.normal_coeff}};
}

struct CheckSummary {
  double value = 0.0;
  bool pass = true;
  json extra = json::object();
};

}  // namespace

std::vector<std::string> config_problems(const json& doc) {
  Builder b{doc, {}, {}};
  b.run();
  return b.problems;
}

JobConfig parse_job_config(const json& doc) {
  Builder b{doc, {}, {}};
  b.run();
  if (!b.problems.empty()) {
    std::string msg;
    for (const auto& p : b.problems) msg += (msg.empty() ? "" : "; ") + p;
    throw Error(ErrorCode::Config, msg);
  }
  return std::move(b.cfg);
}

JobResult run_job(const JobConfig& cfg) {
  const SurfaceChart& chart = *cfg.chart;
  const NilpotentAlgebra& alg = chart.algebra();
  auto wants = [&](const std::string& c) {
    return std::find(cfg.checks.begin(), cfg.checks.end(), c) != cfg.checks.end();
  };
  const bool has_oracle =
      std::count(cfg.methods.begin(), cfg.methods.end(), Method::NumericOracle) > 0;

  json rows = json::array();
  double max_defect = 0.0;
  double max_gap = 0.0;
  bool oracle_pass = true;
  int row_errors = 0;
  std::map<std::string, CheckSummary> checks;
  for (const auto& c : cfg.checks) checks[c];
  double h_min = std::numeric_limits<double>::infinity();
  double h_max = -h_min;
  int harmonic_rows = 0;
  int gc_skipped = 0;
  Eigen::VectorXd gauss_sum = Eigen::VectorXd::Zero(alg.dim_total());

  for (const auto& u : cfg.points) {
    json row = {{"u", to_vec(u)}};
    try {
      const PointSample s = sample_point(chart, u, cfg.frame, cfg.fd);
      gauss_sum += s.gauss;
      row["point"] = to_vec(chart.point(u));
      row["gauss"] = to_vec(s.gauss);
      row["H"] = s.shape.H;
      row["norm_b2"] = s.shape.norm_b2;
      row["b_symmetry_defect"] = s.shape.symmetry_defect;
      row["dH"] = s.dH;
      row["frame"] = {{"kind", s.frame.kind == FrameKind::Heisenberg ? "heisenberg" : "generic"},
                      {"lambda", s.frame.lambda},
                      {"mu", s.frame.mu},
                      {"x_norm", s.frame.x_norm()},
                      {"z_norm", s.frame.z_norm()},
                      {"gram_residual", s.frame.gram_residual()},
                      {"Y", [&] {
                         json ys = json::array();
                         for (const auto& y : s.frame.ys) ys.push_back(to_vec(y));
                         return ys;
                       }()}};
      h_min = std::min(h_min, s.shape.H);
      h_max = std::max(h_max, s.shape.H);

      json methods = json::object();
      std::vector<LaplacianReport> closed;
      std::optional<LaplacianReport> oracle;
      for (Method m : cfg.methods) {
        LaplacianReport r = m == Method::NumericOracle ? laplacian_numeric(chart, u, s.frame, cfg.fd)
                                                       : laplacian_closed_form(m, alg, s);
        methods[to_string(m)] = report_json(r);
        if (m == Method::NumericOracle) {
          oracle = r;
        } else {
          closed.push_back(r);
        }
      }
      row["methods"] = methods;
      const LaplacianReport& primary = closed.empty() ? *oracle : closed.front();
      const HarmonicityVerdict verdict = harmonicity(primary, cfg.tol.harmonicity);
      row["defect"] = verdict.defect;
      row["harmonic"] = verdict.harmonic;
      row["energy_coeff"] = verdict.energy_coeff;
      max_defect = std::max(max_defect, verdict.defect);
      if (verdict.harmonic) ++harmonic_rows;

      if (oracle && !closed.empty()) {
        double gap = 0.0;
        for (const auto& r : closed) {
          for (Eigen::Index k = 0; k < r.coeffs.size(); ++k) {
            const double diff = std::abs(r.coeffs(k) - oracle->coeffs(k));
            gap = std::max(gap, diff);
            if (diff > std::max(cfg.tol.oracle_abs, cfg.tol.oracle_rel * std::abs(oracle->coeffs(k)))) {
              oracle_pass = false;
            }
          }
        }
        row["oracle_gap"] = gap;
        max_gap = std::max(max_gap, gap);
      }

      json row_checks = json::object();
      if (wants("prop3")) {
        const Prop3Residuals p = prop3_residuals(s.shape, s.frame);
        row_checks["prop3"] = {{"off_diagonal", p.off_diagonal},
                               {"second", p.second},
                               {"trace", p.trace}};
        auto& c = checks["prop3"];
        c.value = std::max(c.value, p.max());
      }
      if (wants("gauss_codazzi")) {
        const GaussCodazziResult g = gauss_codazzi_residuals(chart, u, cfg.fd);
        json j = {{"skipped", g.skipped}};
        if (g.skipped) {
          j["reason"] = g.reason;
          ++gc_skipped;
        } else {
          j["codazzi_1"] = g.codazzi_1;
          j["codazzi_2"] = g.codazzi_2;
          j["gauss"] = g.gauss;
          j["curvature_ab"] = g.curvature_ab;
          j["ab"] = g.ab;
          auto& c = checks["gauss_codazzi"];
          c.value = std::max(c.value, g.max_residual());
          const double ab_gap = std::abs(g.curvature_ab - g.ab);
          c.extra["max_ab_identity_gap"] =
              std::max(c.extra.value("max_ab_identity_gap", 0.0), ab_gap);
        }
        row_checks["gauss_codazzi"] = j;
      }
      if (!row_checks.empty()) row["checks"] = row_checks;
    } catch (const std::exception& e) {
      row["error"] = error_json(e);
      ++row_errors;
    }
    rows.push_back(row);
  }

  json summary;
  summary["max_defect"] = max_defect;
  summary["max_oracle_gap"] = max_gap;
  summary["rows"] = cfg.points.size();
  summary["row_errors"] = row_errors;
  bool pass = row_errors == 0;
  json checks_json = json::object();
  if (has_oracle && cfg.methods.size() > 1) {
    checks_json["oracle"] = {{"value", max_gap},
                             {"tol_abs", cfg.tol.oracle_abs},
                             {"tol_rel", cfg.tol.oracle_rel},
                             {"pass", oracle_pass}};
    pass = pass && oracle_pass;
  }

  const std::vector<Eigen::VectorXd>& pts = cfg.points;
  for (const auto& name : cfg.checks) {
    CheckSummary& c = checks[name];
    double tol = 0.0;
    try {
      if (name == "harmonicity") {
        tol = cfg.tol.harmonicity;
        c.value = max_defect;
        const bool all_harmonic = harmonic_rows == static_cast<int>(pts.size()) - row_errors;
        c.extra["harmonic_rows"] = harmonic_rows;
        if (cfg.expect_harmonic.value_or(true)) {
          c.pass = all_harmonic;
        } else {
          c.extra["expect_harmonic"] = false;
          c.pass = harmonic_rows == 0;
        }
      } else if (name == "prop3") {
        tol = cfg.tol.prop3;
        c.pass = c.value < tol;
      } else if (name == "gauss_codazzi") {
        tol = cfg.tol.gauss_codazzi;
        c.extra["skipped_rows"] = gc_skipped;
        c.pass = c.value < tol && c.extra.value("max_ab_identity_gap", 0.0) < cfg.tol.ab_identity;
      } else if (name == "cmc") {
        tol = cfg.tol.cmc;
        c.value = pts.empty() || h_max < h_min ? 0.0 : h_max - h_min;
        c.pass = c.value < tol;
      } else if (name == "jacobi") {
        tol = cfg.tol.jacobi;
        Eigen::VectorXd v;
        if (cfg.jacobi_vector) {
          v = *cfg.jacobi_vector;
        } else if (gauss_sum.norm() > 0) {
          v = gauss_sum / gauss_sum.norm();
        } else {
          throw Error(ErrorCode::InvalidArgument, "mean of the Gauss map vanishes; set jacobi_vector");
        }
        const JacobiResult j = jacobi_check(chart, pts, v, cfg.fd);
        c.value = j.max_residual;
        c.extra["min_w"] = j.min_w;
        c.extra["w_positive"] = j.min_w > 0;
        c.extra["vector"] = to_vec(v);
        c.pass = c.value < tol;
      } else if (name == "corollary1") {
        tol = cfg.tol.corollary1;
        Corollary1Options opt;
        opt.harmonic_tol = cfg.tol.harmonicity;
        opt.fd = cfg.fd;
        const Corollary1Result r = corollary1_check(chart, pts, opt);
        c.value = r.max_variation;
        c.extra["skipped"] = r.skipped;
        c.extra["curves"] = r.curves;
        if (!r.reason.empty()) c.extra["reason"] = r.reason;
        c.pass = r.skipped || c.value < tol;
      }
    } catch (const std::exception& e) {
      c.extra["error"] = error_json(e);
      c.pass = false;
    }
    json j = c.extra;
    j["value"] = c.value;
    j["tol"] = tol;
    j["pass"] = c.pass;
    checks_json[name] = j;
    pass = pass && c.pass;
  }
  summary["checks"] = checks_json;
  summary["pass"] = pass;

  JobResult result;
  result.report = {{"config_echo", cfg.echo}, {"rows", rows}, {"summary", summary}};
  result.passed = pass;
  return result;
}

std::string report_to_csv(const json& report) {
  std::vector<std::string> methods;
  for (const auto& m : report.at("config_echo").at("methods")) methods.push_back(m);
  std::ostringstream os;
  os.precision(17);
  const json& rows = report.at("rows");
  const std::size_t n = rows.empty() ? 0 : rows[0].at("u").size();
  for (std::size_t i = 0; i < n; ++i) os << "u" << i + 1 << ",";
  os << "H,norm_b2,defect";
  for (const auto& m : methods) os << ",normal_" << m;
  os << ",error\n";
  for (const auto& row : rows) {
    for (const auto& x : row.at("u")) os << x.get<double>() << ",";
    if (row.contains("error")) {
      os << ",,";
      for (std::size_t i = 0; i < methods.size(); ++i) os << ",";
      std::string msg = row["error"]["message"];
      std::replace(msg.begin(), msg.end(), ',', ';');
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      os << "," << msg << "\n";
      continue;
    }
    os << row.at("H").get<double>() << "," << row.at("norm_b2").get<double>() << ","
       << row.at("defect").get<double>();
    for (const auto& m : methods) {
      os << "," << row.at("methods").at(m).at("normal_coeff").get<double>();
    }
    os << ",\n";
  }
  return os.str();
}

namespace {

const std::vector<std::pair<std::string, json>>& examples() {
  static const std::vector<std::pair<std::string, json>> list = {
      {"nil_foliation_example",
       {{"description", "Minimal horizontal leaf in Nil; Delta G at x = 0, 0.5, 1, 2"},
        {"chart", {{"catalog", "nil_foliation_leaf"}, {"point", {0.0, 0.0, 0.0}}}},
        {"points", {{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}, {2.0, 0.0}}},
        {"methods", {"general", "h_type", "heisenberg", "numeric_oracle"}},
        {"checks", {"cmc", "gauss_codazzi"}}}},
      {"nil_foliation_negative_control",
       {{"description", "The same leaf at x = 0.7 is CMC with a non-harmonic Gauss map"},
        {"chart", {{"catalog", "nil_foliation_leaf"}, {"point", {0.0, 0.0, 0.0}}}},
        {"points", {{0.7, 0.0}}},
        {"methods", {"heisenberg", "numeric_oracle"}},
        {"checks", {"harmonicity"}},
        {"expect_harmonic", false}}},
      {"nil_vertical_plane",
       {{"description", "Vertical plane (s, 0, t) in Nil"},
        {"chart", "nil_vertical_plane"},
        {"grid", 3},
        {"methods", {"general", "heisenberg", "numeric_oracle"}},
        {"checks", {"harmonicity", "prop3", "jacobi"}},
        {"jacobi_vector", {0.0, 1.0, 0.0}}}},
      {"nil_circular_cylinder",
       {{"description", "Cylinder over a unit circle arc in Nil"},
        {"chart", {{"catalog", "nil_cylinder"}, {"f1", "cos(s)"}, {"f2", "sin(s)"}}},
        {"domain", {{0.2, 1.2}, {-1.0, 1.0}}},
        {"grid", {4, 3}},
        {"methods", {"general", "heisenberg", "numeric_oracle"}},
        {"checks", {"harmonicity", "cmc", "prop3", "jacobi", "corollary1"}}}},
      {"heisenberg2_random_graph",
       {{"description", "Seeded random graph in the 5-dimensional Heisenberg group"},
        {"algebra", "heisenberg:2"},
        {"model", "exp"},
        {"chart", "random_graph"},
        {"grid", 2},
        {"seed", 7},
        {"methods", {"general", "h_type", "heisenberg", "numeric_oracle"}}}},
      {"quaternionic_random_graph",
       {{"description", "Seeded random graph in the quaternionic Heisenberg group"},
        {"algebra", "quaternionic"},
        {"model", "exp"},
        {"chart", "random_graph"},
        {"points", {{0.1, -0.2, 0.05, 0.0, 0.2, -0.1}, {-0.3, 0.1, 0.2, 0.1, 0.0, 0.15}}},
        {"seed", 3},
        {"methods", {"general", "h_type", "numeric_oracle"}},
        {"checks", {"corollary1"}}}},
  };
  return list;
}

}  // namespace

std::vector<std::string> example_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : examples()) names.push_back(name);
  return names;
}

json example_config(const std::string& name) {
  for (const auto& [n, cfg] : examples()) {
    if (n == name) {
      json c = cfg;
      c["name"] = n;
      return c;
    }
  }
  throw Error(ErrorCode::Config, "unknown example '" + name + "'");
}

}  // namespace nilgauss
