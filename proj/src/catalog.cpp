#include "nilgauss/catalog.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "nilgauss/error.hpp"

namespace nilgauss {

namespace {

std::string number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string shifted(double base, const char* var) {
  if (base == 0.0) return var;
  return "(" + number(base) + " + " + var + ")";
}

std::shared_ptr<const CoordinateModel> nil_model() {
  static const auto model = std::make_shared<const CoordinateModel>(nil_polarized_model());
  return model;
}

}  // namespace

SurfaceChart nil_foliation_leaf(const Eigen::Vector3d& point, Box domain) {
  std::vector<ExpressionTree> coords = {
      parse_expression(shifted(point(0), "u1")),
      parse_expression(shifted(point(1), "u2")),
      parse_expression(number(point(2))),
  };
  return SurfaceChart(nil_model(), std::move(coords), std::move(domain), 1, "nil_foliation_leaf");
}

SurfaceChart nil_vertical_plane(Box domain) {
  std::vector<ExpressionTree> coords = {parse_expression("u1"), parse_expression("0"),
                                        parse_expression("u2")};
  return SurfaceChart(nil_model(), std::move(coords), std::move(domain), -1, "nil_vertical_plane");
}

SurfaceChart cylinder_chart(const std::string& f1, const std::string& f2, Box domain,
                            int orientation) {
  const VariableMap vars = {{"s", 0}, {"u1", 0}};
  ExpressionTree e1 = parse_expression(f1, vars);
  ExpressionTree e2 = parse_expression(f2, vars);
  if (domain.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "cylinder domain needs 2 axes");
  const auto [lo, hi] = domain.bounds[0];
  constexpr int samples = 33;
  for (int i = 0; i < samples; ++i) {
    const double s = lo + (hi - lo) * i / (samples - 1);
    const Dual<double> ds[1] = {Dual<double>(s, 1.0)};
    const double d1 = e1.evaluate<Dual<double>>(ds).eps;
    const double d2 = e2.evaluate<Dual<double>>(ds).eps;
    if (!(d1 * d1 + d2 * d2 > 1e-16)) {
      throw Error(ErrorCode::InvalidArgument,
                  "cylinder profile has zero speed at s = " + number(s));
    }
  }
  std::vector<ExpressionTree> coords = {std::move(e1), std::move(e2), parse_expression("u2")};
  return SurfaceChart(nil_model(), std::move(coords), std::move(domain), orientation,
                      "nil_cylinder");
}

SurfaceChart graph_chart(std::shared_ptr<const CoordinateModel> model, const std::string& height,
                         int axis, Box domain, int orientation) {
  const int dim = model->dim();
  if (axis < 0 || axis >= dim) throw Error(ErrorCode::InvalidArgument, "graph axis out of range");
  std::vector<ExpressionTree> coords;
  int param = 1;
  for (int c = 0; c < dim; ++c) {
    if (c == axis) {
      coords.push_back(parse_expression(height));
    } else {
      coords.push_back(parse_expression("u" + std::to_string(param++)));
    }
  }
  return SurfaceChart(std::move(model), std::move(coords), std::move(domain), orientation, "graph");
}

std::string random_height(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-0.5, 0.5);
  std::uniform_int_distribution<int> pick(1, n);
  auto var = [](int i) { return "u" + std::to_string(i); };
  std::ostringstream os;
  os << std::setprecision(6) << coef(rng);
  for (int i = 1; i <= n; ++i) os << " + " << coef(rng) << "*" << var(i);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) os << " + " << coef(rng) << "*" << var(i) << "*" << var(j);
  const int a = pick(rng);
  const int b = pick(rng);
  os << " + " << coef(rng) << "*" << var(a) << "^3";
  os << " + " << coef(rng) << "*sin(" << 2.0 * coef(rng) << "*" << var(a) << " + " << 2.0 * coef(rng)
     << "*" << var(b) << " + " << coef(rng) << ")";
  return os.str();
}

SurfaceChart random_graph(const NilpotentAlgebra& alg, std::uint64_t seed) {
  const int n = alg.dim_total() - 1;
  auto model = std::make_shared<const CoordinateModel>(exp_model(alg));
  Box box{std::vector<std::pair<double, double>>(n, {-0.5, 0.5})};
  SurfaceChart chart = graph_chart(model, random_height(n, seed), n, std::move(box));
  return chart;
}

}  // namespace nilgauss
