#include "nilgauss/group_model.hpp"

#include <cmath>
#include <utility>

#include "nilgauss/error.hpp"

namespace nilgauss {

CoordinateModel::CoordinateModel(std::string name, NilpotentAlgebra algebra,
                                 std::vector<Eigen::MatrixXd> frame_slopes,
                                 std::vector<double> product)
    : name_(std::move(name)),
      algebra_(std::move(algebra)),
      frame_slopes_(std::move(frame_slopes)),
      product_(std::move(product)) {
  const auto n = static_cast<std::size_t>(dim());
  if (frame_slopes_.size() != n || product_.size() != n * n * n) {
    throw Error(ErrorCode::DimensionMismatch, "model data does not match algebra dimension");
  }
}

void CoordinateModel::check_point(const Eigen::VectorXd& p) const {
  if (p.size() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "group point has length " +
                                                  std::to_string(p.size()) + ", model needs " +
                                                  std::to_string(dim()));
  }
  if (!p.allFinite()) throw Error(ErrorCode::InvalidArgument, "group point is not finite");
}

Eigen::MatrixXd CoordinateModel::frame_field(const Eigen::VectorXd& p) const {
  check_point(p);
  const int n = dim();
  Eigen::MatrixXd f(n, n);
  frame_field_into<double>(std::span<const double>(p.data(), n), std::span<double>(f.data(), n * n));
  return f;
}

std::vector<Eigen::MatrixXd> CoordinateModel::frame_field_derivatives(
    const Eigen::VectorXd& p) const {
  check_point(p);
  const int n = dim();
  std::vector<Eigen::MatrixXd> out;
  std::vector<Dual<double>> pd(n);
  std::vector<Dual<double>> buf(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) pd[i] = Dual<double>(p(i), i == k ? 1.0 : 0.0);
    frame_field_into<Dual<double>>(pd, buf);
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n * n; ++i) d.data()[i] = buf[i].eps;
    out.push_back(std::move(d));
  }
  return out;
}

GroupPoint CoordinateModel::multiply(const GroupPoint& p, const GroupPoint& q) const {
  check_point(p.coords);
  check_point(q.coords);
  const int n = dim();
  auto r = multiply_generic<double>(std::span<const double>(p.coords.data(), n),
                                    std::span<const double>(q.coords.data(), n));
  return {Eigen::Map<Eigen::VectorXd>(r.data(), n)};
}

CoordinateModel exp_model(const NilpotentAlgebra& alg) {
  const int n = alg.dim_total();
  std::vector<Eigen::MatrixXd> slopes;
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int col = 0; col < n; ++col)
      for (int row = 0; row < n; ++row) a(row, col) = 0.5 * alg.c(k, col, row);
    slopes.push_back(std::move(a));
  }
  std::vector<double> product(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        product[(static_cast<std::size_t>(a) * n + b) * n + c] = 0.5 * alg.c(a, b, c);
  return CoordinateModel("exp", alg, std::move(slopes), std::move(product));
}

CoordinateModel nil_polarized_model() {
  std::vector<Eigen::MatrixXd> slopes(3, Eigen::MatrixXd::Zero(3, 3));
  slopes[0](2, 1) = 1.0;  // Y = d/dy + x d/dz
  std::vector<double> product(27, 0.0);
  product[(0 * 3 + 1) * 3 + 2] = 1.0;  // z += x y'
  return CoordinateModel("nil_polarized", heisenberg(1), std::move(slopes), std::move(product));
}

CoordinateModel model_by_name(const std::string& name, const NilpotentAlgebra& alg) {
  if (name == "exp") return exp_model(alg);
  if (name == "nil_polarized") {
    const NilpotentAlgebra nil = heisenberg(1);
    if (alg.dim_total() != 3 || alg.dim_center() != 1 || alg.tensor() != nil.tensor()) {
      throw Error(ErrorCode::Config, "model 'nil_polarized' requires the heisenberg:1 algebra");
    }
    return nil_polarized_model();
  }
  throw Error(ErrorCode::Config, "unknown model '" + name + "' (expected exp | nil_polarized)");
}

namespace {

Eigen::MatrixXd inverse_frame(const Eigen::MatrixXd& f) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(f);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::RankDeficient, "frame field is singular (corrupted model)");
  }
  return lu.inverse();
}

}  // namespace

Eigen::MatrixXd coordinate_metric(const CoordinateModel& model, const Eigen::VectorXd& p) {
  const Eigen::MatrixXd b = inverse_frame(model.frame_field(p));
  return b.transpose() * b;
}

std::vector<Eigen::MatrixXd> christoffels(const CoordinateModel& model,
                                          const Eigen::VectorXd& p) {
  const int n = model.dim();
  const Eigen::MatrixXd b = inverse_frame(model.frame_field(p));
  const Eigen::MatrixXd g = b.transpose() * b;
  const Eigen::MatrixXd ginv = g.inverse();
  const auto df = model.frame_field_derivatives(p);
  std::vector<Eigen::MatrixXd> dg;  // dg[k] = d g / d p_k
  for (int k = 0; k < n; ++k) {
    const Eigen::MatrixXd db = -b * df[k] * b;
    dg.push_back(db.transpose() * b + b.transpose() * db);
  }
  std::vector<Eigen::MatrixXd> gamma(n, Eigen::MatrixXd::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[k](i, j) = 0.5 * s;
      }
  return gamma;
}

}  // namespace nilgauss
