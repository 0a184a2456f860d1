#include "nilgauss/laplacian.hpp"

#include <cmath>

#include "nilgauss/error.hpp"
#include "nilgauss/geometry.hpp"

namespace nilgauss {

const char* to_string(Method method) {
  switch (method) {
    case Method::General: return "general";
    case Method::HType: return "h_type";
    case Method::Heisenberg: return "heisenberg";
    case Method::NumericOracle: return "numeric_oracle";
  }
  return "?";
}

Method method_from_string(const std::string& name) {
  for (Method m : {Method::General, Method::HType, Method::Heisenberg, Method::NumericOracle}) {
    if (name == to_string(m)) return m;
  }
  throw Error(ErrorCode::Config, "unknown method '" + name + "'");
}

void LaplacianReport::finalize() {
  if (!terms.empty()) {
    coeffs = Eigen::VectorXd::Zero(terms.front().values.size());
    for (const auto& t : terms) coeffs += t.values;
  }
  const auto last = coeffs.size() - 1;
  normal_coeff = coeffs(last);
  tangential_norm = coeffs.head(last).norm();
}

namespace {

void check_inputs(const NilpotentAlgebra& alg, const AdaptedFrame& frame, const ShapeData& shape,
                  const std::vector<double>& dH) {
  const int n = frame.n;
  if (alg.dim_total() != n + 1 || frame.q != alg.dim_v()) {
    throw Error(ErrorCode::DimensionMismatch, "frame does not match the algebra");
  }
  if (shape.b.rows() != n || shape.b.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "shape data does not match the frame");
  }
  if (static_cast<int>(dH.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "need " + std::to_string(n) + " derivatives of nH, got " + std::to_string(dH.size()));
  }
}

struct Terms {
  std::vector<LaplacianTerm> list;
  int size;

  explicit Terms(int size) : size(size) {}
  Eigen::VectorXd& operator[](const std::string& name) {
    for (auto& t : list)
      if (t.name == name) return t.values;
    list.push_back({name, Eigen::VectorXd::Zero(size)});
    return list.back().values;
  }
};

// Shared pieces of the closed forms, with 1-based frame indices.
struct Context {
  const NilpotentAlgebra& alg;
  const AdaptedFrame& f;
  const ShapeData& s;
  int n;
  int q;

  Context(const NilpotentAlgebra& alg, const AdaptedFrame& f, const ShapeData& s)
      : alg(alg), f(f), s(s), n(f.n), q(f.q) {}

  double b(int i, int j) const { return s.b(i - 1, j - 1); }
  AlgebraVector J(const AlgebraVector& z, const AlgebraVector& x) const { return alg.j_raw(z, x); }

  // -2 sum b_ij <J(Z_j) X_i, v> + 2 sum b_iq <J(Z_q) X_i, v>
  double shape_terms(const AlgebraVector& v) const {
    double acc = 0.0;
    for (int i = 1; i <= q; ++i) {
      for (int j = q + 1; j <= n; ++j) acc -= 2.0 * b(i, j) * J(f.z(j), f.x(i)).dot(v);
      acc += 2.0 * b(i, q) * J(f.z(q), f.x(i)).dot(v);
    }
    return acc;
  }

  double bracket_terms(const AlgebraVector& v) const {
    double acc = 0.0;
    for (int j = 1; j <= q - 1; ++j) {
      acc += J(alg.bracket(v, f.x(j)), f.x(j)).dot(f.x_normal);
    }
    return acc;
  }

  double curvature_term(const AlgebraVector& v) const {
    return 4.0 * curvature(alg, v, f.z_normal, f.z_normal).dot(f.x_normal);
  }

  double mean_term(const AlgebraVector& v) const {
    return n * s.H * J(f.z_normal, f.x_normal).dot(v);
  }
};

}  // namespace

LaplacianReport laplacian_general(const NilpotentAlgebra& alg, const AdaptedFrame& frame,
                                  const ShapeData& shape, const std::vector<double>& dH) {
  check_inputs(alg, frame, shape, dH);
  const Context c(alg, frame, shape);
  const int n = c.n;
  Terms t(n + 1);
  for (int k = 1; k <= n; ++k) t["y_nH"](k - 1) = -dH[k - 1];
  for (int k = 1; k <= c.q; ++k) {
    const AlgebraVector& xk = frame.x(k);
    t["bracket_J"](k - 1) = c.bracket_terms(xk);
    t["curvature"](k - 1) = c.curvature_term(xk);
    t["shape_J"](k - 1) = c.shape_terms(xk);
    t["mean_J"](k - 1) = c.mean_term(xk);
  }
  const AlgebraVector& xn = frame.x_normal;
  t["bracket_J"](n) = c.bracket_terms(xn);
  t["curvature"](n) = c.curvature_term(xn);
  t["shape_J"](n) = c.shape_terms(xn);
  t["norm_ricci"](n) = -shape.norm_b2 - ricci(alg, frame.normal(), frame.normal());

  LaplacianReport r;
  r.method = Method::General;
  r.terms = std::move(t.list);
  r.finalize();
  return r;
}

LaplacianReport laplacian_h_type(const NilpotentAlgebra& alg, const AdaptedFrame& frame,
                                 const ShapeData& shape, const std::vector<double>& dH) {
  check_inputs(alg, frame, shape, dH);
  if (!is_heisenberg_type(alg)) throw Error(ErrorCode::WrongAlgebra, "algebra is not of Heisenberg type");
  const Context c(alg, frame, shape);
  const int n = c.n;
  const int q = c.q;
  const double a = frame.x_norm();
  const double bz = frame.z_norm();
  Terms t(n + 1);
  for (int k = 1; k <= n; ++k) t["y_nH"](k - 1) = -dH[k - 1];
  for (int k = 1; k <= q; ++k) {
    t["shape_J"](k - 1) = c.shape_terms(frame.x(k));
    t["mean_J"](k - 1) = c.mean_term(frame.x(k));
  }
  t["frame"](q - 1) = bz * a * (q - n - 1 + bz * bz);
  t["shape_J"](n) = c.shape_terms(frame.x_normal);
  t["norm_ricci"](n) = -shape.norm_b2 - 0.25 * q * bz * bz + a * a * (0.5 * (q - n - 1) + bz * bz);

  LaplacianReport r;
  r.method = Method::HType;
  r.terms = std::move(t.list);
  r.finalize();
  return r;
}

LaplacianReport laplacian_heisenberg(const NilpotentAlgebra& alg, const AdaptedFrame& frame,
                                     const ShapeData& shape, const std::vector<double>& dH) {
  check_inputs(alg, frame, shape, dH);
  if (alg.dim_center() != 1 || alg.dim_v() % 2 != 0 || !is_heisenberg_type(alg)) {
    throw Error(ErrorCode::WrongAlgebra, "algebra is not a Heisenberg algebra");
  }
  if (frame.kind != FrameKind::Heisenberg) {
    throw Error(ErrorCode::WrongFrame, "Heisenberg form needs the special J-basis frame");
  }
  const Context c(alg, frame, shape);
  const int m = c.q / 2;
  const double a = frame.x_norm();
  const double bz = frame.z_norm();
  const double twomH = 2.0 * m * shape.H;
  Terms t(2 * m + 1);
  for (int k = 1; k <= 2 * m; ++k) t["y_nH"](k - 1) = -dH[k - 1];
  for (int k = 1; k <= m - 1; ++k) {
    t["shape"](k - 1) = -2.0 * c.b(2 * m, m + k) * a;
    t["shape"](m + k - 1) = 2.0 * c.b(2 * m, k) * a;
  }
  t["mean"](m - 1) = -twomH * a * bz;
  t["shape"](m - 1) = -2.0 * c.b(2 * m, 2 * m) * a * bz;
  t["frame"](2 * m - 1) = -a * a * a * bz;
  t["shape"](2 * m - 1) = 2.0 * c.b(2 * m, m) * a * bz;
  t["norm_ricci"](2 * m) =
      -(shape.norm_b2 + 0.5 * m * bz * bz - 0.5 * a * a + a * a * a * a);
  t["shape"](2 * m) = 2.0 * c.b(2 * m, m) * a * a;

  LaplacianReport r;
  r.method = Method::Heisenberg;
  r.terms = std::move(t.list);
  r.finalize();
  return r;
}

LaplacianReport laplacian_closed_form(Method method, const NilpotentAlgebra& alg,
                                      const PointSample& sample) {
  switch (method) {
    case Method::General: return laplacian_general(alg, sample.frame, sample.shape, sample.dH);
    case Method::HType: return laplacian_h_type(alg, sample.frame, sample.shape, sample.dH);
    case Method::Heisenberg:
      return laplacian_heisenberg(alg, sample.frame, sample.shape, sample.dH);
    case Method::NumericOracle: break;
  }
  throw Error(ErrorCode::InvalidArgument, "numeric oracle is not a closed form");
}

LaplacianReport laplacian_numeric(const SurfaceChart& chart, const Eigen::VectorXd& u,
                                  const AdaptedFrame& frame, const FdOptions& fd) {
  const VectorField g = [&](const Eigen::VectorXd& v) { return gauss_map(chart, v); };
  const Eigen::VectorXd lap = laplace_beltrami(chart, u, g, fd);
  LaplacianReport r;
  r.method = Method::NumericOracle;
  r.terms.push_back({"oracle", frame.matrix().transpose() * lap});
  r.finalize();
  return r;
}

HarmonicityVerdict harmonicity(const LaplacianReport& report, double tol) {
  HarmonicityVerdict v;
  v.defect = report.tangential_norm;
  v.harmonic = v.defect < tol;
  v.energy_coeff = report.normal_coeff;
  return v;
}

}  // namespace nilgauss
