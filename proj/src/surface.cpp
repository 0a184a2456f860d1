#include "nilgauss/surface.hpp"

#include <cmath>
#include <random>

#include "nilgauss/error.hpp"
#include "numerics.hpp"

namespace nilgauss {

bool Box::contains(const Eigen::VectorXd& u, double margin) const {
  if (u.size() != dim()) return false;
  constexpr double slack = 1e-12;
  for (int i = 0; i < dim(); ++i) {
    if (u(i) < bounds[i].first + margin - slack || u(i) > bounds[i].second - margin + slack) {
      return false;
    }
  }
  return true;
}

Eigen::VectorXd Box::center() const {
  Eigen::VectorXd c(dim());
  for (int i = 0; i < dim(); ++i) c(i) = 0.5 * (bounds[i].first + bounds[i].second);
  return c;
}

SurfaceChart::SurfaceChart(std::shared_ptr<const CoordinateModel> model,
                           std::vector<ExpressionTree> coords, Box domain, int orientation,
                           std::string name)
    : model_(std::move(model)),
      coords_(std::move(coords)),
      domain_(std::move(domain)),
      orientation_(orientation),
      name_(std::move(name)) {
  if (!model_) throw Error(ErrorCode::InvalidArgument, "chart needs a model");
  if (static_cast<int>(coords_.size()) != model_->dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "chart needs " + std::to_string(model_->dim()) + " coordinate expressions, got " +
                    std::to_string(coords_.size()));
  }
  if (domain_.dim() != param_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "chart domain must have " + std::to_string(param_dim()) + " axes");
  }
  for (const auto& [lo, hi] : domain_.bounds) {
    if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "chart domain has an empty axis");
  }
  for (const auto& e : coords_) {
    if (e.arity() > param_dim()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "coordinate expression '" + e.source() + "' uses more than " +
                      std::to_string(param_dim()) + " parameters");
    }
  }
  if (orientation_ != 1 && orientation_ != -1) {
    throw Error(ErrorCode::InvalidArgument, "orientation must be +1 or -1");
  }
}

SurfaceChart SurfaceChart::with_orientation(int sign) const {
  return SurfaceChart(model_, coords_, domain_, sign, name_);
}

SurfaceChart SurfaceChart::with_domain(Box domain) const {
  return SurfaceChart(model_, coords_, std::move(domain), orientation_, name_);
}

void SurfaceChart::check_param(const Eigen::VectorXd& u) const {
  if (u.size() != param_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "parameter point has length " +
                                                  std::to_string(u.size()) + ", chart needs " +
                                                  std::to_string(param_dim()));
  }
}

Eigen::VectorXd SurfaceChart::point(const Eigen::VectorXd& u) const {
  check_param(u);
  const int dim = model_->dim();
  Eigen::VectorXd p(dim);
  const std::span<const double> params(u.data(), u.size());
  for (int c = 0; c < dim; ++c) p(c) = coords_[c].evaluate<double>(params);
  if (!p.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "chart '" + name_ + "' is not finite at this point");
  }
  return p;
}

ChartJet SurfaceChart::jet(const Eigen::VectorXd& u, bool with_second) const {
  const int dim = model_->dim();
  const int n = param_dim();
  ChartJet jet;
  jet.value = point(u);
  jet.first.resize(dim, n);
  std::vector<Dual<double>> d1(n);
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < n; ++i) d1[i] = Dual<double>(u(i), i == a ? 1.0 : 0.0);
    for (int c = 0; c < dim; ++c) {
      jet.first(c, a) = coords_[c].evaluate<Dual<double>>(d1).eps;
    }
  }
  if (with_second) {
    jet.second.assign(dim, Eigen::MatrixXd::Zero(n, n));
    using D2 = Dual<Dual<double>>;
    std::vector<D2> d2(n);
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b) {
        for (int i = 0; i < n; ++i) {
          d2[i] = D2(Dual<double>(u(i), i == b ? 1.0 : 0.0), Dual<double>(i == a ? 1.0 : 0.0, 0.0));
        }
        for (int c = 0; c < dim; ++c) {
          const double h = coords_[c].evaluate<D2>(d2).eps.eps;
          jet.second[c](a, b) = h;
          jet.second[c](b, a) = h;
        }
      }
    }
  }
  if (!jet.first.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "chart '" + name_ + "' derivative is not finite");
  }
  return jet;
}

namespace {

void check_immersion(const Eigen::MatrixXd& jacobian) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jacobian);
  const auto& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  if (!(smallest > kImmersionRankTol)) {
    throw Error(ErrorCode::RankDeficient,
                "chart Jacobian is rank deficient (smallest singular value " +
                    std::to_string(smallest) + ")");
  }
}

Eigen::MatrixXd to_algebra(const CoordinateModel& model, const Eigen::VectorXd& p,
                           const Eigen::MatrixXd& coordinate_vectors) {
  return model.frame_field(p).partialPivLu().solve(coordinate_vectors);
}

AlgebraVector normal_from_tangents(const Eigen::MatrixXd& t, int orientation) {
  const int dim = static_cast<int>(t.rows());
  AlgebraVector g(dim);
  Eigen::MatrixXd minor(dim - 1, dim - 1);
  for (int k = 0; k < dim; ++k) {
    for (int r = 0, mr = 0; r < dim; ++r) {
      if (r == k) continue;
      minor.row(mr++) = t.row(r);
    }
    // Cofactor of entry (k, last) in [T | e_k].
    const double sign = ((k + dim - 1) % 2 == 0) ? 1.0 : -1.0;
    g(k) = sign * minor.determinant();
  }
  return orientation * g / g.norm();
}

}  // namespace

Eigen::MatrixXd algebra_tangents(const SurfaceChart& chart, const Eigen::VectorXd& u) {
  const ChartJet jet = chart.jet(u, false);
  check_immersion(jet.first);
  return to_algebra(chart.model(), jet.value, jet.first);
}

AlgebraVector gauss_map(const SurfaceChart& chart, const Eigen::VectorXd& u) {
  return normal_from_tangents(algebra_tangents(chart, u), chart.orientation());
}

Eigen::MatrixXd induced_metric(const SurfaceChart& chart, const Eigen::VectorXd& u) {
  const Eigen::MatrixXd t = algebra_tangents(chart, u);
  return t.transpose() * t;
}

Eigen::MatrixXd second_fundamental_form(const SurfaceChart& chart, const Eigen::VectorXd& u) {
  const ChartJet jet = chart.jet(u, true);
  check_immersion(jet.first);
  const CoordinateModel& model = chart.model();
  const int dim = model.dim();
  const int n = chart.param_dim();
  const Eigen::MatrixXd t = to_algebra(model, jet.value, jet.first);
  const AlgebraVector g = normal_from_tangents(t, chart.orientation());
  const auto gamma = christoffels(model, jet.value);
  const Eigen::MatrixXd b_inv = model.frame_field(jet.value).inverse();

  Eigen::MatrixXd second(n, n);
  Eigen::VectorXd acc(dim);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int k = 0; k < dim; ++k) {
        acc(k) = jet.second[k](a, b) + jet.first.col(a).dot(gamma[k] * jet.first.col(b));
      }
      second(a, b) = (b_inv * acc).dot(g);
    }
  }
  return second;
}

double mean_curvature(const SurfaceChart& chart, const Eigen::VectorXd& u) {
  const Eigen::MatrixXd metric = induced_metric(chart, u);
  const Eigen::MatrixXd second = second_fundamental_form(chart, u);
  return metric.ldlt().solve(second).trace() / chart.param_dim();
}

Eigen::VectorXd chart_direction(const SurfaceChart& chart, const Eigen::VectorXd& u,
                                const AlgebraVector& y) {
  const Eigen::MatrixXd t = algebra_tangents(chart, u);
  if (y.size() != t.rows()) throw Error(ErrorCode::DimensionMismatch, "tangent vector length");
  const Eigen::VectorXd w = t.colPivHouseholderQr().solve(y);
  const double residual = (t * w - y).norm();
  if (residual > 1e-8 * std::max(1.0, y.norm())) {
    throw Error(ErrorCode::WrongFrame,
                "vector is not tangent to the hypersurface (residual " + std::to_string(residual) +
                    ")");
  }
  return w;
}

Eigen::MatrixXd AdaptedFrame::matrix() const {
  Eigen::MatrixXd m(ys.front().size(), static_cast<Eigen::Index>(ys.size()));
  for (std::size_t i = 0; i < ys.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = ys[i];
  return m;
}

double AdaptedFrame::gram_residual() const {
  const Eigen::MatrixXd m = matrix();
  return (m.transpose() * m - Eigen::MatrixXd::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff();
}

namespace {

// Candidate start vectors for completing a subspace occupying coordinates
// [offset, offset + count): basis vectors in index order, or seeded random
// vectors.
class StartVectors {
 public:
  StartVectors(int dim, int offset, int count, std::optional<std::uint64_t> seed)
      : dim_(dim), offset_(offset), count_(count) {
    if (seed) rng_.emplace(*seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(offset + 1));
  }

  // Gram-Schmidt the next candidates against `against` until one survives.
  AlgebraVector next(const std::vector<AlgebraVector>& against) {
    for (int attempt = 0; attempt < 4 * count_ + 8; ++attempt) {
      AlgebraVector v = AlgebraVector::Zero(dim_);
      if (rng_) {
        std::normal_distribution<double> normal;
        for (int i = 0; i < count_; ++i) v(offset_ + i) = normal(*rng_);
      } else {
        if (index_ >= count_) break;
        v(offset_ + index_++) = 1.0;
      }
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& w : against) v -= v.dot(w) * w;
      const double norm = v.norm();
      if (norm > 1e-6) return v / norm;
    }
    throw Error(ErrorCode::InvalidArgument, "could not complete the adapted frame");
  }

 private:
  int dim_;
  int offset_;
  int count_;
  int index_ = 0;
  std::optional<std::mt19937_64> rng_;
};

}  // namespace

AdaptedFrame adapted_frame(const NilpotentAlgebra& alg, const AlgebraVector& normal,
                           const FrameOptions& options) {
  const int dim = alg.dim_total();
  const int n = dim - 1;
  const int q = alg.dim_v();
  const int l = alg.dim_center();
  if (normal.size() != dim) throw Error(ErrorCode::DimensionMismatch, "normal has wrong length");
  if (std::abs(normal.norm() - 1.0) > 1e-8) {
    throw Error(ErrorCode::InvalidArgument, "adapted frame needs a unit normal");
  }
  const FrameKind kind = options.kind.value_or(
      (l == 1 && q % 2 == 0 && is_heisenberg_type(alg)) ? FrameKind::Heisenberg
                                                        : FrameKind::Generic);
  if (kind == FrameKind::Heisenberg && (l != 1 || q % 2 != 0 || !is_heisenberg_type(alg))) {
    throw Error(ErrorCode::WrongAlgebra, "Heisenberg frame needs a Heisenberg algebra");
  }

  AdaptedFrame f;
  f.kind = kind;
  f.q = q;
  f.n = n;
  f.x_normal = alg.v_part(normal);
  f.z_normal = alg.z_part(normal);
  const double a = f.x_normal.norm();
  const double b = f.z_normal.norm();
  const double tol = options.degenerate_tol;

  StartVectors v_start(dim, 0, q, options.completion_seed);
  StartVectors z_start(dim, q, l, options.completion_seed);
  f.x_hat = a > tol ? AlgebraVector(f.x_normal / a) : v_start.next({});
  f.z_hat = b > tol ? AlgebraVector(f.z_normal / b) : z_start.next({});
  const AlgebraVector xq = b * f.x_hat;
  const AlgebraVector zq = a * f.z_hat;
  f.lambda = b > tol ? a / b : 0.0;
  f.mu = a > tol ? b / a : 0.0;

  if (kind == FrameKind::Heisenberg) {
    const int m = q / 2;
    auto J = [&](const AlgebraVector& x) { return alg.j_raw(f.z_hat, x); };
    const AlgebraVector xm = -J(f.x_hat);  // J X_m = x_hat
    std::vector<AlgebraVector> used = {f.x_hat, xm};
    std::vector<AlgebraVector> lower, upper;
    for (int i = 1; i < m; ++i) {
      const AlgebraVector xi = v_start.next(used);
      const AlgebraVector xmi = J(xi);
      used.push_back(xi);
      used.push_back(xmi);
      lower.push_back(xi);
      upper.push_back(xmi);
    }
    f.xs = lower;
    f.xs.push_back(xm);
    f.xs.insert(f.xs.end(), upper.begin(), upper.end());
    f.xs.push_back(xq);
    f.zs = {zq};
  } else {
    std::vector<AlgebraVector> used = {f.x_hat};
    for (int i = 1; i < q; ++i) {
      used.push_back(v_start.next(used));
      f.xs.push_back(used.back());
    }
    f.xs.push_back(xq);
    f.zs = {zq};
    std::vector<AlgebraVector> zused = {f.z_hat};
    for (int i = 1; i < l; ++i) {
      zused.push_back(z_start.next(zused));
      f.zs.push_back(zused.back());
    }
  }

  for (int i = 0; i < q - 1; ++i) f.ys.push_back(f.xs[i]);
  f.ys.push_back(xq - zq);
  for (int i = 1; i < l; ++i) f.ys.push_back(f.zs[i]);
  f.ys.push_back(normal);
  return f;
}

std::vector<AlgebraVector> central_tangents(const AdaptedFrame& frame, double tol) {
  std::vector<AlgebraVector> out;
  if (frame.x(frame.q).norm() <= tol) out.push_back(frame.y(frame.q));
  for (int k = frame.q + 1; k <= frame.n; ++k) out.push_back(frame.y(k));
  return out;
}

ShapeData shape_data(const SurfaceChart& chart, const Eigen::VectorXd& u,
                     const AdaptedFrame& frame) {
  const AlgebraVector g = gauss_map(chart, u);
  if (frame.n != chart.param_dim() || std::abs(frame.normal().dot(g) - 1.0) > 1e-8) {
    throw Error(ErrorCode::WrongFrame, "adapted frame was not built from this Gauss map");
  }
  const int n = frame.n;
  Eigen::MatrixXd w(n, n);
  for (int i = 1; i <= n; ++i) w.row(i - 1) = chart_direction(chart, u, frame.y(i)).transpose();
  const Eigen::MatrixXd second = second_fundamental_form(chart, u);
  ShapeData s;
  s.b = w * second * w.transpose();
  s.symmetry_defect = (s.b - s.b.transpose()).cwiseAbs().maxCoeff();
  s.H = s.b.trace() / n;
  s.norm_b2 = s.b.squaredNorm();
  return s;
}

Eigen::VectorXd chart_directional_derivative(const Box& domain, const Eigen::VectorXd& u,
                                             const VectorField& field, const Eigen::VectorXd& w,
                                             const FdOptions& fd) {
  const double len = w.norm();
  if (len == 0.0) return Eigen::VectorXd::Zero(field(u).size());
  const Eigen::VectorXd dir = w / len;
  const double h = fd.base_step;
  if (!domain.contains(u + h * dir) || !domain.contains(u - h * dir)) {
    throw Error(ErrorCode::BoundaryProximity,
                "finite-difference stencil leaves the chart domain");
  }
  auto estimate = [&](double step) -> Eigen::VectorXd {
    return (field(u + step * dir) - field(u - step * dir)) / (2.0 * step);
  };
  return len * detail::richardson(estimate, h, fd.levels);
}

double frame_directional_derivative(const SurfaceChart& chart, const Eigen::VectorXd& u,
                                    const ScalarField& field, const AlgebraVector& y,
                                    const FdOptions& fd) {
  const Eigen::VectorXd w = chart_direction(chart, u, y);
  const VectorField wrapped = [&](const Eigen::VectorXd& v) {
    return Eigen::VectorXd::Constant(1, field(v));
  };
  return chart_directional_derivative(chart.domain(), u, wrapped, w, fd)(0);
}

Eigen::VectorXd laplace_beltrami(const SurfaceChart& chart, const Eigen::VectorXd& u,
                                 const VectorField& field, const FdOptions& fd) {
  const int n = chart.param_dim();
  const double h = fd.base_step;
  if (!chart.domain().contains(u, h)) {
    throw Error(ErrorCode::BoundaryProximity,
                "Laplace-Beltrami stencil leaves the chart domain");
  }
  const Eigen::MatrixXd metric = induced_metric(chart, u);
  const Eigen::MatrixXd metric_inv = metric.inverse();
  const double sqrt_det = std::sqrt(metric.determinant());
  auto weighted_inverse = [&](const Eigen::VectorXd& v) -> Eigen::MatrixXd {
    const Eigen::MatrixXd g = induced_metric(chart, v);
    return std::sqrt(g.determinant()) * g.inverse();
  };
  auto unit = [&](int i) { return Eigen::VectorXd::Unit(n, i); };

  const Eigen::VectorXd f0 = field(u);
  const auto m = f0.size();
  Eigen::VectorXd result = Eigen::VectorXd::Zero(m);
  std::vector<Eigen::VectorXd> gradient(n);
  Eigen::VectorXd divergence = Eigen::VectorXd::Zero(n);  // sum_i d_i (sqrt g g^ij)

  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd ei = unit(i);
    gradient[i] = detail::richardson(
        [&](double s) -> Eigen::VectorXd { return (field(u + s * ei) - field(u - s * ei)) / (2 * s); },
        h, fd.levels);
    const Eigen::MatrixXd dw = detail::richardson(
        [&](double s) -> Eigen::MatrixXd {
          return (weighted_inverse(u + s * ei) - weighted_inverse(u - s * ei)) / (2 * s);
        },
        h, fd.levels);
    divergence += dw.row(i).transpose();
  }
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd ei = unit(i);
    const Eigen::VectorXd dii = detail::richardson(
        [&](double s) -> Eigen::VectorXd {
          return (field(u + s * ei) - 2.0 * f0 + field(u - s * ei)) / (s * s);
        },
        h, fd.levels);
    result += metric_inv(i, i) * dii;
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd ej = unit(j);
      const Eigen::VectorXd dij = detail::richardson(
          [&](double s) -> Eigen::VectorXd {
            return (field(u + s * ei + s * ej) - field(u + s * ei - s * ej) -
                    field(u - s * ei + s * ej) + field(u - s * ei - s * ej)) /
                   (4 * s * s);
          },
          h, fd.levels);
      result += 2.0 * metric_inv(i, j) * dij;
    }
  }
  for (int j = 0; j < n; ++j) result += divergence(j) / sqrt_det * gradient[j];
  return result;
}

PointSample sample_point(const SurfaceChart& chart, const Eigen::VectorXd& u,
                         const FrameOptions& frame_options, const FdOptions& fd) {
  PointSample s;
  s.u = u;
  s.gauss = gauss_map(chart, u);
  s.frame = adapted_frame(chart.algebra(), s.gauss, frame_options);
  s.shape = shape_data(chart, u, s.frame);
  const int n = chart.param_dim();
  const ScalarField n_h = [&](const Eigen::VectorXd& v) { return n * mean_curvature(chart, v); };
  for (int k = 1; k <= n; ++k) {
    s.dH.push_back(frame_directional_derivative(chart, u, n_h, s.frame.y(k), fd));
  }
  return s;
}

}  // namespace nilgauss
