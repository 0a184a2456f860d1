#include "nilgauss/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <utility>

#include "nilgauss/error.hpp"

namespace nilgauss {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::NotInSubspace: return "input not in required subspace";
    case ErrorCode::RankDeficient: return "rank-deficient Jacobian";
    case ErrorCode::BoundaryProximity: return "too close to domain boundary";
    case ErrorCode::WrongAlgebra: return "wrong algebra";
    case ErrorCode::WrongFrame: return "wrong frame";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Config: return "configuration error";
  }
  return "unknown";
}

NilpotentAlgebra::NilpotentAlgebra(int dim_total, int dim_center, std::vector<double> tensor)
    : dim_total_(dim_total), dim_center_(dim_center), tensor_(std::move(tensor)) {
  if (dim_total < 2 || dim_center < 1 || dim_center >= dim_total) {
    throw Error(ErrorCode::InvalidArgument,
                "algebra needs 1 <= dim_center < dim_total, got dim_total=" +
                    std::to_string(dim_total) + " dim_center=" + std::to_string(dim_center));
  }
  const auto n = static_cast<std::size_t>(dim_total);
  if (tensor_.size() != n * n * n) {
    throw Error(ErrorCode::DimensionMismatch, "bracket tensor must have dim_total^3 entries");
  }
}

NilpotentAlgebra NilpotentAlgebra::from_brackets(int dim_total, int dim_center,
                                                 const std::vector<BracketEntry>& entries) {
  if (dim_total < 2) {
    throw Error(ErrorCode::InvalidArgument, "dim_total must be at least 2");
  }
  const auto n = static_cast<std::size_t>(dim_total);
  std::vector<double> t(n * n * n, 0.0);
  std::set<std::pair<int, int>> seen_pairs;
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& e : entries) {
    if (e.i < 1 || e.j < 1 || e.k < 1 || e.i > dim_total || e.j > dim_total || e.k > dim_total) {
      throw Error(ErrorCode::InvalidArgument, "bracket index out of range 1.." +
                                                  std::to_string(dim_total));
    }
    if (e.i >= e.j) {
      throw Error(ErrorCode::InvalidArgument,
                  "bracket entries must have i < j (got i=" + std::to_string(e.i) +
                      ", j=" + std::to_string(e.j) + ")");
    }
    if (!seen.insert({e.i, e.j, e.k}).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate bracket entry (" + std::to_string(e.i) +
                                                  "," + std::to_string(e.j) + "," +
                                                  std::to_string(e.k) + ")");
    }
    const std::size_t i = e.i - 1, j = e.j - 1, k = e.k - 1;
    t[(i * n + j) * n + k] = e.c;
    t[(j * n + i) * n + k] = -e.c;
  }
  return NilpotentAlgebra(dim_total, dim_center, std::move(t));
}

AlgebraVector NilpotentAlgebra::basis(int index) const {
  if (index < 0 || index >= dim_total_) {
    throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  }
  AlgebraVector e = AlgebraVector::Zero(dim_total_);
  e(index) = 1.0;
  return e;
}

void NilpotentAlgebra::check_length(const AlgebraVector& x, const char* what) const {
  if (x.size() != dim_total_) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has length " +
                                                  std::to_string(x.size()) + ", expected " +
                                                  std::to_string(dim_total_));
  }
}

AlgebraVector NilpotentAlgebra::v_part(const AlgebraVector& x) const {
  check_length(x, "vector");
  AlgebraVector out = AlgebraVector::Zero(dim_total_);
  out.head(dim_v()) = x.head(dim_v());
  return out;
}

AlgebraVector NilpotentAlgebra::z_part(const AlgebraVector& x) const {
  check_length(x, "vector");
  AlgebraVector out = AlgebraVector::Zero(dim_total_);
  out.tail(dim_center_) = x.tail(dim_center_);
  return out;
}

AlgebraVector NilpotentAlgebra::bracket(const AlgebraVector& x, const AlgebraVector& y) const {
  check_length(x, "x");
  check_length(y, "y");
  AlgebraVector out = AlgebraVector::Zero(dim_total_);
  for (int i = 0; i < dim_total_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim_total_; ++j) {
      const double xy = x(i) * y(j);
      if (xy == 0.0) continue;
      for (int k = 0; k < dim_total_; ++k) out(k) += xy * c(i, j, k);
    }
  }
  return out;
}

AlgebraVector NilpotentAlgebra::j_raw(const AlgebraVector& z, const AlgebraVector& x) const {
  check_length(z, "z");
  check_length(x, "x");
  const int q = dim_v();
  AlgebraVector out = AlgebraVector::Zero(dim_total_);
  for (int i = 0; i < q; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < q; ++j) {
      double s = 0.0;
      for (int k = q; k < dim_total_; ++k) s += c(i, j, k) * z(k);
      out(j) += x(i) * s;
    }
  }
  return out;
}

AlgebraVector NilpotentAlgebra::j_apply(const AlgebraVector& z, const AlgebraVector& x,
                                        double tol) const {
  check_length(z, "z");
  check_length(x, "x");
  const double z_leak = z.head(dim_v()).cwiseAbs().maxCoeff();
  const double x_leak = x.tail(dim_center_).cwiseAbs().maxCoeff();
  if (z_leak > tol) {
    throw Error(ErrorCode::NotInSubspace, "J(z) requires z in the center");
  }
  if (x_leak > tol) {
    throw Error(ErrorCode::NotInSubspace, "J(z)x requires x in the complement V");
  }
  return j_raw(z, x);
}

Eigen::MatrixXd NilpotentAlgebra::j_matrix(const AlgebraVector& z) const {
  check_length(z, "z");
  const int q = dim_v();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(q, q);
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      double s = 0.0;
      for (int k = q; k < dim_total_; ++k) s += c(i, j, k) * z(k);
      m(j, i) = s;  // column i is J(z) e_i
    }
  }
  return m;
}

bool ValidationReport::has(const std::string& invariant) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.invariant == invariant; });
}

ValidationReport validate(const NilpotentAlgebra& alg, double tol) {
  const int n = alg.dim_total();
  const int q = alg.dim_v();
  double antisym = 0.0, leak_v = 0.0, central = 0.0, largest = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double v = alg.c(i, j, k);
        antisym = std::max(antisym, std::abs(v + alg.c(j, i, k)));
        largest = std::max(largest, std::abs(v));
        if (k < q) leak_v = std::max(leak_v, std::abs(v));
        if (i >= q || j >= q) central = std::max(central, std::abs(v));
      }
    }
  }
  ValidationReport report;
  if (antisym > tol) report.violations.push_back({kAntisymmetry, antisym});
  if (leak_v > tol) report.violations.push_back({kBracketInCenter, leak_v});
  if (central > tol) report.violations.push_back({kCenterCentral, central});
  if (largest <= tol) report.violations.push_back({kNonAbelian, largest});

  // v in V commutes with all of V iff J(Z_k) v = 0 for every central basis Z_k.
  Eigen::MatrixXd stacked(q * alg.dim_center(), q);
  for (int k = 0; k < alg.dim_center(); ++k) {
    stacked.block(k * q, 0, q, q) = alg.j_matrix(alg.basis(q + k));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  const double smallest = svd.singularValues()(q - 1);
  if (smallest <= tol) report.violations.push_back({kTrueCenter, smallest});
  return report;
}

bool is_heisenberg_type(const NilpotentAlgebra& alg, double tol) {
  const int q = alg.dim_v();
  const int l = alg.dim_center();
  auto satisfies = [&](const AlgebraVector& z) {
    const Eigen::MatrixXd j = alg.j_matrix(z);
    const Eigen::MatrixXd defect = j * j + z.squaredNorm() * Eigen::MatrixXd::Identity(q, q);
    return defect.cwiseAbs().maxCoeff() <= tol;
  };
  for (int a = 0; a < l; ++a) {
    if (!satisfies(alg.basis(q + a))) return false;
    for (int b = a + 1; b < l; ++b) {
      if (!satisfies(alg.basis(q + a) + alg.basis(q + b))) return false;
    }
  }
  return true;
}

NilpotentAlgebra heisenberg(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "heisenberg(m) needs m >= 1");
  std::vector<BracketEntry> entries;
  for (int i = 1; i <= m; ++i) entries.push_back({i, m + i, 2 * m + 1, 1.0});
  return NilpotentAlgebra::from_brackets(2 * m + 1, 1, entries);
}

NilpotentAlgebra quaternionic_heisenberg() {
  // Left multiplication by i, j, k on H = span(1, i, j, k).
  const int li[4][4] = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
  const int lj[4][4] = {{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
  int lk[4][4] = {};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int s = 0; s < 4; ++s) lk[r][c] += li[r][s] * lj[s][c];
  const int (*mats[3])[4] = {li, lj, lk};
  std::vector<BracketEntry> entries;
  for (int a = 0; a < 3; ++a) {
    for (int x = 0; x < 4; ++x) {
      for (int y = x + 1; y < 4; ++y) {
        // <[e_x, e_y], Z_a> = <J(Z_a) e_x, e_y>
        const int v = mats[a][y][x];
        if (v != 0) entries.push_back({x + 1, y + 1, 5 + a, static_cast<double>(v)});
      }
    }
  }
  return NilpotentAlgebra::from_brackets(7, 3, entries);
}

NilpotentAlgebra heisenberg_plus_abelian(int m, int extra) {
  if (m < 1 || extra < 0) throw Error(ErrorCode::InvalidArgument, "bad heisenberg_plus_abelian");
  std::vector<BracketEntry> entries;
  const int total = 2 * m + extra + 1;
  for (int i = 1; i <= m; ++i) entries.push_back({i, m + i, total, 1.0});
  return NilpotentAlgebra::from_brackets(total, 1, entries);
}

namespace {

NilpotentAlgebra builtin_algebra(const std::string& name, int m) {
  if (name == "heisenberg") return heisenberg(m);
  if (name == "nil") return heisenberg(1);
  if (name == "quaternionic") return quaternionic_heisenberg();
  throw Error(ErrorCode::Config, "unknown built-in algebra '" + name + "'");
}

}  // namespace

NilpotentAlgebra algebra_from_json(const nlohmann::json& doc) {
  try {
    if (doc.is_string()) {
      const std::string s = doc.get<std::string>();
      const auto colon = s.find(':');
      if (colon == std::string::npos) return builtin_algebra(s, 1);
      const std::string arg = s.substr(colon + 1);
      std::size_t used = 0;
      const int m = std::stoi(arg, &used);
      if (used != arg.size()) throw Error(ErrorCode::Config, "bad algebra name '" + s + "'");
      return builtin_algebra(s.substr(0, colon), m);
    }
    if (!doc.is_object()) throw Error(ErrorCode::Config, "algebra must be a string or object");
    if (doc.contains("builtin")) {
      return builtin_algebra(doc.at("builtin").get<std::string>(), doc.value("m", 1));
    }
    std::vector<BracketEntry> entries;
    for (const auto& e : doc.at("brackets")) {
      entries.push_back({e.at("i").get<int>(), e.at("j").get<int>(), e.at("k").get<int>(),
                         e.at("c").get<double>()});
    }
    return NilpotentAlgebra::from_brackets(doc.at("dim_total").get<int>(),
                                           doc.at("dim_center").get<int>(), entries);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Config, std::string("algebra document: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::Config, "algebra name has a non-numeric parameter");
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::Config, "algebra name parameter out of range");
  }
}

nlohmann::json algebra_to_json(const NilpotentAlgebra& alg) {
  nlohmann::json brackets = nlohmann::json::array();
  for (int i = 0; i < alg.dim_total(); ++i)
    for (int j = i + 1; j < alg.dim_total(); ++j)
      for (int k = 0; k < alg.dim_total(); ++k)
        if (alg.c(i, j, k) != 0.0)
          brackets.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"c", alg.c(i, j, k)}});
  return {{"dim_total", alg.dim_total()},
          {"dim_center", alg.dim_center()},
          {"brackets", brackets}};
}

nlohmann::json to_json(const ValidationReport& report) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : report.violations) {
    v.push_back({{"invariant", x.invariant}, {"magnitude", x.magnitude}});
  }
  return {{"ok", report.ok()}, {"violations", v}};
}

}  // namespace nilgauss
