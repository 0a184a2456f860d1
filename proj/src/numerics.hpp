#pragma once

#include <cmath>
#include <vector>

namespace nilgauss::detail {

// Richardson extrapolation of a central-difference estimator whose error is
// a series in h^2. `estimate(h)` may return double, VectorXd or MatrixXd.
template <class F>
auto richardson(F&& estimate, double h, int levels) {
  using Value = decltype(estimate(h));
  if (levels < 1) levels = 1;
  std::vector<std::vector<Value>> table(levels);
  double step = h;
  for (int l = 0; l < levels; ++l, step *= 0.5) {
    table[l].push_back(estimate(step));
    double factor = 4.0;
    for (int k = 1; k <= l; ++k, factor *= 4.0) {
      Value refined = table[l][k - 1] + (table[l][k - 1] - table[l - 1][k - 1]) / (factor - 1.0);
      table[l].push_back(refined);
    }
  }
  return table[levels - 1][levels - 1];
}

}  // namespace nilgauss::detail
