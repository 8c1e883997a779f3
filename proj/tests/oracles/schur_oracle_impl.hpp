#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

namespace oracle {

template <class F>
double nelder_mead(F&& f, Eigen::VectorXd& x, double step, int max_evals) {
  const int n = static_cast<int>(x.size());
  std::vector<Eigen::VectorXd> pts(n + 1, x);
  std::vector<double> vals(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1](i) += step;
  int evals = 0;
  for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]), ++evals;
  std::vector<int> idx(n + 1);
  while (evals < max_evals) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = idx[0];
    const int worst = idx[n];
    const int second = idx[n - 1];
    if (vals[worst] - vals[best] < 1e-15 * (1.0 + std::abs(vals[best]))) break;
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[idx[i]];
    centroid /= n;
    const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
    const double fr = f(xr);
    ++evals;
    if (fr < vals[best]) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        pts[worst] = xe, vals[worst] = fe;
      } else {
        pts[worst] = xr, vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = xr, vals[worst] = fr;
    } else {
      const Eigen::VectorXd xc = centroid + 0.5 * (pts[worst] - centroid);
      const double fc = f(xc);
      ++evals;
      if (fc < vals[worst]) {
        pts[worst] = xc, vals[worst] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          pts[idx[i]] = pts[best] + 0.5 * (pts[idx[i]] - pts[best]);
          vals[idx[i]] = f(pts[idx[i]]);
          ++evals;
        }
      }
    }
  }
  const int best = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  x = pts[best];
  return vals[best];
}

}  // namespace oracle
