#include "oracles/schur_oracle.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace oracle {

double schur_norm_by_factorization(const Eigen::MatrixXd& a, std::uint64_t seed, int restarts) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  const int k = m + n;
  // Q is k x n with columns q_j; p_i is the least-norm solution of Q^T p = a_i.
  auto objective = [&](const Eigen::VectorXd& v) {
    const Eigen::MatrixXd q = Eigen::Map<const Eigen::MatrixXd>(v.data(), k, n);
    const Eigen::MatrixXd gram = q.transpose() * q;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    if (lu.rank() < n) return std::numeric_limits<double>::infinity();
    const Eigen::MatrixXd p = (q * lu.solve(a.transpose())).transpose();  // m x k
    return p.rowwise().norm().maxCoeff() * q.colwise().norm().maxCoeff();
  };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd v(k * n);
    for (int i = 0; i < v.size(); ++i) v(i) = normal(rng);
    double val = nelder_mead(objective, v, 0.3, 20000);
    for (int again = 0; again < 4; ++again) val = nelder_mead(objective, v, 0.05, 20000);
    best = std::min(best, val);
  }
  return best;
}

double schur_norm_by_trace_duality_2x2(const Eigen::Matrix2d& a) {
  auto value = [&](double s, double t) {
    const Eigen::Vector2d x(std::cos(s), std::sin(s));
    const Eigen::Vector2d y(std::cos(t), std::sin(t));
    const Eigen::Matrix2d b = x.asDiagonal() * a * y.asDiagonal();
    return Eigen::JacobiSVD<Eigen::Matrix2d>(b).singularValues().sum();
  };
  const double half_pi = std::acos(0.0);
  const int grid = 400;
  double best = 0.0;
  double bs = 0.0;
  double bt = 0.0;
  for (int i = 0; i <= grid; ++i) {
    for (int j = 0; j <= grid; ++j) {
      const double s = half_pi * i / grid;
      const double t = half_pi * j / grid;
      const double v = value(s, t);
      if (v > best) best = v, bs = s, bt = t;
    }
  }
  Eigen::VectorXd x(2);
  x << bs, bt;
  auto neg = [&](const Eigen::VectorXd& v) {
    return -value(std::clamp(v(0), 0.0, half_pi), std::clamp(v(1), 0.0, half_pi));
  };
  return std::max(best, -nelder_mead(neg, x, half_pi / grid, 4000));
}

}  // namespace oracle
