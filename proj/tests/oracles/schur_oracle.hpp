#pragma once

#include <cstdint>

#include <Eigen/Dense>

// Test-only reference computations for the Schur norm of small real matrices.
// They share no code with the library solver.
namespace oracle {

/// Minimizes max_i |p_i| * max_j |q_j| over real factorizations A = P Q^T in
/// dimension rows+cols by Nelder-Mead from random starts.
double schur_norm_by_factorization(const Eigen::MatrixXd& a, std::uint64_t seed, int restarts = 40);

/// Maximizes the trace norm of diag(x) A diag(y) over nonnegative unit
/// vectors x, y (2x2 only; angle grid plus local refinement).
double schur_norm_by_trace_duality_2x2(const Eigen::Matrix2d& a);

/// Generic Nelder-Mead minimizer used by the oracles.
template <class F>
double nelder_mead(F&& f, Eigen::VectorXd& x, double step, int max_evals);

}  // namespace oracle

#include "schur_oracle_impl.hpp"
