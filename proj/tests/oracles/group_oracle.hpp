#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

// Test-only reference computations on finite groups given by a raw Cayley
// table (table[a][b] = a*b, identity 0). Independent of the library's
// multiplier code.
namespace oracle {

using Table = std::vector<std::vector<int>>;
using Values = std::vector<std::complex<double>>;

/// inf ||h|| ||k|| over u(x) = <lambda(x) h, k>, minimized over k by
/// Nelder-Mead (h is then determined) with random restarts.
double fourier_norm_by_factorization(const Table& table, const Values& u, std::uint64_t seed, int restarts = 20);

/// Operator norm of sum_x f(x) lambda(x); equals the Q norm on a finite
/// (hence amenable) group.
double q_norm_by_regular_representation(const Table& table, const Values& f);

/// Trace norm of sum_x u(x) lambda(x) divided by |G|; equals both the A(G)
/// and the B2 norm on a finite group.
double trace_norm_formula(const Table& table, const Values& u);

}  // namespace oracle
