#pragma once

#include <complex>

#include <Eigen/Dense>

#include "hsm/error.hpp"

namespace hsm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  ComplexMatrix eigenvectors;    // unitary, columns match eigenvalues
};

/// Full spectral decomposition of a Hermitian matrix. The input is
/// symmetrized first; a deviation from Hermitian above tol * max(1, max|h|)
/// raises ValidationError.
EigenDecomposition eigh(const ComplexMatrix& h, double tol = 1e-9);

/// Nearest positive semidefinite matrix in Frobenius norm (negative
/// eigenvalues clipped to zero).
ComplexMatrix psd_project(const ComplexMatrix& h);

double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol);
bool all_finite(const ComplexMatrix& m);
/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

}  // namespace hsm
