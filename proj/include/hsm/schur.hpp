#pragma once

#include <string>

#include <Eigen/Dense>

#include "hsm/error.hpp"
#include "hsm/linalg.hpp"

namespace hsm {

/// Dual feasible point for the Schur-norm SDP: weights d (rows), e (columns)
/// and a coupling matrix W with [[diag(d), W], [W*, diag(e)]] PSD. Any such
/// triple gives the lower bound 2 Re<A, W> / (sum d + sum e).
struct SchurDual {
  Eigen::VectorXd row_weights;
  Eigen::VectorXd col_weights;
  ComplexMatrix coupling;
};

struct SchurNormResult {
  double value = 0.0;
  /// Row i is p_i, row j of q is q_j; A_ij = <p_i, q_j> = sum_k p_ik conj(q_jk).
  ComplexMatrix p;
  ComplexMatrix q;
  double lower_bound = 0.0;
  double gap = 0.0;
  int iterations = 0;
  double tolerance = 0.0;
  /// "zero", "psd", "rank-one" or "sdp".
  std::string method;
  SchurDual dual;
};

struct SchurOptions {
  double tolerance = 1e-7;
  /// Disable to force the SDP even for PSD or rank-one input.
  bool fast_paths = true;
  int max_iterations = 150;
};

/// Raised when the solver cannot certify the required gap; carries the best
/// primal/dual pair found.
class SchurSolverError : public ConvergenceError {
 public:
  SchurSolverError(const std::string& what, SchurNormResult partial)
      : ConvergenceError(what), partial_(std::move(partial)) {}
  const SchurNormResult& partial() const { return partial_; }

 private:
  SchurNormResult partial_;
};

/// Completely bounded Schur multiplier norm of A: the least t with
/// [[X, A], [A*, Y]] PSD and all diagonal entries of X, Y at most t.
SchurNormResult schur_norm(const ComplexMatrix& a, const SchurOptions& options = {});
SchurNormResult schur_norm(const ComplexMatrix& a, double tolerance);

/// Evaluates the lower bound carried by a dual triple. The triple is first
/// made feasible by raising d and e uniformly by the smallest shift that
/// makes the block matrix PSD.
double dual_lower_bound(const ComplexMatrix& a, const SchurDual& dual);

struct CertificateReport {
  bool pass = false;
  double reconstruction_violation = 0.0;  // max |<p_i,q_j> - A_ij| / (1 + |A_ij|)
  double norm_violation = 0.0;            // excess of max|p| max|q| over value(1+tol)
  double duality_violation = 0.0;         // excess of lower_bound over value
  double entry_bound_violation = 0.0;     // shortfall of lower_bound below max|A_ij| - tol
  double dual_violation = 0.0;            // excess of lower_bound over the re-evaluated dual bound
  std::string message;
};

/// Re-checks a result by direct evaluation. Never throws on a bad result.
CertificateReport verify_certificate(const ComplexMatrix& a, const SchurNormResult& result);

}  // namespace hsm
