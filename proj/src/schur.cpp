#include "hsm/schur.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "hsm/sdp.hpp"

namespace hsm {

namespace {

void validate(const ComplexMatrix& a, double tolerance) {
  if (a.rows() < 1 || a.cols() < 1) throw ValidationError("schur_norm: empty matrix");
  if (a.rows() + a.cols() > 8192) throw ValidationError("schur_norm: rows + cols exceeds 8192");
  if (!all_finite(a)) throw ValidationError("schur_norm: matrix has non-finite entries");
  if (!(tolerance > 0.0) || tolerance > 1e-2) {
    throw ValidationError("schur_norm: tolerance must lie in (0, 1e-2]");
  }
}

// Lower bound max|A_ij| with its certificate: W = phase at the largest entry.
SchurDual entry_certificate(const ComplexMatrix& a) {
  Eigen::Index bi = 0;
  Eigen::Index bj = 0;
  a.cwiseAbs().maxCoeff(&bi, &bj);
  SchurDual d{Eigen::VectorXd::Zero(a.rows()), Eigen::VectorXd::Zero(a.cols()),
              ComplexMatrix::Zero(a.rows(), a.cols())};
  d.row_weights(bi) = 1.0;
  d.col_weights(bj) = 1.0;
  const double mag = std::abs(a(bi, bj));
  d.coupling(bi, bj) = mag > 0.0 ? a(bi, bj) / mag : Complex(1.0, 0.0);
  return d;
}

// Balances p -> c p, q -> q / c so that max|p_i| = max|q_j|.
void balance(ComplexMatrix& p, ComplexMatrix& q) {
  const double mp = p.rowwise().norm().maxCoeff();
  const double mq = q.rowwise().norm().maxCoeff();
  if (mp <= 0.0 || mq <= 0.0) return;
  const double c = std::sqrt(std::sqrt(mq / mp));
  p *= c;
  q /= c;
}

double factor_value(const ComplexMatrix& p, const ComplexMatrix& q) {
  return p.rowwise().norm().maxCoeff() * q.rowwise().norm().maxCoeff();
}

bool try_psd(const ComplexMatrix& a, double tol, SchurNormResult& out) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, max_abs(a));
  if (!is_hermitian(a, tol)) return false;
  const auto eig = eigh(a, tol);
  if (eig.eigenvalues(0) < -tol * scale) return false;
  const Eigen::VectorXd roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  out.p = eig.eigenvectors * roots.asDiagonal();
  out.q = out.p;
  Eigen::Index best = 0;
  out.value = a.diagonal().real().maxCoeff(&best);
  out.dual = {Eigen::VectorXd::Zero(a.rows()), Eigen::VectorXd::Zero(a.cols()),
              ComplexMatrix::Zero(a.rows(), a.cols())};
  out.dual.row_weights(best) = 1.0;
  out.dual.col_weights(best) = 1.0;
  out.dual.coupling(best, best) = 1.0;
  out.lower_bound = out.value;
  out.method = "psd";
  return true;
}

bool try_rank_one(const ComplexMatrix& a, SchurNormResult& out) {
  Eigen::Index pi = 0;
  Eigen::Index pj = 0;
  const double peak = a.cwiseAbs().maxCoeff(&pi, &pj);
  const ComplexVector col = a.col(pj);
  const ComplexVector row = a.row(pi).transpose() / a(pi, pj);
  const ComplexMatrix outer = col * row.transpose();
  if (max_abs(a - outer) > 1e-12 * peak) return false;
  out.p = col;
  out.q = row.conjugate();
  balance(out.p, out.q);
  out.value = col.cwiseAbs().maxCoeff() * row.cwiseAbs().maxCoeff();
  out.dual = entry_certificate(a);
  out.lower_bound = peak;
  out.method = "rank-one";
  return true;
}

}  // namespace

double dual_lower_bound(const ComplexMatrix& a, const SchurDual& dual) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (dual.row_weights.size() != m || dual.col_weights.size() != n || dual.coupling.rows() != m ||
      dual.coupling.cols() != n) {
    return 0.0;
  }
  ComplexMatrix block = ComplexMatrix::Zero(m + n, m + n);
  block.topLeftCorner(m, m).diagonal() = dual.row_weights.cast<Complex>();
  block.bottomRightCorner(n, n).diagonal() = dual.col_weights.cast<Complex>();
  block.topRightCorner(m, n) = dual.coupling;
  block.bottomLeftCorner(n, m) = dual.coupling.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(block, Eigen::EigenvaluesOnly);
  const double shift = std::max(0.0, -solver.eigenvalues()(0));
  const double denom = dual.row_weights.sum() + dual.col_weights.sum() + static_cast<double>(m + n) * shift;
  if (!(denom > 0.0)) return 0.0;
  const double numer = 2.0 * (a.array() * dual.coupling.conjugate().array()).real().sum();
  return std::max(0.0, numer / denom);
}

SchurNormResult schur_norm(const ComplexMatrix& a, double tolerance) {
  SchurOptions options;
  options.tolerance = tolerance;
  return schur_norm(a, options);
}

SchurNormResult schur_norm(const ComplexMatrix& a, const SchurOptions& options) {
  const double tol = options.tolerance;
  validate(a, tol);
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  SchurNormResult out;
  out.tolerance = tol;
  const double peak = max_abs(a);
  if (peak == 0.0) {
    out.p = ComplexMatrix::Zero(m, 1);
    out.q = ComplexMatrix::Zero(n, 1);
    out.dual = {Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(n), ComplexMatrix::Zero(m, n)};
    out.method = "zero";
    return out;
  }
  if (options.fast_paths && (try_psd(a, tol, out) || try_rank_one(a, out))) {
    out.gap = std::max(0.0, out.value - out.lower_bound);
    return out;
  }

  // Zero rows and columns carry zero vectors; solve on the rest, scaled so
  // that the largest entry has modulus one.
  std::vector<Eigen::Index> rows;
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (a.row(i).cwiseAbs().maxCoeff() > 0.0) rows.push_back(i);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if (a.col(j).cwiseAbs().maxCoeff() > 0.0) cols.push_back(j);
  }
  const int mr = static_cast<int>(rows.size());
  const int nc = static_cast<int>(cols.size());
  ComplexMatrix b(mr, nc);
  for (int i = 0; i < mr; ++i) {
    for (int j = 0; j < nc; ++j) b(i, j) = a(rows[i], cols[j]) / peak;
  }
  bool complex = false;
  for (Eigen::Index k = 0; k < b.size(); ++k) complex = complex || b.data()[k].imag() != 0.0;

  // y = (d, e, Re W, Im W); S = [[D, -W], [-W*, E]] and 1 - sum d - sum e >= 0.
  sdp::HermitianBuilder builder;
  const int main = builder.add_block(mr + nc, complex);
  const int budget = builder.add_block(1, false);
  builder.add_constant(budget, 0, 0, 1.0);
  for (int i = 0; i < mr + nc; ++i) {
    const int v = builder.add_variable(0.0);
    builder.add_coefficient(v, main, i, i, 1.0);
    builder.add_coefficient(v, budget, 0, 0, -1.0);
  }
  std::vector<int> re_var(static_cast<std::size_t>(mr) * nc, -1);
  std::vector<int> im_var(static_cast<std::size_t>(mr) * nc, -1);
  for (int i = 0; i < mr; ++i) {
    for (int j = 0; j < nc; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * nc + j;
      re_var[k] = builder.add_variable(2.0 * b(i, j).real());
      builder.add_coefficient(re_var[k], main, i, mr + j, -1.0);
      if (complex) {
        im_var[k] = builder.add_variable(2.0 * b(i, j).imag());
        builder.add_coefficient(im_var[k], main, i, mr + j, Complex(0.0, -1.0));
      }
    }
  }
  sdp::Options sopt;
  sopt.gap_tolerance = std::clamp(tol * 1e-2, 1e-12, 1e-8);
  sopt.feasibility_tolerance = sopt.gap_tolerance;
  sopt.max_iterations = options.max_iterations;
  const sdp::Problem problem = builder.build();
  const sdp::Solution sol = sdp::solve(problem, sopt);
  out.iterations = sol.iterations;

  // Primal: force the off-diagonal block to B exactly, shift the diagonal
  // until PSD, then factor.
  ComplexMatrix z = builder.primal_block(sol, main);
  z = (z + z.adjoint()) / 2.0;
  z.topRightCorner(mr, nc) = b;
  z.bottomLeftCorner(nc, mr) = b.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> zeig(z);
  const double shift = std::max(0.0, -zeig.eigenvalues()(0));
  if (shift > 0.0) {
    z.diagonal().array() += shift;
    zeig.compute(z);
  }
  const ComplexMatrix factor =
      zeig.eigenvectors() * zeig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
  ComplexMatrix p = ComplexMatrix::Zero(m, mr + nc);
  ComplexMatrix q = ComplexMatrix::Zero(n, mr + nc);
  for (int i = 0; i < mr; ++i) p.row(rows[i]) = factor.row(i) * std::sqrt(peak);
  for (int j = 0; j < nc; ++j) q.row(cols[j]) = factor.row(mr + j) * std::sqrt(peak);
  balance(p, q);
  out.p = std::move(p);
  out.q = std::move(q);
  out.value = factor_value(out.p, out.q);

  // Dual: read (d, e, W) off y; the triple is valid for A itself.
  SchurDual dual{Eigen::VectorXd::Zero(m), Eigen::VectorXd::Zero(n), ComplexMatrix::Zero(m, n)};
  for (int i = 0; i < mr; ++i) dual.row_weights(rows[i]) = sol.y(i);
  for (int j = 0; j < nc; ++j) dual.col_weights(cols[j]) = sol.y(mr + j);
  for (int i = 0; i < mr; ++i) {
    for (int j = 0; j < nc; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * nc + j;
      const double im = complex ? sol.y(im_var[k]) : 0.0;
      dual.coupling(rows[i], cols[j]) = Complex(sol.y(re_var[k]), im);
    }
  }
  const double dual_bound = dual_lower_bound(a, dual);
  if (dual_bound >= peak) {
    out.dual = std::move(dual);
    out.lower_bound = dual_bound;
  } else {
    out.dual = entry_certificate(a);
    out.lower_bound = peak;
  }
  out.method = "sdp";
  out.gap = out.value - out.lower_bound;
  if (out.gap > std::max(10.0 * tol, 10.0 * tol * out.value)) {
    std::ostringstream msg;
    msg << "schur_norm: gap " << out.gap << " above target after " << sol.iterations
        << " iterations (solver status " << sdp::to_string(sol.status) << ", bounds ["
        << out.lower_bound << ", " << out.value << "])";
    throw SchurSolverError(msg.str(), out);
  }
  out.gap = std::max(0.0, out.gap);
  return out;
}

CertificateReport verify_certificate(const ComplexMatrix& a, const SchurNormResult& r) {
  CertificateReport rep;
  const double tol = r.tolerance > 0.0 ? r.tolerance : 1e-7;
  std::ostringstream msg;
  if (r.p.rows() != a.rows() || r.q.rows() != a.cols() || r.p.cols() != r.q.cols() || r.p.cols() < 1) {
    rep.reconstruction_violation = max_abs(a);
    rep.message = "factor shapes do not match the matrix";
    return rep;
  }
  if (r.p.cols() > a.rows() + a.cols()) msg << "factor dimension exceeds rows+cols; ";
  const ComplexMatrix recon = r.p * r.q.adjoint();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const double v = std::abs(recon(i, j) - a(i, j)) / (1.0 + std::abs(a(i, j)));
      rep.reconstruction_violation = std::max(rep.reconstruction_violation, v);
    }
  }
  rep.norm_violation = std::max(0.0, factor_value(r.p, r.q) - r.value * (1.0 + tol));
  rep.duality_violation = std::max(0.0, r.lower_bound - r.value);
  const double peak = max_abs(a);
  rep.entry_bound_violation = std::max(0.0, (peak - tol) - r.lower_bound);
  const double certified = std::max(dual_lower_bound(a, r.dual), peak);
  rep.dual_violation = std::max(0.0, r.lower_bound - certified * (1.0 + tol) - tol);

  const bool ok_recon = rep.reconstruction_violation <= tol;
  const bool ok_norm = rep.norm_violation <= tol;
  const bool ok_dual = rep.duality_violation <= tol && rep.dual_violation == 0.0;
  const bool ok_entry = rep.entry_bound_violation == 0.0;
  if (!ok_recon) msg << "factorization misses A by " << rep.reconstruction_violation << "; ";
  if (!ok_norm) msg << "factor norms exceed value by " << rep.norm_violation << "; ";
  if (rep.duality_violation > tol) msg << "lower bound exceeds value by " << rep.duality_violation << "; ";
  if (rep.dual_violation > 0.0) msg << "lower bound not supported by the dual certificate; ";
  if (!ok_entry) msg << "lower bound below max|A_ij| - tol; ";
  rep.pass = ok_recon && ok_norm && ok_dual && ok_entry;
  rep.message = rep.pass ? "ok" : msg.str();
  return rep;
}

}  // namespace hsm
