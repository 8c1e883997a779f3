#include "hsm/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hsm/error.hpp"

namespace hsm::sdp {

namespace {

using Blocks = std::vector<Eigen::MatrixXd>;

Blocks zeros(const std::vector<int>& sizes) {
  Blocks out;
  for (int n : sizes) out.push_back(Eigen::MatrixXd::Zero(n, n));
  return out;
}

Blocks scaled_identity(const std::vector<int>& sizes, double scale) {
  Blocks out;
  for (int n : sizes) out.push_back(scale * Eigen::MatrixXd::Identity(n, n));
  return out;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
  return s;
}

double frobenius(const Blocks& a) { return std::sqrt(inner(a, a)); }

void add_entries(Blocks& out, const std::vector<Entry>& entries, double scale) {
  for (const auto& e : entries) {
    out[e.block](e.row, e.col) += scale * e.value;
    if (e.row != e.col) out[e.block](e.col, e.row) += scale * e.value;
  }
}

double apply_entries(const std::vector<Entry>& entries, const Blocks& x) {
  double s = 0.0;
  for (const auto& e : entries) {
    s += e.row == e.col ? e.value * x[e.block](e.row, e.row)
                        : e.value * (x[e.block](e.row, e.col) + x[e.block](e.col, e.row));
  }
  return s;
}

Eigen::VectorXd apply_a(const Problem& p, const Blocks& x) {
  Eigen::VectorXd out(p.a.size());
  for (std::size_t k = 0; k < p.a.size(); ++k) out(k) = apply_entries(p.a[k], x);
  return out;
}

Blocks apply_adjoint(const Problem& p, const Eigen::VectorXd& y) {
  Blocks out = zeros(p.block_sizes);
  for (std::size_t k = 0; k < p.a.size(); ++k) {
    if (y(k) != 0.0) add_entries(out, p.a[k], y(k));
  }
  return out;
}

double entries_norm(const std::vector<Entry>& entries, const std::vector<int>& sizes) {
  Blocks m = zeros(sizes);
  add_entries(m, entries, 1.0);
  return frobenius(m);
}

// Entries of A_k in full (both orientations), grouped by block.
struct FullEntry {
  int row;
  int col;
  double value;
};

std::vector<std::vector<std::vector<FullEntry>>> expand(const Problem& p) {
  std::vector<std::vector<std::vector<FullEntry>>> out(p.a.size());
  for (std::size_t k = 0; k < p.a.size(); ++k) {
    out[k].resize(p.block_sizes.size());
    for (const auto& e : p.a[k]) {
      out[k][e.block].push_back({e.row, e.col, e.value});
      if (e.row != e.col) out[k][e.block].push_back({e.col, e.row, e.value});
    }
  }
  return out;
}

// Largest alpha in (0, 1] with x + alpha dx PSD; 0 when x is not PD.
double max_step(const Blocks& x, const Blocks& dx) {
  double alpha = 1.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].rows() == 0) continue;
    Eigen::LLT<Eigen::MatrixXd> llt(x[k]);
    if (llt.info() != Eigen::Success) return 0.0;
    Eigen::MatrixXd t = llt.matrixL().solve(dx[k]);
    t = llt.matrixL().solve(t.transpose()).transpose();
    t = (t + t.transpose()) / 2.0;
    const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t, Eigen::EigenvaluesOnly)
                            .eigenvalues()(0);
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

bool inverse_blocks(const Blocks& s, Blocks& out) {
  out.resize(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    Eigen::LLT<Eigen::MatrixXd> llt(s[k]);
    if (llt.info() != Eigen::Success) return false;
    out[k] = llt.solve(Eigen::MatrixXd::Identity(s[k].rows(), s[k].cols()));
    out[k] = (out[k] + out[k].transpose()) / 2.0;
  }
  return true;
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal:
      return "optimal";
    case Status::IterationLimit:
      return "iteration-limit";
    case Status::NumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

Solution solve(const Problem& p, const Options& options) {
  const int m = static_cast<int>(p.a.size());
  if (p.b.size() != m) throw Error("sdp: constraint count does not match objective length");
  for (const auto& list : p.a) {
    for (const auto& e : list) {
      if (e.block < 0 || e.block >= static_cast<int>(p.block_sizes.size()) || e.row < 0 ||
          e.col < e.row || e.col >= p.block_sizes[e.block]) {
        throw Error("sdp: constraint entry out of range");
      }
    }
  }
  const auto& sizes = p.block_sizes;
  int total = 0;
  for (int n : sizes) total += n;
  const double sqrt_n = std::sqrt(static_cast<double>(std::max(total, 1)));

  Blocks c = zeros(sizes);
  add_entries(c, p.c, 1.0);
  const double c_norm = frobenius(c);
  const double b_norm = p.b.norm();
  double xi = std::max(10.0, sqrt_n);
  double eta = std::max({10.0, sqrt_n, c_norm});
  for (int k = 0; k < m; ++k) {
    const double ak = entries_norm(p.a[k], sizes);
    xi = std::max(xi, sqrt_n * (1.0 + std::abs(p.b(k))) / (1.0 + ak));
    eta = std::max(eta, ak);
  }
  eta = std::max(eta, (1.0 + c_norm) / sqrt_n);

  Blocks x = scaled_identity(sizes, xi);
  Blocks s = scaled_identity(sizes, eta);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  const auto full = expand(p);

  Solution best;
  double best_merit = std::numeric_limits<double>::infinity();
  auto record = [&](int iter, Status status, double pinf, double dinf, double gap) {
    const double pobj = inner(c, x);
    const double dobj = p.b.dot(y);
    const double merit = std::max({gap, pinf, dinf});
    if (merit < best_merit || status == Status::Optimal) {
      best_merit = merit;
      best.status = status;
      best.y = y;
      best.x = x;
      best.s = s;
      best.primal_objective = pobj;
      best.dual_objective = dobj;
      best.relative_gap = gap;
      best.primal_infeasibility = pinf;
      best.dual_infeasibility = dinf;
    }
    best.iterations = iter;
  };

  Blocks sinv;
  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    const Eigen::VectorXd rp = p.b - apply_a(p, x);
    Blocks rd = c;
    {
      const Blocks aty = apply_adjoint(p, y);
      for (std::size_t k = 0; k < rd.size(); ++k) rd[k] -= aty[k] + s[k];
    }
    const double pobj = inner(c, x);
    const double dobj = p.b.dot(y);
    const double xs = inner(x, s);
    const double pinf = rp.norm() / (1.0 + b_norm);
    const double dinf = frobenius(rd) / (1.0 + c_norm);
    const double scale = 1.0 + std::abs(pobj) + std::abs(dobj);
    const double gap = std::max(std::abs(pobj - dobj), std::max(xs, 0.0)) / scale;
    if (gap <= options.gap_tolerance && pinf <= options.feasibility_tolerance &&
        dinf <= options.feasibility_tolerance) {
      record(iter, Status::Optimal, pinf, dinf, gap);
      return best;
    }
    record(iter, Status::IterationLimit, pinf, dinf, gap);
    if (iter == options.max_iterations) break;

    if (!inverse_blocks(s, sinv)) {
      best.status = Status::NumericalFailure;
      return best;
    }
    const double mu = xs / std::max(total, 1);

    // Schur complement M_kl = <A_k, X A_l S^-1>.
    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      for (int l = k; l < m; ++l) {
        double v = 0.0;
        for (std::size_t blk = 0; blk < sizes.size(); ++blk) {
          const auto& ek = full[k][blk];
          const auto& el = full[l][blk];
          if (ek.empty() || el.empty()) continue;
          const auto& xb = x[blk];
          const auto& sb = sinv[blk];
          for (const auto& e : ek) {
            for (const auto& f : el) v += e.value * f.value * xb(e.col, f.row) * sb(f.col, e.row);
          }
        }
        schur(k, l) = v;
        schur(l, k) = v;
      }
    }
    Eigen::LLT<Eigen::MatrixXd> schur_llt(schur);
    if (schur_llt.info() != Eigen::Success) {
      const double reg = 1e-13 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
      schur.diagonal().array() += reg;
      schur_llt.compute(schur);
      if (schur_llt.info() != Eigen::Success) {
        best.status = Status::NumericalFailure;
        return best;
      }
    }

    // Direction for target K: Delta y from M dy = rp - A(K S^-1) + A(X Rd S^-1).
    auto direction = [&](const Blocks& target, Eigen::VectorXd& dy, Blocks& dx, Blocks& ds) {
      Blocks ksinv(sizes.size());
      Blocks xrdsinv(sizes.size());
      for (std::size_t k = 0; k < sizes.size(); ++k) {
        ksinv[k] = target[k] * sinv[k];
        xrdsinv[k] = x[k] * rd[k] * sinv[k];
      }
      const Eigen::VectorXd rhs = rp - apply_a(p, ksinv) + apply_a(p, xrdsinv);
      dy = schur_llt.solve(rhs);
      const Blocks aty = apply_adjoint(p, dy);
      ds.resize(sizes.size());
      dx.resize(sizes.size());
      for (std::size_t k = 0; k < sizes.size(); ++k) {
        ds[k] = rd[k] - aty[k];
        Eigen::MatrixXd t = ksinv[k] - x[k] * ds[k] * sinv[k];
        dx[k] = (t + t.transpose()) / 2.0;
      }
    };

    // Predictor: K = -XS.
    Blocks target(sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) target[k] = -x[k] * s[k];
    Eigen::VectorXd dy;
    Blocks dx;
    Blocks ds;
    direction(target, dy, dx, ds);
    const double ap = max_step(x, dx);
    const double ad = max_step(s, ds);
    Blocks xa = x;
    Blocks sa = s;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      xa[k] += ap * dx[k];
      sa[k] += ad * ds[k];
    }
    const double mu_aff = inner(xa, sa) / std::max(total, 1);
    const double ratio = std::clamp(mu_aff / std::max(mu, 1e-300), 0.0, 1.0);
    const double exponent = std::max(1.0, 3.0 * std::min(ap, ad) * std::min(ap, ad));
    double sigma = std::pow(ratio, exponent);
    // keep centering when feasibility lags behind the gap
    if (std::max(pinf, dinf) > 10.0 * gap) sigma = std::max(sigma, 0.1);

    // Corrector: K = sigma mu I - XS - dXp dSp.
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      target[k] = sigma * mu * Eigen::MatrixXd::Identity(sizes[k], sizes[k]) - x[k] * s[k] -
                  dx[k] * ds[k];
    }
    direction(target, dy, dx, ds);
    const double gamma = 0.9 + 0.09 * std::min(ap, ad);
    const double step_p = std::min(1.0, gamma * max_step(x, dx));
    const double step_d = std::min(1.0, gamma * max_step(s, ds));
    if (step_p <= 1e-14 && step_d <= 1e-14) {
      best.status = Status::NumericalFailure;
      return best;
    }
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      x[k] += step_p * dx[k];
      x[k] = (x[k] + x[k].transpose()) / 2.0;
      s[k] += step_d * ds[k];
      s[k] = (s[k] + s[k].transpose()) / 2.0;
    }
    y += step_d * dy;
  }
  if (best.status == Status::Optimal) best.status = Status::IterationLimit;
  return best;
}

int HermitianBuilder::add_block(int size, bool complex) {
  if (size < 1) throw Error("sdp: block size must be positive");
  blocks_.push_back({size, complex});
  return static_cast<int>(blocks_.size()) - 1;
}

int HermitianBuilder::add_variable(double objective) {
  objective_.push_back(objective);
  a_.emplace_back();
  return static_cast<int>(objective_.size()) - 1;
}

void HermitianBuilder::push(std::vector<Entry>& out, int block, int row, int col, Complex value,
                            double sign) const {
  if (block < 0 || block >= static_cast<int>(blocks_.size())) throw Error("sdp: bad block index");
  const auto& info = blocks_[block];
  if (row < 0 || col < 0 || row >= info.size || col >= info.size) {
    throw Error("sdp: entry outside block");
  }
  if (row > col) {
    std::swap(row, col);
    value = std::conj(value);
  }
  const double re = sign * value.real();
  const double im = sign * value.imag();
  if (!info.complex) {
    if (im != 0.0) throw Error("sdp: complex coefficient in a real block");
    if (re != 0.0) out.push_back({block, row, col, re});
    return;
  }
  const int n = info.size;
  if (re != 0.0) {
    out.push_back({block, row, col, re});
    out.push_back({block, n + row, n + col, re});
  }
  if (row != col && im != 0.0) {
    // upper-right block holds -Im H, lower-left +Im H
    out.push_back({block, row, n + col, -im});
    out.push_back({block, col, n + row, im});
  }
}

void HermitianBuilder::add_constant(int block, int row, int col, Complex value) {
  push(c_, block, row, col, value, 1.0);
}

void HermitianBuilder::add_coefficient(int var, int block, int row, int col, Complex value) {
  if (var < 0 || var >= variable_count()) throw Error("sdp: bad variable index");
  push(a_[var], block, row, col, value, -1.0);
}

Problem HermitianBuilder::build() const {
  Problem p;
  for (const auto& info : blocks_) p.block_sizes.push_back(info.complex ? 2 * info.size : info.size);
  p.c = c_;
  p.a = a_;
  p.b = Eigen::Map<const Eigen::VectorXd>(objective_.data(), static_cast<Eigen::Index>(objective_.size()));
  return p;
}

namespace {

ComplexMatrix recover(const Eigen::MatrixXd& m, int n, bool complex) {
  if (!complex) return m.cast<Complex>();
  ComplexMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = Complex(m(i, j) + m(n + i, n + j), m(n + i, j) - m(i, n + j));
    }
  }
  return out;
}

}  // namespace

ComplexMatrix HermitianBuilder::primal_block(const Solution& solution, int block) const {
  const auto& info = blocks_.at(block);
  return recover(solution.x.at(block), info.size, info.complex);
}

ComplexMatrix HermitianBuilder::slack_block(const Solution& solution, int block) const {
  const auto& info = blocks_.at(block);
  // S is itself an embedding, so its top-left and bottom-right blocks agree
  ComplexMatrix full = recover(solution.s.at(block), info.size, info.complex);
  return info.complex ? ComplexMatrix(full / 2.0) : full;
}

}  // namespace hsm::sdp
