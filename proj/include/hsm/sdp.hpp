#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hsm/linalg.hpp"

// Small dense primal-dual interior point solver. Internal engine behind the
// Schur-norm, Q-norm and cutoff computations; not a general SDP front end.
namespace hsm::sdp {

/// One entry of a symmetric block-diagonal matrix (row <= col; the mirror
/// entry is implied).
struct Entry {
  int block;
  int row;
  int col;
  double value;
};

/// Standard pair
///   maximize  b'y  subject to  S = C - sum_k y_k A_k  PSD
///   minimize  <C, X>  subject to  <A_k, X> = b_k,  X  PSD
/// over real symmetric block-diagonal matrices.
struct Problem {
  std::vector<int> block_sizes;
  std::vector<Entry> c;
  std::vector<std::vector<Entry>> a;
  Eigen::VectorXd b;
};

enum class Status { Optimal, IterationLimit, NumericalFailure };

const char* to_string(Status s);

struct Options {
  double gap_tolerance = 1e-10;
  double feasibility_tolerance = 1e-10;
  int max_iterations = 150;
};

struct Solution {
  Status status = Status::NumericalFailure;
  Eigen::VectorXd y;
  std::vector<Eigen::MatrixXd> x;
  std::vector<Eigen::MatrixXd> s;
  double primal_objective = 0.0;   // <C, X>
  double dual_objective = 0.0;     // b'y
  double relative_gap = 1.0;
  double primal_infeasibility = 1.0;
  double dual_infeasibility = 1.0;
  int iterations = 0;
};

/// HKM search direction with Mehrotra predictor-corrector steps. Returns the
/// best iterate seen when the tolerances are not met.
Solution solve(const Problem& problem, const Options& options = {});

/// Builds a Problem over Hermitian blocks. The y-side constraint is
///   S(y) = C + sum_k y_k G_k  PSD
/// with Hermitian C, G_k. Complex blocks are handled through the real
/// embedding H -> [[Re H, -Im H], [Im H, Re H]].
class HermitianBuilder {
 public:
  int add_block(int size, bool complex);
  int add_variable(double objective);
  int variable_count() const { return static_cast<int>(objective_.size()); }

  /// C(row, col) += value and C(col, row) += conj(value); on the diagonal only
  /// the real part is used.
  void add_constant(int block, int row, int col, Complex value);
  /// G_var(row, col) += value with the Hermitian mirror implied.
  void add_coefficient(int var, int block, int row, int col, Complex value);

  Problem build() const;
  /// Hermitian X-side block recovered from the real embedding.
  ComplexMatrix primal_block(const Solution& solution, int block) const;
  /// S-side block, same recovery.
  ComplexMatrix slack_block(const Solution& solution, int block) const;

 private:
  struct BlockInfo {
    int size;
    bool complex;
  };
  void push(std::vector<Entry>& out, int block, int row, int col, Complex value, double sign) const;

  std::vector<BlockInfo> blocks_;
  std::vector<double> objective_;
  std::vector<Entry> c_;
  std::vector<std::vector<Entry>> a_;
};

}  // namespace hsm::sdp
