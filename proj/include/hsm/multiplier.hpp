#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hsm/group.hpp"
#include "hsm/linalg.hpp"
#include "hsm/schur.hpp"
#include "hsm/window.hpp"

namespace hsm {

/// Complex function on a finite group, or on the difference set of a window.
/// Values are indexed like the carrier (group element index, or index into
/// GroupWindow::difference_set()).
class Multiplier {
 public:
  Multiplier(GroupPtr group, std::vector<Complex> values, std::string origin = "table");
  Multiplier(WindowPtr window, std::vector<Complex> values, std::string origin = "table");

  static Multiplier constant(GroupPtr group, Complex c);
  static Multiplier delta(GroupPtr group, int element);
  static Multiplier indicator(GroupPtr group, const std::vector<int>& elements);

  bool on_group() const { return group_ != nullptr; }
  const GroupPtr& group() const;
  const WindowPtr& window() const;
  int size() const { return static_cast<int>(values_.size()); }
  Complex operator[](int k) const { return values_[k]; }
  const std::vector<Complex>& values() const { return values_; }
  std::string label(int k) const;
  int identity_index() const;

  /// Construction trace, oldest step first.
  const std::vector<std::string>& provenance() const { return provenance_; }
  /// Copy with an extra provenance step.
  Multiplier with_step(const std::string& step) const;

  bool is_real(double tol = 0.0) const;
  bool same_carrier(const Multiplier& other) const;

 private:
  GroupPtr group_;
  WindowPtr window_;
  std::vector<Complex> values_;
  std::vector<std::string> provenance_;
};

/// Pointwise operations; carriers must agree.
Multiplier operator+(const Multiplier& a, const Multiplier& b);
Multiplier operator*(Complex s, const Multiplier& a);
Multiplier pointwise_product(const Multiplier& a, const Multiplier& b);
/// (u + conj u) / 2.
Multiplier real_part(const Multiplier& u);
/// g -> u(g^-1).
Multiplier reflect(const Multiplier& u);

/// Values of a function of the ambient element over a window's difference set.
Multiplier window_multiplier(WindowPtr window, const std::function<Complex(const AmbientGroup::Element&)>& f,
                             std::string origin);
/// exp(-t |g|) over a window, |g| the word length.
Multiplier exp_word_length(WindowPtr window, double t);

/// Schur matrix M[x, y] = u(y^-1 x) over the group, or over the window
/// elements.
ComplexMatrix schur_matrix(const Multiplier& u);

struct B2Result {
  double value = 0.0;
  /// Window carriers: the value is the exact norm of one finite section and
  /// only a lower bound for the ambient group.
  bool section_lower_bound = false;
  SchurNormResult schur;
};

B2Result b2_norm(const Multiplier& u, const SchurOptions& options);
B2Result b2_norm(const Multiplier& u, double tolerance = 1e-7);

struct PositiveDefiniteResult {
  bool positive = false;
  double min_eigenvalue = 0.0;
};

/// Positive definite iff the smallest eigenvalue of the (Hermitian part of
/// the) Schur matrix is at least -tol and the matrix is Hermitian within tol.
PositiveDefiniteResult is_positive_definite(const Multiplier& u, double tolerance = 1e-7);

/// A(G) norm on a finite group: (1/|G|) times the trace norm of
/// sum_x u(x) lambda(x).
double fourier_norm(const Multiplier& u);

struct QNormResult {
  double value = 0.0;        // Re sum f u at the returned maximizer
  double upper_bound = 0.0;  // from the dual side of the SDP
  double tolerance = 0.0;
  int iterations = 0;
  std::optional<Multiplier> maximizer;
};

/// sup |sum_x f(x) u(x)| over the B2 unit ball of a finite group.
QNormResult q_norm(const Multiplier& f, double tolerance = 1e-7);

double sup_norm(const Multiplier& u);

struct NormReport {
  std::optional<double> b2;
  bool b2_section_lower_bound = false;
  std::optional<double> fourier;
  std::optional<double> q;
  double sup = 0.0;
  std::optional<bool> pos_def;
  std::optional<double> min_eigenvalue;
  double tolerance = 0.0;
};

struct NormSelection {
  bool b2 = true;
  bool fourier = true;
  bool q = false;
  bool pos_def = true;
};

/// Computes the selected norms; fourier and q are skipped for windows.
NormReport norm_report(const Multiplier& u, double tolerance, NormSelection which = {});

// Random generators used by the property tests and the verification suites.
using Rng = std::mt19937_64;

/// Independent standard normal values (complex when requested).
Multiplier random_multiplier(const GroupPtr& group, Rng& rng, bool complex);
/// u(x) = <lambda(x) h, h> summed over a few random h; u(e) > 0.
Multiplier random_positive_definite(const GroupPtr& group, Rng& rng);
/// Positive definite with values in [0, 1] and u(e) = 1: a convex
/// combination of subgroup indicators and squared moduli of normalized
/// positive definite functions.
Multiplier random_unit_positive_definite(const GroupPtr& group, Rng& rng);
/// Nonnegative weights summing to one.
Multiplier random_probability(const GroupPtr& group, Rng& rng);

}  // namespace hsm
