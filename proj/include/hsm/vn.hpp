#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hsm/group.hpp"
#include "hsm/linalg.hpp"
#include "hsm/multiplier.hpp"

namespace hsm::vn {

/// Block-diagonal element of a multi-matrix algebra.
using Element = std::vector<ComplexMatrix>;

/// Direct sum of full matrix algebras M_{n_i} with the trace
/// tau(x) = sum_i mu_i Tr(x_i), normalized so that tau(1) = 1.
class TracedAlgebra {
 public:
  /// Throws ValidationError unless all mu_i > 0 and sum mu_i n_i = 1 (1e-12).
  TracedAlgebra(std::vector<int> sizes, std::vector<double> weights);
  /// Rescales positive raw weights so that tau(1) = 1.
  static TracedAlgebra normalized(std::vector<int> sizes, const std::vector<double>& raw_weights);

  int blocks() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  const std::vector<double>& weights() const { return weights_; }
  /// sum n_i^2
  int dimension() const;

  Element zero() const;
  Element identity() const;
  /// Gaussian entries in every block.
  Element random(Rng& rng) const;
  /// Matrix units E_rc in every block, scaled to be orthonormal for tau.
  std::vector<Element> orthonormal_basis() const;

  Complex trace(const Element& x) const;
  bool contains(const Element& x) const;

 private:
  std::vector<int> sizes_;
  std::vector<double> weights_;
};

using AlgebraPtr = std::shared_ptr<const TracedAlgebra>;

Element add(const Element& a, const Element& b);
Element sub(const Element& a, const Element& b);
Element mul(const Element& a, const Element& b);
Element scale(Complex c, const Element& a);
Element adjoint(const Element& a);
/// Largest block operator norm.
double operator_norm(const Element& a);
/// Largest entry modulus over all blocks.
double max_abs(const Element& a);

/// Subspace of an algebra with an orthonormal basis for the inner product
/// <x, y> = trace_scale * tau(y* x). Covers full algebras (scale 1), the
/// image of L(G) inside M_|G|, and corners pMp with tau_p = tau / tau(p).
struct L2Space {
  AlgebraPtr algebra;
  std::vector<Element> basis;
  double trace_scale = 1.0;
  Element unit;
  std::string name;

  int dimension() const { return static_cast<int>(basis.size()); }
  Complex trace(const Element& x) const { return trace_scale * algebra->trace(x); }
  Complex inner(const Element& x, const Element& y) const;
  double l2_norm(const Element& x) const;
  /// Coordinates in the orthonormal basis.
  ComplexVector coordinates(const Element& x) const;
  Element from_coordinates(const ComplexVector& c) const;
  /// Random element of the subspace.
  Element random(Rng& rng) const;
};

L2Space full_space(const AlgebraPtr& algebra, std::string name = "M");

/// Linear map between L2 spaces with a kind tag. Fourier multipliers keep
/// their symbol; tensor products and direct sums keep their factors.
struct AlgebraMap {
  L2Space domain;
  L2Space codomain;
  std::function<Element(const Element&)> apply;
  std::string kind;
  std::optional<Multiplier> symbol;
  std::vector<std::shared_ptr<const AlgebraMap>> parts;

  Element operator()(const Element& x) const { return apply(x); }
};

AlgebraMap identity_map(const L2Space& space);
/// x -> U x U*; U must be unitary within 1e-10.
AlgebraMap conjugation(const L2Space& space, const Element& u);
/// Exact equality of algebra, trace scale and basis.
bool same_space(const L2Space& a, const L2Space& b);

/// L(G) realized in M_|G| with tau(x) = <x delta_e, delta_e>; basis lambda(g).
/// Orders above kMaxGroupAlgebraOrder are rejected (dense basis storage).
constexpr int kMaxGroupAlgebraOrder = 128;
/// Bound on sum n_i for a TracedAlgebra.
constexpr int kMaxAlgebraSize = 512;

struct GroupAlgebra {
  GroupPtr group;
  L2Space space;
  std::vector<Element> lambda;
};

GroupAlgebra group_algebra(const GroupPtr& group);
/// Dimension of the center of L(G), computed numerically as the commutant
/// of {lambda(g)} inside L(G).
int center_dimension(const GroupAlgebra& a);

/// T(lambda(g)) = u(g) lambda(g), extended linearly (after projecting onto
/// L(G) via the coefficients tau(lambda(g)* x)).
AlgebraMap fourier_multiplier_op(const GroupAlgebra& a, const Multiplier& u);
/// u(g) = tau(lambda(g)* T(lambda(g))), with tau(x) read off as x(e, e).
Multiplier recover_symbol(const GroupAlgebra& a, const AlgebraMap& t);

struct L2Extension {
  ComplexMatrix matrix;          // <T e_j, f_i> in the domain/codomain bases
  double operator_norm = 0.0;
  /// max |<Tx, y> - <x, Ty>| over basis pairs (same space only)
  double symmetry_defect = 0.0;
  bool symmetric = false;
  /// Always true in finite dimension; kept so reports list it.
  bool compact = true;
};

L2Extension l2_extension(const AlgebraMap& t, double tolerance = 1e-10);

/// E(sum c_g lambda(g)) = sum over g in H of c_g lambda(g), as a map on L(G).
AlgebraMap conditional_expectation(const GroupAlgebra& a, const Subgroup& h);

struct Compression {
  AlgebraMap map;   // S(x) = p T(x) p on (pMp, tau_p)
  double trace_of_p = 0.0;
  /// max |<Vx, Vy>_tau - <x, y>_tau_p| over basis pairs, V x = tau(p)^-1/2 x.
  double isometry_defect = 0.0;
};

/// Throws ValidationError if p is not a nonzero projection within 1e-10 or
/// does not lie in the domain of T.
Compression compress(const AlgebraMap& t, const Element& p);

struct DirectSum {
  L2Space space;
  std::vector<L2Space> summands;
  std::vector<double> alphas;
  std::vector<int> block_offset;
  /// max entry of |V*V - I| and |VV* - I| for
  /// V(x_1 + ... + x_k) = alpha_1^1/2 x_1 + ... : L2(sum) -> sum of L2(M_k).
  double unitarity_defect = 0.0;
};

/// Summands must be unital (unit = identity, trace_scale 1).
DirectSum direct_sum(const std::vector<L2Space>& summands, const std::vector<double>& alphas);
/// Blockwise map; maps[k] acts on summands[k].
AlgebraMap sum_map(const DirectSum& sum, const std::vector<AlgebraMap>& maps);
Element embed(const DirectSum& sum, int k, const Element& x);

struct TensorProduct {
  L2Space space;
  L2Space left;
  L2Space right;
};

/// Blocks n_i m_j with weights mu_i nu_j; basis e_a (x) f_b.
TensorProduct tensor(const L2Space& left, const L2Space& right);
Element kron(const TensorProduct& t, const Element& x, const Element& y);
AlgebraMap tensor_map(const TensorProduct& t, const AlgebraMap& left, const AlgebraMap& right);

struct TraceChange {
  Element h;                      // central, h_i = mu'_i / mu_i on block i
  std::vector<double> h_values;
  /// Blocks grouped by the slice [(1+eps)^n, (1+eps)^(n+1)) containing h_i.
  std::vector<std::vector<int>> slices;
  std::vector<int> slice_index;
  /// ||h^1/2 p|| ||h^-1/2 p|| per slice.
  std::vector<double> slice_condition;
  double epsilon = 0.0;
  double radon_nikodym_defect = 0.0;  // max |tau'(x) - tau(hx)| over the basis
  double isometry_defect = 0.0;       // max |<Ux,Uy>_tau - <x,y>_tau'| over basis pairs
};

/// Throws ValidationError unless the new weights are positive and give a
/// trace state.
TraceChange trace_change(const TracedAlgebra& m, const std::vector<double>& new_weights, double epsilon);

/// max entry of |V*(lambda(g) (x) a)V - tau(lambda(g)* a) lambda(g)| with
/// V delta_g = delta_g (x) delta_g, over g in G and a in the basis of L(G).
double fell_absorption_defect(const GroupAlgebra& a);

/// cb norm for Fourier multipliers (B2 norm of the symbol), their tensor
/// products (B2 norm of the product symbol) and direct sums (maximum).
/// Throws UnsupportedError for any other kind.
double cb_norm(const AlgebraMap& t, double tolerance = 1e-7);

/// Lower bound for the operator norm of T on M (operator norms on both
/// sides) from the witnesses 1 and the normalized basis elements.
double operator_norm_lower_bound(const AlgebraMap& t);

/// max |T(ax + by) - aT(x) - bT(y)| on random samples.
double linearity_defect(const AlgebraMap& t, Rng& rng, int samples = 3);

}  // namespace hsm::vn
