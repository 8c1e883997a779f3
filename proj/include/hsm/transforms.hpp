#pragma once

#include <string>
#include <vector>

#include "hsm/group.hpp"
#include "hsm/multiplier.hpp"
#include "hsm/window.hpp"

namespace hsm {

/// u restricted to H; u must live on H.parent. Result lives on H.as_group.
Multiplier restrict_to(const Multiplier& u, const Subgroup& h);
/// u on H.as_group extended by zero to H.parent.
Multiplier extend_by_zero(const Multiplier& u, const Subgroup& h);
/// (u x v)(g, h) = u(g) v(h) on p.group; u on p.left, v on p.right.
Multiplier product_multiplier(const Multiplier& u, const Multiplier& v, const ProductGroup& p);
/// u^K(x) = |K|^-2 sum_{k, k' in K} u(k x k').
Multiplier average_biinvariant(const Multiplier& u, const Subgroup& k);
/// (h * u)(x) = sum_y h(y) u(y^-1 x); h must be a probability density.
Multiplier convolve(const Multiplier& h, const Multiplier& u);
/// v on G/K pulled back along the projection.
Multiplier lift_from_quotient(const QuotientMap& q, const Multiplier& v);
/// u constant on K-cosets (exact equality) pushed down to G/K.
Multiplier push_to_quotient(const QuotientMap& q, const Multiplier& u);

/// Finite measured G-space: action[g][x] = g.x, measure a probability vector.
struct FiniteActionSpace {
  GroupPtr group;
  std::vector<std::string> point_labels;
  std::vector<std::vector<int>> action;
  std::vector<double> measure;

  int points() const { return static_cast<int>(point_labels.size()); }
};

/// alpha[g][x] in target, indices of the target group.
struct Cocycle {
  FiniteActionSpace space;
  GroupPtr target;
  std::vector<std::vector<int>> alpha;
  std::string description;
};

struct CocycleReport {
  bool valid = false;
  bool action_ok = false;
  bool measure_ok = false;
  bool identity_ok = false;
  /// Up to 50 violations in readable form; violation_count has the total.
  std::vector<std::string> violations;
  long violation_count = 0;
  /// Properness holds trivially for finite data; recorded, not checked.
  std::string properness;
};

/// Exhaustive check of the action axioms, invariance of the measure and the
/// identity alpha(gh, x) = alpha(g, h.x) alpha(h, x) for all g, h and every
/// x of positive measure.
CocycleReport validate_cocycle(const Cocycle& c);

/// G acting on the left cosets G/H with uniform measure, section = minimal
/// coset representative, alpha(g, x) = s(g.x)^-1 g s(x) in H (target
/// H.as_group).
Cocycle coset_cocycle(const Subgroup& h);
/// G acting on the normal subgroup K by conjugation with uniform measure and
/// alpha(g, x) = p(g) in G/K.
Cocycle quotient_cocycle(const QuotientMap& q);

/// u_hat(g) = sum_x mu(x) u(alpha(g, x)); throws ValidationError on an
/// invalid cocycle or a carrier mismatch.
Multiplier induce_multiplier(const Multiplier& u, const Cocycle& c);

struct FolnerResult {
  Multiplier v;
  double measure_of_f = 0.0;
  /// epsilon[g] = mu(gF symmetric-difference F) / mu(F).
  std::vector<double> epsilon;
  /// |v(g) - 1| <= deviation_bound[g], where deviation_bound[g] =
  /// epsilon[g] / 2 + max over x in F with g.x in F of |u(alpha(g,x)) - 1|.
  std::vector<double> deviation_bound;
};

/// v(g) = mu(F)^-1 sum over x in F with g.x in F of u(alpha(g, x)) mu(x).
FolnerResult folner_average(const Multiplier& u, const Cocycle& c, const std::vector<int>& f);

/// Finite truncation psi = sum_n alpha_n (1 - u_n).
struct ProperFunctionSpec {
  std::vector<Multiplier> u_list;
  std::vector<double> alphas;
};

/// Checks 0 <= u_n <= 1 (real within tol), b2(u_n) <= 1 + 10 tol, alphas
/// strictly positive and strictly increasing, common carrier.
ProperFunctionSpec make_proper_function_spec(std::vector<Multiplier> u_list, std::vector<double> alphas,
                                             double tolerance = 1e-7);
/// psi, or psi + reflect(psi) when symmetrize is set.
Multiplier proper_function(const ProperFunctionSpec& spec, bool symmetrize = false);
/// exp(-t psi) pointwise, t > 0.
Multiplier exp_multiplier(const Multiplier& psi, double t);

/// Random spec with values from random_unit_positive_definite.
ProperFunctionSpec random_proper_function_spec(const GroupPtr& group, Rng& rng, int terms = 3);

struct CutoffResult {
  double value = 0.0;
  double lower_bound = 0.0;
  double tolerance = 0.0;
  int iterations = 0;
  int free_values = 0;
  Multiplier u;
};

/// Least section B2 norm of a real u on the window's difference set with
/// u = 1 on |g| <= inner_radius and u = 0 on |g| > outer_radius.
CutoffResult cutoff_norm(const WindowPtr& window, int inner_radius, int outer_radius, double tolerance = 1e-7);

}  // namespace hsm
