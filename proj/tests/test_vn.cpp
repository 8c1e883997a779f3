#include "doctest.h"

#include <cmath>

#include "hsm/transforms.hpp"
#include "hsm/vn.hpp"

using namespace hsm;
using namespace hsm::vn;

namespace {

AlgebraMap matrix_map(const L2Space& space, const ComplexMatrix& a) {
  AlgebraMap t;
  t.domain = space;
  t.codomain = space;
  t.apply = [space, a](const Element& x) { return space.from_coordinates(a * space.coordinates(x)); };
  t.kind = "matrix";
  return t;
}

ComplexMatrix random_hermitian(int n, Rng& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = Complex(gauss(rng), gauss(rng));
  return (a + a.adjoint()) / 2.0;
}

Subgroup subgroup_of_order(const GroupPtr& g, int order) {
  for (const auto& h : all_subgroups(g)) {
    if (h.order() == order) return h;
  }
  throw std::logic_error("missing subgroup");
}

}  // namespace

TEST_CASE("traced algebra invariants") {
  CHECK_THROWS_AS(TracedAlgebra({1, 2}, {0.5, 0.5}), ValidationError);
  CHECK_THROWS_AS(TracedAlgebra({1, 1}, {1.0, 0.0}), ValidationError);
  auto m = std::make_shared<const TracedAlgebra>(TracedAlgebra::normalized({1, 2, 3}, {3.0, 1.0, 2.0}));
  CHECK(m->trace(m->identity()).real() == doctest::Approx(1.0).epsilon(1e-14));
  const L2Space s = full_space(m);
  CHECK(s.dimension() == m->dimension());
  const ComplexMatrix gram = [&] {
    ComplexMatrix g(s.dimension(), s.dimension());
    for (int i = 0; i < s.dimension(); ++i) {
      for (int j = 0; j < s.dimension(); ++j) g(i, j) = s.inner(s.basis[j], s.basis[i]);
    }
    return g;
  }();
  CHECK(max_abs(gram - ComplexMatrix::Identity(s.dimension(), s.dimension())) < 1e-12);

  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const Element x = m->random(rng);
    const Element y = m->random(rng);
    CHECK(std::abs(m->trace(mul(x, y)) - m->trace(mul(y, x))) < 1e-10);
    CHECK(s.l2_norm(x) <= vn::operator_norm(x) * (1 + 1e-12));
  }
}

TEST_CASE("group algebra") {
  const auto z2 = group_algebra(cyclic_group(2));
  ComplexMatrix flip(2, 2);
  flip << 0, 1, 1, 0;
  CHECK(z2.lambda[1][0] == flip);
  CHECK(z2.space.trace(z2.lambda[1]) == Complex(0.0));
  CHECK(z2.space.trace(z2.space.unit) == Complex(1.0));

  for (const auto& [name, g] : group_zoo()) {
    const auto a = group_algebra(g);
    for (int x = 0; x < g->order(); ++x) {
      CHECK(a.space.trace(mul(a.lambda[x], adjoint(a.lambda[x]))) == Complex(1.0));
      CHECK(a.space.trace(a.lambda[x]) == Complex(x == 0 ? 1.0 : 0.0));
      for (int y = 0; y < g->order(); ++y) CHECK(mul(a.lambda[x], a.lambda[y]) == a.lambda[g->mul(x, y)]);
    }
    CHECK(center_dimension(a) == static_cast<int>(g->conjugacy_classes().size()));
  }
  const auto s3 = group_algebra(symmetric_group(3));
  CHECK(s3.lambda[0][0].rows() == 6);
  CHECK(center_dimension(s3) == 3);
}

TEST_CASE("fourier multipliers and symbol recovery") {
  const auto s3g = symmetric_group(3);
  const auto s3 = group_algebra(s3g);
  const auto id = fourier_multiplier_op(s3, Multiplier::constant(s3g, 1.0));
  Rng rng(5);
  const Element x = s3.space.random(rng);
  CHECK(max_abs(sub(id(x), x)) < 1e-12);

  const auto e = fourier_multiplier_op(s3, Multiplier::delta(s3g, 0));
  CHECK(max_abs(sub(e(x), scale(s3.space.trace(x), s3.space.unit))) < 1e-12);
  CHECK(recover_symbol(s3, e).values() == Multiplier::delta(s3g, 0).values());
  CHECK(recover_symbol(s3, identity_map(s3.space)).values() == Multiplier::constant(s3g, 1.0).values());

  for (int k = 0; k < 10; ++k) {
    const auto u = random_multiplier(s3g, rng, true);
    CHECK(recover_symbol(s3, fourier_multiplier_op(s3, u)).values() == u.values());
    CHECK(linearity_defect(fourier_multiplier_op(s3, u), rng) < 1e-10);
  }

  const auto z2g = cyclic_group(2);
  const auto z2 = group_algebra(z2g);
  const Multiplier sign(z2g, {1.0, -1.0});
  const auto t = fourier_multiplier_op(z2, sign);
  const Element y = add(scale(2.0, z2.lambda[0]), scale(3.0, z2.lambda[1]));
  CHECK(max_abs(sub(t(y), sub(scale(2.0, z2.lambda[0]), scale(3.0, z2.lambda[1])))) == 0.0);
  CHECK(cb_norm(t) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("l2 extension and symmetry") {
  Rng rng(8);
  for (const auto& [name, g] : group_zoo()) {
    const auto a = group_algebra(g);
    const auto real = random_multiplier(g, rng, false);
    const auto ext = l2_extension(fourier_multiplier_op(a, real));
    CHECK(ext.symmetric);
    CHECK(ext.compact);
    ComplexMatrix diag = ComplexMatrix::Zero(g->order(), g->order());
    for (int k = 0; k < g->order(); ++k) diag(k, k) = real[k];
    CHECK(max_abs(ext.matrix - diag) < 1e-12);
    CHECK(ext.operator_norm == doctest::Approx(sup_norm(real)).epsilon(1e-12));

    const auto cplx = random_multiplier(g, rng, true);
    CHECK_FALSE(l2_extension(fourier_multiplier_op(a, cplx)).symmetric);
  }

  const auto z4g = cyclic_group(4);
  const auto z4 = group_algebra(z4g);
  for (int k = 0; k < 5; ++k) {
    const auto u = random_multiplier(z4g, rng, false);
    CHECK(l2_extension(fourier_multiplier_op(z4, u)).operator_norm <= b2_norm(u).value + 1e-5);
  }
}

TEST_CASE("conditional expectation") {
  const auto g = symmetric_group(3);
  const auto a = group_algebra(g);
  const auto a3 = subgroup_of_order(g, 3);
  const auto e = conditional_expectation(a, a3);
  Rng rng(11);
  for (int k = 0; k < 5; ++k) {
    const Element x = a.space.random(rng);
    const Element ex = e(x);
    CHECK(std::abs(a.space.trace(ex) - a.space.trace(x)) < 1e-12);
    CHECK(max_abs(sub(e(ex), ex)) < 1e-12);
    CHECK(a.space.l2_norm(ex) <= a.space.l2_norm(x) + 1e-12);
    Element l = a.space.random(rng);
    Element r = a.space.random(rng);
    l = e(l);
    r = e(r);
    CHECK(max_abs(sub(e(mul(mul(l, x), r)), mul(mul(l, ex), r))) < 1e-10);
  }
  const auto ext = l2_extension(e);
  CHECK(ext.symmetric);
  CHECK(max_abs(ext.matrix * ext.matrix - ext.matrix) < 1e-12);

  for (int t = 0; t < g->order(); ++t) {
    if (g->element_order(t) == 2) CHECK(max_abs(e(a.lambda[t])) == 0.0);
  }
  const Element x = a.space.random(rng);
  CHECK(max_abs(sub(conditional_expectation(a, whole_group(g))(x), x)) < 1e-12);
  CHECK(max_abs(sub(conditional_expectation(a, trivial_subgroup(g))(x), scale(a.space.trace(x), a.space.unit))) <
        1e-12);
}

TEST_CASE("compression") {
  const auto z2g = cyclic_group(2);
  const auto z2 = group_algebra(z2g);
  const Element p = scale(0.5, add(z2.lambda[0], z2.lambda[1]));
  const auto c = compress(identity_map(z2.space), p);
  CHECK(c.map.domain.dimension() == 1);
  CHECK(c.trace_of_p == doctest::Approx(0.5));
  CHECK(c.map.domain.trace(p).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.isometry_defect < 1e-12);
  CHECK(max_abs(sub(c.map(p), p)) < 1e-14);

  const auto full = compress(identity_map(z2.space), z2.space.unit);
  CHECK(full.trace_of_p == doctest::Approx(1.0));
  CHECK(full.map.domain.dimension() == 2);

  CHECK_THROWS_AS(compress(identity_map(z2.space), scale(0.5, z2.lambda[0])), ValidationError);
  CHECK_THROWS_AS(compress(identity_map(z2.space), z2.space.algebra->zero()), ValidationError);

  Rng rng(13);
  auto m = std::make_shared<const TracedAlgebra>(TracedAlgebra::normalized({1, 2}, {1.0, 1.0}));
  const L2Space s = full_space(m, "C+M2");
  for (int k = 0; k < 5; ++k) {
    const auto t = matrix_map(s, random_hermitian(s.dimension(), rng));
    REQUIRE(l2_extension(t).symmetric);
    std::normal_distribution<double> gauss;
    Eigen::Vector2cd v(Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng)));
    v.normalize();
    Element q = m->zero();
    q[0](0, 0) = 1.0;
    q[1] = v * v.adjoint();
    const auto comp = compress(t, q);
    CHECK(comp.map.domain.dimension() == 2);
    CHECK(comp.isometry_defect < 1e-12);
    CHECK(l2_extension(comp.map).symmetric);
  }
}

TEST_CASE("direct sums") {
  auto cc = std::make_shared<const TracedAlgebra>(TracedAlgebra({1, 1}, {0.5, 0.5}));
  Element x = cc->zero();
  x[0](0, 0) = 2.0;
  x[1](0, 0) = 4.0;
  CHECK(cc->trace(x).real() == doctest::Approx(3.0));

  const auto z2g = cyclic_group(2);
  const auto z3g = cyclic_group(3);
  const auto a = group_algebra(z2g);
  const auto b = group_algebra(z3g);
  const auto single = direct_sum({a.space}, {1.0});
  CHECK(single.unitarity_defect < 1e-12);
  CHECK(same_space(single.space, a.space));

  const auto d = direct_sum({a.space, b.space}, {1.0 / 3, 2.0 / 3});
  CHECK(d.unitarity_defect < 1e-12);
  CHECK(d.space.trace(embed(d, 0, a.space.unit)).real() == doctest::Approx(1.0 / 3));
  Rng rng(17);
  const auto u = random_multiplier(z2g, rng, false);
  const auto v = random_multiplier(z3g, rng, false);
  const auto t = sum_map(d, {fourier_multiplier_op(a, u), fourier_multiplier_op(b, v)});
  CHECK(l2_extension(t).symmetric);
  CHECK(linearity_defect(t, rng) < 1e-10);
  for (int g = 0; g < 3; ++g) {
    CHECK(max_abs(sub(t(embed(d, 1, b.lambda[g])), embed(d, 1, scale(v[g], b.lambda[g])))) < 1e-14);
  }
  CHECK(cb_norm(t) == doctest::Approx(std::max(b2_norm(u).value, b2_norm(v).value)).epsilon(1e-6));
  CHECK_THROWS_AS(direct_sum({a.space, b.space}, {0.5, 0.6}), ValidationError);
}

TEST_CASE("tensor products and L(Z2) (x) L(Z3) = L(Z6)") {
  const auto z2g = cyclic_group(2);
  const auto z3g = cyclic_group(3);
  const auto z6g = cyclic_group(6);
  const auto a = group_algebra(z2g);
  const auto b = group_algebra(z3g);
  const auto c = group_algebra(z6g);
  const auto t = tensor(a.space, b.space);
  Rng rng(19);
  const Element x = a.space.random(rng);
  CHECK(std::abs(t.space.trace(kron(t, x, b.space.unit)) - a.space.trace(x)) < 1e-12);

  const auto u = random_multiplier(z2g, rng, true);
  const auto v = random_multiplier(z3g, rng, true);
  const auto amp = tensor_map(t, fourier_multiplier_op(a, u), identity_map(b.space));
  for (int g = 0; g < 2; ++g) {
    for (int h = 0; h < 3; ++h) {
      CHECK(max_abs(sub(amp(kron(t, a.lambda[g], b.lambda[h])), scale(u[g], kron(t, a.lambda[g], b.lambda[h])))) <
            1e-12);
    }
  }

  // Chinese remainder isomorphism k -> (k mod 2, k mod 3) as a permutation of
  // basis vectors.
  ComplexMatrix p = ComplexMatrix::Zero(6, 6);
  for (int k = 0; k < 6; ++k) p((k % 2) * 3 + k % 3, k) = 1.0;
  std::vector<Complex> w(6);
  for (int k = 0; k < 6; ++k) {
    CHECK(p * c.lambda[k][0] * p.transpose() == kron(t, a.lambda[k % 2], b.lambda[k % 3])[0]);
    w[k] = u[k % 2] * v[k % 3];
  }
  const auto tw = fourier_multiplier_op(c, Multiplier(z6g, w));
  const auto tuv = tensor_map(t, fourier_multiplier_op(a, u), fourier_multiplier_op(b, v));
  for (int k = 0; k < 3; ++k) {
    const Element y = t.space.random(rng);
    const Element via = Element{p * tw(Element{p.transpose() * y[0] * p})[0] * p.transpose()};
    CHECK(max_abs(sub(tuv(y), via)) < 1e-12);
  }
  CHECK(cb_norm(tuv) == doctest::Approx(b2_norm(Multiplier(z6g, w)).value).epsilon(1e-6));
}

TEST_CASE("trace change") {
  const TracedAlgebra cc({1, 1}, {0.5, 0.5});
  const auto r = trace_change(cc, {1.0 / 3, 2.0 / 3}, 0.5);
  CHECK(r.h_values[0] == doctest::Approx(2.0 / 3));
  CHECK(r.h_values[1] == doctest::Approx(4.0 / 3));
  CHECK(r.radon_nikodym_defect < 1e-14);
  CHECK(r.isometry_defect < 1e-14);

  const auto same = trace_change(cc, cc.weights(), 0.5);
  CHECK(same.slices.size() == 1);
  CHECK(same.h_values[0] == 1.0);

  // M2 + M3 with h = (0.4, 1.6).
  const TracedAlgebra m({2, 3}, {0.25, 1.0 / 6});
  const auto two = trace_change(m, {0.1, 1.6 / 6}, 0.5);
  CHECK(two.h_values[0] == doctest::Approx(0.4));
  CHECK(two.h_values[1] == doctest::Approx(1.6));
  CHECK(two.slices.size() == 2);
  for (double k : two.slice_condition) CHECK(k <= std::sqrt(1.5) + 1e-12);
  CHECK(two.isometry_defect < 1e-12);

  CHECK_THROWS_AS(trace_change(cc, {1.0, 0.0}, 0.5), ValidationError);
}

TEST_CASE("Fell absorption") {
  for (const auto& g : {cyclic_group(2), cyclic_group(3), symmetric_group(3)}) {
    CHECK(fell_absorption_defect(group_algebra(g)) == 0.0);
  }
}

TEST_CASE("cb norm scope and operator norm witnesses") {
  const auto g = dihedral_group(4);
  const auto a = group_algebra(g);
  CHECK_THROWS_AS(cb_norm(conditional_expectation(a, whole_group(g))), UnsupportedError);
  CHECK_THROWS_AS(cb_norm(identity_map(a.space)), UnsupportedError);

  Rng rng(23);
  for (int k = 0; k < 5; ++k) {
    const auto u = random_multiplier(g, rng, false);
    const auto t = fourier_multiplier_op(a, u);
    CHECK(l2_extension(t).operator_norm <= operator_norm_lower_bound(t) + 1e-8);
  }
  const auto e = conditional_expectation(a, subgroup_of_order(g, 4));
  CHECK(l2_extension(e).operator_norm <= operator_norm_lower_bound(e) + 1e-8);
}
