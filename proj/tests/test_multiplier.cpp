#include "doctest.h"

#include <cmath>

#include "hsm/multiplier.hpp"
#include "oracles/group_oracle.hpp"

using namespace hsm;

namespace {

constexpr double kTol = 1e-7;
constexpr double kSlack = 10 * kTol;

oracle::Values values(const Multiplier& u) { return {u.values().begin(), u.values().end()}; }

Multiplier on(const GroupPtr& g, std::vector<Complex> v) { return Multiplier(g, std::move(v)); }

int three_cycle(const FiniteGroup& g) {
  for (int x = 0; x < g.order(); ++x) {
    if (g.element_order(x) == 3) return x;
  }
  return -1;
}

}  // namespace

TEST_CASE("b2_norm: spec examples") {
  for (const auto& [name, g] : group_zoo()) {
    CAPTURE(name);
    CHECK(b2_norm(Multiplier::constant(g, 1.0)).value == doctest::Approx(1.0));
    CHECK(b2_norm(Multiplier::delta(g, 0)).value == doctest::Approx(1.0));
  }
  const auto s3 = symmetric_group(3);
  const auto a3 = subgroup(s3, std::vector<int>{three_cycle(*s3)});
  CHECK(b2_norm(Multiplier::indicator(s3, a3.elements)).value == doctest::Approx(1.0));

  const auto w = ball_window(free_group(2), 1);
  const auto r = b2_norm(exp_word_length(w, 1.0));
  CHECK(r.section_lower_bound);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(is_positive_definite(exp_word_length(w, 1.0)).positive);
}

TEST_CASE("is_positive_definite: spec examples") {
  const auto z2 = cyclic_group(2);
  CHECK(is_positive_definite(Multiplier::constant(z2, 1.0)).positive);
  const auto pm = is_positive_definite(on(z2, {1.0, -1.0}));
  CHECK(pm.positive);
  CHECK(pm.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));
  const auto off = is_positive_definite(on(z2, {0.0, 1.0}));
  CHECK_FALSE(off.positive);
  CHECK(off.min_eigenvalue == doctest::Approx(-1.0));
  // non-Hermitian Schur matrix is never positive definite
  CHECK_FALSE(is_positive_definite(on(cyclic_group(3), {1.0, Complex(0, 0.5), Complex(0, 0.5)})).positive);
}

TEST_CASE("fourier_norm: spec examples and the factorization oracle gate") {
  const auto z2 = cyclic_group(2);
  for (const auto& [name, g] : group_zoo()) {
    CHECK(fourier_norm(Multiplier::delta(g, 0)) == doctest::Approx(1.0));
    CHECK(fourier_norm(Multiplier::constant(g, 1.0)) == doctest::Approx(1.0));
  }
  CHECK(fourier_norm(on(z2, {1.0, -1.0})) == doctest::Approx(1.0));

  Rng rng(101);
  for (const auto& g : {cyclic_group(2), cyclic_group(3), symmetric_group(3)}) {
    for (int trial = 0; trial < 2; ++trial) {
      const auto u = random_multiplier(g, rng, trial == 1);
      const double formula = fourier_norm(u);
      const double factor = oracle::fourier_norm_by_factorization(g->cayley_table(), values(u), 5 + trial, 12);
      CHECK(factor == doctest::Approx(formula).epsilon(1e-4));
    }
  }
}

TEST_CASE("q_norm: spec examples and the regular-representation oracle") {
  const auto z2 = cyclic_group(2);
  CHECK(q_norm(Multiplier::delta(cyclic_group(3), 0)).value == doctest::Approx(1.0).epsilon(1e-6));
  const auto ones = q_norm(on(z2, {1.0, 1.0}));
  CHECK(ones.value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(ones.upper_bound >= ones.value - kTol);

  Rng rng(7);
  const auto z3 = cyclic_group(3);
  for (int trial = 0; trial < 3; ++trial) {
    const auto f = random_multiplier(z3, rng, trial == 2);
    const auto q = q_norm(f);
    double l1 = 0.0;
    for (auto c : f.values()) l1 += std::abs(c);
    CHECK(q.value <= l1 + kSlack);
    const double ref = oracle::q_norm_by_regular_representation(z3->cayley_table(), values(f));
    CHECK(q.value == doctest::Approx(ref).epsilon(1e-6));
    REQUIRE(q.maximizer.has_value());
    CHECK(b2_norm(*q.maximizer).value <= 1.0 + kSlack);
  }
  const auto s3 = symmetric_group(3);
  const auto f = random_multiplier(s3, rng, true);
  CHECK(q_norm(f).value ==
        doctest::Approx(oracle::q_norm_by_regular_representation(s3->cayley_table(), values(f))).epsilon(1e-6));
}

TEST_CASE("sup_norm") {
  const auto z2 = cyclic_group(2);
  CHECK(sup_norm(Multiplier::constant(z2, 1.0)) == 1.0);
  CHECK(sup_norm(Multiplier::delta(z2, 0)) == 1.0);
  CHECK(sup_norm(on(z2, {2.0, -3.0})) == 3.0);
}

TEST_CASE("norm invariants on random multipliers over the zoo") {
  Rng rng(2024);
  for (const auto& [name, g] : group_zoo()) {
    CAPTURE(name);
    const auto u = random_multiplier(g, rng, true);
    const auto f = random_multiplier(g, rng, false);
    const auto report = norm_report(u, kTol, {true, true, false, true});
    REQUIRE(report.b2.has_value());
    CHECK(report.sup <= *report.b2 + kSlack);
    CHECK(*report.fourier >= *report.b2 - kSlack * std::max(1.0, *report.b2));
    // on a finite group the B2 and A norms coincide; the SDP must find it
    CHECK(*report.b2 == doctest::Approx(oracle::trace_norm_formula(g->cayley_table(), values(u))).epsilon(1e-6));

    Complex pairing = 0.0;
    for (int x = 0; x < g->order(); ++x) pairing += f[x] * u[x];
    const double q = q_norm(f).value;
    CHECK(std::abs(pairing) <= q * *report.b2 + kSlack * std::max(1.0, q * *report.b2));

    const auto pd = random_positive_definite(g, rng);
    CHECK(b2_norm(pd).value == doctest::Approx(pd[0].real()).epsilon(1e-6));
  }
}

TEST_CASE("B2 unit ball: convexity and closedness under pointwise limits") {
  Rng rng(99);
  const auto g = dihedral_group(4);
  auto normalized = [&](bool complex) {
    const auto u = random_multiplier(g, rng, complex);
    return Complex(1.0 / b2_norm(u).value, 0.0) * u;
  };
  const auto u = normalized(true);
  const auto v = normalized(false);
  for (double s : {0.0, 0.3, 0.7, 1.0}) {
    const auto mix = Complex(s) * u + Complex(1.0 - s) * v;
    CHECK(b2_norm(mix).value <= 1.0 + kSlack);
  }
  // u_n = (1 - 1/n) u + (1/n) delta_e has norm <= 1 and converges to u
  double last = 0.0;
  for (int n = 1; n <= 64; n *= 4) {
    const double w = 1.0 / n;
    const auto un = Complex(1.0 - w) * u + Complex(w) * Multiplier::delta(g, 0);
    last = b2_norm(un).value;
    CHECK(last <= 1.0 + kSlack);
  }
  CHECK(b2_norm(u).value <= 1.0 + kSlack);
}

TEST_CASE("random generators") {
  Rng rng(5);
  for (const auto& [name, g] : group_zoo()) {
    const auto u = random_unit_positive_definite(g, rng);
    CHECK(u[0] == Complex(1.0));
    for (auto c : u.values()) {
      CHECK(c.real() >= 0.0);
      CHECK(c.real() <= 1.0 + 1e-15);
      CHECK(c.imag() == 0.0);
    }
    CHECK(is_positive_definite(u, 1e-10).positive);
    CHECK(is_positive_definite(random_positive_definite(g, rng), 1e-10).positive);
    const auto p = random_probability(g, rng);
    double total = 0.0;
    for (auto c : p.values()) total += c.real();
    CHECK(total == doctest::Approx(1.0));
  }
}

TEST_CASE("carrier checks") {
  CHECK_THROWS_AS(Multiplier(cyclic_group(3), {1.0, 2.0}), ValidationError);
  const auto w = ball_window(lattice(1), 2);
  CHECK_THROWS_AS(Multiplier(w, {1.0}), ValidationError);
  const auto u = exp_word_length(w, 0.5);
  CHECK_THROWS_AS(fourier_norm(u), UnsupportedError);
  CHECK_THROWS_AS((void)u.group(), UnsupportedError);
  CHECK(reflect(u).values() == u.values());
}
