#include "doctest.h"

#include <cmath>
#include <random>

#include "hsm/schur.hpp"
#include "oracles/schur_oracle.hpp"

using hsm::Complex;
using hsm::ComplexMatrix;

namespace {

constexpr double kTol = 1e-7;
constexpr double kSlack = 10 * kTol;

ComplexMatrix random_complex(int m, int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix a(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  }
  return a;
}

ComplexMatrix random_real(int m, int n, std::mt19937_64& rng) {
  return random_complex(m, n, rng).real().cast<Complex>();
}

double norm(const ComplexMatrix& a) { return hsm::schur_norm(a, kTol).value; }

}  // namespace

TEST_CASE("schur_norm: spec examples") {
  for (int n : {1, 3, 7}) CHECK(norm(ComplexMatrix::Identity(n, n)) == doctest::Approx(1.0));
  ComplexMatrix swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  CHECK(norm(swap) == doctest::Approx(1.0).epsilon(1e-6));
  ComplexMatrix tri(2, 2);
  tri << 1.0, 0.0, 1.0, 1.0;
  CHECK(norm(tri) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-6));
  CHECK(norm(ComplexMatrix::Ones(5, 5)) == doctest::Approx(1.0));
  CHECK(norm(ComplexMatrix::Zero(3, 2)) == 0.0);
}

TEST_CASE("schur_norm: triangular value certified by two independent oracles") {
  Eigen::Matrix2d tri;
  tri << 1.0, 0.0, 1.0, 1.0;
  const double by_factor = oracle::schur_norm_by_factorization(tri, 7, 40);
  const double by_dual = oracle::schur_norm_by_trace_duality_2x2(tri);
  const double expect = 2.0 / std::sqrt(3.0);
  CHECK(by_factor == doctest::Approx(expect).epsilon(1e-6));
  CHECK(by_dual == doctest::Approx(expect).epsilon(1e-6));
  const auto r = hsm::schur_norm(tri.cast<Complex>(), 1e-9);
  CHECK(r.value == doctest::Approx(expect).epsilon(1e-8));
  CHECK(r.lower_bound == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("schur_norm: SDP path agrees with fast paths") {
  hsm::SchurOptions opt;
  opt.fast_paths = false;
  std::mt19937_64 rng(11);
  const ComplexMatrix g = random_complex(4, 3, rng);
  const ComplexMatrix psd = g * g.adjoint();
  const auto r = hsm::schur_norm(psd, opt);
  CHECK(r.method == "sdp");
  CHECK(r.value == doctest::Approx(psd.diagonal().real().maxCoeff()).epsilon(1e-6));
  const ComplexMatrix a = random_complex(4, 1, rng);
  const ComplexMatrix b = random_complex(5, 1, rng);
  const ComplexMatrix r1 = a * b.adjoint();
  const auto s = hsm::schur_norm(r1, opt);
  CHECK(s.value == doctest::Approx(a.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff()).epsilon(1e-6));
  CHECK(hsm::schur_norm(ComplexMatrix::Identity(4, 4), opt).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("schur_norm: certificates verify") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix a = trial % 2 ? random_complex(3, 4, rng) : random_real(4, 4, rng);
    const auto r = hsm::schur_norm(a, kTol);
    const auto rep = hsm::verify_certificate(a, r);
    CHECK_MESSAGE(rep.pass, rep.message);
    CHECK(r.gap <= std::max(10 * kTol, 10 * kTol * r.value));
    CHECK(r.p.cols() <= a.rows() + a.cols());
    CHECK(r.lower_bound <= r.value + kTol);
  }
}

TEST_CASE("verify_certificate: corrupted results fail") {
  std::mt19937_64 rng(5);
  const ComplexMatrix a = random_real(3, 3, rng);
  auto r = hsm::schur_norm(a, kTol);
  REQUIRE(hsm::verify_certificate(a, r).pass);

  auto zeroed = r;
  zeroed.p.setZero();
  const auto rep = hsm::verify_certificate(a, zeroed);
  CHECK_FALSE(rep.pass);
  double expect = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    expect = std::max(expect, std::abs(a.data()[k]) / (1.0 + std::abs(a.data()[k])));
  }
  CHECK(rep.reconstruction_violation == doctest::Approx(expect));

  auto inflated = r;
  inflated.lower_bound = r.value + 1.0;
  CHECK_FALSE(hsm::verify_certificate(a, inflated).pass);

  auto weak = r;
  weak.lower_bound = 0.0;
  CHECK_FALSE(hsm::verify_certificate(a, weak).pass);
}

TEST_CASE("schur_norm: invariance properties") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 4; ++trial) {
    const int m = 3 + trial % 2;
    const int n = 4 - trial % 2;
    const ComplexMatrix a = random_complex(m, n, rng);
    const double v = norm(a);

    Eigen::PermutationMatrix<Eigen::Dynamic> pr(m);
    Eigen::PermutationMatrix<Eigen::Dynamic> pc(n);
    pr.setIdentity();
    pc.setIdentity();
    std::shuffle(pr.indices().data(), pr.indices().data() + m, rng);
    std::shuffle(pc.indices().data(), pc.indices().data() + n, rng);
    const ComplexMatrix permuted = pr * a * pc;
    CHECK(std::abs(norm(permuted) - v) <= 2 * kSlack * std::max(1.0, v));

    CHECK(std::abs(norm(a.conjugate()) - v) <= 2 * kSlack * std::max(1.0, v));
    CHECK(std::abs(norm(a.transpose()) - v) <= 2 * kSlack * std::max(1.0, v));

    const ComplexMatrix sub = a.topLeftCorner(m - 1, n - 1);
    CHECK(norm(sub) <= v + 2 * kSlack * std::max(1.0, v));
    CHECK(v >= a.cwiseAbs().maxCoeff() - kTol);
  }
}

TEST_CASE("schur_norm: random PSD equals max diagonal; tensor submultiplicative") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 3; ++trial) {
    const ComplexMatrix g = random_complex(5, 2 + trial, rng);
    const ComplexMatrix psd = g * g.adjoint();
    CHECK(std::abs(norm(psd) - psd.diagonal().real().maxCoeff()) <= 2 * kTol);
  }
  const ComplexMatrix a = random_real(2, 3, rng);
  const ComplexMatrix b = random_complex(2, 2, rng);
  ComplexMatrix ab(4, 6);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 3; ++j) ab.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  }
  const double na = norm(a);
  const double nb = norm(b);
  CHECK(norm(ab) <= na * nb + 3 * kSlack * std::max(1.0, na * nb));
}

TEST_CASE("schur_norm: input validation") {
  ComplexMatrix bad = ComplexMatrix::Ones(2, 2);
  bad(0, 1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(hsm::schur_norm(bad, kTol), hsm::ValidationError);
  CHECK_THROWS_AS(hsm::schur_norm(ComplexMatrix::Ones(2, 2), 0.5), hsm::ValidationError);
  CHECK_THROWS_AS(hsm::schur_norm(ComplexMatrix::Ones(2, 2), 0.0), hsm::ValidationError);
}

TEST_CASE("schur_norm: iteration cap surfaces the partial result") {
  std::mt19937_64 rng(29);
  const ComplexMatrix a = random_real(4, 4, rng);
  hsm::SchurOptions opt;
  opt.max_iterations = 2;
  try {
    (void)hsm::schur_norm(a, opt);
    FAIL("expected a solver error");
  } catch (const hsm::SchurSolverError& e) {
    CHECK(e.partial().value >= e.partial().lower_bound);
    CHECK(e.partial().lower_bound >= a.cwiseAbs().maxCoeff() - kTol);
  }
}
