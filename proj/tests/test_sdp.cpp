#include "doctest.h"

#include <cmath>

#include "hsm/sdp.hpp"

namespace sdp = hsm::sdp;

TEST_CASE("sdp: largest eigenvalue as an SDP") {
  // maximize -t subject to t I - C PSD gives -lambda_max(C).
  Eigen::Matrix3d c;
  c << 2, 1, 0, 1, 3, 1, 0, 1, 4;
  sdp::HermitianBuilder builder;
  const int blk = builder.add_block(3, false);
  const int t = builder.add_variable(-1.0);
  for (int i = 0; i < 3; ++i) {
    builder.add_coefficient(t, blk, i, i, 1.0);
    for (int j = i; j < 3; ++j) {
      if (c(i, j) != 0.0) builder.add_constant(blk, i, j, -c(i, j));
    }
  }
  const auto sol = sdp::solve(builder.build());
  REQUIRE(sol.status == sdp::Status::Optimal);
  const double lmax = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(c).eigenvalues()(2);
  CHECK(sol.dual_objective == doctest::Approx(-lmax).epsilon(1e-8));
  CHECK(sol.primal_objective == doctest::Approx(-lmax).epsilon(1e-8));
}

TEST_CASE("sdp: complex Hermitian block through the real embedding") {
  // lambda_max of [[1, i], [-i, 1]] is 2.
  sdp::HermitianBuilder builder;
  const int blk = builder.add_block(2, true);
  const int t = builder.add_variable(-1.0);
  builder.add_coefficient(t, blk, 0, 0, 1.0);
  builder.add_coefficient(t, blk, 1, 1, 1.0);
  builder.add_constant(blk, 0, 0, -1.0);
  builder.add_constant(blk, 1, 1, -1.0);
  builder.add_constant(blk, 0, 1, hsm::Complex(0.0, -1.0));
  const auto sol = sdp::solve(builder.build());
  REQUIRE(sol.status == sdp::Status::Optimal);
  CHECK(sol.y(0) == doctest::Approx(2.0).epsilon(1e-8));
  // X side: the projector onto the top eigenvector, trace one.
  const hsm::ComplexMatrix x = builder.primal_block(sol, blk);
  CHECK(x.trace().real() == doctest::Approx(1.0).epsilon(1e-7));
  hsm::ComplexMatrix h(2, 2);
  h << 1.0, hsm::Complex(0, 1), hsm::Complex(0, -1), 1.0;
  CHECK((h * x).trace().real() == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("sdp: linear program in 1x1 blocks") {
  // maximize y1 + y2 with y1 <= 1, y2 <= 2, y1 + y2 <= 2.5
  sdp::HermitianBuilder builder;
  const int b0 = builder.add_block(1, false);
  const int b1 = builder.add_block(1, false);
  const int b2 = builder.add_block(1, false);
  const int y1 = builder.add_variable(1.0);
  const int y2 = builder.add_variable(1.0);
  builder.add_constant(b0, 0, 0, 1.0);
  builder.add_coefficient(y1, b0, 0, 0, -1.0);
  builder.add_constant(b1, 0, 0, 2.0);
  builder.add_coefficient(y2, b1, 0, 0, -1.0);
  builder.add_constant(b2, 0, 0, 2.5);
  builder.add_coefficient(y1, b2, 0, 0, -1.0);
  builder.add_coefficient(y2, b2, 0, 0, -1.0);
  const auto sol = sdp::solve(builder.build());
  REQUIRE(sol.status == sdp::Status::Optimal);
  CHECK(sol.dual_objective == doctest::Approx(2.5).epsilon(1e-8));
}
