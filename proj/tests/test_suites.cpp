#include "doctest.h"

#include "hsm/error.hpp"
#include "hsm/suites.hpp"

using namespace hsm;

TEST_CASE("catalog") {
  const auto& c = suites::catalog();
  CHECK(c.size() == 6);
  for (const char* name : {"gilbert-equivalences", "hereditary", "semigroup", "vn-roundtrip", "interpolation",
                           "trace-change"}) {
    CHECK(suites::has_suite(name));
  }
  for (std::size_t k = 0; k < c.size(); ++k) {
    CHECK_FALSE(c[k].anchor.empty());
    if (k > 0) CHECK(c[k - 1].name < c[k].name);
  }
  CHECK_FALSE(suites::has_suite("nope"));
  CHECK_THROWS_AS(suites::run_suite("nope", {}), ValidationError);
  CHECK_THROWS_AS(suites::run_suite("hereditary", {42, 0.5, 3}), ValidationError);
}

TEST_CASE("rows") {
  CHECK(suites::make_row("a", "x", "<=", 1.0, 0.5, 0.6).pass);
  CHECK_FALSE(suites::make_row("a", "x", "<=", 1.0, 0.5, 0.4).pass);
  CHECK(suites::make_row("a", "x", ">=", 0.5, 1.0, 0.5).pass);
  CHECK_FALSE(suites::make_row("a", "x", "=", 0.5, 1.0, 0.4).pass);
  CHECK_THROWS_AS(suites::make_row("a", "x", "<", 0.5, 1.0, 0.4), ValidationError);
}

TEST_CASE("every suite passes and is reproducible") {
  const suites::Options o{7, 1e-7, 4};
  for (const auto& e : suites::catalog()) {
    const auto a = suites::run_suite(e.name, o);
    const auto b = suites::run_suite(e.name, o);
    CHECK_MESSAGE(a.pass(), e.name);
    CHECK_FALSE(a.rows.empty());
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
      CHECK(a.rows[k].name == b.rows[k].name);
      CHECK(a.rows[k].lhs == b.rows[k].lhs);
      CHECK(a.rows[k].rhs == b.rows[k].rhs);
      CHECK_FALSE(a.rows[k].anchor.empty());
    }
  }
}

TEST_CASE("parts draw from independent streams") {
  const auto small = suites::run_suite("hereditary", {11, 1e-7, 2});
  const auto large = suites::run_suite("hereditary", {11, 1e-7, 3});
  // First restriction instance is identical regardless of instance count.
  CHECK(small.rows[0].name == large.rows[0].name);
  CHECK(small.rows[0].lhs == large.rows[0].lhs);
}
