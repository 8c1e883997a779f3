#include "doctest.h"

#include "hsm/window.hpp"

using namespace hsm;

TEST_CASE("ball windows") {
  CHECK(ball_window(free_group(2), 1)->size() == 5);
  CHECK(ball_window(free_group(2), 2)->size() == 17);
  const auto l = ball_window(lattice(1), 3);
  CHECK(l->size() == 7);
  CHECK(ball_size(lattice(2), 2) == 13);
  CHECK_THROWS_AS(ball_window(free_group(3), 8), ValidationError);
  CHECK_THROWS_AS(ball_window(free_group(2), 3, 20), ValidationError);
}

TEST_CASE("difference set invariants") {
  for (const auto& w : {ball_window(free_group(2), 2), ball_window(lattice(2), 2)}) {
    const auto& amb = w->ambient();
    CHECK(w->identity_index() >= 0);
    for (const auto& g : w->difference_set()) {
      CHECK(w->find_difference(amb.inv(g)) >= 0);
      CHECK(amb.length(g) <= 2 * w->radius());
    }
    for (int i = 0; i < w->size(); ++i) {
      for (int j = 0; j < w->size(); ++j) {
        const auto d = amb.mul(amb.inv(w->elements()[j]), w->elements()[i]);
        CHECK(w->difference_set()[w->difference_index(i, j)] == d);
      }
    }
  }
}

TEST_CASE("free words and lattice labels") {
  const auto f = free_group(2);
  const auto g = f.parse("abA");
  CHECK(f.length(g) == 3);
  CHECK(f.label(g) == "abA");
  CHECK(f.length(f.parse("aA")) == 0);
  CHECK(f.label(f.identity()) == "e");
  CHECK_THROWS_AS(f.parse("c"), ParseError);
  const auto z2 = lattice(2);
  CHECK(z2.label(z2.parse("(1,-2)")) == "(1,-2)");
  CHECK(z2.length(z2.parse("(1,-2)")) == 3);
  CHECK_THROWS_AS(z2.parse("(1)"), ParseError);
  CHECK_THROWS_AS(GroupWindow(f, {f.identity(), f.identity()}), ValidationError);
}
