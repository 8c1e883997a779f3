#include "doctest.h"

#include <cmath>

#include "hsm/io.hpp"

using namespace hsm;

namespace {

std::filesystem::path data(const char* name) { return std::filesystem::path(HSM_TEST_DATA) / name; }

}  // namespace

TEST_CASE("key/value documents") {
  const auto doc = io::parse_key_value("# comment\nkind = table  # trailing\nlabels = e a\ntable:\n0 1\n1 0\n\nx = 2\n");
  CHECK(doc.require("kind") == "table");
  CHECK(doc.require("x") == "2");
  CHECK(doc.block("table").size() == 2);
  CHECK_THROWS_AS(doc.require("missing"), ParseError);
  CHECK_THROWS_AS(io::parse_key_value("a = 1\na = 2\n"), ParseError);
  CHECK_THROWS_AS(io::parse_key_value("just words\n"), ParseError);
}

TEST_CASE("numbers") {
  CHECK(io::parse_complex("1") == Complex(1, 0));
  CHECK(io::parse_complex("1+2j") == Complex(1, 2));
  CHECK(io::parse_complex("-0.5j") == Complex(0, -0.5));
  CHECK(io::parse_complex("1e-3-4j") == Complex(1e-3, -4));
  CHECK(io::parse_complex("2-i") == Complex(2, -1));
  CHECK(io::parse_complex("j") == Complex(0, 1));
  CHECK(io::parse_real("1/3", "x") == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(io::parse_complex("1+2k"), ParseError);
  CHECK_THROWS_AS(io::parse_real("1/0", "x"), ParseError);
  CHECK_THROWS_AS(io::parse_int("3.5", "n"), ParseError);
}

TEST_CASE("matrix files") {
  const auto t = io::read_matrix(data("triangular.txt"));
  CHECK(t.rows() == 2);
  CHECK(t(0, 1) == Complex(0.0));
  CHECK(t(1, 0) == Complex(1.0));
  CHECK(io::read_matrix(data("triangular.csv")) == t);
  const auto c = io::read_matrix(data("complex.txt"));
  CHECK(c.rows() == 2);
  CHECK(c.cols() == 3);
  CHECK(c(0, 0) == Complex(1, 2));
  CHECK(c(1, 1) == Complex(1e-3, -4));
  CHECK_THROWS_AS(io::parse_matrix("2 2\n1 2 3\n", false), ParseError);
  CHECK_THROWS_AS(io::read_matrix(data("nope.txt")), ParseError);
}

TEST_CASE("group specs and expressions") {
  CHECK(io::read_group_spec(data("s3.group")).group->order() == 6);
  const auto z3 = io::read_group_spec(data("z3_table.group"));
  CHECK(z3.group->label(1) == "a");
  CHECK(z3.group->mul(1, 1) == 2);
  CHECK(io::read_group_spec(data("z2_s3.group")).group->order() == 12);
  const auto w = io::read_group_spec(data("free2.group"));
  CHECK_FALSE(w.finite());
  CHECK(w.window->size() == 17);
  CHECK(io::parse_carrier_expression("product(cyclic(2), dihedral(3))").group->order() == 12);
  CHECK(io::parse_carrier_expression("lattice(1, 3)").window->size() == 7);
  CHECK_THROWS_AS(io::parse_carrier_expression("cyclic(0)"), ParseError);
  CHECK_THROWS_AS(io::parse_carrier_expression("klein(4)"), ParseError);
  CHECK_THROWS_AS(io::parse_group_spec(io::parse_key_value("kind = table\ntable:\n0 1\n0 1\n")), ParseError);
}

TEST_CASE("multiplier specs") {
  const auto u = io::read_multiplier_spec(data("s3_transposition.mult"));
  CHECK(u.group()->order() == 6);
  CHECK(u[u.group()->index_of("(01)")] == Complex(0.5));
  CHECK(u[u.group()->index_of("(12)")] == Complex(0.0));
  CHECK(u[u.group()->index_of("(012)")] == Complex(-0.25, 0.5));

  const auto z = io::read_multiplier_spec(data("z3_table.mult"));
  CHECK(z[1] == Complex(0, 1));

  const auto f = io::read_multiplier_spec(data("free2_exp.mult"));
  CHECK_FALSE(f.on_group());
  CHECK(f[f.identity_index()] == Complex(1.0));

  const auto wl = io::read_multiplier_spec(data("s3_wordlength.mult"));
  CHECK(wl[wl.group()->index_of("(02)")].real() == doctest::Approx(std::exp(-3.0)));

  try {
    io::read_multiplier_spec(data("missing_group.mult"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("no_such_file.group") != std::string::npos);
  }
  CHECK_THROWS_AS(io::parse_multiplier_spec(io::parse_key_value("group = cyclic(2)\nkind = delta\nelement = 7\n")),
                  ParseError);
}

TEST_CASE("cocycle specs") {
  const auto a = io::read_cocycle_spec(data("a3_coset.cocycle"));
  CHECK(a.space.points() == 2);
  CHECK(validate_cocycle(a).valid);
  const auto swap = io::read_cocycle_spec(data("z2_on_two_points.cocycle"));
  CHECK(swap.space.action[1][0] == 1);
  CHECK(validate_cocycle(swap).valid);
  CHECK_THROWS_AS(io::read_cocycle_spec(data("bad_alpha.cocycle")), ValidationError);
}
