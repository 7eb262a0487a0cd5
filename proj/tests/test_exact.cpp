#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heights/exact.hpp"

using namespace heights;

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 5) == 1);
  CHECK(binomial(64, 32) == mpz_class("1832624140942590534"));
}

TEST_CASE("squarefree integers by trial division") {
  CHECK(is_squarefree_int(2));
  CHECK(is_squarefree_int(-1));
  CHECK(is_squarefree_int(30));
  CHECK(is_squarefree_int(-15));
  CHECK_FALSE(is_squarefree_int(4));
  CHECK_FALSE(is_squarefree_int(12));
  CHECK_FALSE(is_squarefree_int(-18));
  CHECK_FALSE(is_squarefree_int(0));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == mpq_class(3, 4));
  CHECK(parse_rational("-7") == mpq_class(-7));
  CHECK(parse_rational(" 1/2 ") == mpq_class(1, 2));
  CHECK(parse_rational("0/5") == 0);
  CHECK(parse_rational("6/4") == mpq_class(3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rational polynomial helpers") {
  QPoly f = q_from_z({-2, 0, 1});  // x^2 - 2
  CHECK(q_degree(f) == 2);
  CHECK(q_degree(QPoly{}) == -1);
  CHECK(q_degree(QPoly{0, 0}) == -1);

  QPoly df = q_derivative(f);
  REQUIRE(q_degree(df) == 1);
  CHECK(df[1] == 2);

  QPoly prod = q_mul(q_from_z({-1, 1}), q_from_z({1, 1}));  // (x-1)(x+1)
  CHECK(prod == q_from_z({-1, 0, 1}));

  QPoly rem = q_rem(q_from_z({0, 0, 1}), q_from_z({-2, 1}));  // x^2 mod (x-2)
  REQUIRE(q_degree(rem) == 0);
  CHECK(rem[0] == 4);

  // gcd((x-1)(x-2), (x-1)(x-3)) = x - 1, monic
  QPoly g = q_gcd(q_mul(q_from_z({-1, 1}), q_from_z({-2, 1})),
                  q_mul(q_from_z({-1, 1}), q_from_z({-3, 1})));
  CHECK(g == q_from_z({-1, 1}));
}

TEST_CASE("integer polynomial product") {
  CHECK(z_mul({-1, 1}, {1, 1}) == ZPoly{-1, 0, 1});
  CHECK(z_mul({1, 2}, {3, 0, 1}) == ZPoly{3, 6, 1, 2});
}

TEST_CASE("squarefree polynomials") {
  CHECK(is_squarefree_poly({-2, 0, 1}));       // x^2 - 2
  CHECK(is_squarefree_poly({-6, 11, -6, 1}));  // (x-1)(x-2)(x-3)
  CHECK_FALSE(is_squarefree_poly({1, -2, 1}));  // (x-1)^2
  CHECK_FALSE(is_squarefree_poly({0, 0, 1}));   // x^2
}

TEST_CASE("Sturm chains count real roots exactly") {
  CHECK(sturm_real_root_count({-2, 0, 1}) == 2);       // x^2 - 2
  CHECK(sturm_real_root_count({1, 0, 1}) == 0);        // x^2 + 1
  CHECK(sturm_real_root_count({-2, 0, 0, 1}) == 1);    // x^3 - 2
  CHECK(sturm_real_root_count({-6, 11, -6, 1}) == 3);  // (x-1)(x-2)(x-3)
  CHECK(sturm_real_root_count({-1, -1, 0, 0, 1}) == 2);  // x^4 - x - 1
  CHECK(sturm_real_root_count({1, 1, 1, 1, 1}) == 0);    // 5th cyclotomic
}

TEST_CASE("integer root detection for monic polynomials") {
  CHECK(has_integer_root({-4, 0, 1}));    // roots +-2
  CHECK(has_integer_root({2, 3, 1}));     // (x+1)(x+2)
  CHECK(has_integer_root({0, 5, 1}));     // root 0
  CHECK_FALSE(has_integer_root({-2, 0, 1}));
  CHECK_FALSE(has_integer_root({-2, 0, 0, 1}));
  CHECK_FALSE(has_integer_root({1, 1, 1}));
}

TEST_CASE("closed unit disk decision by root squaring") {
  CHECK(all_roots_in_closed_unit_disk({-1, 1}));          // X - 1
  CHECK_FALSE(all_roots_in_closed_unit_disk({2, 1}));     // X + 2
  CHECK(all_roots_in_closed_unit_disk({1, 1, 1}));        // X^2 + X + 1
  CHECK_FALSE(all_roots_in_closed_unit_disk({-1, -1, 1}));  // golden ratio root
  CHECK(all_roots_in_closed_unit_disk({1, 1, 1, 1, 1}));  // 5th cyclotomic
  CHECK_FALSE(all_roots_in_closed_unit_disk({-2, 0, 1}));   // roots +-sqrt(2)
  CHECK(all_roots_in_closed_unit_disk({0, -1, 1}));       // X(X - 1)
  CHECK(all_roots_in_closed_unit_disk({1, -2, 1}));       // (X - 1)^2
  CHECK_FALSE(all_roots_in_closed_unit_disk({2, -3, 1}));   // (X-1)(X-2)
  CHECK(all_roots_in_closed_unit_disk({0, 0, 0, 1}));     // X^3
}

TEST_CASE("exact linear algebra over the rationals") {
  QMatrix a = {{1, 2}, {3, 4}};
  CHECK(q_det(a) == -2);

  QMatrix inv;
  REQUIRE(q_invert(a, inv));
  CHECK(inv[0][0] == -2);
  CHECK(inv[0][1] == 1);
  CHECK(inv[1][0] == mpq_class(3, 2));
  CHECK(inv[1][1] == mpq_class(-1, 2));

  QMatrix singular = {{1, 2}, {2, 4}};
  CHECK(q_det(singular) == 0);
  CHECK_FALSE(q_invert(singular, inv));

  QMatrix id = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  REQUIRE(q_invert(id, inv));
  CHECK(inv == id);
  CHECK(q_det(id) == 1);
}
