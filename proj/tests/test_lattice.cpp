#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "heights/errors.hpp"
#include "heights/lattice.hpp"
#include "oracle.hpp"

using namespace heights;

namespace {

using Key = std::vector<long long>;

Key point_key(const MonicPolynomial& f) {
  Key k;
  for (unsigned j = 1; j <= f.degree(); ++j)
    for (const mpz_class& c : f.coeff(j).coords()) k.push_back(c.get_si());
  return k;
}

}  // namespace

TEST_CASE("determinant formula") {
  NumberField q = NumberField::make_rationals();
  NumberField ki = NumberField::make_quadratic(-1);
  NumberField k2 = NumberField::make_quadratic(2);
  NumberField k5 = NumberField::make_quadratic(5);

  CHECK(det_formula(q, 1) == make_structured(1, 0, 1, 0));
  CHECK(det_formula(q, 3) == make_structured(1, 0, 1, 0));
  CHECK(det_formula(ki, 1) == make_structured(1, 0, 1, 0));  // sqrt(4)/2
  CHECK(det_formula(ki, 2) == make_structured(1, 0, 1, 0));
  CHECK(det_formula(k2, 1) == make_structured(4, 0, 2, 1));  // 2*sqrt(2)
  CHECK(det_formula(k2, 2) == make_structured(8, 0, 1, 0));
  CHECK(det_formula(k5, 1) == make_structured(5, 0, 5, 1));  // sqrt(5)
  CHECK(det_formula(k5, 2) == make_structured(5, 0, 1, 0));
  CHECK(det_formula(k2, 1).float_value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(det_formula(q, 0), std::invalid_argument);
}

TEST_CASE("lattice construction validates itself for every built-in field") {
  NumberField q = NumberField::make_rationals();
  NumberField ki = NumberField::make_quadratic(-1);
  NumberField k2 = NumberField::make_quadratic(2);
  NumberField k5 = NumberField::make_quadratic(5);
  for (const NumberField* k : {&q, &ki, &k2, &k5})
    for (unsigned n : {1u, 2u}) {
      MinkowskiLattice lat(*k, n);
      CHECK(lat.rank() == k->degree() * n);
      CHECK(lat.basis_matrix().size() == lat.rank());
      CHECK(lat.determinant() == det_formula(*k, n));
    }
  CHECK_THROWS_AS(MinkowskiLattice(q, 0), std::invalid_argument);
}

TEST_CASE("membership at the body boundary") {
  NumberField q = NumberField::make_rationals();
  MinkowskiLattice lat(q, 1);
  CHECK(body_membership(lat, 1.0, {q.zero()}));
  CHECK(body_membership(lat, 3.0, {q.from_int(3)}));
  CHECK_FALSE(body_membership(lat, 2.9, {q.from_int(3)}));

  NumberField k2 = NumberField::make_quadratic(2);
  MinkowskiLattice lat2(k2, 1);
  FieldElement r2 = k2.element({0, 1});
  CHECK(body_membership(lat2, 2.0, {r2}));  // |r2| * |-r2| = 2
  CHECK_FALSE(body_membership(lat2, 1.9, {r2}));

  CHECK_THROWS_AS(body_membership(lat, 0.5, {q.zero()}), std::invalid_argument);
  CHECK_THROWS_AS(body_membership(lat, 2.0, {q.zero(), q.zero()}), std::invalid_argument);
}

TEST_CASE("point counts") {
  NumberField q = NumberField::make_rationals();
  NumberField ki = NumberField::make_quadratic(-1);
  CHECK(count_points(MinkowskiLattice(q, 1), 4.5) == 9);
  CHECK(count_points(MinkowskiLattice(q, 2), 1.0) == 9);
  CHECK(count_points(MinkowskiLattice(ki, 1), 1.0) == 5);
  // the degree-2 body over Q at threshold T is the census at bound T
  CHECK(count_points(MinkowskiLattice(q, 2), 20.0) == 1643);
}

TEST_CASE("points match the reference scan") {
  struct Combo {
    oracle::Field ok;
    unsigned n;
    double T;
  };
  NumberField q = NumberField::make_rationals();
  NumberField ki = NumberField::make_quadratic(-1);
  NumberField k2 = NumberField::make_quadratic(2);
  const Combo combos[] = {{{0}, 2, 4.5}, {{0}, 3, 2.2}, {{-1}, 1, 6.5}, {{-1}, 2, 2.5}, {{2}, 1, 3.0}};
  for (const Combo& c : combos) {
    CAPTURE(c.ok.d);
    CAPTURE(c.n);
    CAPTURE(c.T);
    const NumberField& k = c.ok.d == 0 ? q : (c.ok.d == -1 ? ki : k2);
    MinkowskiLattice lat(k, c.n);
    CensusList pts = body_points(lat, c.T);
    std::vector<oracle::Tail> ref = oracle::census_thr(c.ok, static_cast<int>(c.n), c.T);
    CHECK(pts.total == ref.size());
    CHECK(count_points(lat, c.T) == ref.size());
    REQUIRE(pts.polys.size() == ref.size());
    for (size_t i = 0; i < ref.size(); ++i) {
      Key expected;
      for (const oracle::Coord& co : ref[i]) {
        expected.push_back(co[0]);
        if (c.ok.degree() == 2) expected.push_back(co[1]);
      }
      CHECK(point_key(pts.polys[i]) == expected);
    }
  }
}

TEST_CASE("body is symmetric under root negation") {
  NumberField k2 = NumberField::make_quadratic(2);
  MinkowskiLattice lat(k2, 2);
  CensusList pts = body_points(lat, 6.0);
  REQUIRE(pts.total > 0);
  std::set<Key> keys;
  for (const auto& f : pts.polys) keys.insert(point_key(f));
  for (Key k : keys) {
    k[0] = -k[0];  // a_1 -> -a_1 (both coordinates), a_2 fixed
    k[1] = -k[1];
    CHECK(keys.count(k) == 1);
  }
}

TEST_CASE("counts grow with the bound and resource caps hold") {
  NumberField ki = NumberField::make_quadratic(-1);
  MinkowskiLattice lat(ki, 2);
  std::uint64_t prev = 0;
  for (double T : {1.0, 2.0, 4.0}) {
    std::uint64_t c = count_points(lat, T);
    CHECK(c >= prev);
    prev = c;
  }
  CensusOptions tiny;
  tiny.candidate_cap = 3;
  CHECK_THROWS_AS(count_points(lat, 4.0, tiny), resource_error);
  CHECK_THROWS_AS(body_points(lat, 0.25), std::invalid_argument);
}

TEST_CASE("counts track the body volume at growing bounds") {
  NumberField q = NumberField::make_rationals();
  NumberField ki = NumberField::make_quadratic(-1);
  struct Combo {
    const NumberField* k;
    unsigned n;
    std::uint64_t samples;
  };
  const Combo combos[] = {{&q, 1, 200000}, {&q, 2, 400000}, {&ki, 1, 400000}, {&ki, 2, 1000000}};
  const double T = 20.0;
  for (const Combo& c : combos) {
    CAPTURE(c.k->id());
    CAPTURE(c.n);
    MinkowskiLattice lat(*c.k, c.n);
    double count = static_cast<double>(count_points(lat, T));
    VolumeEstimate vol = volume_mc(VolumeMode::Field, c.k, c.n, T, c.samples, 11, 2);
    REQUIRE(vol.estimate > 0);
    double ratio = count * lat.determinant().float_value / vol.estimate;
    CHECK(std::fabs(ratio - 1.0) <= 0.1);
  }
}
