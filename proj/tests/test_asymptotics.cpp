#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "heights/asymptotics.hpp"
#include "heights/csv.hpp"

using namespace heights;

namespace {

// independent exact rebuild of the embedding constants, used to sweep the
// reciprocity ratio
mpq_class ref_c_real(unsigned e) {
  unsigned M = (e - 1) / 2;
  mpq_class v = 1;
  for (unsigned i = 0; i < e - M; ++i) v *= 2;
  for (unsigned l = 1; l <= M; ++l) {
    mpq_class f(2 * l, 2 * l + 1);
    if (e >= 2 * l)
      for (unsigned i = 0; i < e - 2 * l; ++i) v *= f;
  }
  for (unsigned i = 0; i < M; ++i) v *= e;
  for (unsigned i = 2; i <= M; ++i) v /= i;
  v.canonicalize();
  return v;
}

mpq_class ref_c_complex(unsigned e) {
  mpq_class v = 1;
  for (unsigned i = 0; i < e; ++i) v *= e;
  mpz_class fact = 1;
  for (unsigned i = 2; i <= e; ++i) fact *= i;
  v /= fact;
  v /= fact;
  v.canonicalize();
  return v;
}

}  // namespace

TEST_CASE("real embedding constants") {
  CHECK(c_real(1) == mpq_class(2));
  CHECK(c_real(2) == mpq_class(4));
  CHECK(c_real(3) == mpq_class(8));
  CHECK(c_real(4) == mpq_class(128, 9));
  CHECK(c_real(5) == mpq_class(640, 27));
  CHECK_THROWS_AS(c_real(0), std::invalid_argument);
}

TEST_CASE("complex embedding constants") {
  CHECK(c_complex(1) == make_structured(1, 1, 1, 0));           // pi
  CHECK(c_complex(2) == make_structured(1, 2, 1, 0));           // pi^2
  CHECK(c_complex(3) == make_structured({3, 4}, 3, 1, 0));      // 3/4 pi^3
  CHECK(c_complex(2).float_value == doctest::Approx(9.86960440108936).epsilon(1e-14));
  CHECK_THROWS_AS(c_complex(0), std::invalid_argument);
}

TEST_CASE("field constants") {
  NumberField q = NumberField::make_rationals();
  NumberField ki = NumberField::make_quadratic(-1);
  NumberField k2 = NumberField::make_quadratic(2);
  NumberField k5 = NumberField::make_quadratic(5);

  CHECK(c_field(q, 1) == make_structured(2, 0, 1, 0));
  CHECK(c_field(q, 2) == make_structured(8, 0, 1, 0));
  CHECK(c_field(ki, 1) == make_structured(1, 1, 1, 0));   // pi
  CHECK(c_field(ki, 2) == make_structured(2, 2, 1, 0));   // 2 pi^2
  CHECK(c_field(k2, 1) == make_structured(4, 0, 2, 1));   // 2 sqrt(2)
  CHECK(c_field(k2, 2) == make_structured(32, 0, 1, 0));
  CHECK(c_field(k2, 3) == make_structured(216, 0, 2, 1));  // 108 sqrt(2)
  CHECK(c_field(k5, 1) == make_structured(8, 0, 5, 1));    // 8/sqrt(5)
  CHECK(c_field(k2, 3).float_value == doctest::Approx(152.735064736294).epsilon(1e-14));
  CHECK_THROWS_AS(c_field(q, 0), std::invalid_argument);
}

TEST_CASE("structured constants canonicalize") {
  CHECK(make_structured(3456, 0, 8, 3) == make_structured(216, 0, 2, 1));
  CHECK(make_structured(5, 0, 5, 2) == make_structured(1, 0, 1, 0));
  CHECK(make_structured(1, 0, 12, 1) == make_structured(mpq_class(1, 2), 0, 3, 1));
  CHECK(make_structured(7, 2, 1, 1) == make_structured(189, 2, 9, 3));  // 189/27 = 7
  CHECK(make_structured(4, 0, 2, 1).float_value ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(make_structured(1, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_structured(1, 0, -3, 1), std::invalid_argument);
}

TEST_CASE("reciprocity ratios") {
  CHECK(reciprocity_ratio(2, 1, 0) == mpq_class(2));
  CHECK(reciprocity_ratio(3, 0, 1) == mpq_class(9, 4));
  CHECK(reciprocity_ratio(4, 1, 1) == mpq_class(128, 81));
  CHECK(reciprocity_ratio(1, 1, 0) == mpq_class(1));
  CHECK(reciprocity_ratio(1, 0, 1) == mpq_class(1));

  for (unsigned e = 1; e <= 6; ++e) {
    struct Sig {
      unsigned r, s;
    };
    for (Sig sig : {Sig{1, 0}, Sig{0, 1}, Sig{2, 0}, Sig{1, 1}, Sig{0, 2}}) {
      CAPTURE(e);
      CAPTURE(sig.r);
      CAPTURE(sig.s);
      mpq_class want(static_cast<unsigned long>(e));
      mpq_class rr = ref_c_real(e);
      for (unsigned i = 0; i < e; ++i) rr /= 2;
      for (unsigned i = 0; i < sig.r; ++i) want *= rr;
      for (unsigned i = 0; i < sig.s; ++i) want *= ref_c_complex(e);
      want.canonicalize();
      CHECK(reciprocity_ratio(e, sig.r, sig.s) == want);
      CHECK(c_real(e) == ref_c_real(e));
      CHECK(c_complex(e).rational == ref_c_complex(e));
    }
  }
  CHECK_THROWS_AS(reciprocity_ratio(0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(reciprocity_ratio(2, 0, 0), std::invalid_argument);
}

TEST_CASE("census prediction leading term") {
  NumberField k2 = NumberField::make_quadratic(2);
  PredictionRow row = predict_census_leading(k2, 1, 10.0);
  CHECK(row.h_exponent == 2);
  CHECK(row.log_power == 1);
  CHECK(row.q == 1);
  CHECK(row.leading_value == doctest::Approx(651.269413406059).epsilon(1e-12));
  CHECK(predict_census_leading(k2, 1, 30.0).leading_value ==
        doctest::Approx(8658.03503781806).epsilon(1e-12));
  CHECK(predict_census_leading(k2, 1, 50.0).leading_value ==
        doctest::Approx(27662.1799529602).epsilon(1e-12));

  NumberField q = NumberField::make_rationals();
  PredictionRow rq = predict_census_leading(q, 2, 20.0);
  CHECK(rq.h_exponent == 2);
  CHECK(rq.log_power == 0);
  CHECK(rq.leading_value == doctest::Approx(4.0 * 400.0).epsilon(1e-14));  // C/e^{q+1} = 8/2

  CHECK_THROWS_AS(predict_census_leading(q, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(predict_census_leading(q, 0, 2.0), std::invalid_argument);
}

TEST_CASE("integer count prediction leading term") {
  NumberField q = NumberField::make_rationals();
  PredictionRow row = predict_count_leading(q, 2, 4.0);
  CHECK(row.h_exponent == 4);
  CHECK(row.log_power == 0);
  CHECK(row.leading_value == doctest::Approx(2048.0).epsilon(1e-14));  // 8 * 4^4

  NumberField ki = NumberField::make_quadratic(-1);
  PredictionRow ri = predict_count_leading(ki, 1, 3.0);
  CHECK(ri.h_exponent == 2);  // m e^2
  CHECK(ri.leading_value == doctest::Approx(M_PI * 9.0).epsilon(1e-14));

  CHECK_THROWS_AS(predict_count_leading(q, 2, 0.9), std::invalid_argument);
}

TEST_CASE("convergence tables") {
  NumberField q = NumberField::make_rationals();
  std::vector<PredictionRow> rows =
      convergence_table(q, 2, {10.0, 20.0, 30.0}, ConvergenceMode::Census);
  REQUIRE(rows.size() == 3);
  const std::uint64_t exact[] = {423, 1643, 3663};
  const std::uint64_t warned[] = {44, 84, 124};
  for (size_t i = 0; i < 3; ++i) {
    CHECK(rows[i].has_exact);
    CHECK(rows[i].exact == exact[i]);
    CHECK(rows[i].boundary_warnings == warned[i]);
    CHECK(rows[i].ratio ==
          doctest::Approx(static_cast<double>(rows[i].exact) / rows[i].leading_value)
              .epsilon(1e-14));
  }
  CHECK(std::fabs(rows[2].ratio - 1.0) < std::fabs(rows[0].ratio - 1.0));

  std::vector<PredictionRow> irow = convergence_table(q, 2, {4.0}, ConvergenceMode::Integers);
  REQUIRE(irow.size() == 1);
  CHECK(irow[0].exact == 1844);
  CHECK(irow[0].boundary_warnings == 83);
  CHECK(irow[0].ratio == doctest::Approx(0.900390625).epsilon(1e-14));

  CHECK_THROWS_AS(convergence_table(q, 2, {}, ConvergenceMode::Census), std::invalid_argument);
  CHECK_THROWS_AS(convergence_table(q, 2, {2.0, 2.0}, ConvergenceMode::Census),
                  std::invalid_argument);
  CHECK_THROWS_AS(convergence_table(q, 2, {1.0, 2.0}, ConvergenceMode::Census),
                  std::invalid_argument);
}

TEST_CASE("constant rendering") {
  CHECK(structured_to_string(make_structured(32, 0, 1, 0)) == "32");
  CHECK(structured_to_string(make_structured(216, 0, 2, 1)) == "108*sqrt(2)");
  CHECK(structured_to_string(make_structured(2, 2, 1, 0)) == "2*pi^2");
  CHECK(structured_to_string(make_structured({3, 4}, 3, 1, 0)) == "3/4*pi^3");
  CHECK(structured_to_string(make_structured(1, 1, 1, 0)) == "pi");
  CHECK(structured_to_string(make_structured(4, 0, 2, 1)) == "2*sqrt(2)");
  CHECK(structured_to_string(make_structured(8, 0, 5, 1)) == "8/5*sqrt(5)");
  CHECK(structured_to_string(make_structured(1, 0, 1, 0)) == "1");
  CHECK(structured_to_string(make_structured(0, 0, 1, 0)) == "0");
  CHECK(structured_to_string(make_structured(-1, 2, 1, 0)) == "-pi^2");
  CHECK(csv_double(2.0 * std::sqrt(2.0)) == "2.82842712474619");
  CHECK(csv_double(5.0) == "5");
}

TEST_CASE("constants csv bytes") {
  NumberField k2 = NumberField::make_quadratic(2);
  std::ostringstream os;
  write_constants_csv(os, k2, 3, {"run"});
  CHECK(os.str() ==
        "# run\n"
        "e,c_real,c_complex_over_pi_e,c_field,c_field_float,reciprocity\n"
        "1,2,1,2*sqrt(2),2.82842712474619,1\n"
        "2,4,1,32,32,2\n"
        "3,8,3/4,108*sqrt(2),152.735064736294,3\n");
}

TEST_CASE("convergence csv bytes") {
  NumberField q = NumberField::make_rationals();
  std::vector<PredictionRow> rows = convergence_table(q, 1, {9.5}, ConvergenceMode::Integers);
  std::ostringstream os;
  write_convergence_csv(os, rows, {});
  CHECK(os.str() ==
        "H,exact,predicted,ratio,q,boundary_warnings\n"
        "9.5,19,19,1,0,0\n");
}

TEST_CASE("volume csv bytes") {
  VolumeEstimate v = volume_mc(VolumeMode::PlainReal, nullptr, 1, 5.0, 100000, 7);
  std::ostringstream os;
  write_volume_csv(os, v, {"mc"});
  CHECK(os.str() ==
        "# mc\n"
        "field_id,n,T,estimate,standard_error,samples,seed,box_volume\n"
        "R,1,5,10,0,100000,7,10\n");
}
