#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "heights/real.hpp"

using heights::Complex;
using heights::Real;

TEST_CASE("construction carries the requested precision") {
  CHECK(Real().precision() == Real::kDefaultPrec);
  CHECK(Real(1.5, 256).precision() == 256);
  CHECK(Real(7L, 64).precision() == 64);
  CHECK(Real(mpz_class("123456789012345678901234567890"), 192).to_double() ==
        doctest::Approx(1.2345678901234568e29));
  CHECK(Real(mpq_class(1, 3), 256).to_double() == doctest::Approx(1.0 / 3.0));
  CHECK(Real::zero(512).is_zero());
  CHECK(Real::zero(512).precision() == 512);
}

TEST_CASE("convert changes precision, not value class") {
  Real third(mpq_class(1, 3), 256);
  Real low = Real::convert(third, 64);
  CHECK(low.precision() == 64);
  CHECK(abs(low - third).to_double() < 1e-18);
  CHECK(Real::convert(low, 512).precision() == 512);
}

TEST_CASE("binary operators join precisions") {
  Real a(1.0, 64), b(1.0, 256);
  CHECK((a + b).precision() == 256);
  CHECK((a - b).precision() == 256);
  CHECK((a * b).precision() == 256);
  CHECK((a / b).precision() == 256);
  CHECK((-b).precision() == 256);
}

TEST_CASE("compound assignment keeps the target precision") {
  Real acc(0.0, 256);
  for (int i = 0; i < 10; ++i) acc += Real(mpq_class(1, 3), 64);
  CHECK(acc.precision() == 256);
  CHECK(acc.to_double() == doctest::Approx(10.0 / 3.0));
  acc -= Real(1, 64);
  acc *= Real(3, 64);
  acc /= Real(7, 64);
  CHECK(acc.precision() == 256);
  CHECK(acc.to_double() == doctest::Approx((10.0 / 3.0 - 1.0) * 3.0 / 7.0));
}

TEST_CASE("comparisons and sign") {
  CHECK(Real(1.0) < Real(2.0));
  CHECK(Real(2.0) > Real(1.0));
  CHECK(Real(2.0) <= Real(2.0));
  CHECK(Real(2.0) >= Real(2.0));
  CHECK(Real(2.0) == Real(2.0, 512));
  CHECK(Real(2.0) != Real(3.0));
  CHECK(Real(-5.0).sign() == -1);
  CHECK(Real(0.0).sign() == 0);
  CHECK(Real(5.0).sign() == 1);
  CHECK(Real(1.0).is_finite());
  CHECK_FALSE(Real(1.0 / 0.0).is_finite());
}

TEST_CASE("elementary functions agree with double math") {
  CHECK(sqrt(Real(2.0, 256)).to_double() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(log(Real(10.0, 256)).to_double() == doctest::Approx(std::log(10.0)).epsilon(1e-15));
  CHECK(exp(Real(1.0, 256)).to_double() == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(pow_si(Real(3.0), 4).to_double() == 81.0);
  CHECK(pow_si(Real(2.0), -2).to_double() == 0.25);
  CHECK(hypot(Real(3.0), Real(4.0)).to_double() == 5.0);
  CHECK(abs(Real(-2.5)).to_double() == 2.5);
  CHECK(max(Real(1.0), Real(2.0)).to_double() == 2.0);
  CHECK(min(Real(1.0), Real(2.0)).to_double() == 1.0);
  CHECK(ldexp2(Real(3.0), 4).to_double() == 48.0);
  CHECK(ldexp2(Real(3.0), -1).to_double() == 1.5);
}

TEST_CASE("sqrt at 256 bits is sharper than double") {
  Real r = sqrt(Real(2.0, 256));
  Real residual = abs(r * r - Real(2.0, 256));
  CHECK(residual < heights::prec_eps(256, 8));
  CHECK(residual.to_double() < 1e-70);
}

TEST_CASE("prec_eps is the advertised power of two") {
  CHECK(heights::prec_eps(64).to_double() == std::ldexp(1.0, -64));
  CHECK(heights::prec_eps(128, 10).to_double() == std::ldexp(1.0, 10 - 128));
}

TEST_CASE("to_string round trips through decimal digits") {
  std::string s = Real(mpq_class(1, 3), 128).to_string(20);
  CHECK(s.find("3333333333") != std::string::npos);
}

TEST_CASE("complex arithmetic") {
  Complex a(Real(1.0), Real(2.0));
  Complex b(3.0, -1.0);
  Complex sum = a + b;
  CHECK(sum.re().to_double() == 4.0);
  CHECK(sum.im().to_double() == 1.0);
  Complex prod = a * b;  // (1+2i)(3-i) = 5+5i
  CHECK(prod.re().to_double() == 5.0);
  CHECK(prod.im().to_double() == 5.0);
  Complex quot = prod / b;
  CHECK(quot.re().to_double() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(quot.im().to_double() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(conj(a).im().to_double() == -2.0);
  CHECK(abs(Complex(3.0, 4.0)).to_double() == 5.0);
  CHECK(norm(Complex(3.0, 4.0)).to_double() == 25.0);
  CHECK((a - a).is_zero());
  CHECK((-a).re().to_double() == -1.0);
  CHECK((a * Real(2.0)).im().to_double() == 4.0);
  CHECK((a / Real(2.0)).re().to_double() == 0.5);
  CHECK(a.to_complex_double() == std::complex<double>(1.0, 2.0));
  CHECK(Complex::zero(192).precision() == 192);
  CHECK(Complex::convert(a, 320).precision() == 320);
}
