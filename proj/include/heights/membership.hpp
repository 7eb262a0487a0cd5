#pragma once

#include <complex>

#include "heights/polynomial.hpp"

namespace heights {

// Threshold base^power with the double base kept exact. Census membership
// M^k(f) <= H is decided as prod_i M(sigma_i(f))^{d_i} <= H^m (equivalent
// via the m-th power, avoiding fractional exponents); Mahler bodies Z(T)
// compare the same product against T directly (power 1).
struct Threshold {
  double base = 1.0;
  int power = 1;
};

struct MembershipOutcome {
  bool inside = false;
  bool warned = false;
};

// Decides prod_i M(sigma_i(f))^{d_i} <= base^power. Stage 0 is a certified
// double-precision enclosure; undecided comparisons climb a precision
// ladder (doubling from precision_bits, 4 raises). A threshold of exactly 1
// is then resolved exactly through the integer norm form (measure <= 1 <=>
// all its roots lie in the closed unit disk); any other still-undecided
// comparison counts as inside with warned = true.
MembershipOutcome measure_within(const MonicPolynomial& f, const Threshold& t,
                                 mpfr_prec_t precision_bits = Real::kDefaultPrec);

namespace detail {

// Stage-0 product decision from per-embedding double data. tails[i] points
// at the ascending monic tail (length e) of embedding i; errs[i] bounds the
// absolute error of every coefficient of that embedding. Returns -1 when
// the product is certainly <= thr_lo, +1 when certainly > thr_hi, else 0.
int double_stage_decision(unsigned rs, unsigned e, const std::complex<double>* const* tails,
                          const double* errs, const unsigned* weights, double thr_lo, double thr_hi);

}  // namespace detail

}  // namespace heights
