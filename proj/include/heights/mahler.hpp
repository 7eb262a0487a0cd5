#pragma once

#include <vector>

#include "heights/exact.hpp"
#include "heights/polynomial.hpp"
#include "heights/roots.hpp"

namespace heights {

// Classical measures of the embedded polynomials and the relative measure
// M^k(f) = prod_i M(sigma_i(f))^{d_i/m} with d_i = 1 for real embeddings and
// 2 for complex pairs. err is a certified absolute error bound on relative.
struct MahlerProfile {
  std::vector<double> per_embedding;
  double relative = 1.0;
  double err = 0.0;
};

// invariant for monic f: every per-embedding value >= 1, hence relative >= 1.
MahlerProfile relative_mahler(const MonicPolynomial& f, mpfr_prec_t precision_bits = Real::kDefaultPrec);

// Absolute multiplicative Weil height of any root of f, assuming f is
// irreducible over the field: H(beta) = M^k(f)^{1/e}. e must equal deg f.
double height_of_root(const MonicPolynomial& f, unsigned e);

// Integer polynomial prod over all m embeddings (conjugates included) of
// sigma_i(f), degree m*e, ascending coefficients. The product is computed
// numerically with certified coefficient error bounds and rounded; precision
// is raised until every coefficient is within distance < 1/4 of an integer
// by its certified bound.
ZPoly norm_form(const MonicPolynomial& f, mpfr_prec_t precision_bits = Real::kDefaultPrec);

namespace detail {

// Ascending coefficient balls of sigma_i(g) where g is f with `drop`
// trailing zero coefficients removed (g keeps degree e - drop and is monic).
std::vector<CoeffBall> embedded_coeffs(const MonicPolynomial& f, const EmbeddingData& data, unsigned i,
                                       unsigned drop);

}  // namespace detail

}  // namespace heights
