#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "heights/real.hpp"

namespace heights {

inline constexpr int kMaxPolyDegree = 64;

// Dense complex polynomial, coefficients ascending (index = power). Trailing
// zero coefficients are trimmed on construction, so degree() is always the
// index of the last nonzero coefficient (-1 for the zero polynomial).
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;
  explicit ComplexPolynomial(std::vector<Complex> ascending);
  static ComplexPolynomial from_doubles(const std::vector<std::complex<double>>& ascending,
                                        mpfr_prec_t prec = Real::kDefaultPrec);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coefficients() const { return coeffs_; }

 private:
  std::vector<Complex> coeffs_;
};

// A root with a certified inclusion radius: the union over all returned
// balls contains every root of the polynomial, and each connected component
// of that union contains exactly as many roots (with multiplicity) as balls.
struct RootBall {
  Complex center;
  Real radius;
};

// All complex roots, certified to radius <= target_eps. Raises the working
// precision (doubling, up to 4 times over the starting precision) until the
// radii certify; non-convergence at maximum precision throws numeric_error.
std::vector<RootBall> find_roots(const ComplexPolynomial& p, double target_eps);

struct ValueWithError {
  double value = 0.0;
  double error = 0.0;
};

// Mahler measure |lead| * prod max(1, |root|); 0 for the zero polynomial,
// |c_0| for constants. The error field is a certified absolute bound.
ValueWithError mahler_measure(const ComplexPolynomial& p);

// Test hook for the scaling identity: returns (M(w*p), |w|*M(p)).
std::pair<double, double> scaling_check(const ComplexPolynomial& p, const Complex& w);

namespace detail {

// Coefficient known only up to a disk: |true - center| <= err.
struct CoeffBall {
  Complex center;
  Real err;
};

// One precision level of the root engine: simultaneous (Ehrlich-Aberth)
// iteration, Newton polish, then Weierstrass-style certified radii and a
// grouped-disk enclosure of the Mahler measure. ok=false means the radii
// did not certify at this precision (caller escalates).
struct EngineResult {
  bool ok = false;
  Real m_lo, m_hi;  // enclosure of M(p) over all polynomials in the coefficient balls
  std::vector<Complex> roots;
  std::vector<Real> radii;
};
EngineResult mahler_engine(const std::vector<CoeffBall>& coeffs, mpfr_prec_t prec, int max_sweeps = 200);

// Double-precision analogue. Coefficients ascending with absolute error
// bounds; lead must be nonzero. ok=false on any certification failure
// (overflow, NaN, clustered denominators); callers escalate to MPFR.
struct DoubleEnclosure {
  bool ok = false;
  double lo = 0.0;
  double hi = 0.0;
};
DoubleEnclosure mahler_double(const std::vector<std::complex<double>>& coeffs,
                              const std::vector<double>& coeff_err);

// Uncertified double Mahler measure of a monic polynomial (statistical use:
// Monte Carlo hit tests). Closed forms for degree <= 2, plain simultaneous
// iteration above.
double mahler_double_fast(const std::vector<std::complex<double>>& monic_tail);

// Pointer-based monic variants for hot loops; tail is ascending
// c_0..c_{d-1} with an implied exact leading 1, coeff_err a single absolute
// bound valid for every tail coefficient. Degree <= 2 certifies from
// closed-form roots without allocating.
DoubleEnclosure mahler_double_tail(const std::complex<double>* tail, unsigned d, double coeff_err);
double mahler_fast_tail(const std::complex<double>* tail, unsigned d);

}  // namespace detail

}  // namespace heights
