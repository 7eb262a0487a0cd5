#include "heights/membership.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heights/errors.hpp"
#include "heights/exact.hpp"
#include "heights/mahler.hpp"
#include "heights/roots.hpp"

namespace heights {

namespace detail {

int double_stage_decision(unsigned rs, unsigned e, const std::complex<double>* const* tails,
                          const double* errs, const unsigned* weights, double thr_lo, double thr_hi) {
  double plo = 1.0, phi = 1.0;
  for (unsigned i = 0; i < rs; ++i) {
    DoubleEnclosure enc = mahler_double_tail(tails[i], e, errs[i]);
    if (!enc.ok) return 0;
    for (unsigned w = 0; w < weights[i]; ++w) {
      plo *= enc.lo;
      phi *= enc.hi;
    }
  }
  plo *= 1.0 - 1e-14;
  phi *= 1.0 + 1e-14;
  if (!std::isfinite(phi)) return 0;
  if (phi <= thr_lo) return -1;
  if (plo > thr_hi) return +1;
  return 0;
}

}  // namespace detail

MembershipOutcome measure_within(const MonicPolynomial& f, const Threshold& t, mpfr_prec_t precision_bits) {
  if (!std::isfinite(t.base) || t.base < 0) throw std::invalid_argument("threshold base must be finite and nonnegative");
  if (t.power < 1) throw std::invalid_argument("threshold power must be positive");
  if (t.base < 1.0) return {};  // the product is >= 1 for monic f

  const NumberField& k = f.field();
  const unsigned e = f.degree();
  const unsigned rs = k.embedding_count();
  unsigned drop = 0;
  while (drop < e && f.coeff(e - drop).is_zero()) ++drop;
  if (drop == e) return {true, false};  // f = X^e has measure exactly 1

  const unsigned d = e - drop;
  const double tv = std::pow(t.base, t.power);

  if (d <= 8 && rs <= 16 && std::isfinite(tv)) {
    const auto& mat = k.embedding_matrix_double();
    std::complex<double> tails[16][8];
    const std::complex<double>* tp[16];
    double errs[16];
    unsigned weights[16];
    for (unsigned i = 0; i < rs; ++i) {
      double emax = 1e-300;
      for (unsigned j = 0; j < d; ++j) {
        const auto& coords = f.coeff(d - j).coords();
        std::complex<double> v = 0.0;
        double asum = 0.0;
        for (size_t u = 0; u < coords.size(); ++u) {
          if (coords[u] == 0) continue;
          double a = coords[u].get_d();
          v += mat[i][u] * a;
          asum += std::abs(a) * std::abs(mat[i][u]);
        }
        tails[i][j] = v;
        emax = std::max(emax, 1e-14 * asum);
      }
      tp[i] = tails[i];
      errs[i] = emax;
      weights[i] = k.weight(i);
    }
    int dec = detail::double_stage_decision(rs, d, tp, errs, weights, tv * (1 - 1e-12), tv * (1 + 1e-12));
    if (dec < 0) return {true, false};
    if (dec > 0) return {false, false};
  }

  // With an exact threshold of 1 the tie is genuine (measure-1 polynomials
  // attain it), so numeric escalation cannot help: go straight to the exact
  // decision below.
  const bool exact_one = t.base == 1.0;
  const mpfr_prec_t base_prec = std::max<mpfr_prec_t>(precision_bits, 64);
  for (int stage = 1; stage <= 4 && !exact_one; ++stage) {
    const mpfr_prec_t prec = base_prec << stage;
    auto data = k.embeddings(prec);
    Real plo(1.0, prec), phi(1.0, prec);
    bool ok = true;
    for (unsigned i = 0; i < rs && ok; ++i) {
      auto res = detail::mahler_engine(detail::embedded_coeffs(f, *data, i, drop), prec);
      if (!res.ok || res.m_lo.sign() <= 0) {
        ok = false;
        break;
      }
      plo = plo * pow_si(res.m_lo, k.weight(i));
      phi = phi * pow_si(res.m_hi, k.weight(i));
    }
    if (!ok) continue;
    const Real one(1.0, prec);
    const Real wide = prec_eps(prec, 6);
    plo = plo * (one - wide);
    phi = phi * (one + wide);
    Real tr = pow_si(Real(t.base, prec), t.power);
    Real pad = tr * prec_eps(prec, 4);
    if (phi <= tr - pad) return {true, false};
    if (plo > tr + pad) return {false, false};
  }

  if (exact_one) return {all_roots_in_closed_unit_disk(norm_form(f, 256)), false};
  return {true, true};
}

}  // namespace heights
