#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "heights/census.hpp"
#include "heights/numberfield.hpp"

namespace heights {

// Exact value rational * pi^pi_power / sqrt(disc_abs)^disc_half, kept in a
// canonical form: disc_half is 0 or 1 and disc_abs is squarefree (square
// factors are folded into the rational part), so equal values compare equal
// field by field.
struct StructuredConstant {
  mpq_class rational = 0;
  unsigned pi_power = 0;
  mpz_class disc_abs = 1;
  unsigned disc_half = 0;
  double float_value = 0.0;

  friend bool operator==(const StructuredConstant& a, const StructuredConstant& b) {
    return a.rational == b.rational && a.pi_power == b.pi_power &&
           a.disc_abs == b.disc_abs && a.disc_half == b.disc_half;
  }
  friend bool operator!=(const StructuredConstant& a, const StructuredConstant& b) {
    return !(a == b);
  }
};

// Builds rational * pi^pi_power / sqrt(disc_abs)^disc_half in canonical form.
StructuredConstant make_structured(mpq_class rational, unsigned pi_power,
                                   mpz_class disc_abs, unsigned disc_half);

// Real-embedding volume constant: 2^(e-M) * prod_{l=1}^{M} (2l/(2l+1))^(e-2l)
// * e^M / M! with M = floor((e-1)/2). Exact rational.
mpq_class c_real(unsigned e);

// Complex-embedding volume constant pi^e * e^e / (e!)^2.
StructuredConstant c_complex(unsigned e);

// Field constant e^(2q+1) * 2^(se) * m^q / (q! * sqrt(|disc|)^e) * C_R^r * C_C^s
// with q = r + s - 1; the leading coefficient of the integer count.
StructuredConstant c_field(const NumberField& k, unsigned e);

// e * (C_R/2^e)^r * (C_C/pi^e)^s: the exact rational limit of the quotient of
// integer counts by census counts along H = bound^e.
mpq_class reciprocity_ratio(unsigned e, unsigned r, unsigned s);

struct PredictionRow {
  double H = 0.0;
  double leading_value = 0.0;
  bool has_exact = false;
  std::uint64_t exact = 0;
  double ratio = 0.0;
  unsigned q = 0;
  unsigned h_exponent = 0;     // exponent of the bound in the leading term
  unsigned log_power = 0;       // q
  std::uint64_t boundary_warnings = 0;
};

// Leading term (C_k / e^(q+1)) * H^(me) * (log H)^q of the census count.
// Requires H > 1.
PredictionRow predict_census_leading(const NumberField& k, unsigned e, double H);

// Leading term C_k * bound^(m e^2) * (log bound)^q of the integer count.
// Requires bound > 1.
PredictionRow predict_count_leading(const NumberField& k, unsigned e, double bound);

enum class ConvergenceMode { Census, Integers };

// Exact counts against the leading-term prediction along an ascending grid of
// bounds, all > 1.
std::vector<PredictionRow> convergence_table(const NumberField& k, unsigned e,
                                             const std::vector<double>& grid,
                                             ConvergenceMode mode,
                                             const CensusOptions& opts = {});

enum class VolumeMode { Field, PlainReal, PlainComplex };

struct VolumeEstimate {
  std::string field_id;
  unsigned n = 0;
  double T = 0.0;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double box_volume = 0.0;
};

// Monte Carlo volume of the degree-n Mahler body at bound T: coefficient
// vectors with prod_i M(sigma_i(f))^{d_i} <= T in field mode, M(f) <= T over
// the reals, M(f) <= sqrt(T) over the complexes. Counter-based RNG: the
// estimate depends only on (mode, field, n, T, samples, seed), never on the
// thread count. k may be null except in field mode.
VolumeEstimate volume_mc(VolumeMode mode, const NumberField* k, unsigned n, double T,
                         std::uint64_t samples, std::uint64_t seed, unsigned threads = 1);

}  // namespace heights
