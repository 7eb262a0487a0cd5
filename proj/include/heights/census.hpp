#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heights/membership.hpp"
#include "heights/numberfield.hpp"
#include "heights/polynomial.hpp"

namespace heights {

struct CensusOptions {
  unsigned threads = 1;
  std::uint64_t candidate_cap = 100000000;  // box tuples scanned, not hits
  mpfr_prec_t precision_bits = Real::kDefaultPrec;
  bool count_only = false;  // skip materializing the polynomial list
};

// Accepted polynomials in canonical order: coordinate-lexicographic by
// (a_1, ..., a_e), identical for every thread count.
struct CensusList {
  std::vector<MonicPolynomial> polys;  // empty when count_only
  std::uint64_t total = 0;
  std::uint64_t boundary_warnings = 0;
};

struct CensusResult {
  std::string field_id;
  unsigned e = 0;
  double H = 0.0;  // census measure bound, or the integer height bound
  std::uint64_t total = 0;
  std::uint64_t reducible = 0;
  std::uint64_t irreducible = 0;
  std::uint64_t integer_count = 0;  // filled by count_integers
  double predicted = 0.0;           // leading-term prediction; 0 when bound <= 1
  double ratio = 0.0;               // measured / predicted; 0 when bound <= 1
  std::uint64_t boundary_warnings = 0;
};

// Scans every monic degree-e coefficient tail (a_1, ..., a_e) over O_k whose
// embedding values satisfy |sigma_i(a_j)| <= bounds[j-1][i], accepting those
// with prod_i M(sigma_i(f))^{d_i} <= thr. Throws resource_error if the box
// holds more than opts.candidate_cap tuples.
CensusList scan_tails(const NumberField& k, unsigned e,
                      const std::vector<std::vector<double>>& bounds,
                      const Threshold& thr, const CensusOptions& opts);

// All monic degree-e f over O_k with relative Mahler measure at most H.
// Empty for H < 1; ties at the bound are included.
CensusList census_monic(const NumberField& k, unsigned e, double H,
                        const CensusOptions& opts = {});

// The reducible members of census_monic(k, e, H): products g*h of monic
// lower-degree factors, deduplicated and sorted. Requires e >= 2.
std::vector<MonicPolynomial> reducible_set(const NumberField& k, unsigned e, double H,
                                           const CensusOptions& opts = {},
                                           std::uint64_t* boundary_warnings = nullptr);

// Census split into irreducible and reducible parts, with the leading-term
// prediction and measured/predicted ratio when H > 1. Optionally hands back
// the full list and the reducible subset.
CensusResult irreducible_census(const NumberField& k, unsigned e, double H,
                                const CensusOptions& opts = {},
                                CensusList* out_list = nullptr,
                                std::vector<MonicPolynomial>* out_reducible = nullptr);

// Number of algebraic integers of degree e over k with absolute Weil height
// at most height_bound: e times the irreducible census at H = height_bound^e.
CensusResult count_integers(const NumberField& k, unsigned e, double height_bound,
                            const CensusOptions& opts = {});

}  // namespace heights
