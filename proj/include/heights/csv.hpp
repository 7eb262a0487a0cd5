#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "heights/asymptotics.hpp"
#include "heights/census.hpp"

namespace heights {

// Fixed %.15g rendering: deterministic output byte for byte.
std::string csv_double(double v);

// Exact expression text, e.g. "32", "108*sqrt(2)", "2*pi^2", "3/4*pi^3".
std::string structured_to_string(const StructuredConstant& c);

// Every writer starts with '#' comment lines recording the effective run
// configuration (including values the caller defaulted), then a header row.

// One row per polynomial: field_id, e, H, the e*m coefficient coordinates
// (columns a<j>_<t>), the relative Mahler measure, irreducible flag (0/1).
// `reducible` must be sorted in canonical order.
void write_census_csv(std::ostream& os, const NumberField& k, const CensusResult& summary,
                      const std::vector<MonicPolynomial>& polys,
                      const std::vector<MonicPolynomial>& reducible,
                      const std::vector<std::string>& config_lines);

// Columns H, exact, predicted, ratio, q, boundary_warnings.
void write_convergence_csv(std::ostream& os, const std::vector<PredictionRow>& rows,
                           const std::vector<std::string>& config_lines);

// Single row: field_id, n, T, estimate, standard_error, samples, seed,
// box_volume.
void write_volume_csv(std::ostream& os, const VolumeEstimate& v,
                      const std::vector<std::string>& config_lines);

// One row per degree e = 1..e_max: the real and complex embedding constants,
// the field constant (exact text and float), and the reciprocity ratio.
void write_constants_csv(std::ostream& os, const NumberField& k, unsigned e_max,
                         const std::vector<std::string>& config_lines);

}  // namespace heights
