#include "heights/csv.hpp"

#include <algorithm>
#include <cstdio>

#include "heights/mahler.hpp"

namespace heights {

namespace {

void write_config(std::ostream& os, const std::vector<std::string>& config_lines) {
  for (const auto& line : config_lines) os << "# " << line << "\n";
}

}  // namespace

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string structured_to_string(const StructuredConstant& c) {
  if (c.rational == 0) return "0";
  // 1/sqrt(d) displays as sqrt(d)/d: fold the radical into the numerator
  mpq_class coeff = c.rational;
  mpz_class rad = 1;
  if (c.disc_half == 1) {
    coeff /= c.disc_abs;
    rad = c.disc_abs;
  }
  const bool neg = coeff < 0;
  if (neg) coeff = -coeff;
  std::string factors;
  if (c.pi_power >= 1) {
    factors = "pi";
    if (c.pi_power > 1) factors += "^" + std::to_string(c.pi_power);
  }
  if (rad != 1) {
    if (!factors.empty()) factors += "*";
    factors += "sqrt(" + rad.get_str() + ")";
  }
  std::string s;
  if (factors.empty()) {
    s = coeff.get_str();
  } else if (coeff == 1) {
    s = factors;
  } else {
    s = coeff.get_str() + "*" + factors;
  }
  return neg ? "-" + s : s;
}

void write_census_csv(std::ostream& os, const NumberField& k, const CensusResult& summary,
                      const std::vector<MonicPolynomial>& polys,
                      const std::vector<MonicPolynomial>& reducible,
                      const std::vector<std::string>& config_lines) {
  write_config(os, config_lines);
  const unsigned m = k.degree();
  os << "field_id,e,H";
  for (unsigned j = 1; j <= summary.e; ++j)
    for (unsigned t = 1; t <= m; ++t) os << ",a" << j << "_" << t;
  os << ",Mk,irreducible\n";
  for (const MonicPolynomial& f : polys) {
    os << summary.field_id << "," << summary.e << "," << csv_double(summary.H);
    for (unsigned j = 1; j <= summary.e; ++j)
      for (unsigned t = 0; t < m; ++t) os << "," << f.coeff(j).coords()[t].get_str();
    const bool is_reducible = std::binary_search(reducible.begin(), reducible.end(), f);
    os << "," << csv_double(relative_mahler(f).relative) << "," << (is_reducible ? 0 : 1)
       << "\n";
  }
}

void write_convergence_csv(std::ostream& os, const std::vector<PredictionRow>& rows,
                           const std::vector<std::string>& config_lines) {
  write_config(os, config_lines);
  os << "H,exact,predicted,ratio,q,boundary_warnings\n";
  for (const PredictionRow& row : rows) {
    os << csv_double(row.H) << "," << row.exact << "," << csv_double(row.leading_value) << ","
       << csv_double(row.ratio) << "," << row.q << "," << row.boundary_warnings << "\n";
  }
}

void write_volume_csv(std::ostream& os, const VolumeEstimate& v,
                      const std::vector<std::string>& config_lines) {
  write_config(os, config_lines);
  os << "field_id,n,T,estimate,standard_error,samples,seed,box_volume\n";
  os << v.field_id << "," << v.n << "," << csv_double(v.T) << "," << csv_double(v.estimate)
     << "," << csv_double(v.standard_error) << "," << v.samples << "," << v.seed << ","
     << csv_double(v.box_volume) << "\n";
}

void write_constants_csv(std::ostream& os, const NumberField& k, unsigned e_max,
                         const std::vector<std::string>& config_lines) {
  write_config(os, config_lines);
  os << "e,c_real,c_complex_over_pi_e,c_field,c_field_float,reciprocity\n";
  const unsigned r = k.real_embedding_count();
  const unsigned s = k.complex_pair_count();
  for (unsigned e = 1; e <= e_max; ++e) {
    const StructuredConstant C = c_field(k, e);
    os << e << "," << c_real(e).get_str() << ","
       << (c_complex(e).rational).get_str() << "," << structured_to_string(C) << ","
       << csv_double(C.float_value) << "," << reciprocity_ratio(e, r, s).get_str() << "\n";
  }
}

}  // namespace heights
