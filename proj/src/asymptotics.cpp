#include "heights/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace heights {

namespace {

constexpr double kPi = 3.14159265358979323846;

mpq_class q_pow(const mpq_class& x, unsigned n) {
  mpq_class r = 1;
  for (unsigned i = 0; i < n; ++i) r *= x;
  return r;
}

mpz_class z_pow(unsigned long base, unsigned n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, n);
  return r;
}

mpz_class z_pow(const mpz_class& base, unsigned n) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), n);
  return r;
}

mpz_class factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

mpq_class c_complex_rational(unsigned e) {
  return mpq_class(z_pow(static_cast<unsigned long>(e), e), factorial(e) * factorial(e));
}

// Folds whole powers of the radical into the rational part and pulls square
// factors out from under the square root, then refreshes the float view.
void canonicalize(StructuredConstant& c) {
  if (c.disc_half >= 2) {
    c.rational /= mpq_class(z_pow(c.disc_abs, c.disc_half / 2));
    c.disc_half %= 2;
  }
  if (c.disc_half == 0) {
    c.disc_abs = 1;
  } else {
    mpz_class d = c.disc_abs;
    for (mpz_class p = 2; p * p <= d; p += 1) {
      const mpz_class sq = p * p;
      while (mpz_divisible_p(d.get_mpz_t(), sq.get_mpz_t())) {
        d /= sq;
        c.rational /= p;
      }
    }
    c.disc_abs = d;
    if (d == 1) c.disc_half = 0;
  }
  c.rational.canonicalize();
  c.float_value = c.rational.get_d() * std::pow(kPi, static_cast<double>(c.pi_power)) /
                  std::pow(std::sqrt(c.disc_abs.get_d()), static_cast<double>(c.disc_half));
}

}  // namespace

StructuredConstant make_structured(mpq_class rational, unsigned pi_power,
                                   mpz_class disc_abs, unsigned disc_half) {
  if (disc_abs < 1) throw std::invalid_argument("radicand must be positive");
  StructuredConstant c;
  c.rational = std::move(rational);
  c.pi_power = pi_power;
  c.disc_abs = std::move(disc_abs);
  c.disc_half = disc_half;
  canonicalize(c);
  return c;
}

mpq_class c_real(unsigned e) {
  if (e < 1) throw std::invalid_argument("e must be >= 1");
  const unsigned M = (e - 1) / 2;
  mpq_class v(z_pow(2ul, e - M));
  for (unsigned l = 1; l <= M; ++l)
    v *= q_pow(mpq_class(2 * l, 2 * l + 1), e - 2 * l);
  v *= mpq_class(z_pow(static_cast<unsigned long>(e), M), factorial(M));
  v.canonicalize();
  return v;
}

StructuredConstant c_complex(unsigned e) {
  if (e < 1) throw std::invalid_argument("e must be >= 1");
  StructuredConstant c;
  c.rational = c_complex_rational(e);
  c.pi_power = e;
  canonicalize(c);
  return c;
}

StructuredConstant c_field(const NumberField& k, unsigned e) {
  if (e < 1) throw std::invalid_argument("e must be >= 1");
  const unsigned r = k.real_embedding_count();
  const unsigned s = k.complex_pair_count();
  const unsigned m = k.degree();
  const unsigned q = k.unit_rank_q();
  StructuredConstant c;
  c.rational = mpq_class(z_pow(static_cast<unsigned long>(e), 2 * q + 1)) *
               mpq_class(z_pow(2ul, s * e)) *
               mpq_class(z_pow(static_cast<unsigned long>(m), q), factorial(q)) *
               q_pow(c_real(e), r) * q_pow(c_complex_rational(e), s);
  c.pi_power = s * e;
  c.disc_abs = abs(k.discriminant());
  c.disc_half = e;
  canonicalize(c);
  return c;
}

mpq_class reciprocity_ratio(unsigned e, unsigned r, unsigned s) {
  if (e < 1) throw std::invalid_argument("e must be >= 1");
  if (r + s < 1) throw std::invalid_argument("need r + s >= 1");
  mpq_class v(static_cast<unsigned long>(e));
  v *= q_pow(c_real(e) / mpq_class(z_pow(2ul, e)), r);
  v *= q_pow(c_complex_rational(e), s);
  v.canonicalize();
  return v;
}

PredictionRow predict_census_leading(const NumberField& k, unsigned e, double H) {
  if (e < 1) throw std::invalid_argument("e must be >= 1");
  if (!std::isfinite(H) || !(H > 1.0))
    throw std::invalid_argument("leading-term prediction requires a bound > 1");
  const StructuredConstant C = c_field(k, e);
  const unsigned q = k.unit_rank_q();
  const unsigned m = k.degree();
  PredictionRow row;
  row.H = H;
  row.q = q;
  row.h_exponent = m * e;
  row.log_power = q;
  row.leading_value = C.float_value / std::pow(static_cast<double>(e), static_cast<double>(q + 1)) *
                      std::pow(H, static_cast<double>(m) * e) *
                      std::pow(std::log(H), static_cast<double>(q));
  return row;
}

PredictionRow predict_count_leading(const NumberField& k, unsigned e, double bound) {
  if (e < 1) throw std::invalid_argument("e must be >= 1");
  if (!std::isfinite(bound) || !(bound > 1.0))
    throw std::invalid_argument("leading-term prediction requires a bound > 1");
  const StructuredConstant C = c_field(k, e);
  const unsigned q = k.unit_rank_q();
  const unsigned m = k.degree();
  PredictionRow row;
  row.H = bound;
  row.q = q;
  row.h_exponent = m * e * e;
  row.log_power = q;
  row.leading_value = C.float_value * std::pow(bound, static_cast<double>(m) * e * e) *
                      std::pow(std::log(bound), static_cast<double>(q));
  return row;
}

std::vector<PredictionRow> convergence_table(const NumberField& k, unsigned e,
                                             const std::vector<double>& grid,
                                             ConvergenceMode mode, const CensusOptions& opts) {
  if (grid.empty()) throw std::invalid_argument("grid must be nonempty");
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !(grid[i] > 1.0))
      throw std::invalid_argument("grid bounds must be > 1");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::invalid_argument("grid must be strictly ascending");
  }
  std::vector<PredictionRow> rows;
  rows.reserve(grid.size());
  CensusOptions sub = opts;
  sub.count_only = true;
  for (double b : grid) {
    PredictionRow row;
    if (mode == ConvergenceMode::Census) {
      CensusList cl = census_monic(k, e, b, sub);
      row = predict_census_leading(k, e, b);
      row.exact = cl.total;
      row.boundary_warnings = cl.boundary_warnings;
    } else {
      CensusResult res = count_integers(k, e, b, sub);
      row = predict_count_leading(k, e, b);
      row.exact = res.integer_count;
      row.boundary_warnings = res.boundary_warnings;
    }
    row.has_exact = true;
    if (row.leading_value > 0)
      row.ratio = static_cast<double>(row.exact) / row.leading_value;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace heights
