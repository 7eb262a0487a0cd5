#include "heights/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "heights/errors.hpp"
#include "heights/membership.hpp"

namespace heights {

namespace {

constexpr double kBoxPad = 1e-9;

// |det| by Gaussian elimination with partial pivoting; m <= 16.
double abs_det(std::vector<std::vector<double>> a) {
  const size_t n = a.size();
  double det = 1.0;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) return 0.0;
    if (piv != c) std::swap(a[piv], a[c]);
    det *= a[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (size_t t = c; t < n; ++t) a[r][t] -= f * a[c][t];
    }
  }
  return std::abs(det);
}

std::string describe_coords(const FieldElement& a) {
  std::string s = "(";
  const auto& c = a.coords();
  for (size_t t = 0; t < c.size(); ++t) {
    if (t) s += ";";
    s += c[t].get_str();
  }
  return s + ")";
}

}  // namespace

StructuredConstant det_formula(const NumberField& k, unsigned n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  mpz_class p2;
  mpz_ui_pow_ui(p2.get_mpz_t(), 2, k.complex_pair_count() * n);
  const mpz_class d = abs(k.discriminant());
  mpz_class dn;
  mpz_pow_ui(dn.get_mpz_t(), d.get_mpz_t(), n);
  // sqrt(d)^n enters through the canonical divided form as d^n / sqrt(d)^n
  return make_structured(mpq_class(dn, p2), 0, d, n);
}

MinkowskiLattice::MinkowskiLattice(const NumberField& k, unsigned n) : field_(&k), n_(n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const unsigned m = k.degree();
  const unsigned r = k.real_embedding_count();
  const unsigned rs = k.embedding_count();
  det_ = det_formula(k, n);

  const auto& mat = k.embedding_matrix_double();
  std::vector<std::vector<double>> block(m, std::vector<double>(m, 0.0));
  for (unsigned j = 0; j < m; ++j) {
    unsigned col = 0;
    for (unsigned i = 0; i < rs; ++i) {
      if (i < r) {
        block[j][col++] = mat[i][j].real();
      } else {
        block[j][col++] = mat[i][j].real();
        block[j][col++] = mat[i][j].imag();
      }
    }
  }

  const unsigned rank = m * n;
  basis_.assign(rank, std::vector<double>(rank, 0.0));
  for (unsigned t = 0; t < n; ++t)
    for (unsigned j = 0; j < m; ++j)
      for (unsigned c = 0; c < m; ++c) basis_[t * m + j][t * m + c] = block[j][c];

  const double numeric = std::pow(abs_det(std::move(block)), static_cast<double>(n));
  if (!(std::abs(numeric - det_.float_value) <= 1e-9 * det_.float_value))
    throw numeric_error("lattice determinant mismatch: numeric " + std::to_string(numeric) +
                        " vs exact " + std::to_string(det_.float_value));

  // First-minimum check: a vector of norm < 1 has every coordinate below 1,
  // and slot norms add, so it suffices to rule out single nonzero elements
  // with every |sigma_i| <= 1 and certified norm^2 below 1.
  const mpfr_prec_t prec = 256;
  auto ed = k.embeddings(prec);
  std::vector<double> ones(rs, 1.0);
  for (const FieldElement& a : k.enumerate_in_box(ones)) {
    if (a.is_zero()) continue;
    Real acc = Real::zero(prec);
    for (unsigned i = 0; i < rs; ++i) {
      Complex c = Complex(Real::zero(prec), Real::zero(prec));
      Real err = Real::zero(prec);
      for (unsigned j = 0; j < m; ++j) {
        const Real aj(a.coords()[j], prec);
        c = c + ed->mat[i][j] * aj;
        err = err + ed->mat_err[i][j] * abs(aj);
      }
      Real lo = abs(c) - err;
      if (lo < Real::zero(prec)) lo = Real::zero(prec);
      acc = acc + lo * lo;
    }
    if (acc < Real(1.0, prec) - ldexp2(Real(1.0, 64), -80))
      throw numeric_error("lattice point " + describe_coords(a) +
                          " has norm below 1; first-minimum check failed");
  }
}

bool body_membership(const MinkowskiLattice& lat, double T,
                     const std::vector<FieldElement>& point, mpfr_prec_t precision_bits) {
  if (!std::isfinite(T) || !(T >= 1.0)) throw std::invalid_argument("T must be >= 1");
  if (point.size() != lat.n())
    throw std::invalid_argument("point must have one O_k coordinate per body dimension");
  MonicPolynomial f(lat.field(), point);
  return measure_within(f, Threshold{T, 1}, precision_bits).inside;
}

CensusList body_points(const MinkowskiLattice& lat, double T, const CensusOptions& opts) {
  if (!std::isfinite(T) || !(T >= 1.0)) throw std::invalid_argument("T must be >= 1");
  const NumberField& k = lat.field();
  const unsigned n = lat.n();
  const unsigned rs = k.embedding_count();
  std::vector<std::vector<double>> bounds(n, std::vector<double>(rs));
  for (unsigned j = 1; j <= n; ++j) {
    const double bin = binomial(n, j).get_d();
    for (unsigned i = 0; i < rs; ++i)
      bounds[j - 1][i] = bin * std::pow(T, 1.0 / k.weight(i)) * (1 + kBoxPad);
  }
  return scan_tails(k, n, bounds, Threshold{T, 1}, opts);
}

std::uint64_t count_points(const MinkowskiLattice& lat, double T, const CensusOptions& opts) {
  CensusOptions co = opts;
  co.count_only = true;
  return body_points(lat, T, co).total;
}

}  // namespace heights
