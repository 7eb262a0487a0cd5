#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "heights/exact.hpp"
#include "heights/real.hpp"

namespace heights {

class NumberField;

// Element of O_k: integer coordinates over the field's integral basis.
// Immutable value type; arithmetic is exact (multiplication goes through the
// field's precomputed basis-product table).
class FieldElement {
 public:
  FieldElement(const NumberField& owner, std::vector<mpz_class> coords);

  const std::vector<mpz_class>& coords() const { return coords_; }
  const NumberField& field() const { return *owner_; }
  bool is_zero() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a);
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
  // Lexicographic coordinate order; the canonical key used for
  // deduplication and stable output everywhere downstream.
  friend bool operator<(const FieldElement& a, const FieldElement& b);

 private:
  const NumberField* owner_;
  std::vector<mpz_class> coords_;
};

struct EnumerateOptions {
  std::uint64_t candidate_cap = 100000000;
  mpfr_prec_t precision_bits = Real::kDefaultPrec;
};

// Integer coordinate box |a_j| <= limit[j] guaranteed to contain every
// element whose embeddings satisfy the requested bounds.
struct BoxRanges {
  std::vector<long> limit;
  double candidate_count = 1.0;
};

// Embedding data at one working precision: values sigma_i(theta) for the
// r+s canonical embeddings (real ones first, then one representative per
// conjugate pair with positive imaginary part), certified root radii, the
// (r+s) x m matrix sigma_i(omega_j), and entrywise absolute error bounds.
struct EmbeddingData {
  mpfr_prec_t prec = 0;
  std::vector<Complex> theta;
  std::vector<Real> theta_radius;
  std::vector<std::vector<Complex>> mat;
  std::vector<std::vector<Real>> mat_err;
};

// A number field k presented by a monic integer defining polynomial, an
// integral basis for O_k (rows = basis elements in power-basis coordinates)
// and its discriminant. Validation at construction: squarefree defining
// polynomial (and no rational root for degree <= 3), omega_1 = 1, basis
// invertible over Q, multiplicative closure of the basis (exact), embedding
// count matching the Sturm-exact signature, and |det embedding matrix|^2
// equal to |disc| within 1e-9 relative.
//
// Instances are immutable after construction and safe to share across
// threads; they are pinned in memory (non-copyable, non-movable) because
// elements and polynomials hold pointers to their owning field.
class NumberField {
 public:
  static NumberField make_rationals();
  static NumberField make_quadratic(const mpz_class& d);
  static NumberField make_custom(ZPoly defining_poly, QMatrix integral_basis, mpz_class discriminant);

  NumberField(const NumberField&) = delete;
  NumberField& operator=(const NumberField&) = delete;

  unsigned degree() const { return m_; }
  unsigned real_embedding_count() const { return r_; }
  unsigned complex_pair_count() const { return s_; }
  unsigned embedding_count() const { return r_ + s_; }
  unsigned unit_rank_q() const { return r_ + s_ - 1; }
  unsigned weight(unsigned i) const { return i < r_ ? 1 : 2; }
  const mpz_class& discriminant() const { return disc_; }
  const ZPoly& defining_poly() const { return poly_; }
  const QMatrix& integral_basis() const { return basis_; }
  const std::string& id() const { return id_; }

  FieldElement zero() const { return {*this, std::vector<mpz_class>(m_, 0)}; }
  FieldElement one() const;
  FieldElement from_int(long v) const;
  FieldElement element(std::vector<mpz_class> coords) const { return {*this, std::move(coords)}; }

  // Product of basis elements omega_i * omega_j in integral coordinates.
  const std::vector<mpz_class>& basis_product(unsigned i, unsigned j) const {
    return mult_table_[i * m_ + j];
  }

  // r+s embedding values of an element.
  std::vector<Complex> embed(const FieldElement& a, mpfr_prec_t prec = Real::kDefaultPrec) const;
  std::vector<std::complex<double>> embed_double(const FieldElement& a) const;
  // (r+s) x m double matrix sigma_i(omega_j); row-major per embedding.
  const std::vector<std::vector<std::complex<double>>>& embedding_matrix_double() const { return mat_double_; }

  // Embedding data at >= prec bits (cached; precision rounded up to a
  // power-of-two multiple of the construction precision).
  std::shared_ptr<const EmbeddingData> embeddings(mpfr_prec_t prec) const;

  // Integer coordinate ranges covering {a : |sigma_i(a)| <= bounds[i] * (1+pad)},
  // from the row-sum norm of the inverse embedding matrix.
  BoxRanges coordinate_ranges(const std::vector<double>& bounds, double pad) const;

  // All elements with |sigma_i(a)| <= bounds[i] for every embedding, in
  // lexicographic coordinate order. Candidates come from coordinate_ranges
  // with pad 1e-12 and a fast floating filter; the survivors are kept or
  // discarded by a certified comparison (precision ladder; a comparison
  // still undecided at top precision is included, keeping the output a
  // superset-safe closed-box set).
  std::vector<FieldElement> enumerate_in_box(const std::vector<double>& bounds,
                                             const EnumerateOptions& opts = {}) const;

  // Certified |sigma_i(a)| <= bound, ladder from base_prec with 4 raises:
  // -1 inside, +1 outside, 0 undecided.
  int compare_embedding_abs(const std::vector<mpz_class>& coords, unsigned i, double bound,
                            mpfr_prec_t base_prec) const;

 private:
  struct Construction;
  explicit NumberField(Construction&& c);

  EmbeddingData build_embedding_data(const std::vector<Complex>& theta, const std::vector<Real>& rho,
                                     mpfr_prec_t prec) const;

  unsigned m_ = 0, r_ = 0, s_ = 0;
  ZPoly poly_;
  QMatrix basis_;
  QMatrix basis_inv_;
  mpz_class disc_;
  std::string id_;
  std::vector<std::vector<mpz_class>> mult_table_;  // m*m entries of length m
  std::vector<std::vector<std::complex<double>>> mat_double_;
  std::vector<std::vector<double>> inv_abs_;   // m x m upper bounds on |E^-1| entries
  std::vector<unsigned> full_to_canonical_;    // full embedding row -> canonical index

  mutable std::mutex cache_mutex_;
  mutable std::map<mpfr_prec_t, std::shared_ptr<const EmbeddingData>> cache_;
};

// Parses the field description format:
//   field = "Q"
//   field = "quadratic" with d = <integer>
//   field = "custom" with poly = [c_0, ..., c_{m-1}, 1],
//                         basis = [["p/q", ...], ...], disc = <integer>
NumberField field_from_spec_file(const std::string& path);
// Inline forms "Q", "quadratic:<d>", "custom:<path>".
NumberField field_from_string(const std::string& text);

}  // namespace heights
