#pragma once

#include <cstdint>
#include <vector>

#include "heights/asymptotics.hpp"
#include "heights/census.hpp"
#include "heights/numberfield.hpp"

namespace heights {

// Exact |det| of the Minkowski lattice of O_k^n: (2^(-s) sqrt(|disc|))^n.
StructuredConstant det_formula(const NumberField& k, unsigned n);

// sigma(O_k^n) as a full-rank lattice in R^(mn). Basis row t*m+j is the
// image of basis element omega_(j+1) placed in coordinate slot t; each slot
// contributes coordinates (sigma_1, ..., sigma_r, Re sigma_(r+1),
// Im sigma_(r+1), ...). Validated at construction: the numeric |det| matches
// det_formula within 1e-9 relative, and an exhaustive box search certifies
// that no nonzero lattice point lies in the open unit ball.
class MinkowskiLattice {
 public:
  MinkowskiLattice(const NumberField& k, unsigned n);

  const NumberField& field() const { return *field_; }
  unsigned n() const { return n_; }
  unsigned rank() const { return field_->degree() * n_; }
  const std::vector<std::vector<double>>& basis_matrix() const { return basis_; }
  const StructuredConstant& determinant() const { return det_; }

 private:
  const NumberField* field_;
  unsigned n_;
  std::vector<std::vector<double>> basis_;
  StructuredConstant det_;
};

// Whether the monic polynomial with coefficient tail `point` lies in the
// Mahler body Z(T): prod_i M(sigma_i(f))^(d_i) <= T, borderline cases
// resolved by the same policy as the census.
bool body_membership(const MinkowskiLattice& lat, double T,
                     const std::vector<FieldElement>& point,
                     mpfr_prec_t precision_bits = Real::kDefaultPrec);

// Lattice points of sigma(O_k^n) inside Z(T). Complete: every member lies in
// the per-coefficient boxes |sigma_i(a_j)| <= binom(n,j) * T^(1/d_i), since
// the other factors of the measure product are >= 1.
CensusList body_points(const MinkowskiLattice& lat, double T, const CensusOptions& opts = {});
std::uint64_t count_points(const MinkowskiLattice& lat, double T, const CensusOptions& opts = {});

}  // namespace heights
