#include "heights/numberfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heights/errors.hpp"
#include "heights/roots.hpp"

namespace heights {

namespace {

constexpr mpfr_prec_t kBasePrec = 192;

Real slop(mpfr_prec_t p, long bits) { return ldexp2(Real(1.0, 32), bits - static_cast<long>(p)); }

Complex complex_det(std::vector<std::vector<Complex>> a) {
  const size_t n = a.size();
  mpfr_prec_t prec = n ? a[0][0].precision() : Real::kDefaultPrec;
  Complex det(Real(1.0, prec), Real::zero(prec));
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    double best = -1.0;
    for (size_t i = col; i < n; ++i) {
      double mag = norm(a[i][col]).to_double();
      if (mag > best) {
        best = mag;
        piv = i;
      }
    }
    if (a[piv][col].is_zero()) return Complex::zero(prec);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det = det * a[col][col];
    for (size_t i = col + 1; i < n; ++i) {
      if (a[i][col].is_zero()) continue;
      Complex f = a[i][col] / a[col][col];
      for (size_t j = col; j < n; ++j) a[i][j] = a[i][j] - f * a[col][j];
    }
  }
  return det;
}

bool complex_invert(std::vector<std::vector<Complex>> a, std::vector<std::vector<Complex>>& inv) {
  const size_t n = a.size();
  mpfr_prec_t prec = n ? a[0][0].precision() : Real::kDefaultPrec;
  inv.assign(n, std::vector<Complex>(n, Complex::zero(prec)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = Complex(Real(1.0, prec), Real::zero(prec));
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    double best = -1.0;
    for (size_t i = col; i < n; ++i) {
      double mag = norm(a[i][col]).to_double();
      if (mag > best) {
        best = mag;
        piv = i;
      }
    }
    if (a[piv][col].is_zero()) return false;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Complex p = a[col][col];
    for (size_t j = 0; j < n; ++j) {
      a[col][j] = a[col][j] / p;
      inv[col][j] = inv[col][j] / p;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      Complex f = a[i][col];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] = a[i][j] - f * a[col][j];
        inv[i][j] = inv[i][j] - f * inv[col][j];
      }
    }
  }
  return true;
}

void horner_cx(const std::vector<Complex>& c, const Complex& z, Complex& val, Complex& dval) {
  Complex b = c.back();
  Complex db = Complex::zero(z.precision());
  for (size_t k = c.size() - 1; k-- > 0;) {
    db = db * z + b;
    b = b * z + c[k];
  }
  val = std::move(b);
  dval = std::move(db);
}

}  // namespace

FieldElement::FieldElement(const NumberField& owner, std::vector<mpz_class> coords)
    : owner_(&owner), coords_(std::move(coords)) {
  if (coords_.size() != owner.degree()) throw std::invalid_argument("element coordinate count must equal the field degree");
}

bool FieldElement::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

static void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (&a.field() != &b.field()) throw std::invalid_argument("elements belong to different fields");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  std::vector<mpz_class> c(a.coords().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coords()[i] + b.coords()[i];
  return {a.field(), std::move(c)};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  std::vector<mpz_class> c(a.coords().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coords()[i] - b.coords()[i];
  return {a.field(), std::move(c)};
}

FieldElement operator-(const FieldElement& a) {
  std::vector<mpz_class> c(a.coords().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = -a.coords()[i];
  return {a.field(), std::move(c)};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(a, b);
  const NumberField& k = a.field();
  const unsigned m = k.degree();
  std::vector<mpz_class> c(m, 0);
  for (unsigned i = 0; i < m; ++i) {
    if (a.coords()[i] == 0) continue;
    for (unsigned j = 0; j < m; ++j) {
      if (b.coords()[j] == 0) continue;
      mpz_class f = a.coords()[i] * b.coords()[j];
      const auto& prod = k.basis_product(i, j);
      for (unsigned t = 0; t < m; ++t) c[t] += f * prod[t];
    }
  }
  return {k, std::move(c)};
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return &a.field() == &b.field() && a.coords() == b.coords();
}

bool operator<(const FieldElement& a, const FieldElement& b) {
  for (size_t i = 0; i < a.coords().size() && i < b.coords().size(); ++i) {
    int c = cmp(a.coords()[i], b.coords()[i]);
    if (c != 0) return c < 0;
  }
  return a.coords().size() < b.coords().size();
}

struct NumberField::Construction {
  ZPoly poly;
  QMatrix basis;
  mpz_class disc;
  std::string id;
};

NumberField::NumberField(Construction&& c)
    : poly_(std::move(c.poly)), basis_(std::move(c.basis)), disc_(std::move(c.disc)), id_(std::move(c.id)) {
  while (!poly_.empty() && poly_.back() == 0) poly_.pop_back();
  if (poly_.size() < 2) throw std::invalid_argument("defining polynomial must have degree >= 1");
  if (poly_.back() != 1) throw std::invalid_argument("defining polynomial must be monic");
  m_ = static_cast<unsigned>(poly_.size()) - 1;
  if (m_ > 16) throw std::invalid_argument("field degree beyond 16 is not supported");
  if (disc_ == 0) throw std::invalid_argument("discriminant must be a nonzero integer");
  if (m_ >= 2 && !is_squarefree_poly(poly_))
    throw std::invalid_argument("defining polynomial is not squarefree (gcd with derivative is nonconstant)");
  if (m_ >= 2 && m_ <= 3 && has_integer_root(poly_))
    throw std::invalid_argument("defining polynomial is reducible over Q (rational root)");

  if (basis_.size() != m_) throw std::invalid_argument("integral basis must be an m x m matrix");
  for (const auto& row : basis_)
    if (row.size() != m_) throw std::invalid_argument("integral basis must be an m x m matrix");
  bool first_is_one = basis_[0][0] == 1;
  for (unsigned t = 1; t < m_ && first_is_one; ++t) first_is_one = basis_[0][t] == 0;
  if (!first_is_one)
    throw std::invalid_argument("integral basis must contain 1 as its first element (Z-span must contain 1)");
  if (!q_invert(basis_, basis_inv_)) throw std::invalid_argument("integral basis is not invertible over Q");

  if (m_ == 1) {
    r_ = 1;
    s_ = 0;
  } else {
    int rr = sturm_real_root_count(poly_);
    if (rr < 0 || (static_cast<unsigned>(rr) > m_) || ((m_ - static_cast<unsigned>(rr)) % 2 != 0))
      throw std::invalid_argument("signature computation failed for the defining polynomial");
    r_ = static_cast<unsigned>(rr);
    s_ = (m_ - r_) / 2;
  }

  // Multiplicative closure: every basis product must land back in the Z-span.
  QPoly qpoly = q_from_z(poly_);
  mult_table_.resize(static_cast<size_t>(m_) * m_);
  for (unsigned i = 0; i < m_; ++i) {
    for (unsigned j = 0; j < m_; ++j) {
      QPoly prod = q_mul(basis_[i], basis_[j]);
      QPoly red = q_rem(prod, qpoly);
      red.resize(m_, 0);
      std::vector<mpz_class> coords(m_);
      for (unsigned t = 0; t < m_; ++t) {
        mpq_class v = 0;
        for (unsigned u = 0; u < m_; ++u) v += red[u] * basis_inv_[u][t];
        v.canonicalize();
        if (v.get_den() != 1)
          throw std::invalid_argument("integral basis is not multiplicatively closed (basis product leaves the Z-span)");
        coords[t] = v.get_num();
      }
      mult_table_[static_cast<size_t>(i) * m_ + j] = std::move(coords);
    }
  }

  // Embeddings of theta at the construction precision.
  std::vector<Complex> pc;
  pc.reserve(poly_.size());
  for (const auto& cz : poly_) pc.emplace_back(Real(cz, kBasePrec), Real::zero(kBasePrec));
  auto balls = find_roots(ComplexPolynomial(std::move(pc)), 1e-40);

  std::vector<size_t> order(balls.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return abs(balls[a].center.im()) < abs(balls[b].center.im());
  });
  std::vector<Complex> theta;
  std::vector<Real> rho;
  std::vector<std::pair<double, size_t>> reals;
  for (unsigned i = 0; i < r_; ++i) reals.push_back({balls[order[i]].center.re().to_double(), order[i]});
  std::sort(reals.begin(), reals.end());
  for (auto& [key, idx] : reals) {
    (void)key;
    theta.emplace_back(balls[idx].center.re(), Real::zero(kBasePrec));
    rho.push_back(ldexp2(balls[idx].radius, 1));
  }
  std::vector<std::pair<std::pair<double, double>, size_t>> uppers;
  for (size_t t = r_; t < order.size(); ++t) {
    const auto& b = balls[order[t]];
    if (b.center.im().sign() > 0)
      uppers.push_back({{b.center.re().to_double(), b.center.im().to_double()}, order[t]});
  }
  if (uppers.size() != s_)
    throw std::invalid_argument("embedding classification failed (complex pair count mismatch)");
  std::sort(uppers.begin(), uppers.end());
  for (auto& [key, idx] : uppers) {
    (void)key;
    theta.push_back(balls[idx].center);
    rho.push_back(balls[idx].radius);
  }

  auto base = std::make_shared<EmbeddingData>(build_embedding_data(theta, rho, kBasePrec));
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    cache_[kBasePrec] = base;
  }

  mat_double_.assign(embedding_count(), std::vector<std::complex<double>>(m_));
  for (unsigned i = 0; i < embedding_count(); ++i)
    for (unsigned j = 0; j < m_; ++j) mat_double_[i][j] = base->mat[i][j].to_complex_double();

  // Full m x m embedding matrix: real rows, then (pair, conjugate) rows.
  std::vector<std::vector<Complex>> full;
  full_to_canonical_.clear();
  for (unsigned i = 0; i < r_; ++i) {
    full.push_back(base->mat[i]);
    full_to_canonical_.push_back(i);
  }
  for (unsigned t = 0; t < s_; ++t) {
    unsigned i = r_ + t;
    full.push_back(base->mat[i]);
    full_to_canonical_.push_back(i);
    std::vector<Complex> conj_row;
    conj_row.reserve(m_);
    for (const auto& z : base->mat[i]) conj_row.push_back(conj(z));
    full.push_back(std::move(conj_row));
    full_to_canonical_.push_back(i);
  }

  Complex det = complex_det(full);
  Real det2 = norm(det);
  Real target(mpz_class(abs(disc_)), kBasePrec);
  if (abs(det2 - target) > target * Real(1e-9, 64))
    throw std::invalid_argument("discriminant mismatch: |det of embedded basis|^2 = " + det2.to_string(20) +
                                " but |disc| = " + target.to_string(20));

  std::vector<std::vector<Complex>> inv;
  if (!complex_invert(std::move(full), inv))
    throw std::invalid_argument("embedding matrix is singular");
  inv_abs_.assign(m_, std::vector<double>(m_));
  for (unsigned j = 0; j < m_; ++j)
    for (unsigned i = 0; i < m_; ++i) inv_abs_[j][i] = abs(inv[j][i]).to_double() * (1.0 + 1e-12);
}

EmbeddingData NumberField::build_embedding_data(const std::vector<Complex>& theta, const std::vector<Real>& rho,
                                                mpfr_prec_t prec) const {
  EmbeddingData data;
  data.prec = prec;
  data.theta = theta;
  data.theta_radius = rho;
  const unsigned rs = static_cast<unsigned>(theta.size());
  data.mat.assign(rs, {});
  data.mat_err.assign(rs, {});
  const Real rslop = slop(prec, 6);
  for (unsigned i = 0; i < rs; ++i) {
    const Complex& th = theta[i];
    const Real& rad = rho[i];
    Real ath = abs(th);
    Real ath_hi = ath + rad;
    data.mat[i].reserve(m_);
    data.mat_err[i].reserve(m_);
    for (unsigned j = 0; j < m_; ++j) {
      Complex v = Complex::zero(prec);
      Real verr = Real::zero(prec);
      Real scale = Real::zero(prec);
      Complex power(Real(1.0, prec), Real::zero(prec));
      Real apower(1.0, prec);
      Real apower_hi(1.0, prec);
      for (unsigned t = 0; t < m_; ++t) {
        const mpq_class& b = basis_[j][t];
        if (b != 0) {
          Real rb(b, prec);
          v = v + power * rb;
          Real ab = abs(rb);
          scale += ab * apower;
          // |d(theta^t)| <= t * (|theta|+rho)^(t-1) * rho
          if (t > 0 && rad.sign() > 0) verr += ab * Real(static_cast<long>(t)) * pow_si(ath_hi, static_cast<long>(t) - 1) * rad;
        }
        if (t + 1 < m_) {
          power = power * th;
          apower = apower * ath;
          apower_hi = apower_hi * ath_hi;
        }
      }
      verr += scale * rslop;
      data.mat[i].push_back(std::move(v));
      data.mat_err[i].push_back(std::move(verr));
    }
  }
  return data;
}

std::shared_ptr<const EmbeddingData> NumberField::embeddings(mpfr_prec_t prec) const {
  mpfr_prec_t want = kBasePrec;
  while (want < prec) want *= 2;
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(want);
    if (it != cache_.end()) return it->second;
  }
  std::shared_ptr<const EmbeddingData> base;
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    base = cache_.at(kBasePrec);
  }

  // Newton-refine every root at the target precision; quadratic convergence
  // doubles correct bits per step from the ~140 certified at construction.
  std::vector<Complex> pc;
  pc.reserve(poly_.size());
  for (const auto& cz : poly_) pc.emplace_back(Real(cz, want), Real::zero(want));
  int steps = 2;
  for (mpfr_prec_t have = 100; have < want; have *= 2) ++steps;

  const unsigned rs = embedding_count();
  std::vector<Complex> theta;
  theta.reserve(rs);
  for (unsigned i = 0; i < rs; ++i) {
    Complex z = Complex::convert(base->theta[i], want);
    for (int it = 0; it < steps; ++it) {
      Complex val, dval;
      horner_cx(pc, z, val, dval);
      if (val.is_zero() || dval.is_zero()) break;
      z = z - val / dval;
      if (i < r_) z = Complex(z.re(), Real::zero(want));
    }
    theta.push_back(std::move(z));
  }

  // Certified radii against the full conjugate-closed root set.
  std::vector<Complex> all = theta;
  for (unsigned t = r_; t < rs; ++t) all.push_back(conj(theta[t]));
  std::vector<Real> rho;
  rho.reserve(rs);
  const Real gamma = Real(3L * (static_cast<long>(m_) + 1)) * slop(want, 0);
  const Real one(1.0, want);
  for (unsigned i = 0; i < rs; ++i) {
    Complex v = pc.back();
    Real absum = abs(pc.back());
    Real az = abs(theta[i]);
    for (size_t k = pc.size() - 1; k-- > 0;) {
      v = v * theta[i] + pc[k];
      absum = absum * az + abs(pc[k]);
    }
    Real resid = abs(v) + absum * gamma;
    Real den = one;
    for (unsigned j = 0; j < all.size(); ++j) {
      if (j == i) continue;
      den = den * abs(theta[i] - all[j]);
    }
    den = den * (one - Real(static_cast<long>(m_) + 6) * slop(want, 0));
    if (den.sign() <= 0) throw numeric_error("embedding refinement failed (root separation lost)");
    rho.push_back(Real(static_cast<long>(m_)) * resid / den * (one + slop(want, 4)));
  }

  auto data = std::make_shared<EmbeddingData>(build_embedding_data(theta, rho, want));
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto [it, inserted] = cache_.emplace(want, data);
  return it->second;
}

FieldElement NumberField::one() const { return from_int(1); }

FieldElement NumberField::from_int(long v) const {
  std::vector<mpz_class> c(m_, 0);
  c[0] = v;
  return {*this, std::move(c)};
}

std::vector<Complex> NumberField::embed(const FieldElement& a, mpfr_prec_t prec) const {
  if (&a.field() != this) throw std::invalid_argument("element belongs to a different field");
  auto data = embeddings(prec);
  std::vector<Complex> out;
  out.reserve(embedding_count());
  for (unsigned i = 0; i < embedding_count(); ++i) {
    Complex v = Complex::zero(data->prec);
    for (unsigned j = 0; j < m_; ++j) {
      if (a.coords()[j] == 0) continue;
      v = v + data->mat[i][j] * Real(a.coords()[j], data->prec);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::complex<double>> NumberField::embed_double(const FieldElement& a) const {
  if (&a.field() != this) throw std::invalid_argument("element belongs to a different field");
  std::vector<std::complex<double>> out(embedding_count());
  for (unsigned i = 0; i < embedding_count(); ++i) {
    std::complex<double> v = 0.0;
    for (unsigned j = 0; j < m_; ++j) {
      if (a.coords()[j] == 0) continue;
      v += mat_double_[i][j] * a.coords()[j].get_d();
    }
    out[i] = v;
  }
  return out;
}

BoxRanges NumberField::coordinate_ranges(const std::vector<double>& bounds, double pad) const {
  if (bounds.size() != embedding_count()) throw std::invalid_argument("one bound per embedding required");
  BoxRanges out;
  out.limit.resize(m_);
  for (unsigned j = 0; j < m_; ++j) {
    double rj = 0.0;
    for (unsigned i = 0; i < m_; ++i) {
      double b = bounds[full_to_canonical_[i]];
      if (!(b > 0) || !std::isfinite(b)) throw std::invalid_argument("box bounds must be positive and finite");
      rj += inv_abs_[j][i] * b * (1.0 + pad);
    }
    out.limit[j] = static_cast<long>(std::floor(rj + 1e-9));
    out.candidate_count *= 2.0 * static_cast<double>(out.limit[j]) + 1.0;
  }
  return out;
}

int NumberField::compare_embedding_abs(const std::vector<mpz_class>& coords, unsigned i, double bound,
                                       mpfr_prec_t base_prec) const {
  for (int stage = 0; stage <= 4; ++stage) {
    mpfr_prec_t prec = base_prec << stage;
    auto data = embeddings(prec);
    Complex v = Complex::zero(data->prec);
    Real verr = Real::zero(data->prec);
    Real scale = Real::zero(data->prec);
    for (unsigned j = 0; j < m_; ++j) {
      if (coords[j] == 0) continue;
      Real a(coords[j], data->prec);
      v = v + data->mat[i][j] * a;
      Real aa = abs(a);
      verr += aa * data->mat_err[i][j];
      scale += aa * abs(data->mat[i][j]);
    }
    verr += scale * slop(data->prec, 6);
    Real av = abs(v);
    verr += av * slop(data->prec, 2);
    Real b(bound, data->prec);
    if (av + verr <= b) return -1;
    if (av - verr > b) return +1;
  }
  return 0;
}

std::vector<FieldElement> NumberField::enumerate_in_box(const std::vector<double>& bounds,
                                                        const EnumerateOptions& opts) const {
  BoxRanges ranges = coordinate_ranges(bounds, 1e-12);
  if (ranges.candidate_count > static_cast<double>(opts.candidate_cap))
    throw resource_error("enumeration box holds about " + std::to_string(ranges.candidate_count) +
                         " candidates, beyond the cap of " + std::to_string(opts.candidate_cap));

  const unsigned rs = embedding_count();
  std::vector<FieldElement> out;
  std::vector<long> v(m_);
  for (unsigned j = 0; j < m_; ++j) v[j] = -ranges.limit[j];

  std::vector<mpz_class> coords(m_);
  while (true) {
    bool pass = true;
    for (unsigned i = 0; i < rs && pass; ++i) {
      double sr = 0.0, si = 0.0, asum = 0.0;
      for (unsigned j = 0; j < m_; ++j) {
        double aj = static_cast<double>(v[j]);
        sr += aj * mat_double_[i][j].real();
        si += aj * mat_double_[i][j].imag();
        asum += std::abs(aj) * std::abs(mat_double_[i][j]);
      }
      double lim = bounds[i] * (1.0 + 1e-12) + 1e-12 * asum + 1e-300;
      if (sr * sr + si * si > lim * lim) pass = false;
    }
    if (pass) {
      for (unsigned j = 0; j < m_; ++j) coords[j] = v[j];
      bool keep = true;
      for (unsigned i = 0; i < rs && keep; ++i)
        keep = compare_embedding_abs(coords, i, bounds[i], opts.precision_bits) <= 0;
      if (keep) out.emplace_back(*this, coords);
    }
    int j = static_cast<int>(m_) - 1;
    while (j >= 0 && v[static_cast<unsigned>(j)] == ranges.limit[static_cast<unsigned>(j)]) {
      v[static_cast<unsigned>(j)] = -ranges.limit[static_cast<unsigned>(j)];
      --j;
    }
    if (j < 0) break;
    ++v[static_cast<unsigned>(j)];
  }
  return out;
}

NumberField NumberField::make_rationals() {
  Construction c;
  c.poly = {0, 1};
  c.basis = {{1}};
  c.disc = 1;
  c.id = "Q";
  return NumberField(std::move(c));
}

NumberField NumberField::make_quadratic(const mpz_class& d) {
  if (d == 0 || d == 1) throw std::invalid_argument("quadratic generator must not be 0 or 1");
  if (!is_squarefree_int(d)) throw std::invalid_argument("quadratic generator must be squarefree");
  Construction c;
  c.poly = {-d, 0, 1};
  mpz_class mod4 = ((d % 4) + 4) % 4;
  if (mod4 == 1) {
    c.basis = {{mpq_class(1), mpq_class(0)}, {mpq_class(1, 2), mpq_class(1, 2)}};
    c.disc = d;
  } else {
    c.basis = {{mpq_class(1), mpq_class(0)}, {mpq_class(0), mpq_class(1)}};
    c.disc = 4 * d;
  }
  c.id = "quadratic:" + d.get_str();
  return NumberField(std::move(c));
}

NumberField NumberField::make_custom(ZPoly defining_poly, QMatrix integral_basis, mpz_class discriminant) {
  Construction c;
  c.poly = std::move(defining_poly);
  c.basis = std::move(integral_basis);
  c.disc = std::move(discriminant);
  c.id = "custom";
  return NumberField(std::move(c));
}

}  // namespace heights
