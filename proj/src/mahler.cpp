#include "heights/mahler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heights/errors.hpp"
#include "heights/roots.hpp"

namespace heights {

namespace {

detail::CoeffBall embed_ball(const EmbeddingData& data, const FieldElement& a, unsigned i) {
  const mpfr_prec_t prec = data.prec;
  Complex v = Complex::zero(prec);
  Real err = Real::zero(prec);
  Real scale = Real::zero(prec);
  const auto& coords = a.coords();
  for (size_t j = 0; j < coords.size(); ++j) {
    if (coords[j] == 0) continue;
    Real aj(coords[j], prec);
    v = v + data.mat[i][j] * aj;
    Real aa = abs(aj);
    err += aa * data.mat_err[i][j];
    scale += aa * abs(data.mat[i][j]);
  }
  err += scale * prec_eps(prec, 6);
  return {std::move(v), std::move(err)};
}

std::vector<detail::CoeffBall> conj_coeffs(const std::vector<detail::CoeffBall>& a) {
  std::vector<detail::CoeffBall> out;
  out.reserve(a.size());
  for (const auto& b : a) out.push_back({conj(b.center), b.err});
  return out;
}

std::vector<detail::CoeffBall> ball_poly_mul(const std::vector<detail::CoeffBall>& a,
                                             const std::vector<detail::CoeffBall>& b, mpfr_prec_t prec) {
  std::vector<detail::CoeffBall> out(a.size() + b.size() - 1,
                                     {Complex::zero(prec), Real::zero(prec)});
  const Real eps = prec_eps(prec, 5);
  for (size_t i = 0; i < a.size(); ++i) {
    Real ax = abs(a[i].center);
    for (size_t j = 0; j < b.size(); ++j) {
      Real ay = abs(b[j].center);
      Complex p = a[i].center * b[j].center;
      Real term_err = ax * b[j].err + ay * a[i].err + a[i].err * b[j].err + ax * ay * eps;
      auto& slot = out[i + j];
      slot.center = slot.center + p;
      slot.err = slot.err + term_err + abs(slot.center) * eps;
    }
  }
  return out;
}

}  // namespace

namespace detail {

std::vector<CoeffBall> embedded_coeffs(const MonicPolynomial& f, const EmbeddingData& data, unsigned i,
                                       unsigned drop) {
  const unsigned d = f.degree() - drop;
  std::vector<CoeffBall> balls;
  balls.reserve(d + 1);
  for (unsigned j = 0; j < d; ++j) balls.push_back(embed_ball(data, f.coeff(d - j), i));
  balls.push_back({Complex(Real(1.0, data.prec), Real::zero(data.prec)), Real::zero(data.prec)});
  return balls;
}

}  // namespace detail

MahlerProfile relative_mahler(const MonicPolynomial& f, mpfr_prec_t precision_bits) {
  const NumberField& k = f.field();
  const unsigned e = f.degree();
  const unsigned m = k.degree();
  const unsigned rs = k.embedding_count();

  // Zero constant coefficients are exact roots at 0 and contribute the
  // factor max(1, 0) = 1: deflate them exactly at the element level.
  unsigned drop = 0;
  while (drop < e && f.coeff(e - drop).is_zero()) ++drop;

  MahlerProfile out;
  if (drop == e) {
    out.per_embedding.assign(rs, 1.0);
    return out;
  }

  const mpfr_prec_t base = std::max<mpfr_prec_t>(precision_bits, 64);
  bool have_best = false;
  MahlerProfile best;
  for (int stage = 0; stage <= 4; ++stage) {
    const mpfr_prec_t prec = base << stage;
    auto data = k.embeddings(prec);
    bool ok = true;
    Real lo(1.0, prec), hi(1.0, prec);
    std::vector<double> per(rs);
    for (unsigned i = 0; i < rs && ok; ++i) {
      auto res = detail::mahler_engine(detail::embedded_coeffs(f, *data, i, drop), prec);
      if (!res.ok || res.m_lo.sign() <= 0) {
        ok = false;
        break;
      }
      per[i] = std::max(1.0, ((res.m_lo + res.m_hi) * Real(0.5, prec)).to_double());
      Real expo = Real(static_cast<long>(k.weight(i)), prec) / Real(static_cast<long>(m), prec);
      lo = lo * exp(expo * log(res.m_lo));
      hi = hi * exp(expo * log(res.m_hi));
    }
    if (!ok) continue;
    const Real pad = prec_eps(prec, 8);
    lo = lo * (Real(1.0, prec) - pad);
    hi = hi * (Real(1.0, prec) + pad);
    MahlerProfile cur;
    cur.per_embedding = std::move(per);
    cur.relative = std::max(1.0, ((lo + hi) * Real(0.5, prec)).to_double());
    cur.err = ((hi - lo) * Real(0.5, prec)).to_double();
    if (!have_best || cur.err < best.err) {
      best = cur;
      have_best = true;
    }
    if (cur.err <= 1e-12 * cur.relative) break;
  }
  if (!have_best) throw numeric_error("relative measure could not be certified at maximum precision");
  return best;
}

double height_of_root(const MonicPolynomial& f, unsigned e) {
  if (e != f.degree()) throw std::invalid_argument("root degree must equal the polynomial degree");
  return std::pow(relative_mahler(f).relative, 1.0 / static_cast<double>(e));
}

ZPoly norm_form(const MonicPolynomial& f, mpfr_prec_t precision_bits) {
  const NumberField& k = f.field();
  const unsigned r = k.real_embedding_count();
  const unsigned rs = k.embedding_count();
  const mpfr_prec_t base = std::max<mpfr_prec_t>(precision_bits, 64);

  for (int stage = 0; stage <= 4; ++stage) {
    const mpfr_prec_t prec = base << stage;
    auto data = k.embeddings(prec);
    std::vector<detail::CoeffBall> acc = {
        {Complex(Real(1.0, prec), Real::zero(prec)), Real::zero(prec)}};
    for (unsigned i = 0; i < rs; ++i) {
      auto balls = detail::embedded_coeffs(f, *data, i, 0);
      acc = ball_poly_mul(acc, balls, prec);
      if (i >= r) acc = ball_poly_mul(acc, conj_coeffs(balls), prec);
    }
    ZPoly out(acc.size());
    bool good = true;
    const Real quarter(0.25, 64);
    for (size_t j = 0; j < acc.size() && good; ++j) {
      const Real& re = acc[j].center.re();
      if (!(acc[j].err < quarter) || !(abs(acc[j].center.im()) <= acc[j].err)) {
        good = false;
        break;
      }
      mpz_class n;
      mpfr_get_z(n.get_mpz_t(), re.raw(), MPFR_RNDN);
      if (!(abs(re - Real(n, prec)) <= acc[j].err)) {
        good = false;
        break;
      }
      out[j] = std::move(n);
    }
    if (good) return out;
  }
  throw numeric_error("norm form coefficients could not be certified as integers");
}

}  // namespace heights
