#include "heights/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heights/errors.hpp"

namespace heights {

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> ascending) : coeffs_(std::move(ascending)) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  if (degree() > kMaxPolyDegree) throw std::invalid_argument("polynomial degree exceeds 64");
}

ComplexPolynomial ComplexPolynomial::from_doubles(const std::vector<std::complex<double>>& a, mpfr_prec_t prec) {
  std::vector<Complex> c;
  c.reserve(a.size());
  for (const auto& z : a) c.emplace_back(z.real(), z.imag(), prec);
  return ComplexPolynomial(std::move(c));
}

namespace detail {
namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// 2^(bits - p): relative rounding slop at precision p, exactly representable.
Real slop(mpfr_prec_t p, long bits) { return ldexp2(Real(1.0, 32), bits - static_cast<long>(p)); }

struct Eval {
  Complex val;
  Real absum;  // sum_k |c_k| |z|^k, majorant for the rounding-error bound
};

Eval horner_abs(const std::vector<Complex>& c, const Complex& z) {
  Complex v = c.back();
  Real a = abs(c.back());
  Real az = abs(z);
  for (size_t k = c.size() - 1; k-- > 0;) {
    v = v * z + c[k];
    a = a * az + abs(c[k]);
  }
  return {std::move(v), std::move(a)};
}

void horner_pair(const std::vector<Complex>& c, const Complex& z, Complex& val, Complex& dval) {
  Complex b = c.back();
  Complex db = Complex::zero(z.precision());
  for (size_t k = c.size() - 1; k-- > 0;) {
    db = db * z + b;
    b = b * z + c[k];
  }
  val = std::move(b);
  dval = std::move(db);
}

std::vector<Complex> aberth_hp(const std::vector<Complex>& c, mpfr_prec_t prec, int max_sweeps) {
  const int d = static_cast<int>(c.size()) - 1;
  double lead = abs(c.back()).to_double();
  double maxr = 0.0;
  for (int k = 0; k < d; ++k) maxr = std::max(maxr, abs(c[static_cast<size_t>(k)]).to_double() / lead);
  double big = 1.0 + maxr;
  if (!std::isfinite(big) || big > 1e12) big = 1e12;

  std::vector<Complex> z;
  z.reserve(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    double ang = kTau * (j + 0.3572) / d;
    z.emplace_back(big * std::cos(ang), big * std::sin(ang), prec);
  }

  const Real tol = slop(prec, 8);
  const Real one(1.0, prec);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    Real maxrel = Real::zero(prec);
    for (int i = 0; i < d; ++i) {
      Complex val, dval;
      horner_pair(c, z[static_cast<size_t>(i)], val, dval);
      if (val.is_zero()) continue;
      if (dval.is_zero()) {
        z[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] + Complex(big * 1e-3 * (i + 1) / (d + 1), big * 7e-4, prec);
        maxrel = one;
        continue;
      }
      Complex n = val / dval;
      Complex s = Complex::zero(prec);
      bool collided = false;
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        Complex diff = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
        if (diff.is_zero()) {
          collided = true;
          break;
        }
        s = s + Complex(one) / diff;
      }
      if (collided) {
        z[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] + Complex(big * 1e-3 * (i + 1) / (d + 1), -big * 7e-4, prec);
        maxrel = one;
        continue;
      }
      Complex den = Complex(one) - n * s;
      Complex corr = den.is_zero() ? n : n / den;
      z[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] - corr;
      Real rel = abs(corr) / (one + abs(z[static_cast<size_t>(i)]));
      if (rel > maxrel) maxrel = rel;
    }
    if (maxrel <= tol) break;
  }

  // Newton polish, accepted only when the residual actually drops.
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < d; ++i) {
      Complex val, dval;
      horner_pair(c, z[static_cast<size_t>(i)], val, dval);
      if (val.is_zero() || dval.is_zero()) continue;
      Complex zn = z[static_cast<size_t>(i)] - val / dval;
      Complex vn, dn;
      horner_pair(c, zn, vn, dn);
      if (abs(vn) < abs(val)) z[static_cast<size_t>(i)] = std::move(zn);
    }
  }
  return z;
}

}  // namespace

EngineResult mahler_engine(const std::vector<CoeffBall>& balls, mpfr_prec_t prec, int max_sweeps) {
  EngineResult out;
  const int d = static_cast<int>(balls.size()) - 1;
  if (d < 1) throw std::invalid_argument("mahler_engine requires degree >= 1");

  std::vector<Complex> c;
  std::vector<Real> err;
  c.reserve(balls.size());
  err.reserve(balls.size());
  bool has_err = false;
  for (const auto& b : balls) {
    Complex cc = Complex::convert(b.center, prec);
    Real e = Real::convert(b.err, prec) + abs(cc) * slop(prec, 2);
    if (e.sign() > 0) has_err = true;
    c.push_back(std::move(cc));
    err.push_back(std::move(e));
  }

  Real lead_lo = abs(c.back()) - err.back();
  Real lead_hi = abs(c.back()) + err.back();
  if (lead_lo.sign() <= 0) return out;

  std::vector<Complex> z = aberth_hp(c, prec, max_sweeps);

  const Real one(1.0, prec);
  const Real gamma = Real(3L * (d + 1)) * slop(prec, 0);
  std::vector<Real> radius;
  radius.reserve(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    Eval ev = horner_abs(c, z[static_cast<size_t>(i)]);
    Real resid = abs(ev.val) + ev.absum * gamma;
    if (has_err) {
      Real az = abs(z[static_cast<size_t>(i)]);
      Real p = one;
      for (int k = 0; k <= d; ++k) {
        resid += err[static_cast<size_t>(k)] * p;
        p = p * az;
      }
    }
    Real den = lead_lo;
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      den = den * abs(z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]);
    }
    den = den * (one - Real(static_cast<long>(d) + 6) * slop(prec, 0));
    if (den.sign() <= 0) return out;
    Real rad = Real(static_cast<long>(d)) * resid / den * (one + Real(static_cast<long>(d) + 6) * slop(prec, 0));
    if (!rad.is_finite()) return out;
    radius.push_back(std::move(rad));
  }

  // Group overlapping disks; each connected component of the disk union
  // contains exactly as many roots as disks, so an annulus per component
  // gives a rigorous interval for the product of max(1, |root|).
  std::vector<int> parent(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) parent[static_cast<size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  const Real infl = one + slop(prec, 8);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      if (abs(z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]) <=
          (radius[static_cast<size_t>(i)] + radius[static_cast<size_t>(j)]) * infl) {
        parent[static_cast<size_t>(find(i))] = find(j);
      }
    }

  Real m_lo = lead_lo;
  Real m_hi = lead_hi;
  const Real pad = one + slop(prec, 4);
  std::vector<char> done(static_cast<size_t>(d), 0);
  for (int i = 0; i < d; ++i) {
    int root_i = find(i);
    if (done[static_cast<size_t>(root_i)]) continue;
    done[static_cast<size_t>(root_i)] = 1;
    long count = 0;
    Real lo = Real::zero(prec);
    Real hi = Real::zero(prec);
    bool first = true;
    for (int j = 0; j < d; ++j) {
      if (find(j) != root_i) continue;
      Real a = abs(z[static_cast<size_t>(j)]);
      Real l = (a - radius[static_cast<size_t>(j)]) / pad;
      Real h = (a + radius[static_cast<size_t>(j)]) * pad;
      if (first || l < lo) lo = l;
      if (first || h > hi) hi = h;
      first = false;
      ++count;
    }
    m_lo = m_lo * pow_si(max(one, lo), count);
    m_hi = m_hi * pow_si(max(one, hi), count);
  }
  const Real outer = Real(static_cast<long>(d) + 4) * slop(prec, 0);
  m_lo = m_lo * (one - outer);
  m_hi = m_hi * (one + outer);
  if (!m_lo.is_finite() || !m_hi.is_finite()) return out;

  out.ok = true;
  out.m_lo = std::move(m_lo);
  out.m_hi = std::move(m_hi);
  out.roots = std::move(z);
  out.radii = std::move(radius);
  return out;
}

}  // namespace detail

namespace {

std::vector<detail::CoeffBall> exact_balls(const std::vector<Complex>& c, size_t from) {
  std::vector<detail::CoeffBall> balls;
  balls.reserve(c.size() - from);
  for (size_t j = from; j < c.size(); ++j) balls.push_back({c[j], Real::zero(32)});
  return balls;
}

mpfr_prec_t base_precision(const std::vector<Complex>& c, mpfr_prec_t floor_prec) {
  mpfr_prec_t p = floor_prec;
  for (const auto& z : c) p = std::max(p, z.precision());
  return p;
}

}  // namespace

std::vector<RootBall> find_roots(const ComplexPolynomial& p, double target_eps) {
  if (!(target_eps > 0)) throw std::invalid_argument("find_roots: target_eps must be positive");
  if (p.degree() < 1) throw std::invalid_argument("find_roots: degree >= 1 required");
  const auto& c = p.coefficients();

  size_t zeros = 0;
  while (c[zeros].is_zero()) ++zeros;

  long need = static_cast<long>(std::ceil(-std::log2(target_eps))) + 64;
  mpfr_prec_t base = base_precision(c, std::max<mpfr_prec_t>(128, need));

  std::vector<RootBall> out;
  for (size_t i = 0; i < zeros; ++i) out.push_back({Complex::zero(base), Real::zero(base)});
  if (zeros == c.size() - 1) return out;

  auto balls = exact_balls(c, zeros);
  const Real eps(target_eps, 64);
  for (int stage = 0; stage <= 4; ++stage) {
    auto er = detail::mahler_engine(balls, base << stage, 200);
    if (!er.ok) continue;
    Real worst = Real::zero(32);
    for (const auto& r : er.radii)
      if (r > worst) worst = r;
    if (worst <= eps) {
      for (size_t i = 0; i < er.roots.size(); ++i) out.push_back({std::move(er.roots[i]), std::move(er.radii[i])});
      std::sort(out.begin(), out.end(), [](const RootBall& a, const RootBall& b) {
        if (a.center.re() != b.center.re()) return a.center.re() < b.center.re();
        return a.center.im() < b.center.im();
      });
      return out;
    }
  }
  throw numeric_error("find_roots: radii did not certify to target at maximum precision");
}

ValueWithError mahler_measure(const ComplexPolynomial& p) {
  if (p.is_zero()) return {0.0, 0.0};
  const auto& c = p.coefficients();
  if (p.degree() == 0) {
    double v = abs(c[0]).to_double();
    return {v, v * 1e-15};
  }
  size_t zeros = 0;
  while (c[zeros].is_zero()) ++zeros;
  if (zeros == c.size() - 1) {
    double v = abs(c.back()).to_double();
    return {v, v * 1e-15};
  }

  auto balls = exact_balls(c, zeros);
  mpfr_prec_t base = base_precision(c, 128);
  bool have = false;
  ValueWithError best;
  for (int stage = 0; stage <= 4; ++stage) {
    auto er = detail::mahler_engine(balls, base << stage, 200);
    if (!er.ok) continue;
    Real mid = ldexp2(er.m_lo + er.m_hi, -1);
    Real half = ldexp2(er.m_hi - er.m_lo, -1);
    ValueWithError v{mid.to_double(), half.to_double() + std::abs(mid.to_double()) * 1e-17};
    if (!have || v.error < best.error) {
      best = v;
      have = true;
    }
    if (half <= mid * ldexp2(Real(1.0, 32), -70)) return best;
  }
  if (have) return best;
  throw numeric_error("mahler_measure: certification failed at maximum precision");
}

std::pair<double, double> scaling_check(const ComplexPolynomial& p, const Complex& w) {
  std::vector<Complex> scaled;
  scaled.reserve(p.coefficients().size());
  for (const auto& z : p.coefficients()) scaled.push_back(z * w);
  ValueWithError lhs = mahler_measure(ComplexPolynomial(std::move(scaled)));
  ValueWithError m = mahler_measure(p);
  return {lhs.value, abs(w).to_double() * m.value};
}

namespace detail {
namespace {

using cdouble = std::complex<double>;

void aberth_double_run(const std::vector<cdouble>& c, std::vector<cdouble>& z, int max_sweeps) {
  const int d = static_cast<int>(c.size()) - 1;
  double lead = std::abs(c.back());
  double maxr = 0.0;
  for (int k = 0; k < d; ++k) maxr = std::max(maxr, std::abs(c[static_cast<size_t>(k)]) / lead);
  double big = 1.0 + maxr;
  if (!std::isfinite(big) || big > 1e12) big = 1e12;

  z.resize(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) {
    double ang = kTau * (j + 0.3572) / d;
    z[static_cast<size_t>(j)] = cdouble(big * std::cos(ang), big * std::sin(ang));
  }
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double maxrel = 0.0;
    for (int i = 0; i < d; ++i) {
      cdouble b = c.back(), db = 0.0;
      for (size_t k = c.size() - 1; k-- > 0;) {
        db = db * z[static_cast<size_t>(i)] + b;
        b = b * z[static_cast<size_t>(i)] + c[k];
      }
      if (b == 0.0) continue;
      if (db == 0.0) {
        z[static_cast<size_t>(i)] += cdouble(big * 1e-3 * (i + 1) / (d + 1), big * 7e-4);
        maxrel = 1.0;
        continue;
      }
      cdouble n = b / db;
      cdouble s = 0.0;
      bool collided = false;
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        cdouble diff = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
        if (diff == 0.0) {
          collided = true;
          break;
        }
        s += 1.0 / diff;
      }
      if (collided) {
        z[static_cast<size_t>(i)] += cdouble(big * 1e-3 * (i + 1) / (d + 1), -big * 7e-4);
        maxrel = 1.0;
        continue;
      }
      cdouble den = 1.0 - n * s;
      cdouble corr = (den == 0.0) ? n : n / den;
      z[static_cast<size_t>(i)] -= corr;
      maxrel = std::max(maxrel, std::abs(corr) / (1.0 + std::abs(z[static_cast<size_t>(i)])));
    }
    if (maxrel < 1e-14) break;
  }
}

}  // namespace

DoubleEnclosure mahler_double(const std::vector<cdouble>& coeffs, const std::vector<double>& coeff_err) {
  DoubleEnclosure out;
  if (coeffs.empty() || coeffs.size() != coeff_err.size()) return out;
  size_t zeros = 0;
  while (zeros + 1 < coeffs.size() && coeffs[zeros] == 0.0 && coeff_err[zeros] == 0.0) ++zeros;
  std::vector<cdouble> c(coeffs.begin() + static_cast<long>(zeros), coeffs.end());
  std::vector<double> err(coeff_err.begin() + static_cast<long>(zeros), coeff_err.end());
  const int d = static_cast<int>(c.size()) - 1;

  double lead_lo = std::abs(c.back()) - err.back();
  double lead_hi = std::abs(c.back()) + err.back();
  if (!(lead_lo > 0)) return out;
  if (d == 0) {
    out.ok = true;
    out.lo = lead_lo * (1 - 1e-14);
    out.hi = lead_hi * (1 + 1e-14);
    return out;
  }

  std::vector<cdouble> z;
  aberth_double_run(c, z, 80);

  const double gamma = 3.0 * (d + 1) * 0x1p-52;
  std::vector<double> radius(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    cdouble v = c.back();
    double absum = std::abs(c.back());
    double az = std::abs(z[static_cast<size_t>(i)]);
    for (size_t k = c.size() - 1; k-- > 0;) {
      v = v * z[static_cast<size_t>(i)] + c[k];
      absum = absum * az + std::abs(c[k]);
    }
    double resid = std::abs(v) + absum * gamma;
    double pw = 1.0;
    for (int k = 0; k <= d; ++k) {
      resid += err[static_cast<size_t>(k)] * pw;
      pw *= az;
    }
    double den = lead_lo;
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      den *= std::abs(z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]);
    }
    den *= 1.0 - (d + 6) * 0x1p-50;
    if (!(den > 0) || !std::isfinite(den)) return out;
    double rad = d * resid / den * (1.0 + 1e-13);
    if (!std::isfinite(rad)) return out;
    radius[static_cast<size_t>(i)] = rad;
  }

  std::vector<int> parent(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) parent[static_cast<size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]) <=
          (radius[static_cast<size_t>(i)] + radius[static_cast<size_t>(j)]) * (1.0 + 1e-10))
        parent[static_cast<size_t>(find(i))] = find(j);

  double m_lo = lead_lo, m_hi = lead_hi;
  std::vector<char> done(static_cast<size_t>(d), 0);
  for (int i = 0; i < d; ++i) {
    int root_i = find(i);
    if (done[static_cast<size_t>(root_i)]) continue;
    done[static_cast<size_t>(root_i)] = 1;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    int count = 0;
    for (int j = 0; j < d; ++j) {
      if (find(j) != root_i) continue;
      double a = std::abs(z[static_cast<size_t>(j)]);
      double l = (a - radius[static_cast<size_t>(j)]) * (1 - 1e-13);
      double h = (a + radius[static_cast<size_t>(j)]) * (1 + 1e-13);
      if (first || l < lo) lo = l;
      if (first || h > hi) hi = h;
      first = false;
      ++count;
    }
    m_lo *= std::pow(std::max(1.0, lo), count);
    m_hi *= std::pow(std::max(1.0, hi), count);
  }
  m_lo *= 1.0 - (d + 4) * 1e-15;
  m_hi *= 1.0 + (d + 4) * 1e-15;
  if (!std::isfinite(m_lo) || !std::isfinite(m_hi)) return out;
  out.ok = true;
  out.lo = m_lo;
  out.hi = m_hi;
  return out;
}

double mahler_double_fast(const std::vector<cdouble>& monic_tail) {
  return mahler_fast_tail(monic_tail.data(), static_cast<unsigned>(monic_tail.size()));
}

double mahler_fast_tail(const cdouble* tail, unsigned d) {
  if (d == 0) return 1.0;
  if (d == 1) return std::max(1.0, std::abs(tail[0]));
  if (d == 2) {
    const cdouble c0 = tail[0], b = tail[1];
    cdouble s = std::sqrt(b * b - 4.0 * c0);
    if (std::real(std::conj(b) * s) > 0) s = -s;
    cdouble q = (-b + s) * 0.5;  // the larger root in magnitude
    if (q == 0.0) return 1.0;    // b = c0 = 0: double root at zero
    return std::max(1.0, std::abs(q)) * std::max(1.0, std::abs(c0 / q));
  }
  std::vector<cdouble> c(tail, tail + d);
  c.push_back(1.0);
  std::vector<cdouble> z;
  aberth_double_run(c, z, 60);
  double m = 1.0;
  for (const auto& zi : z) m *= std::max(1.0, std::abs(zi));
  return m;
}

DoubleEnclosure mahler_double_tail(const cdouble* tail, unsigned d, double coeff_err) {
  DoubleEnclosure out;
  if (d == 0) {
    out.ok = true;
    out.lo = out.hi = 1.0;
    return out;
  }
  if (d == 1) {
    double a = std::abs(tail[0]);
    double e = coeff_err + a * 4e-16;
    if (!std::isfinite(a)) return out;
    out.ok = true;
    out.lo = std::max(1.0, a - e) * (1 - 1e-15);
    out.hi = std::max(1.0, a + e) * (1 + 1e-15);
    return out;
  }
  if (d == 2) {
    const cdouble c0 = tail[0], b = tail[1];
    cdouble s = std::sqrt(b * b - 4.0 * c0);
    if (std::real(std::conj(b) * s) > 0) s = -s;
    cdouble q = (-b + s) * 0.5;
    cdouble r2 = (q == cdouble(0.0)) ? cdouble(0.0) : c0 / q;
    const cdouble z[2] = {q, r2};
    const double sep = std::abs(q - r2);
    double rad[2] = {0.0, 0.0};
    bool split = sep > 0;
    for (int i = 0; i < 2 && split; ++i) {
      double az = std::abs(z[i]);
      cdouble v = (z[i] + b) * z[i] + c0;
      double absum = (az + std::abs(b)) * az + std::abs(c0);
      double resid = std::abs(v) + absum * (9.0 * 0x1p-52) + coeff_err * (1.0 + az);
      rad[i] = 2.0 * resid / (sep * (1.0 - 8 * 0x1p-50)) * (1.0 + 1e-13);
      if (!std::isfinite(rad[i])) return out;
    }
    double m_lo = 1.0, m_hi = 1.0;
    if (split && sep > (rad[0] + rad[1]) * (1.0 + 1e-10)) {
      for (int i = 0; i < 2; ++i) {
        double a = std::abs(z[i]);
        m_lo *= std::max(1.0, (a - rad[i]) * (1 - 1e-13));
        m_hi *= std::max(1.0, (a + rad[i]) * (1 + 1e-13));
      }
    } else {
      // Both roots lie exactly at distance |s|/2 from the critical point
      // -b/2, where s^2 = b^2 - 4 c0; a disc around -b/2 of that radius,
      // inflated for coefficient error on s^2 and b, encloses the true pair
      // regardless of clustering.
      double ac = 0.5 * std::abs(b);
      double s2err = coeff_err * (2.0 * std::abs(b) + 4.0 + coeff_err) +
                     std::abs(b * b - 4.0 * c0) * 5e-16;
      double w = (0.5 * std::abs(s) + 0.5 * std::sqrt(s2err) + 0.5 * coeff_err) * (1.0 + 1e-13);
      if (!std::isfinite(w)) return out;
      double lo = std::max(1.0, (ac - w) * (1 - 1e-13));
      double hi = std::max(1.0, (ac + w) * (1 + 1e-13));
      m_lo = lo * lo;
      m_hi = hi * hi;
    }
    m_lo *= 1.0 - 6e-15;
    m_hi *= 1.0 + 6e-15;
    if (!std::isfinite(m_lo) || !std::isfinite(m_hi)) return out;
    out.ok = true;
    out.lo = m_lo;
    out.hi = m_hi;
    return out;
  }
  std::vector<cdouble> coeffs(tail, tail + d);
  coeffs.push_back(1.0);
  std::vector<double> err(d, coeff_err);
  err.push_back(0.0);
  return mahler_double(coeffs, err);
}

}  // namespace detail

}  // namespace heights
