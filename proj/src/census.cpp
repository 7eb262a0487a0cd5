#include "heights/census.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "heights/asymptotics.hpp"
#include "heights/errors.hpp"
#include "heights/roots.hpp"
#include "run_parallel.hpp"

namespace heights {

namespace {

using detail::run_parallel;

constexpr double kBoxPad = 1e-9;        // widens coefficient boxes, never shrinks
constexpr double kCoeffRel = 1e-14;     // certified bound on double embedding error
constexpr double kThrRel = 1e-12;       // threshold bracket handed to stage 0

struct Chunk {
  std::uint64_t total = 0;
  std::uint64_t warnings = 0;
  std::vector<long> rows;  // stride m (linear scan: coordinates) or e (list indices)
};

std::string describe_tail(const MonicPolynomial& f) {
  std::string s = "(";
  for (unsigned j = 1; j <= f.degree(); ++j) {
    if (j > 1) s += ", ";
    s += "a_" + std::to_string(j) + "=";
    const auto& c = f.coeff(j).coords();
    for (size_t t = 0; t < c.size(); ++t) {
      if (t) s += ";";
      s += c[t].get_str();
    }
  }
  return s + ")";
}

MembershipOutcome decide_slow(const MonicPolynomial& f, const Threshold& thr,
                              mpfr_prec_t prec) {
  try {
    return measure_within(f, thr, prec);
  } catch (const numeric_error& ex) {
    throw numeric_error(std::string(ex.what()) + " at candidate " + describe_tail(f));
  }
}

// Degree 1, streamed: candidate coordinate tuples are walked with an
// odometer and decided in place; only boundary cases materialize elements.
CensusList scan_linear(const NumberField& k, const std::vector<double>& bounds,
                       const Threshold& thr, const CensusOptions& opts) {
  const unsigned m = k.degree();
  const unsigned rs = k.embedding_count();
  CensusList out;

  BoxRanges box = k.coordinate_ranges(bounds, 1e-12);
  if (box.candidate_count > static_cast<double>(opts.candidate_cap)) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "candidate box holds ~%.3g coordinate tuples, above the cap of %llu",
                  box.candidate_count,
                  static_cast<unsigned long long>(opts.candidate_cap));
    throw resource_error(buf);
  }

  const auto& mat = k.embedding_matrix_double();
  const double tv = std::pow(thr.base, static_cast<double>(thr.power));
  const bool stage0 = std::isfinite(tv) && rs <= 16;
  const double thr_lo = tv * (1 - kThrRel), thr_hi = tv * (1 + kThrRel);

  unsigned weights[16];
  for (unsigned i = 0; i < rs && i < 16; ++i) weights[i] = k.weight(i);

  const long n0 = box.limit[0];
  const std::uint64_t vals0 = 2 * static_cast<std::uint64_t>(n0) + 1;
  const std::uint64_t chunk_count = std::min<std::uint64_t>(vals0, 1024);
  const std::uint64_t span = (vals0 + chunk_count - 1) / chunk_count;
  std::vector<Chunk> chunks(chunk_count);

  auto work = [&](std::uint64_t c) {
    Chunk& ck = chunks[c];
    std::vector<long> v(m, 0);
    const long v0_lo = -n0 + static_cast<long>(c * span);
    const long v0_hi = std::min<long>(n0, v0_lo + static_cast<long>(span) - 1);
    for (long v0 = v0_lo; v0 <= v0_hi; ++v0) {
      v[0] = v0;
      for (unsigned j = 1; j < m; ++j) v[j] = -box.limit[j];
      for (;;) {
        int dec = 0;
        if (stage0) {
          double plo = 1.0, phi = 1.0;
          for (unsigned i = 0; i < rs; ++i) {
            double sr = 0.0, si = 0.0, asum = 0.0;
            for (unsigned j = 0; j < m; ++j) {
              const double vj = static_cast<double>(v[j]);
              sr += vj * mat[i][j].real();
              si += vj * mat[i][j].imag();
              asum += std::abs(vj) * std::abs(mat[i][j]);
            }
            const double av = std::sqrt(sr * sr + si * si);
            const double err = kCoeffRel * asum + 4e-16 * av + 1e-300;
            const double lo = std::max(1.0, (av - err)) * (1 - 1e-15);
            const double hi = std::max(1.0, (av + err)) * (1 + 1e-15);
            for (unsigned w = 0; w < weights[i]; ++w) {
              plo *= lo;
              phi *= hi;
            }
          }
          plo *= (1 - 1e-14);
          phi *= (1 + 1e-14);
          if (phi <= thr_lo)
            dec = -1;
          else if (plo > thr_hi)
            dec = +1;
        }
        bool accept = false;
        if (dec < 0) {
          accept = true;
        } else if (dec == 0) {
          std::vector<mpz_class> coords(m);
          for (unsigned j = 0; j < m; ++j) coords[j] = v[j];
          MonicPolynomial f(k, {k.element(std::move(coords))});
          MembershipOutcome oc = decide_slow(f, thr, opts.precision_bits);
          if (oc.warned) ++ck.warnings;
          accept = oc.inside;
        }
        if (accept) {
          ++ck.total;
          if (!opts.count_only) ck.rows.insert(ck.rows.end(), v.begin(), v.end());
        }
        unsigned j = m - 1;
        for (; j >= 1; --j) {
          if (v[j] < box.limit[j]) {
            ++v[j];
            break;
          }
          v[j] = -box.limit[j];
        }
        if (j == 0) break;
      }
    }
  };
  run_parallel(opts.threads, chunk_count, work);

  for (const Chunk& ck : chunks) {
    out.total += ck.total;
    out.boundary_warnings += ck.warnings;
    if (!opts.count_only) {
      for (size_t p = 0; p + m <= ck.rows.size(); p += m) {
        std::vector<mpz_class> coords(m);
        for (unsigned j = 0; j < m; ++j) coords[j] = ck.rows[p + j];
        out.polys.emplace_back(k, std::vector<FieldElement>{k.element(std::move(coords))});
      }
    }
  }
  return out;
}

// Degree >= 2: per-coefficient candidate lists with cached double embedding
// data; tuples walk the index odometer and run the shared stage-0 product
// decision before falling back to the certified ladder.
CensusList scan_general(const NumberField& k, unsigned e,
                        const std::vector<std::vector<double>>& bounds,
                        const Threshold& thr, const CensusOptions& opts) {
  const unsigned m = k.degree();
  const unsigned rs = k.embedding_count();
  CensusList out;

  EnumerateOptions eo;
  eo.candidate_cap = opts.candidate_cap;
  eo.precision_bits = opts.precision_bits;
  std::vector<std::vector<FieldElement>> lists;
  lists.reserve(e);
  double tuples = 1.0;
  for (unsigned j = 0; j < e; ++j) {
    lists.push_back(k.enumerate_in_box(bounds[j], eo));
    if (lists[j].empty()) return out;
    tuples *= static_cast<double>(lists[j].size());
  }
  if (tuples > static_cast<double>(opts.candidate_cap)) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "coefficient lists span ~%.3g tuples, above the cap of %llu", tuples,
                  static_cast<unsigned long long>(opts.candidate_cap));
    throw resource_error(buf);
  }

  const auto& mat = k.embedding_matrix_double();
  std::vector<std::vector<std::complex<double>>> sig(e);  // [j][idx*rs + i]
  std::vector<std::vector<double>> amag(e);               // matching |coord|-weighted sums
  for (unsigned j = 0; j < e; ++j) {
    sig[j].resize(lists[j].size() * rs);
    amag[j].resize(lists[j].size() * rs);
    for (size_t idx = 0; idx < lists[j].size(); ++idx) {
      const auto& coords = lists[j][idx].coords();
      for (unsigned i = 0; i < rs; ++i) {
        double sr = 0.0, si = 0.0, asum = 0.0;
        for (unsigned t = 0; t < m; ++t) {
          const double vt = coords[t].get_d();
          sr += vt * mat[i][t].real();
          si += vt * mat[i][t].imag();
          asum += std::abs(vt) * std::abs(mat[i][t]);
        }
        sig[j][idx * rs + i] = {sr, si};
        amag[j][idx * rs + i] = asum;
      }
    }
  }

  const double tv = std::pow(thr.base, static_cast<double>(thr.power));
  const bool stage0 = std::isfinite(tv) && rs <= 16 && e <= 8;
  const double thr_lo = tv * (1 - kThrRel), thr_hi = tv * (1 + kThrRel);

  unsigned weights[16];
  for (unsigned i = 0; i < rs && i < 16; ++i) weights[i] = k.weight(i);

  const std::uint64_t size0 = lists[0].size();
  const std::uint64_t chunk_count = std::min<std::uint64_t>(size0, 1024);
  const std::uint64_t span = (size0 + chunk_count - 1) / chunk_count;
  std::vector<Chunk> chunks(chunk_count);

  auto work = [&](std::uint64_t c) {
    Chunk& ck = chunks[c];
    std::vector<std::uint64_t> idx(e, 0);
    std::complex<double> tstore[16][8];
    const std::complex<double>* tp[16];
    double errs[16];
    for (unsigned i = 0; i < rs && i < 16; ++i) tp[i] = tstore[i];
    const std::uint64_t i0_lo = c * span;
    const std::uint64_t i0_hi = std::min<std::uint64_t>(size0, i0_lo + span);
    for (std::uint64_t i0 = i0_lo; i0 < i0_hi; ++i0) {
      idx[0] = i0;
      for (unsigned j = 1; j < e; ++j) idx[j] = 0;
      for (;;) {
        int dec = 0;
        if (stage0) {
          for (unsigned i = 0; i < rs; ++i) {
            double worst = 0.0;
            for (unsigned t = 0; t < e; ++t) {
              const unsigned j = e - 1 - t;  // tail slot t holds sigma_i(a_{e-t})
              const size_t at = idx[j] * rs + i;
              tstore[i][t] = sig[j][at];
              worst = std::max(worst, amag[j][at]);
            }
            errs[i] = kCoeffRel * worst + 1e-300;
          }
          dec = detail::double_stage_decision(rs, e, tp, errs, weights, thr_lo, thr_hi);
        }
        bool accept = false;
        if (dec < 0) {
          accept = true;
        } else if (dec == 0) {
          std::vector<FieldElement> tail;
          tail.reserve(e);
          for (unsigned j = 0; j < e; ++j) tail.push_back(lists[j][idx[j]]);
          MonicPolynomial f(k, std::move(tail));
          MembershipOutcome oc = decide_slow(f, thr, opts.precision_bits);
          if (oc.warned) ++ck.warnings;
          accept = oc.inside;
        }
        if (accept) {
          ++ck.total;
          if (!opts.count_only)
            for (unsigned j = 0; j < e; ++j) ck.rows.push_back(static_cast<long>(idx[j]));
        }
        unsigned j = e - 1;
        for (; j >= 1; --j) {
          if (idx[j] + 1 < lists[j].size()) {
            ++idx[j];
            break;
          }
          idx[j] = 0;
        }
        if (j == 0) break;
      }
    }
  };
  run_parallel(opts.threads, chunk_count, work);

  for (const Chunk& ck : chunks) {
    out.total += ck.total;
    out.boundary_warnings += ck.warnings;
    if (!opts.count_only) {
      for (size_t p = 0; p + e <= ck.rows.size(); p += e) {
        std::vector<FieldElement> tail;
        tail.reserve(e);
        for (unsigned j = 0; j < e; ++j)
          tail.push_back(lists[j][static_cast<size_t>(ck.rows[p + j])]);
        out.polys.emplace_back(k, std::move(tail));
      }
    }
  }
  return out;
}

}  // namespace

CensusList scan_tails(const NumberField& k, unsigned e,
                      const std::vector<std::vector<double>>& bounds,
                      const Threshold& thr, const CensusOptions& opts) {
  if (e < 1) throw std::invalid_argument("degree must be >= 1");
  if (static_cast<int>(e) > kMaxPolyDegree)
    throw std::invalid_argument("degree exceeds the supported maximum of 64");
  if (bounds.size() != e) throw std::invalid_argument("need one bound vector per coefficient");
  for (const auto& b : bounds)
    if (b.size() != k.embedding_count())
      throw std::invalid_argument("need one bound per embedding");
  if (!(thr.base >= 0) || !std::isfinite(thr.base))
    throw std::invalid_argument("threshold base must be finite and nonnegative");
  if (thr.power < 1) throw std::invalid_argument("threshold power must be >= 1");
  if (thr.base < 1.0) return {};  // monic products are always >= 1
  if (e == 1) return scan_linear(k, bounds[0], thr, opts);
  return scan_general(k, e, bounds, thr, opts);
}

CensusList census_monic(const NumberField& k, unsigned e, double H, const CensusOptions& opts) {
  if (!std::isfinite(H) || H < 0) throw std::invalid_argument("H must be finite and nonnegative");
  if (H < 1.0) return {};
  const unsigned m = k.degree();
  const unsigned rs = k.embedding_count();
  std::vector<std::vector<double>> bounds(e, std::vector<double>(rs));
  for (unsigned j = 1; j <= e; ++j) {
    const double bin = binomial(e, j).get_d();
    for (unsigned i = 0; i < rs; ++i)
      bounds[j - 1][i] =
          bin * std::pow(H, static_cast<double>(m) / k.weight(i)) * (1 + kBoxPad);
  }
  Threshold thr{H, static_cast<int>(m)};
  return scan_tails(k, e, bounds, thr, opts);
}

std::vector<MonicPolynomial> reducible_set(const NumberField& k, unsigned e, double H,
                                           const CensusOptions& opts,
                                           std::uint64_t* boundary_warnings) {
  if (e < 2) throw std::invalid_argument("reducible factorizations need degree >= 2");
  if (!std::isfinite(H) || H < 0) throw std::invalid_argument("H must be finite and nonnegative");
  std::uint64_t warnings = 0;
  std::set<MonicPolynomial> dedup;
  if (H >= 1.0) {
    CensusOptions sub = opts;
    sub.count_only = false;
    std::vector<CensusList> factors(e);  // by degree, 1..e-1
    for (unsigned a = 1; a + 1 <= e; ++a) {
      factors[a] = census_monic(k, a, H, sub);
      warnings += factors[a].boundary_warnings;
    }
    const Threshold thr{H, static_cast<int>(k.degree())};
    for (unsigned a = 1; 2 * a <= e; ++a) {
      const unsigned b = e - a;
      const auto& ga = factors[a].polys;
      const auto& gb = factors[b].polys;
      for (size_t i = 0; i < ga.size(); ++i) {
        for (size_t j = (a == b ? i : 0); j < gb.size(); ++j) {
          MonicPolynomial f = ga[i] * gb[j];
          MembershipOutcome oc = decide_slow(f, thr, opts.precision_bits);
          if (oc.warned) ++warnings;
          if (oc.inside) dedup.insert(std::move(f));
        }
      }
    }
  }
  if (boundary_warnings) *boundary_warnings = warnings;
  return {dedup.begin(), dedup.end()};
}

CensusResult irreducible_census(const NumberField& k, unsigned e, double H,
                                const CensusOptions& opts, CensusList* out_list,
                                std::vector<MonicPolynomial>* out_reducible) {
  CensusList cl = census_monic(k, e, H, opts);
  CensusResult res;
  res.field_id = k.id();
  res.e = e;
  res.H = H;
  res.total = cl.total;
  res.boundary_warnings = cl.boundary_warnings;
  std::vector<MonicPolynomial> red;
  if (e >= 2 && res.total > 0) {
    std::uint64_t rw = 0;
    red = reducible_set(k, e, H, opts, &rw);
    res.boundary_warnings += rw;
    res.reducible = red.size();
  }
  res.irreducible = res.total - res.reducible;
  if (H > 1.0) {
    PredictionRow pr = predict_census_leading(k, e, H);
    res.predicted = pr.leading_value;
    if (res.predicted > 0) res.ratio = static_cast<double>(res.total) / res.predicted;
  }
  if (out_list) *out_list = std::move(cl);
  if (out_reducible) *out_reducible = std::move(red);
  return res;
}

CensusResult count_integers(const NumberField& k, unsigned e, double height_bound,
                            const CensusOptions& opts) {
  if (!std::isfinite(height_bound) || height_bound < 1.0)
    throw std::invalid_argument("height bound must be finite and >= 1");
  const double H = std::pow(height_bound, static_cast<double>(e));
  CensusResult res = irreducible_census(k, e, H, opts);
  res.H = height_bound;
  res.integer_count = static_cast<std::uint64_t>(e) * res.irreducible;
  res.predicted = 0.0;
  res.ratio = 0.0;
  if (height_bound > 1.0) {
    PredictionRow pr = predict_count_leading(k, e, height_bound);
    res.predicted = pr.leading_value;
    if (res.predicted > 0)
      res.ratio = static_cast<double>(res.integer_count) / res.predicted;
  }
  return res;
}

}  // namespace heights
