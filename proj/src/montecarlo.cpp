#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "heights/asymptotics.hpp"
#include "heights/exact.hpp"
#include "heights/roots.hpp"
#include "run_parallel.hpp"

namespace heights {

namespace {

// Counter-based generator (SplitMix64 over seed + counter): sample s always
// reads the same counter slots, so the estimate is a pure function of
// (seed, samples), whatever the thread partition.
inline double uniform01(std::uint64_t seed, std::uint64_t ctr) {
  std::uint64_t z = seed + (ctr + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace

VolumeEstimate volume_mc(VolumeMode mode, const NumberField* k, unsigned n, double T,
                         std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (n < 1 || n > 8) throw std::invalid_argument("n must be between 1 and 8");
  if (!std::isfinite(T) || !(T >= 1.0)) throw std::invalid_argument("T must be >= 1");
  if (samples < 10000) throw std::invalid_argument("need at least 10000 samples");

  unsigned rs = 1;
  std::vector<unsigned> weights;
  std::string id;
  switch (mode) {
    case VolumeMode::Field:
      if (k == nullptr) throw std::invalid_argument("field mode needs a field");
      rs = k->embedding_count();
      for (unsigned i = 0; i < rs; ++i) weights.push_back(k->weight(i));
      id = k->id();
      break;
    case VolumeMode::PlainReal:
      weights = {1};
      id = "R";
      break;
    case VolumeMode::PlainComplex:
      weights = {2};
      id = "C";
      break;
  }

  // Sampling box: per embedding, coefficient j lies in the centered box of
  // half-width binom(n,j) * T^(1/d_i) (an interval for real embeddings, a
  // square for complex ones), which contains every coefficient vector of the
  // body since each per-embedding measure is at most T^(1/d_i).
  std::vector<std::array<double, 8>> limit(rs);
  double box = 1.0;
  unsigned dims = 0;
  for (unsigned i = 0; i < rs; ++i) {
    const double ti = std::pow(T, 1.0 / weights[i]);
    for (unsigned j = 1; j <= n; ++j) {
      const double L = binomial(n, j).get_d() * ti;
      limit[i][j - 1] = L;
      for (unsigned w = 0; w < weights[i]; ++w) box *= 2 * L;
    }
    dims += weights[i] * n;
  }

  const std::uint64_t chunk = 65536;
  const std::uint64_t chunk_count = (samples + chunk - 1) / chunk;
  std::atomic<std::uint64_t> hits{0};

  auto work = [&](std::uint64_t c) {
    const std::uint64_t s_lo = c * chunk;
    const std::uint64_t s_hi = std::min(samples, s_lo + chunk);
    std::uint64_t local = 0;
    std::complex<double> tail[8];
    for (std::uint64_t s = s_lo; s < s_hi; ++s) {
      std::uint64_t ctr = s * dims;
      double prod = 1.0;
      for (unsigned i = 0; i < rs; ++i) {
        for (unsigned j = 1; j <= n; ++j) {
          const double L = limit[i][j - 1];
          const double re = (2 * uniform01(seed, ctr++) - 1) * L;
          double im = 0.0;
          if (weights[i] == 2) im = (2 * uniform01(seed, ctr++) - 1) * L;
          tail[n - j] = {re, im};
        }
        const double Mi = detail::mahler_fast_tail(tail, n);
        for (unsigned w = 0; w < weights[i]; ++w) prod *= Mi;
      }
      if (prod <= T) ++local;
    }
    hits.fetch_add(local, std::memory_order_relaxed);
  };
  detail::run_parallel(threads, chunk_count, work);

  const double p = static_cast<double>(hits.load()) / static_cast<double>(samples);
  VolumeEstimate est;
  est.field_id = id;
  est.n = n;
  est.T = T;
  est.samples = samples;
  est.seed = seed;
  est.box_volume = box;
  est.estimate = box * p;
  est.standard_error = box * std::sqrt(p * (1 - p) / static_cast<double>(samples));
  return est;
}

}  // namespace heights
