#pragma once

// Brute-force reference implementation used only by the tests. Kept fully
// independent of the library: embeddings are hard-coded per field, Mahler
// measures come from closed-form root formulas in plain doubles, field
// arithmetic is int64 coordinate arithmetic, and scans walk plain integer
// rectangles. Covers Q and Q(sqrt(d)) for d = -1, 2 (ring basis {1, sqrt(d)})
// at degrees 1..3, which is everything the reference comparisons need.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

// d == 0 is the rationals; otherwise Q(sqrt(d)) with ring basis {1, sqrt(d)}.
struct Field {
  long long d = 0;
  int degree() const { return d == 0 ? 1 : 2; }
};

using Coord = std::array<long long, 2>;  // u + v*sqrt(d); v = 0 over Q
using Tail = std::vector<Coord>;         // a_1 .. a_e of X^e + a_1 X^(e-1) + ...

inline Coord add(Coord a, Coord b) { return {a[0] + b[0], a[1] + b[1]}; }

inline Coord mul(const Field& k, Coord a, Coord b) {
  return {a[0] * b[0] + k.d * a[1] * b[1], a[0] * b[1] + a[1] * b[0]};
}

inline long long binom(int n, int j) {
  long long r = 1;
  for (int i = 1; i <= j; ++i) r = r * (n - i + 1) / i;
  return r;
}

struct Embedding {
  std::complex<double> root;  // image of sqrt(d); 0 over Q
  int weight;                 // 1 real, 2 complex pair
};

inline std::vector<Embedding> embeddings(const Field& k) {
  if (k.d == 0) return {{{0.0, 0.0}, 1}};
  if (k.d > 0) {
    double s = std::sqrt(static_cast<double>(k.d));
    return {{{s, 0.0}, 1}, {{-s, 0.0}, 1}};
  }
  return {{{0.0, std::sqrt(static_cast<double>(-k.d))}, 2}};
}

inline std::complex<double> embed(Coord a, std::complex<double> root) {
  return std::complex<double>(static_cast<double>(a[0]), 0.0) +
         static_cast<double>(a[1]) * root;
}

// ---- closed-form Mahler measures of monic polynomials (plain doubles) ----

inline double quad_mahler_real(double b, double c) {
  // X^2 + bX + c
  double disc = b * b - 4.0 * c;
  if (disc < 0.0) return std::max(1.0, c);  // conjugate pair, |root|^2 = c
  double s = std::sqrt(disc);
  double big = -(b + (b < 0 ? -s : s)) / 2.0;
  double small = (big == 0.0) ? -b : c / big;
  return std::max(1.0, std::fabs(big)) * std::max(1.0, std::fabs(small));
}

inline double quad_mahler_cplx(std::complex<double> b, std::complex<double> c) {
  std::complex<double> s = std::sqrt(b * b - 4.0 * c);
  return std::max(1.0, std::abs((-b + s) / 2.0)) * std::max(1.0, std::abs((-b - s) / 2.0));
}

inline double cubic_mahler_real(double a, double b, double c) {
  // X^3 + aX^2 + bX + c: one real root from the Cardano/trig closed form,
  // synthetic deflation, then the quadratic closed form.
  double p = b - a * a / 3.0;
  double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  double off = -a / 3.0;
  double disc = q * q / 4.0 + p * p * p / 27.0;
  double r;
  if (disc >= 0.0) {
    double s = std::sqrt(disc);
    r = std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) + off;
  } else {
    double rad = std::sqrt(-p / 3.0);
    double arg = std::clamp(-q / (2.0 * rad * rad * rad), -1.0, 1.0);
    r = 2.0 * rad * std::cos(std::acos(arg) / 3.0) + off;
  }
  // one Newton step sharpens the closed-form root before deflation
  double fr = ((r + a) * r + b) * r + c;
  double dfr = (3.0 * r + 2.0 * a) * r + b;
  if (dfr != 0.0) r -= fr / dfr;
  double q1 = a + r;
  double q2 = b + r * q1;
  return std::max(1.0, std::fabs(r)) * quad_mahler_real(q1, q2);
}

inline double poly_mahler(const std::vector<std::complex<double>>& a) {
  int e = static_cast<int>(a.size());
  bool real = true;
  for (const auto& z : a)
    if (z.imag() != 0.0) real = false;
  if (e == 1) return std::max(1.0, std::abs(a[0]));
  if (e == 2)
    return real ? quad_mahler_real(a[0].real(), a[1].real()) : quad_mahler_cplx(a[0], a[1]);
  if (e == 3 && real) return cubic_mahler_real(a[0].real(), a[1].real(), a[2].real());
  throw std::logic_error("oracle: unsupported degree");
}

// prod_i M(sigma_i(f))^{d_i} for the monic polynomial with the given tail.
inline double measure_product(const Field& k, const Tail& t) {
  double prod = 1.0;
  for (const auto& emb : embeddings(k)) {
    std::vector<std::complex<double>> a;
    a.reserve(t.size());
    for (Coord c : t) a.push_back(embed(c, emb.root));
    double mi = poly_mahler(a);
    prod *= (emb.weight == 2) ? mi * mi : mi;
  }
  return prod;
}

// All ring elements with |sigma_i| <= bound (tiny relative slack keeps exact
// boundary elements inside).
inline std::vector<Coord> coords_in_disk(const Field& k, double bound) {
  std::vector<Coord> out;
  double pad = bound * (1.0 + 1e-9);
  if (k.d == 0) {
    long long n = static_cast<long long>(std::floor(pad));
    for (long long u = -n; u <= n; ++u) out.push_back({u, 0});
    return out;
  }
  auto embs = embeddings(k);
  double s = std::sqrt(std::fabs(static_cast<double>(k.d)));
  long long nu = static_cast<long long>(std::floor(pad));
  long long nv = static_cast<long long>(std::floor(pad / s));
  for (long long u = -nu; u <= nu; ++u)
    for (long long v = -nv; v <= nv; ++v) {
      bool ok = true;
      for (const auto& emb : embs) ok = ok && std::abs(embed({u, v}, emb.root)) <= pad;
      if (ok) out.push_back({u, v});
    }
  return out;
}

// All monic degree-e tails with prod_i M(sigma_i(f))^{d_i} <= thr, sorted by
// coordinate lex order (a_1 coords first).
inline std::vector<Tail> census_thr(const Field& k, int e, double thr) {
  std::vector<Tail> out;
  if (!(thr >= 1.0)) return out;
  int w = (k.d < 0) ? 2 : 1;
  double mroot = std::pow(thr, 1.0 / w);
  std::vector<std::vector<Coord>> lists;
  for (int j = 1; j <= e; ++j)
    lists.push_back(coords_in_disk(k, static_cast<double>(binom(e, j)) * mroot));
  Tail t(e);
  std::vector<std::size_t> idx(e, 0);
  while (true) {
    for (int j = 0; j < e; ++j) t[j] = lists[j][idx[j]];
    if (measure_product(k, t) <= thr * (1.0 + 1e-9)) out.push_back(t);
    int j = e - 1;
    while (j >= 0 && ++idx[j] == lists[j].size()) {
      idx[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Census by relative measure bound H: the threshold on the embedding product
// is H^m.
inline std::vector<Tail> census(const Field& k, int e, double H) {
  return census_thr(k, e, std::pow(H, k.degree()));
}

inline Tail multiply(const Field& k, const Tail& g, const Tail& h) {
  int a = static_cast<int>(g.size()), b = static_cast<int>(h.size());
  std::vector<Coord> gc(a + 1), hc(b + 1), fc(a + b + 1, Coord{0, 0});
  gc[0] = {1, 0};
  hc[0] = {1, 0};
  for (int i = 0; i < a; ++i) gc[i + 1] = g[i];
  for (int i = 0; i < b; ++i) hc[i + 1] = h[i];
  for (int i = 0; i <= a; ++i)
    for (int j = 0; j <= b; ++j) fc[i + j] = add(fc[i + j], mul(k, gc[i], hc[j]));
  return Tail(fc.begin() + 1, fc.end());
}

// Reducible members of census_thr(k, e, thr): every product of monic
// lower-degree factors that lands back under the threshold. Both factors run
// over their own degree census at the same threshold (each embedding product
// is >= 1, so factors of members are members).
inline std::vector<Tail> reducible_thr(const Field& k, int e, double thr) {
  std::set<Tail> out;
  for (int a = 1; 2 * a <= e; ++a) {
    int b = e - a;
    std::vector<Tail> ga = census_thr(k, a, thr);
    std::vector<Tail> gb = (b == a) ? ga : census_thr(k, b, thr);
    for (std::size_t i = 0; i < ga.size(); ++i)
      for (std::size_t j = (a == b ? i : 0); j < gb.size(); ++j) {
        Tail f = multiply(k, ga[i], gb[j]);
        if (measure_product(k, f) <= thr * (1.0 + 1e-9)) out.insert(f);
      }
  }
  return {out.begin(), out.end()};
}

inline std::vector<Tail> reducible(const Field& k, int e, double H) {
  return reducible_thr(k, e, std::pow(H, k.degree()));
}

// Exact integer-arithmetic reducibility over Q (degree 2: square
// discriminant; degree 3: integer root). Monic integer polynomials factor
// over Q iff they factor into monic integer polynomials.
inline bool q_reducible(const Tail& t) {
  int e = static_cast<int>(t.size());
  if (e == 1) return false;
  if (e == 2) {
    long long dsc = t[0][0] * t[0][0] - 4 * t[1][0];
    if (dsc < 0) return false;
    long long r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(dsc))));
    while (r > 0 && r * r > dsc) --r;
    while ((r + 1) * (r + 1) <= dsc) ++r;
    return r * r == dsc;
  }
  if (e == 3) {
    long long c = t[2][0];
    auto value = [&](long long x) { return ((x + t[0][0]) * x + t[1][0]) * x + t[2][0]; };
    if (c == 0) return true;
    for (long long r = 1; r * r <= std::llabs(c); ++r) {
      if (c % r != 0) continue;
      for (long long x : {r, -r, c / r, -(c / r)})
        if (value(x) == 0) return true;
    }
    return false;
  }
  throw std::logic_error("oracle: unsupported degree");
}

}  // namespace oracle
