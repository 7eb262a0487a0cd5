#include "heights/exact.hpp"

#include <set>
#include <stdexcept>

#include "heights/errors.hpp"

namespace heights {

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

bool is_squarefree_int(const mpz_class& d) {
  mpz_class a = abs(d);
  if (a == 0) return false;
  for (mpz_class p = 2; p * p <= a; ++p) {
    if (a % (p * p) == 0) return false;
    while (a % p == 0) a /= p;
  }
  return true;
}

mpq_class parse_rational(const std::string& s) {
  mpq_class r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in rational literal: '" + s + "'");
  r.canonicalize();
  return r;
}

int q_degree(const QPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[static_cast<size_t>(i)] != 0) return i;
  return -1;
}

QPoly q_from_z(const ZPoly& f) {
  QPoly g(f.size());
  for (size_t i = 0; i < f.size(); ++i) g[i] = f[i];
  return g;
}

QPoly q_derivative(const QPoly& f) {
  if (f.size() <= 1) return {};
  QPoly g(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) g[i - 1] = f[i] * static_cast<long>(i);
  return g;
}

QPoly q_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

static void q_trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly q_rem(QPoly a, const QPoly& b) {
  q_trim(a);
  QPoly d = b;
  q_trim(d);
  if (d.empty()) throw std::invalid_argument("polynomial remainder by zero");
  while (a.size() >= d.size()) {
    mpq_class q = a.back() / d.back();
    size_t off = a.size() - d.size();
    for (size_t i = 0; i < d.size(); ++i) a[off + i] -= q * d[i];
    a.pop_back();
    q_trim(a);
    if (a.empty()) break;
  }
  return a;
}

QPoly q_gcd(QPoly a, QPoly b) {
  q_trim(a);
  q_trim(b);
  while (!b.empty()) {
    QPoly r = q_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    mpq_class lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

bool is_squarefree_poly(const ZPoly& f) {
  QPoly qf = q_from_z(f);
  if (q_degree(qf) <= 0) return false;
  QPoly g = q_gcd(qf, q_derivative(qf));
  return q_degree(g) == 0;
}

static int sign_at_plus_inf(const QPoly& f) { return sgn(f.back()); }
static int sign_at_minus_inf(const QPoly& f) {
  int s = sgn(f.back());
  return (q_degree(f) % 2 == 0) ? s : -s;
}

int sturm_real_root_count(const ZPoly& f) {
  QPoly p0 = q_from_z(f);
  q_trim(p0);
  if (q_degree(p0) < 1) return 0;
  std::vector<QPoly> chain{p0, q_derivative(p0)};
  while (q_degree(chain.back()) > 0) {
    QPoly r = q_rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    q_trim(r);
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  int v_minus = 0, v_plus = 0, prev_minus = 0, prev_plus = 0;
  for (const auto& p : chain) {
    if (p.empty()) continue;
    int sm = sign_at_minus_inf(p), sp = sign_at_plus_inf(p);
    if (prev_minus != 0 && sm != 0 && sm != prev_minus) ++v_minus;
    if (prev_plus != 0 && sp != 0 && sp != prev_plus) ++v_plus;
    if (sm != 0) prev_minus = sm;
    if (sp != 0) prev_plus = sp;
  }
  return v_minus - v_plus;
}

bool has_integer_root(const ZPoly& f) {
  if (f.empty()) return true;
  ZPoly g = f;
  while (!g.empty() && g.back() == 0) g.pop_back();
  if (g.size() <= 1) return false;
  auto eval = [&](const mpz_class& x) {
    mpz_class v = 0;
    for (size_t i = g.size(); i-- > 0;) v = v * x + g[i];
    return v;
  };
  if (g[0] == 0) return true;
  mpz_class c0 = abs(g[0]);
  mpz_class cap = 10000000;
  for (mpz_class t = 1; t * t <= c0 && t <= cap; ++t) {
    if (c0 % t != 0) continue;
    mpz_class u = c0 / t;
    if (eval(t) == 0 || eval(-t) == 0) return true;
    if (eval(u) == 0 || eval(-u) == 0) return true;
  }
  return false;
}

bool all_roots_in_closed_unit_disk(ZPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  if (f.empty()) throw std::invalid_argument("zero polynomial");
  if (f.back() != 1) throw std::invalid_argument("polynomial must be monic");
  size_t d = f.size() - 1;
  if (d == 0) return true;
  std::vector<mpz_class> box(d + 1);
  for (size_t j = 0; j <= d; ++j) box[j] = binomial(static_cast<unsigned>(d), static_cast<unsigned>(j));
  std::set<ZPoly> seen;
  for (int iter = 0; iter < 1000; ++iter) {
    for (size_t j = 0; j <= d; ++j)
      if (abs(f[j]) > box[j]) return false;
    if (!seen.insert(f).second) return true;
    // Next iterate: with f = E(x^2) + x O(x^2), the polynomial with squared
    // roots is +-(E^2 - x O^2); normalize the leading coefficient to +1.
    ZPoly e((d / 2) + 1), o((d + 1) / 2);
    for (size_t j = 0; j <= d; ++j) {
      if (j % 2 == 0)
        e[j / 2] = f[j];
      else
        o[j / 2] = f[j];
    }
    ZPoly e2 = z_mul(e, e);
    ZPoly o2 = o.empty() ? ZPoly{} : z_mul(o, o);
    ZPoly g(d + 1);
    for (size_t j = 0; j < e2.size(); ++j) g[j] += e2[j];
    for (size_t j = 0; j < o2.size(); ++j) g[j + 1] -= o2[j];
    if (g[d] == -1)
      for (auto& c : g) c = -c;
    f = std::move(g);
  }
  throw numeric_error("root-squaring iteration failed to cycle or escape");
}

bool q_invert(QMatrix a, QMatrix& inv) {
  size_t n = a.size();
  inv.assign(n, std::vector<mpq_class>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("matrix not square");
    inv[i][i] = 1;
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return false;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    mpq_class p = a[col][col];
    for (size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      mpq_class m = a[i][col];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] -= m * a[col][j];
        inv[i][j] -= m * inv[col][j];
      }
    }
  }
  return true;
}

mpq_class q_det(QMatrix a) {
  size_t n = a.size();
  mpq_class det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    mpq_class p = a[col][col];
    for (size_t i = col + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      mpq_class m = a[i][col] / p;
      for (size_t j = col; j < n; ++j) a[i][j] -= m * a[col][j];
    }
  }
  return det;
}

}  // namespace heights
