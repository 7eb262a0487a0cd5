#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace heights {

// Polynomials are coefficient vectors in ascending order (index = power).
using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;
using QMatrix = std::vector<std::vector<mpq_class>>;

mpz_class binomial(unsigned n, unsigned k);

// Squarefreeness of an integer by trial division (intended for quadratic
// field generators, so |d| stays small).
bool is_squarefree_int(const mpz_class& d);

// Parses "p", "-p" or "p/q" with nonzero q; canonicalizes the result.
mpq_class parse_rational(const std::string& s);

int q_degree(const QPoly& f);
QPoly q_from_z(const ZPoly& f);
QPoly q_derivative(const QPoly& f);
QPoly q_mul(const QPoly& a, const QPoly& b);
// Remainder of a mod b (b nonzero).
QPoly q_rem(QPoly a, const QPoly& b);
// Monic gcd over the rationals.
QPoly q_gcd(QPoly a, QPoly b);

ZPoly z_mul(const ZPoly& a, const ZPoly& b);

// gcd(f, f') is constant.
bool is_squarefree_poly(const ZPoly& f);

// Number of distinct real roots of a squarefree integer polynomial,
// by a Sturm chain over the rationals. Exact.
int sturm_real_root_count(const ZPoly& f);

// Whether a monic integer polynomial has an integer root (= rational root).
// Exhaustive for |constant term| up to 10^14; larger constant terms are
// scanned partially (trial divisors up to 10^7).
bool has_integer_root(const ZPoly& f);

// Decides exactly whether every complex root of a monic integer polynomial
// lies in the closed unit disk. Graeffe root-squaring: if all roots satisfy
// |a| <= 1 then every iterate keeps coefficients inside the binomial box
// |h_j| <= C(d, j) and, being integer vectors in a finite box, the iterates
// must cycle; a root outside the disk eventually blows a coefficient out of
// the box. Cycle => true, box escape => false.
bool all_roots_in_closed_unit_disk(ZPoly f);

// Exact Gauss-Jordan inverse; returns false when A is singular.
bool q_invert(QMatrix a, QMatrix& inv);
mpq_class q_det(QMatrix a);

}  // namespace heights
