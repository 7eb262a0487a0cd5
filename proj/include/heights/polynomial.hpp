#pragma once

#include <stdexcept>
#include <vector>

#include "heights/numberfield.hpp"

namespace heights {

// Monic polynomial X^e + a_1 X^{e-1} + ... + a_e with coefficients in O_k.
// Stores only the tail (a_1, ..., a_e); immutable value type.
class MonicPolynomial {
 public:
  MonicPolynomial(const NumberField& field, std::vector<FieldElement> tail)
      : field_(&field), tail_(std::move(tail)) {
    if (tail_.empty()) throw std::invalid_argument("monic polynomial must have degree >= 1");
    for (const auto& a : tail_)
      if (&a.field() != field_) throw std::invalid_argument("coefficient belongs to a different field");
  }

  unsigned degree() const { return static_cast<unsigned>(tail_.size()); }
  const NumberField& field() const { return *field_; }
  // a_i for i = 1..e, the coefficient of X^{e-i}.
  const FieldElement& coeff(unsigned i) const { return tail_.at(i - 1); }
  const std::vector<FieldElement>& tail() const { return tail_; }

  friend MonicPolynomial operator*(const MonicPolynomial& f, const MonicPolynomial& g) {
    if (&f.field() != &g.field()) throw std::invalid_argument("factors belong to different fields");
    const NumberField& k = f.field();
    const unsigned e = f.degree(), d = g.degree();
    std::vector<FieldElement> a(e + 1, k.zero()), b(d + 1, k.zero()), c(e + d + 1, k.zero());
    a[e] = k.one();
    b[d] = k.one();
    for (unsigned i = 1; i <= e; ++i) a[e - i] = f.coeff(i);
    for (unsigned i = 1; i <= d; ++i) b[d - i] = g.coeff(i);
    for (unsigned i = 0; i <= e; ++i)
      for (unsigned j = 0; j <= d; ++j) c[i + j] = c[i + j] + a[i] * b[j];
    std::vector<FieldElement> tail;
    tail.reserve(e + d);
    for (unsigned i = 1; i <= e + d; ++i) tail.push_back(c[e + d - i]);
    return {k, std::move(tail)};
  }

  friend bool operator==(const MonicPolynomial& a, const MonicPolynomial& b) {
    return a.field_ == b.field_ && a.tail_ == b.tail_;
  }
  friend bool operator!=(const MonicPolynomial& a, const MonicPolynomial& b) { return !(a == b); }
  // Degree-major, then lexicographic on (a_1, ..., a_e): the canonical
  // ordering used for deduplicated and stable output.
  friend bool operator<(const MonicPolynomial& a, const MonicPolynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (unsigned i = 0; i < a.degree(); ++i) {
      if (a.tail_[i] < b.tail_[i]) return true;
      if (b.tail_[i] < a.tail_[i]) return false;
    }
    return false;
  }

 private:
  const NumberField* field_;
  std::vector<FieldElement> tail_;
};

}  // namespace heights
