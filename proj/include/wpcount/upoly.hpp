#pragma once

// Dense univariate polynomials with coefficients in Q or Q(sqrt d).

#include <vector>

#include "wpcount/numfield.hpp"

namespace wpcount {

class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<FieldElement> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly constant(const FieldElement& a) { return UPoly({a}); }
  static UPoly x() { return UPoly({FieldElement(0L), FieldElement(1L)}); }

  bool isZero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<FieldElement>& coeffs() const { return c_; }
  FieldElement coeff(int i) const { return i < 0 || i > degree() ? FieldElement(0L) : c_[i]; }
  const FieldElement& leading() const { return c_.back(); }
  bool isRational() const;

  FieldElement eval(const FieldElement& t) const;
  UPoly derivative() const;
  UPoly monic() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const FieldElement& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  UPoly pow(unsigned k) const;

  /// Euclidean division; b != 0.
  static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
  /// Monic gcd (zero only when both inputs are zero).
  static UPoly gcd(UPoly a, UPoly b);

  /// Distinct rational roots; coefficients must be rational.
  std::vector<Rational> rationalRoots() const;

 private:
  void trim();
  std::vector<FieldElement> c_;
};

}  // namespace wpcount
