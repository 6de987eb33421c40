#pragma once

// Exact arithmetic in Q and in the imaginary quadratic fields Q(sqrt d),
// d in {-1,-2,-3,-7,-11}. All of these have class number one and finite
// unit group, so every fractional ideal is principal and stored through
// its prime factorization.

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wpcount/arith.hpp"
#include "wpcount/weights.hpp"

namespace wpcount {

class NumberField {
 public:
  NumberField() = default;  // Q
  static NumberField rationals() { return NumberField(); }
  /// d must be one of -1, -2, -3, -7, -11.
  static NumberField imaginaryQuadratic(int d);
  /// "Q", "Qi", "Qsqrt-2", "Qsqrt-3", "Qsqrt-7", "Qsqrt-11".
  static NumberField parse(std::string_view spec);

  int d() const { return d_; }
  bool isRationals() const { return d_ == 0; }
  int degree() const { return d_ == 0 ? 1 : 2; }
  int realPlaces() const { return d_ == 0 ? 1 : 0; }
  int complexPlaces() const { return d_ == 0 ? 0 : 1; }
  long discriminant() const;
  int classNumber() const { return 1; }
  double regulator() const { return 1.0; }
  int rootsOfUnity() const;
  /// True when the ring of integers is Z[(1+sqrt d)/2] (d = 1 mod 4).
  bool halfIntegralBasis() const { return d_ != 0 && ((d_ % 4) + 4) % 4 == 1; }
  std::string name() const;

  friend bool operator==(const NumberField&, const NumberField&) = default;

 private:
  explicit NumberField(int d) : d_(d) {}
  int d_ = 0;
};

/// a + b*sqrt(d). Rationals carry d = 0 and b = 0 and mix freely with
/// elements of any quadratic field.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long n) : a_(n) {}  // NOLINT(google-explicit-constructor)
  FieldElement(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  FieldElement(const NumberField& F, const Rational& a, const Rational& b = 0);

  /// m + n*omega for the standard integral basis {1, omega}.
  static FieldElement fromIntegralBasis(const NumberField& F, const Integer& m, const Integer& n);
  /// Parses "3/4" or "a,b" (a + b*sqrt d).
  static FieldElement parse(const NumberField& F, std::string_view text);

  NumberField field() const;
  int d() const { return d_; }
  const Rational& rationalPart() const { return a_; }
  const Rational& sqrtPart() const { return b_; }

  bool isZero() const { return a_ == 0 && b_ == 0; }
  bool isRational() const { return b_ == 0; }
  bool isIntegral() const;
  /// Coordinates (c0, c1) with x = c0 + c1*omega.
  std::pair<Rational, Rational> basisCoordinates() const;
  /// Least positive integer m with m*x integral.
  Integer denominator() const;

  FieldElement conjugate() const;
  Rational norm() const;
  FieldElement inverse() const;
  FieldElement pow(long e) const;
  std::complex<long double> embed() const;
  /// |x|_v at the unique archimedean place of F: |x| over Q, x * conj(x) otherwise.
  Rational placeAbs(const NumberField& F) const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement x, const FieldElement& y) { return x += y; }
  friend FieldElement operator-(FieldElement x, const FieldElement& y) { return x -= y; }
  friend FieldElement operator*(FieldElement x, const FieldElement& y) { return x *= y; }
  friend FieldElement operator/(FieldElement x, const FieldElement& y) { return x /= y; }
  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
  }

  /// "a" for rationals, "a,b" otherwise.
  std::string toString() const;

 private:
  int unify(const FieldElement& o) const;
  int d_ = 0;
  Rational a_{0};
  Rational b_{0};
};

/// Fixed total order used for canonical representatives: compare the
/// rational part, then the sqrt part, each by (sign, magnitude) with
/// zero < positive < negative.
int compareCanonical(const FieldElement& x, const FieldElement& y);
int compareCanonical(const Rational& x, const Rational& y);

struct PrimeIdeal {
  NumberField field;
  Integer p;                // residue characteristic
  FieldElement generator;   // canonical generator, norm p^residueDegree
  int residueDegree = 1;
  int ramification = 1;

  int compare(const PrimeIdeal& o) const;
  friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b) { return a.compare(b) < 0; }
  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) { return a.compare(b) == 0; }
  std::string toString() const;
};

/// All primes of O_F above the rational prime p.
std::vector<PrimeIdeal> primesAbove(const NumberField& F, const Integer& p);
PrimeIdeal rationalPrime(long p);

/// v_P(x); throws "valuation of zero undefined" for x = 0.
int valuation(const FieldElement& x, const PrimeIdeal& P);

/// Primes P with v_P(x) != 0.
std::vector<PrimeIdeal> primeSupport(const NumberField& F, const FieldElement& x);

class FractionalIdeal {
 public:
  FractionalIdeal() = default;  // (1) in Q
  explicit FractionalIdeal(const NumberField& F) : field_(F) {}
  static FractionalIdeal principal(const NumberField& F, const FieldElement& x);
  /// Ideal generated by the given elements; zeros are ignored, not all zero.
  static FractionalIdeal generatedBy(const NumberField& F, std::span<const FieldElement> xs);
  static FractionalIdeal fromFactorization(const NumberField& F, std::map<PrimeIdeal, int> f);

  const NumberField& field() const { return field_; }
  const std::map<PrimeIdeal, int>& factorization() const { return exps_; }
  int valuation(const PrimeIdeal& P) const;
  bool isUnit() const { return exps_.empty(); }
  bool isIntegral() const;
  Rational norm() const;
  FieldElement generator() const;

  FractionalIdeal inverse() const;
  FractionalIdeal pow(int k) const;
  friend FractionalIdeal operator*(const FractionalIdeal& a, const FractionalIdeal& b);
  friend bool operator==(const FractionalIdeal& a, const FractionalIdeal& b) {
    return a.field_ == b.field_ && a.exps_ == b.exps_;
  }

  bool contains(const FieldElement& x) const;
  bool isSubsetOf(const FractionalIdeal& other) const;

  std::string toString() const;

 private:
  void normalizeMap();
  NumberField field_;
  std::map<PrimeIdeal, int> exps_;
};

/// I_w(x): v_P = floor(min_{x_i != 0} v_P(x_i) / w_i). Zero coordinates
/// impose no condition.
FractionalIdeal scalingIdealOfTuple(const NumberField& F, const Weights& w,
                                    std::span<const FieldElement> x);

/// I_w(b_0, ..., b_n) where nullopt stands for the zero ideal.
FractionalIdeal scalingIdealOfIdeals(const NumberField& F, const Weights& w,
                                     std::span<const std::optional<FractionalIdeal>> b);

inline Rational idealNorm(const FractionalIdeal& I) { return I.norm(); }

/// H_{w,infinity}(x) = prod_v max_i |x_i|_v^{1/w_i}.
double archSize(const NumberField& F, const Weights& w, std::span<const FieldElement> x);

/// zeta_F(s) for integer s >= 2 to relative error relTol.
double dedekindZeta(const NumberField& F, int s, double relTol = 1e-8);

/// Hurwitz zeta(s, a) for s > 1, 0 < a <= 1.
double hurwitzZeta(double s, double a, double relTol = 1e-14);

/// All roots of unity of F.
std::vector<FieldElement> units(const NumberField& F);

/// gcd in O_F of two integral elements (the rings in scope are Euclidean).
FieldElement integralGcd(const NumberField& F, FieldElement a, FieldElement b);

/// Square root in F when it exists.
std::optional<FieldElement> sqrtInField(const NumberField& F, const FieldElement& x);

}  // namespace wpcount
