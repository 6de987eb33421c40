#pragma once

// Weighted-homogeneous polynomials in two variables and morphisms of
// weighted projective lines P(w) -> P(u) given by pairs (f0, f1).

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wpcount/numfield.hpp"
#include "wpcount/upoly.hpp"
#include "wpcount/wpoint.hpp"

namespace wpcount {

class GradedPoly {
 public:
  using Exponent = std::pair<int, int>;

  GradedPoly() : w_{1, 1} {}
  GradedPoly(Weights w, int degree);
  static GradedPoly monomial(const Weights& w, int k0, int k1, const FieldElement& c);
  /// Throws unless every term has the same weighted degree. An empty list
  /// needs the degree supplied.
  static GradedPoly fromTerms(const Weights& w, const std::vector<std::tuple<int, int, FieldElement>>& terms,
                              std::optional<int> degree = std::nullopt);

  const Weights& weights() const { return w_; }
  int degree() const { return deg_; }
  const std::map<Exponent, FieldElement>& terms() const { return c_; }
  bool isZero() const { return c_.empty(); }
  FieldElement coeff(int k0, int k1) const;
  bool isRational() const;

  FieldElement eval(const FieldElement& x0, const FieldElement& x1) const;
  std::complex<long double> evalComplex(std::complex<long double> x0, std::complex<long double> x1) const;
  /// f(t, 1) and f(1, 0).
  UPoly dehomogenize() const;
  FieldElement atInfinity() const;

  GradedPoly operator-() const;
  friend GradedPoly operator+(const GradedPoly& a, const GradedPoly& b);
  friend GradedPoly operator-(const GradedPoly& a, const GradedPoly& b);
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
  friend GradedPoly operator*(const FieldElement& s, const GradedPoly& a);
  friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
    return a.w_ == b.w_ && a.deg_ == b.deg_ && a.c_ == b.c_;
  }
  GradedPoly pow(unsigned k) const;

  std::string toString(const char* v0 = "x0", const char* v1 = "x1") const;

 private:
  void add(const Exponent& k, const FieldElement& c);
  Weights w_;
  int deg_ = 0;
  std::map<Exponent, FieldElement> c_;
};

/// g(f0, f1) for g in variables of weights u.
GradedPoly compose(const GradedPoly& g, const GradedPoly& f0, const GradedPoly& f1);

/// The fractional ideal generated by the coefficients; f != 0.
FractionalIdeal coefficientIdeal(const NumberField& F, const GradedPoly& f);

/// f(z) in a(f) * I_w(z)^deg f.
bool lemmaPolyCheck(const NumberField& F, const GradedPoly& f, std::span<const FieldElement> z);

class WPLMorphism {
 public:
  const NumberField& field() const { return field_; }
  const Weights& sourceWeights() const { return w_; }
  const Weights& targetWeights() const { return u_; }
  const GradedPoly& f0() const { return f0_; }
  const GradedPoly& f1() const { return f1_; }
  int reducedDegree() const { return e_; }

  friend bool operator==(const WPLMorphism& a, const WPLMorphism& b) {
    return a.field_ == b.field_ && a.w_ == b.w_ && a.u_ == b.u_ && a.f0_ == b.f0_ && a.f1_ == b.f1_;
  }

 private:
  friend WPLMorphism makeMorphism(const NumberField&, const Weights&, const Weights&, GradedPoly, GradedPoly);
  NumberField field_;
  Weights w_, u_;
  GradedPoly f0_, f1_;
  int e_ = 1;
};

/// Validates degrees and the common-zero condition, then brings (f0, f1)
/// to canonical form under c.(f0, f1) = (c^{u0} f0, c^{u1} f1).
WPLMorphism makeMorphism(const NumberField& F, const Weights& w, const Weights& u, GradedPoly f0, GradedPoly f1);

bool isRepresentable(const WPLMorphism& phi);

std::vector<FieldElement> applyCoords(const WPLMorphism& phi, std::span<const FieldElement> z);
WeightedPoint apply(const WPLMorphism& phi, const WeightedPoint& p);

struct IntegralRelation {
  int index = 0;
  int delta = 1, nu = 1, m = 1;
  int d() const { return m * delta; }
  /// g[l-1] is the coefficient of x_i^{(m-l) delta}: a polynomial in y0, y1
  /// of weights u and degree l * nu.
  std::vector<GradedPoly> g;
  /// Coefficient ideals of the g's; nullopt for g = 0.
  std::vector<std::optional<FractionalIdeal>> c;
  FractionalIdeal dIdeal;
};

/// Monic relation of minimal degree for x_i^delta over K[f0, f1].
IntegralRelation integralRelation(const WPLMorphism& phi, int i);

/// x_i^{m delta} + sum_l g_l(f0, f1) x_i^{(m-l) delta}, which must vanish.
GradedPoly relationResidual(const WPLMorphism& phi, const IntegralRelation& rel);

/// Relations and ideals used by the containment checks; computed once.
struct ComparisonData {
  IntegralRelation rel0, rel1;
  FractionalIdeal upperIdeal;   // I_u(a0, a1)
  FractionalIdeal lowerIdeal;   // I_(nu0, nu1)(d0, d1)
};
ComparisonData comparisonData(const WPLMorphism& phi);

/// I_u(f(z)) in I_u(a0, a1) I_w(z)^e.
bool upperContainmentCheck(const WPLMorphism& phi, const ComparisonData& data, std::span<const FieldElement> z);
bool upperContainmentCheck(const WPLMorphism& phi, std::span<const FieldElement> z);
/// I_nu(z0^delta0, z1^delta1) in I_nu(d0, d1) I_u(f(z)).
bool lowerContainmentCheck(const WPLMorphism& phi, const ComparisonData& data, std::span<const FieldElement> z);
bool lowerContainmentCheck(const WPLMorphism& phi, std::span<const FieldElement> z);

struct ContainmentTally {
  std::uint64_t points = 0, upperFailures = 0, lowerFailures = 0;
};
/// Both containments at every canonical source point of size <= T.
ContainmentTally containmentTally(const WPLMorphism& phi, const Rational& T, unsigned threads = 1);

struct QvRange {
  double min = 0, max = 0;
};
/// Empirical range of q_v on the unit sphere at the archimedean place.
QvRange qvGrid(const WPLMorphism& phi, int gridN);

struct SizeComparison {
  std::uint64_t points = 0;
  double maxRatio = 0, minRatio = 0;
  double qvGridMin = 0, qvGridMax = 0;
  double lowerBound = 0, upperBound = 0;  // predicted range for the ratios
  bool twoSided = false;
};
SizeComparison sizeComparisonReport(const WPLMorphism& phi, const Rational& T, int gridN = 400);

std::string morphismToJson(const WPLMorphism& phi);
WPLMorphism morphismFromJson(const std::string& text);

}  // namespace wpcount
