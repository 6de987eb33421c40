#pragma once

// Long Weierstrass curves y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 in
// characteristic zero.

#include <array>
#include <optional>
#include <string>

#include "wpcount/numfield.hpp"
#include "wpcount/upoly.hpp"
#include "wpcount/wpoint.hpp"

namespace wpcount {

struct Invariants {
  FieldElement b2, b4, b6, b8, c4, c6, delta, j;
};

struct CurvePoint {
  bool infinity = true;
  FieldElement x, y;
  static CurvePoint at(const FieldElement& x, const FieldElement& y) { return {false, x, y}; }
  friend bool operator==(const CurvePoint& P, const CurvePoint& Q) {
    return P.infinity == Q.infinity && (P.infinity || (P.x == Q.x && P.y == Q.y));
  }
};

class WeierstrassCurve {
 public:
  /// Throws "singular curve" when the discriminant vanishes.
  WeierstrassCurve(const NumberField& F, const std::array<FieldElement, 5>& a);
  static WeierstrassCurve shortForm(const NumberField& F, const FieldElement& a4, const FieldElement& a6);
  /// y^2 = x^3 - 27 c4 x - 54 c6.
  static WeierstrassCurve fromC4C6(const NumberField& F, const FieldElement& c4, const FieldElement& c6);

  const NumberField& field() const { return F_; }
  const std::array<FieldElement, 5>& coefficients() const { return a_; }
  const FieldElement& a1() const { return a_[0]; }
  const FieldElement& a2() const { return a_[1]; }
  const FieldElement& a3() const { return a_[2]; }
  const FieldElement& a4() const { return a_[3]; }
  const FieldElement& a6() const { return a_[4]; }
  const Invariants& invariants() const { return inv_; }

  bool contains(const CurvePoint& P) const;
  /// (u, r, s, t) change of coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
  WeierstrassCurve changeModel(const FieldElement& u, const FieldElement& r, const FieldElement& s,
                               const FieldElement& t) const;

  std::string toJson() const;
  static WeierstrassCurve fromJson(const NumberField& F, const std::string& text);

 private:
  NumberField F_;
  std::array<FieldElement, 5> a_;
  Invariants inv_;
};

/// Invariants without the nonsingularity check (the family models need them
/// symbolically).
Invariants computeInvariants(const std::array<FieldElement, 5>& a);

WeightedPoint iota(const WeierstrassCurve& E);
double sizeOfCurve(const WeierstrassCurve& E);
/// S(E)^12, exact.
Rational sizeOfCurvePow12(const WeierstrassCurve& E);

CurvePoint negate(const WeierstrassCurve& E, const CurvePoint& P);
CurvePoint add(const WeierstrassCurve& E, const CurvePoint& P, const CurvePoint& Q);
CurvePoint multiply(const WeierstrassCurve& E, const CurvePoint& P, long k);

/// Least k <= maxOrder with kP = O, nullopt when it exceeds maxOrder.
std::optional<int> pointOrder(const WeierstrassCurve& E, const CurvePoint& P, int maxOrder);

/// psi_m for odd m and psi_m * psi_2 for even m, as polynomials in x.
UPoly divisionPolynomial(const WeierstrassCurve& E, int m);

/// Rational points of exact order m (curves over Q).
std::vector<CurvePoint> pointsOfExactOrder(const WeierstrassCurve& E, int m);
bool hasFullTwoTorsion(const WeierstrassCurve& E);

bool isIsomorphic(const WeierstrassCurve& E, const WeierstrassCurve& Ep);

}  // namespace wpcount
