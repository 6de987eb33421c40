#include <doctest.h>

#include <algorithm>

#include "support.hpp"
#include "wpcount/elliptic.hpp"

using namespace wpcount;
using wpcount::testing::allFields;
using wpcount::testing::randomElement;
using wpcount::testing::randomNonzero;

namespace {

const NumberField Q;

using Coeffs = std::array<FieldElement, 5>;

WeierstrassCurve curve(long a1, long a2, long a3, long a4, long a6) { return WeierstrassCurve(Q, {a1, a2, a3, a4, a6}); }

// y^2 + (1 - c) xy - b y = x^3 - b x^2
WeierstrassCurve tate(const FieldElement& b, const FieldElement& c) {
  return WeierstrassCurve(Q, {FieldElement(1) - c, -b, -b, 0L, 0L});
}

// a curve with random a1, a2, a3 through two random points; nullopt when singular
std::optional<std::pair<WeierstrassCurve, std::array<CurvePoint, 2>>> curveThrough(std::mt19937_64& rng,
                                                                                   const NumberField& F) {
  FieldElement a1 = randomElement(rng, F, 5), a2 = randomElement(rng, F, 5), a3 = randomElement(rng, F, 5);
  FieldElement x1 = randomElement(rng, F, 9), y1 = randomElement(rng, F, 9);
  FieldElement x2 = randomElement(rng, F, 9), y2 = randomElement(rng, F, 9);
  if (x1 == x2) return std::nullopt;
  auto rhs = [&](const FieldElement& x, const FieldElement& y) { return y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x; };
  // a4 x + a6 = rhs at both points
  FieldElement a4 = (rhs(x1, y1) - rhs(x2, y2)) / (x1 - x2);
  FieldElement a6 = rhs(x1, y1) - a4 * x1;
  try {
    WeierstrassCurve E(F, {a1, a2, a3, a4, a6});
    return std::make_pair(E, std::array<CurvePoint, 2>{CurvePoint::at(x1, y1), CurvePoint::at(x2, y2)});
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

TEST_CASE("invariants") {
  for (long a : {-3L, 0L, 1L, 7L})
    for (long b : {-2L, 1L, 5L}) {
      Invariants I = computeInvariants({0L, 0L, 0L, a, b});
      CHECK(I.c4 == FieldElement(-48 * a));
      CHECK(I.c6 == FieldElement(-864 * b));
    }
  auto E = curve(0, 0, 0, -1, 0);
  CHECK(E.invariants().c4 == FieldElement(48));
  CHECK(E.invariants().c6 == FieldElement(0L));
  CHECK(E.invariants().delta == FieldElement(64));
  CHECK(E.invariants().j == FieldElement(1728));
  CHECK(curve(0, -1, -1, 0, 0).invariants().delta == FieldElement(-11));
  CHECK_THROWS_WITH(curve(0, 0, 0, 0, 0), "singular curve");
  CHECK_THROWS_WITH(curve(0, 0, 0, -3, 2), "singular curve");

  std::mt19937_64 rng(3);
  for (const auto& F : allFields()) {
    for (int k = 0; k < 50; ++k) {
      Coeffs a;
      for (auto& ai : a) ai = randomElement(rng, F, 12);
      Invariants I = computeInvariants(a);
      CHECK(FieldElement(1728) * I.delta == I.c4 * I.c4 * I.c4 - I.c6 * I.c6);
      CHECK(FieldElement(4) * I.b8 == I.b2 * I.b6 - I.b4 * I.b4);
      CHECK(I.c4 == I.b2 * I.b2 - FieldElement(24) * I.b4);
    }
  }
}

TEST_CASE("iota and sizes") {
  auto E1 = curve(0, 0, 0, 0, 1);
  CHECK(iota(E1).coords() == std::vector<FieldElement>{0L, -864});
  CHECK(sizeOfCurvePow12(E1) == 746496);
  // (48, 0) has scaling ideal (2)
  CHECK(iota(curve(0, 0, 0, -1, 0)) == normalize(Q, {4, 6}, std::vector<FieldElement>{48, 0L}));
  CHECK(iota(curve(0, 0, 0, -1, 0)).coords() == std::vector<FieldElement>{3, 0L});
  CHECK(sizeOfCurvePow12(curve(0, 0, 0, 1, 0)) == 27);
  CHECK(sizeOfCurve(curve(0, 0, 0, 1, 0)) == doctest::Approx(std::pow(27.0, 1.0 / 12)));
  CHECK(iota(curve(0, 0, 0, 1, 0)) == iota(curve(0, 0, 0, 16, 0)));
  auto E = WeierstrassCurve::fromC4C6(Q, 48, 0L);
  CHECK(E.invariants().c4 == FieldElement(48 * 1296));

  std::mt19937_64 rng(5);
  for (const auto& F : allFields()) {
    for (int k = 0; k < 30; ++k) {
      Coeffs a;
      for (auto& ai : a) ai = randomElement(rng, F, 12);
      try {
        WeierstrassCurve C(F, a);
        auto D = C.changeModel(randomNonzero(rng, F, 6), randomElement(rng, F, 6), randomElement(rng, F, 6),
                               randomElement(rng, F, 6));
        CHECK(iota(D) == iota(C));
        CHECK(isIsomorphic(C, D));
        CHECK(sizeOfCurvePow12(D) == sizeOfCurvePow12(C));
        CHECK(WeierstrassCurve::fromJson(F, C.toJson()).coefficients() == C.coefficients());
      } catch (const std::invalid_argument&) {
      }
    }
  }
}

TEST_CASE("twists") {
  auto E = curve(0, 0, 0, 1, 0);
  CHECK(isIsomorphic(E, E.changeModel(3, 0L, 0L, 0L)));
  CHECK_FALSE(isIsomorphic(E, curve(0, 0, 0, -1, 0)));
  CHECK(isIsomorphic(curve(0, 0, 0, 0, 1), curve(0, 0, 0, 0, 64)));
  CHECK_FALSE(isIsomorphic(curve(0, 0, 0, 0, 1), curve(0, 0, 0, 0, 2)));
  // -4 = (1+i)^4 is a fourth power in Q(i) but not in Q
  NumberField Qi = NumberField::imaginaryQuadratic(-1);
  CHECK(isIsomorphic(WeierstrassCurve::shortForm(Qi, 1, 0L), WeierstrassCurve::shortForm(Qi, -4, 0L)));
  CHECK_FALSE(isIsomorphic(WeierstrassCurve::shortForm(Qi, 1, 0L), WeierstrassCurve::shortForm(Qi, -1, 0L)));
  CHECK_FALSE(isIsomorphic(curve(0, 0, 0, 1, 0), curve(0, 0, 0, -4, 0)));
}

TEST_CASE("group law") {
  auto E = curve(0, -1, -1, 0, 0);
  CurvePoint P = CurvePoint::at(0L, 0L);
  CHECK(E.contains(P));
  CHECK(add(E, P, CurvePoint{}) == P);
  CHECK(add(E, P, negate(E, P)).infinity);
  // tangent at (0,0) is y = 0, meeting the curve again at (1,0)
  CHECK(multiply(E, P, 2) == negate(E, CurvePoint::at(1, 0L)));
  CHECK(multiply(E, P, 2) == CurvePoint::at(1, 1));
  CHECK(pointOrder(E, P, 20) == 5);
  CHECK(pointOrder(E, CurvePoint{}, 20) == 1);
  CHECK(pointOrder(E, P, 4) == std::nullopt);
  auto F = curve(0, 0, 0, 0, 1);
  CHECK(pointOrder(F, CurvePoint::at(2, 3), 20) == 6);
  CHECK(pointOrder(F, CurvePoint::at(0L, 1), 20) == 3);
  CHECK(pointOrder(F, CurvePoint::at(-1, 0L), 20) == 2);
  CHECK(multiply(F, CurvePoint::at(2, 3), -1) == negate(F, CurvePoint::at(2, 3)));
  CHECK_FALSE(F.contains(CurvePoint::at(1, 1)));

  std::mt19937_64 rng(13);
  int done = 0;
  for (const auto& K : allFields()) {
    for (int k = 0; k < 30; ++k) {
      auto c = curveThrough(rng, K);
      if (!c) continue;
      auto& [C, pts] = *c;
      CurvePoint A = pts[0], B = pts[1];
      CHECK(C.contains(A));
      CHECK(C.contains(B));
      CurvePoint S = add(C, A, B);
      CHECK(C.contains(S));
      CHECK(add(C, A, B) == add(C, B, A));
      CHECK(add(C, add(C, A, B), S) == add(C, A, add(C, B, S)));
      CHECK(multiply(C, A, 3) == add(C, A, add(C, A, A)));
      ++done;
    }
  }
  CHECK(done > 100);
}

TEST_CASE("tate normal forms") {
  std::mt19937_64 rng(19);
  for (int k = 0; k < 25; ++k) {
    FieldElement t = wpcount::testing::randomRational(rng, 30);
    if (t.isZero() || t == FieldElement(1)) continue;
    auto check = [&](const FieldElement& b, const FieldElement& c, int n) {
      try {
        auto E = tate(b, c);
        CurvePoint P = CurvePoint::at(0L, 0L);
        CHECK(pointOrder(E, P, 40) == n);
        auto roots = divisionPolynomial(E, n).rationalRoots();
        CHECK(std::find(roots.begin(), roots.end(), Rational(0)) != roots.end());
        auto exact = pointsOfExactOrder(E, n);
        CHECK(std::find(exact.begin(), exact.end(), P) != exact.end());
        for (const auto& R : exact) CHECK(pointOrder(E, R, 40) == n);
      } catch (const std::invalid_argument&) {
      }
    };
    check(t, 0L, 4);
    check(t, t, 5);
    check(t + t * t, t, 6);
    check(t * t * t - t * t, t * t - t, 7);
  }
}

TEST_CASE("division polynomials") {
  auto E = curve(0, 0, 0, -1, 0);
  CHECK(divisionPolynomial(E, 1) == UPoly::constant(1));
  const auto& I = E.invariants();
  CHECK(divisionPolynomial(E, 2) == UPoly({I.b6, FieldElement(2) * I.b4, I.b2, 4}));
  auto roots = divisionPolynomial(E, 2).rationalRoots();
  std::sort(roots.begin(), roots.end());
  CHECK(roots == std::vector<Rational>{-1, 0, 1});
  CHECK(hasFullTwoTorsion(E));
  CHECK_FALSE(hasFullTwoTorsion(curve(0, 0, 0, 0, 1)));
  CHECK(divisionPolynomial(E, 3).degree() == 4);
  CHECK(divisionPolynomial(E, 5).degree() == 12);
  auto E11 = curve(0, -1, -1, 0, 0);
  CHECK(pointsOfExactOrder(E11, 5).size() == 4);
  CHECK(pointsOfExactOrder(E11, 2).empty());
  // psi_3 from the closed form 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8
  const auto& J = E11.invariants();
  CHECK(divisionPolynomial(E11, 3) == UPoly({J.b8, FieldElement(3) * J.b6, FieldElement(3) * J.b4, J.b2, 3}));
}
