#include "wpcount/elliptic.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace wpcount {

Invariants computeInvariants(const std::array<FieldElement, 5>& a) {
  const FieldElement &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  Invariants v;
  v.b2 = a1 * a1 + FieldElement(4L) * a2;
  v.b4 = FieldElement(2L) * a4 + a1 * a3;
  v.b6 = a3 * a3 + FieldElement(4L) * a6;
  v.b8 = a1 * a1 * a6 + FieldElement(4L) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  v.c4 = v.b2 * v.b2 - FieldElement(24L) * v.b4;
  v.c6 = -(v.b2 * v.b2 * v.b2) + FieldElement(36L) * v.b2 * v.b4 - FieldElement(216L) * v.b6;
  v.delta = -(v.b2 * v.b2 * v.b8) - FieldElement(8L) * v.b4 * v.b4 * v.b4 - FieldElement(27L) * v.b6 * v.b6 +
            FieldElement(9L) * v.b2 * v.b4 * v.b6;
  if (!v.delta.isZero()) v.j = v.c4 * v.c4 * v.c4 / v.delta;
  return v;
}

WeierstrassCurve::WeierstrassCurve(const NumberField& F, const std::array<FieldElement, 5>& a)
    : F_(F), a_(a), inv_(computeInvariants(a)) {
  if (inv_.delta.isZero()) throw std::invalid_argument("singular curve");
}

WeierstrassCurve WeierstrassCurve::shortForm(const NumberField& F, const FieldElement& a4, const FieldElement& a6) {
  return WeierstrassCurve(F, {FieldElement(0L), FieldElement(0L), FieldElement(0L), a4, a6});
}

WeierstrassCurve WeierstrassCurve::fromC4C6(const NumberField& F, const FieldElement& c4, const FieldElement& c6) {
  return shortForm(F, FieldElement(-27L) * c4, FieldElement(-54L) * c6);
}

bool WeierstrassCurve::contains(const CurvePoint& P) const {
  if (P.infinity) return true;
  const FieldElement &x = P.x, &y = P.y;
  return y * y + a1() * x * y + a3() * y == x * x * x + a2() * x * x + a4() * x + a6();
}

WeierstrassCurve WeierstrassCurve::changeModel(const FieldElement& u, const FieldElement& r, const FieldElement& s,
                                               const FieldElement& t) const {
  if (u.isZero()) throw std::invalid_argument("changeModel: u must be nonzero");
  const FieldElement &A1 = a1(), &A2 = a2(), &A3 = a3(), &A4 = a4(), &A6 = a6();
  const FieldElement two(2L), three(3L);
  FieldElement n1 = (A1 + two * s) / u;
  FieldElement n2 = (A2 - s * A1 + three * r - s * s) / u.pow(2);
  FieldElement n3 = (A3 + r * A1 + two * t) / u.pow(3);
  FieldElement n4 = (A4 - s * A3 + two * r * A2 - (t + r * s) * A1 + three * r * r - two * s * t) / u.pow(4);
  FieldElement n6 = (A6 + r * A4 + r * r * A2 + r * r * r - t * A3 - t * t - r * t * A1) / u.pow(6);
  return WeierstrassCurve(F_, {n1, n2, n3, n4, n6});
}

std::string WeierstrassCurve::toJson() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : a_) j.push_back(c.toString());
  return j.dump();
}

WeierstrassCurve WeierstrassCurve::fromJson(const NumberField& F, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("curve JSON: ") + ex.what());
  }
  if (!j.is_array() || j.size() != 5) throw std::invalid_argument("curve JSON must be [a1, a2, a3, a4, a6]");
  std::array<FieldElement, 5> a;
  for (int i = 0; i < 5; ++i) a[i] = FieldElement::parse(F, j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
  return WeierstrassCurve(F, a);
}

WeightedPoint iota(const WeierstrassCurve& E) {
  std::vector<FieldElement> x{E.invariants().c4, E.invariants().c6};
  return normalize(E.field(), Weights{4, 6}, x);
}

double sizeOfCurve(const WeierstrassCurve& E) { return size(iota(E)); }

Rational sizeOfCurvePow12(const WeierstrassCurve& E) { return sizePowerExact(iota(E), 12); }

CurvePoint negate(const WeierstrassCurve& E, const CurvePoint& P) {
  if (!E.contains(P)) throw std::invalid_argument("point not on curve");
  if (P.infinity) return P;
  return CurvePoint::at(P.x, -P.y - E.a1() * P.x - E.a3());
}

CurvePoint add(const WeierstrassCurve& E, const CurvePoint& P, const CurvePoint& Q) {
  if (!E.contains(P) || !E.contains(Q)) throw std::invalid_argument("point not on curve");
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  FieldElement lambda, nu;
  if (P.x == Q.x) {
    FieldElement denom = FieldElement(2L) * P.y + E.a1() * P.x + E.a3();
    if ((P.y + Q.y + E.a1() * Q.x + E.a3()).isZero()) return CurvePoint{};
    lambda = (FieldElement(3L) * P.x * P.x + FieldElement(2L) * E.a2() * P.x + E.a4() - E.a1() * P.y) / denom;
    nu = (-(P.x * P.x * P.x) + E.a4() * P.x + FieldElement(2L) * E.a6() - E.a3() * P.y) / denom;
  } else {
    FieldElement dx = Q.x - P.x;
    lambda = (Q.y - P.y) / dx;
    nu = (P.y * Q.x - Q.y * P.x) / dx;
  }
  FieldElement x3 = lambda * lambda + E.a1() * lambda - E.a2() - P.x - Q.x;
  FieldElement y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
  return CurvePoint::at(x3, y3);
}

CurvePoint multiply(const WeierstrassCurve& E, const CurvePoint& P, long k) {
  CurvePoint base = k < 0 ? negate(E, P) : P;
  unsigned long n = static_cast<unsigned long>(k < 0 ? -k : k);
  CurvePoint acc;
  while (n) {
    if (n & 1) acc = add(E, acc, base);
    n >>= 1;
    if (n) base = add(E, base, base);
  }
  return acc;
}

std::optional<int> pointOrder(const WeierstrassCurve& E, const CurvePoint& P, int maxOrder) {
  if (!E.contains(P)) throw std::invalid_argument("point not on curve");
  CurvePoint Q = P;
  for (int k = 1; k <= maxOrder; ++k) {
    if (Q.infinity) return k;
    Q = add(E, Q, P);
  }
  return std::nullopt;
}

UPoly divisionPolynomial(const WeierstrassCurve& E, int m) {
  if (m < 1) throw std::invalid_argument("division polynomial index must be positive");
  const Invariants& v = E.invariants();
  const FieldElement one(1L);
  auto c = [](long n) { return FieldElement(n); };
  UPoly P({v.b6, c(2) * v.b4, v.b2, c(4)});
  std::map<int, UPoly> F;
  F[0] = UPoly();
  F[1] = UPoly::constant(one);
  F[2] = UPoly::constant(one);
  F[3] = UPoly({v.b8, c(3) * v.b6, c(3) * v.b4, v.b2, c(3)});
  F[4] = UPoly({v.b4 * v.b8 - v.b6 * v.b6, v.b2 * v.b8 - v.b4 * v.b6, c(10) * v.b8, c(10) * v.b6, c(5) * v.b4,
                v.b2, c(2)});
  UPoly P2 = P * P;
  // F_n = psi_n for odd n and psi_n / psi_2 for even n
  std::function<const UPoly&(int)> get = [&](int n) -> const UPoly& {
    auto it = F.find(n);
    if (it != F.end()) return it->second;
    UPoly r;
    const int k = n / 2;
    if (n & 1) {
      if (k % 2 == 0)
        r = P2 * get(k + 2) * get(k).pow(3) - get(k - 1) * get(k + 1).pow(3);
      else
        r = get(k + 2) * get(k).pow(3) - P2 * get(k - 1) * get(k + 1).pow(3);
    } else {
      r = get(k) * (get(k + 2) * get(k - 1).pow(2) - get(k - 2) * get(k + 1).pow(2));
    }
    return F.emplace(n, std::move(r)).first->second;
  };
  const UPoly& f = get(m);
  return (m & 1) ? f : P * f;
}

std::vector<CurvePoint> pointsOfExactOrder(const WeierstrassCurve& E, int m) {
  if (m < 1) throw std::invalid_argument("order must be positive");
  if (!E.field().isRationals()) throw std::invalid_argument("torsion search is implemented over Q");
  if (m == 1) return {CurvePoint{}};
  std::vector<CurvePoint> out;
  const FieldElement half(Rational(1, 2));
  for (const Rational& xr : divisionPolynomial(E, m).rationalRoots()) {
    FieldElement x(xr);
    FieldElement lin = E.a1() * x + E.a3();
    FieldElement rhs = x * x * x + E.a2() * x * x + E.a4() * x + E.a6();
    FieldElement disc = lin * lin + FieldElement(4L) * rhs;
    auto s = sqrtInField(E.field(), disc);
    if (!s) continue;
    std::set<std::pair<Rational, Rational>> seen;
    for (const FieldElement& y : {half * (-lin + *s), half * (-lin - *s)}) {
      if (!seen.insert({y.rationalPart(), y.sqrtPart()}).second) continue;
      CurvePoint P = CurvePoint::at(x, y);
      auto ord = pointOrder(E, P, m);
      if (ord && *ord == m) out.push_back(P);
    }
  }
  return out;
}

bool hasFullTwoTorsion(const WeierstrassCurve& E) { return pointsOfExactOrder(E, 2).size() == 3; }

bool isIsomorphic(const WeierstrassCurve& E, const WeierstrassCurve& Ep) {
  return equalPoints(iota(E), iota(Ep));
}

}  // namespace wpcount
