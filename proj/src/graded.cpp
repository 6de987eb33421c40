#include "wpcount/graded.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "wpcount/enumerate.hpp"
#include "wpcount/linalg.hpp"

namespace wpcount {

// ------------------------------------------------------------ GradedPoly

GradedPoly::GradedPoly(Weights w, int degree) : w_(std::move(w)), deg_(degree) {
  if (w_.size() != 2) throw std::invalid_argument("graded polynomials use two variables");
}

GradedPoly GradedPoly::monomial(const Weights& w, int k0, int k1, const FieldElement& c) {
  GradedPoly p(w, k0 * w[0] + k1 * w[1]);
  p.add({k0, k1}, c);
  return p;
}

GradedPoly GradedPoly::fromTerms(const Weights& w, const std::vector<std::tuple<int, int, FieldElement>>& terms,
                                 std::optional<int> degree) {
  if (terms.empty() && !degree) throw std::invalid_argument("degree of an empty polynomial must be given");
  int deg = degree ? *degree : std::get<0>(terms[0]) * w[0] + std::get<1>(terms[0]) * w[1];
  GradedPoly p(w, deg);
  for (const auto& [k0, k1, c] : terms) {
    if (k0 < 0 || k1 < 0) throw std::invalid_argument("negative exponent");
    if (k0 * w[0] + k1 * w[1] != deg) throw std::invalid_argument("polynomial is not weighted-homogeneous");
    p.add({k0, k1}, c);
  }
  return p;
}

void GradedPoly::add(const Exponent& k, const FieldElement& c) {
  if (c.isZero()) return;
  auto it = c_.find(k);
  if (it == c_.end()) {
    c_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.isZero()) c_.erase(it);
}

FieldElement GradedPoly::coeff(int k0, int k1) const {
  auto it = c_.find({k0, k1});
  return it == c_.end() ? FieldElement(0L) : it->second;
}

bool GradedPoly::isRational() const {
  return std::all_of(c_.begin(), c_.end(), [](const auto& kv) { return kv.second.isRational(); });
}

FieldElement GradedPoly::eval(const FieldElement& x0, const FieldElement& x1) const {
  FieldElement acc(0L);
  std::map<int, FieldElement> p0, p1;
  auto power = [](std::map<int, FieldElement>& cache, const FieldElement& x, int k) -> const FieldElement& {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    return cache.emplace(k, x.pow(k)).first->second;
  };
  for (const auto& [k, c] : c_) acc += c * power(p0, x0, k.first) * power(p1, x1, k.second);
  return acc;
}

std::complex<long double> GradedPoly::evalComplex(std::complex<long double> x0, std::complex<long double> x1) const {
  std::complex<long double> acc = 0;
  for (const auto& [k, c] : c_) acc += c.embed() * std::pow(x0, k.first) * std::pow(x1, k.second);
  return acc;
}

UPoly GradedPoly::dehomogenize() const {
  std::vector<FieldElement> v;
  for (const auto& [k, c] : c_) {
    if (static_cast<int>(v.size()) <= k.first) v.resize(k.first + 1, FieldElement(0L));
    v[k.first] += c;
  }
  return UPoly(std::move(v));
}

FieldElement GradedPoly::atInfinity() const {
  FieldElement acc(0L);
  for (const auto& [k, c] : c_)
    if (k.second == 0) acc += c;
  return acc;
}

GradedPoly GradedPoly::operator-() const {
  GradedPoly r = *this;
  for (auto& kv : r.c_) kv.second = -kv.second;
  return r;
}

GradedPoly operator+(const GradedPoly& a, const GradedPoly& b) {
  if (a.isZero()) return b;
  if (b.isZero()) return a;
  if (a.w_ != b.w_ || a.deg_ != b.deg_) throw std::invalid_argument("adding polynomials of different degree");
  GradedPoly r = a;
  for (const auto& [k, c] : b.c_) r.add(k, c);
  return r;
}

GradedPoly operator-(const GradedPoly& a, const GradedPoly& b) { return a + (-b); }

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
  if (a.w_ != b.w_) throw std::invalid_argument("multiplying polynomials over different weights");
  GradedPoly r(a.w_, a.deg_ + b.deg_);
  for (const auto& [ka, ca] : a.c_)
    for (const auto& [kb, cb] : b.c_) r.add({ka.first + kb.first, ka.second + kb.second}, ca * cb);
  return r;
}

GradedPoly operator*(const FieldElement& s, const GradedPoly& a) {
  GradedPoly r(a.w_, a.deg_);
  if (s.isZero()) return r;
  for (const auto& [k, c] : a.c_) r.c_.emplace(k, s * c);
  return r;
}

GradedPoly GradedPoly::pow(unsigned k) const {
  GradedPoly result = monomial(w_, 0, 0, FieldElement(1L)), base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::string GradedPoly::toString(const char* v0, const char* v1) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : c_) {
    if (!first) os << " + ";
    first = false;
    os << (c.isRational() ? c.toString() : "(" + c.toString() + ")");
    if (k.first) os << "*" << v0 << (k.first > 1 ? "^" + std::to_string(k.first) : "");
    if (k.second) os << "*" << v1 << (k.second > 1 ? "^" + std::to_string(k.second) : "");
  }
  return os.str();
}

GradedPoly compose(const GradedPoly& g, const GradedPoly& f0, const GradedPoly& f1) {
  const Weights& u = g.weights();
  if (f0.degree() % u[0] != 0 || f1.degree() % u[1] != 0)
    throw std::invalid_argument("compose: degrees not proportional to weights");
  const int e = f0.degree() / u[0];
  GradedPoly r(f0.weights(), e * g.degree());
  std::map<int, GradedPoly> p0, p1;
  auto power = [](std::map<int, GradedPoly>& cache, const GradedPoly& f, int k) -> const GradedPoly& {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    return cache.emplace(k, f.pow(static_cast<unsigned>(k))).first->second;
  };
  for (const auto& [k, c] : g.terms()) r = r + c * (power(p0, f0, k.first) * power(p1, f1, k.second));
  return r;
}

FractionalIdeal coefficientIdeal(const NumberField& F, const GradedPoly& f) {
  if (f.isZero()) throw std::invalid_argument("coefficient ideal of the zero polynomial");
  std::vector<FieldElement> cs;
  for (const auto& [k, c] : f.terms()) cs.push_back(c);
  return FractionalIdeal::generatedBy(F, cs);
}

bool lemmaPolyCheck(const NumberField& F, const GradedPoly& f, std::span<const FieldElement> z) {
  if (z.size() != 2) throw std::invalid_argument("lemmaPolyCheck: two coordinates expected");
  FieldElement v = f.eval(z[0], z[1]);
  if (v.isZero()) return true;
  FractionalIdeal J = coefficientIdeal(F, f) * scalingIdealOfTuple(F, f.weights(), z).pow(f.degree());
  return J.contains(v);
}

// -------------------------------------------------------------- morphisms

namespace {

int compareCoeffSequences(const GradedPoly& a, const GradedPoly& b) {
  auto ia = a.terms().begin(), ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    int c = compareCanonical(ia->second, ib->second);
    if (c != 0) return c;
  }
  if (ia == a.terms().end() && ib == b.terms().end()) return 0;
  return ia == a.terms().end() ? -1 : 1;
}

}  // namespace

WPLMorphism makeMorphism(const NumberField& F, const Weights& w, const Weights& u, GradedPoly f0, GradedPoly f1) {
  if (w.size() != 2 || u.size() != 2) throw std::invalid_argument("morphisms of weighted projective lines only");
  if (f0.weights() != w || f1.weights() != w) throw std::invalid_argument("polynomials over the wrong weights");
  if (f0.isZero() && f1.isZero()) throw std::invalid_argument("both polynomials are zero");
  if (f0.degree() % u[0] != 0 || f1.degree() % u[1] != 0 || f0.degree() / u[0] != f1.degree() / u[1] ||
      f0.degree() <= 0)
    throw std::invalid_argument("no reduced degree");
  const int e = f0.degree() / u[0];
  if (f0.isZero() || f1.isZero()) throw std::invalid_argument("condition (ii) fails");
  UPoly g = UPoly::gcd(f0.dehomogenize(), f1.dehomogenize());
  if (g.degree() > 0 || (f0.atInfinity().isZero() && f1.atInfinity().isZero()))
    throw std::invalid_argument("condition (ii) fails");

  // Marked coefficient: the first monomial of f0. Reduce its prime
  // exponents mod u0, then pick the smallest unit multiple.
  FieldElement a = f0.terms().begin()->second;
  FieldElement c(F, 1);
  const FractionalIdeal aIdeal = FractionalIdeal::principal(F, a);
  for (const auto& [P, v] : aIdeal.factorization()) {
    long q = floorDiv(v, u[0]);
    if (q != 0) c *= P.generator.pow(-q);
  }
  FieldElement scaled = c.pow(u[0]) * a;
  FieldElement bestUnit(F, 1);
  FieldElement bestVal = scaled;
  for (const FieldElement& eta : units(F)) {
    FieldElement v = eta.pow(u[0]) * scaled;
    if (compareCanonical(v, bestVal) < 0) {
      bestVal = v;
      bestUnit = eta;
    }
  }
  c *= bestUnit;
  // Remaining freedom: roots of unity zeta with zeta^{u0} = 1.
  GradedPoly bestF1 = c.pow(u[1]) * f1;
  FieldElement bestC = c;
  for (const FieldElement& zeta : units(F)) {
    if (!(zeta.pow(u[0]) == FieldElement(F, 1))) continue;
    FieldElement cz = c * zeta;
    GradedPoly cand = cz.pow(u[1]) * f1;
    if (compareCoeffSequences(cand, bestF1) < 0) {
      bestF1 = std::move(cand);
      bestC = cz;
    }
  }
  WPLMorphism phi;
  phi.field_ = F;
  phi.w_ = w;
  phi.u_ = u;
  phi.f0_ = bestC.pow(u[0]) * f0;
  phi.f1_ = std::move(bestF1);
  phi.e_ = e;
  return phi;
}

bool isRepresentable(const WPLMorphism& phi) {
  const int e = phi.reducedDegree();
  return std::gcd(phi.sourceWeights()[0], e) == 1 && std::gcd(phi.sourceWeights()[1], e) == 1;
}

std::vector<FieldElement> applyCoords(const WPLMorphism& phi, std::span<const FieldElement> z) {
  if (z.size() != 2) throw std::invalid_argument("apply: two coordinates expected");
  return {phi.f0().eval(z[0], z[1]), phi.f1().eval(z[0], z[1])};
}

WeightedPoint apply(const WPLMorphism& phi, const WeightedPoint& p) {
  if (!(p.weights() == phi.sourceWeights())) throw std::invalid_argument("apply: point over the wrong weights");
  std::vector<FieldElement> y = applyCoords(phi, p.coords());
  return normalize(phi.field(), phi.targetWeights(), y);
}

// -------------------------------------------------------------- relations

namespace {

struct RelationShape {
  int i, delta, nu;
  int u0, u1, w0, wi;
  struct Unknown {
    int l, a, b;
  };
  // Unknowns for relation degree m, ordered by l then a.
  std::vector<Unknown> unknowns(int m) const {
    std::vector<Unknown> out;
    for (int l = 1; l <= m; ++l) {
      const int D = l * nu;
      for (int a = 0; a * u0 <= D; ++a)
        if ((D - a * u0) % u1 == 0) out.push_back({l, a, (D - a * u0) / u1});
    }
    return out;
  }
  // Number of evaluation points that determines a form of the identity's degree.
  int points(int m) const { return m * delta * wi / w0 + 1; }
};

// The identity dehomogenized at x1 = 1 and evaluated at t = 0, 1, 2, ...:
// sum gamma * f0(t)^a f1(t)^b * t_i^{(m-l) delta} = -t_i^{m delta}, with
// t_i = t for i = 0 and 1 for i = 1.
struct ModSystem {
  std::vector<std::vector<linalg::u64>> A;
  std::vector<linalg::u64> b;
};

ModSystem buildModSystem(const RelationShape& s, const std::vector<RelationShape::Unknown>& cols, int m,
                         const GradedPoly& f0, const GradedPoly& f1, linalg::u64 p) {
  using linalg::mulMod;
  const int N = s.points(m);
  UPoly g0 = f0.dehomogenize(), g1 = f1.dehomogenize();
  std::vector<linalg::u64> c0, c1;
  for (const auto& c : g0.coeffs()) c0.push_back(linalg::reduceRational(c.rationalPart(), p));
  for (const auto& c : g1.coeffs()) c1.push_back(linalg::reduceRational(c.rationalPart(), p));
  int amax = 0, bmax = 0;
  for (const auto& u : cols) {
    amax = std::max(amax, u.a);
    bmax = std::max(bmax, u.b);
  }
  ModSystem sys;
  sys.A.assign(N, std::vector<linalg::u64>(cols.size()));
  sys.b.assign(N, 0);
  const int shiftMax = m * s.delta;
  std::vector<linalg::u64> P0(amax + 1), P1(bmax + 1), PT(shiftMax + 1);
  for (int j = 0; j < N; ++j) {
    const linalg::u64 t = static_cast<linalg::u64>(j) % p;
    auto horner = [&](const std::vector<linalg::u64>& c) {
      linalg::u64 acc = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (mulMod(acc, t, p) + *it) % p;
      return acc;
    };
    const linalg::u64 v0 = horner(c0), v1 = horner(c1);
    P0[0] = P1[0] = PT[0] = 1;
    for (int k = 1; k <= amax; ++k) P0[k] = mulMod(P0[k - 1], v0, p);
    for (int k = 1; k <= bmax; ++k) P1[k] = mulMod(P1[k - 1], v1, p);
    const linalg::u64 ti = s.i == 0 ? t : 1;
    for (int k = 1; k <= shiftMax; ++k) PT[k] = mulMod(PT[k - 1], ti, p);
    for (std::size_t c = 0; c < cols.size(); ++c)
      sys.A[j][c] = mulMod(mulMod(P0[cols[c].a], P1[cols[c].b], p), PT[(m - cols[c].l) * s.delta], p);
    sys.b[j] = (p - PT[shiftMax]) % p;
  }
  return sys;
}

// Solvability of the degree-m system modulo p. certifiedUnsolvable is set
// when A has full column rank mod p and the system is inconsistent, which
// proves inconsistency over Q.
struct ModTest {
  bool solvable = false;
  bool certifiedUnsolvable = false;
  bool fullRank = false;
  std::vector<linalg::u64> solution;
};

ModTest testMod(const RelationShape& s, int m, const GradedPoly& f0, const GradedPoly& f1, linalg::u64 p) {
  auto cols = s.unknowns(m);
  ModSystem sys = buildModSystem(s, cols, m, f0, f1, p);
  linalg::ModResult r = linalg::solveMod(std::move(sys.A), std::move(sys.b), p);
  ModTest t;
  t.solvable = r.consistent;
  t.fullRank = r.rank == static_cast<int>(cols.size());
  t.certifiedUnsolvable = !r.consistent && t.fullRank;
  t.solution = std::move(r.solution);
  return t;
}

// Exact residual of a candidate solution, evaluated at enough points.
bool verifyByEvaluation(const RelationShape& s, int m, const std::vector<RelationShape::Unknown>& cols,
                        const std::vector<FieldElement>& gamma, const GradedPoly& f0, const GradedPoly& f1) {
  const int N = s.points(m);
  UPoly g0 = f0.dehomogenize(), g1 = f1.dehomogenize();
  for (int j = 0; j < N; ++j) {
    FieldElement t(static_cast<long>(j));
    FieldElement v0 = g0.eval(t), v1 = g1.eval(t);
    FieldElement ti = s.i == 0 ? t : FieldElement(1L);
    std::map<int, FieldElement> P0, P1;
    auto pw = [](std::map<int, FieldElement>& cache, const FieldElement& x, int k) -> const FieldElement& {
      auto it = cache.find(k);
      if (it != cache.end()) return it->second;
      return cache.emplace(k, x.pow(k)).first->second;
    };
    FieldElement acc = ti.pow(m * s.delta);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (gamma[c].isZero()) continue;
      acc += gamma[c] * pw(P0, v0, cols[c].a) * pw(P1, v1, cols[c].b) * ti.pow((m - cols[c].l) * s.delta);
    }
    if (!acc.isZero()) return false;
  }
  return true;
}

Integer coefficientDenominators(const GradedPoly& f) {
  Integer l = 1;
  for (const auto& [k, c] : f.terms()) {
    Integer d = c.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

std::vector<FieldElement> solveMultiModular(const RelationShape& s, int m, const GradedPoly& f0,
                                            const GradedPoly& f1, const Integer& avoid) {
  auto cols = s.unknowns(m);
  std::vector<linalg::u64> primes = linalg::largePrimes(4096, avoid);
  Integer M = 1;
  std::vector<Integer> R(cols.size(), 0);
  std::vector<Rational> previous;
  bool havePrevious = false;
  for (linalg::u64 p : primes) {
    ModTest t = testMod(s, m, f0, f1, p);
    if (!t.solvable || !t.fullRank) continue;  // unlucky prime
    Integer pz(static_cast<unsigned long>(p));
    // CRT: R <- R + M * ((r - R) / M mod p)
    Integer Minv;
    Integer Mmod = M % pz;
    mpz_invert(Minv.get_mpz_t(), Mmod.get_mpz_t(), pz.get_mpz_t());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      Integer diff = (Integer(static_cast<unsigned long>(t.solution[c])) - R[c]) % pz;
      if (diff < 0) diff += pz;
      Integer k = (diff * Minv) % pz;
      R[c] += M * k;
    }
    M *= pz;
    Integer bound;
    Integer half = M / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    std::vector<Rational> rec(cols.size());
    bool ok = true;
    for (std::size_t c = 0; c < cols.size() && ok; ++c) ok = rationalReconstruct(R[c], M, bound, rec[c]);
    if (!ok) {
      havePrevious = false;
      continue;
    }
    if (havePrevious && rec == previous) {
      std::vector<FieldElement> gamma;
      for (const Rational& q : rec) gamma.emplace_back(q);
      if (verifyByEvaluation(s, m, cols, gamma, f0, f1)) return gamma;
    }
    previous = std::move(rec);
    havePrevious = true;
  }
  throw std::runtime_error("relation reconstruction did not stabilise");
}

}  // namespace

IntegralRelation integralRelation(const WPLMorphism& phi, int i) {
  if (i != 0 && i != 1) throw std::invalid_argument("relation index must be 0 or 1");
  const Weights& w = phi.sourceWeights();
  const Weights& u = phi.targetWeights();
  const int e = phi.reducedDegree();
  const int g = std::gcd(w[i], e);
  RelationShape s{i, e / g, w[i] / g, u[0], u[1], w[0], w[i]};
  // [K(x0,x1) : K(f0,f1)] = e^2 u0 u1 / (w0 w1), and x_i has delta distinct
  // conjugates over K(f0, f1)(x_i^delta).
  const long rank = static_cast<long>(e) * e * u[0] * u[1] / (static_cast<long>(w[0]) * w[1]);
  const int mMax = static_cast<int>(std::max(1L, rank / s.delta));

  const GradedPoly& f0 = phi.f0();
  const GradedPoly& f1 = phi.f1();
  IntegralRelation rel;
  rel.index = i;
  rel.delta = s.delta;
  rel.nu = s.nu;
  std::vector<FieldElement> gamma;

  if (phi.f0().isRational() && phi.f1().isRational()) {
    Integer avoid = coefficientDenominators(f0) * coefficientDenominators(f1);
    std::vector<linalg::u64> primes = linalg::largePrimes(64, avoid, (linalg::u64{1} << 31) - (linalg::u64{1} << 20));
    std::size_t nextPrime = 0;
    auto prime = [&]() {
      if (nextPrime == primes.size()) throw std::runtime_error("relation search ran out of primes");
      return primes[nextPrime++];
    };
    // smallest solvable m by bisection; solvability is monotone in m
    int lo = 0, hi = mMax;  // lo unsolvable (or 0), hi solvable
    if (!testMod(s, hi, f0, f1, prime()).solvable) throw std::runtime_error("relation search exceeded cap");
    while (true) {
      while (hi - lo > 1) {
        int mid = (hi == mMax && hi - 1 > lo) ? hi - 1 : (lo + hi) / 2;
        ModTest t = testMod(s, mid, f0, f1, prime());
        if (t.solvable)
          hi = mid;
        else
          lo = mid;
      }
      // certify that hi - 1 is unsolvable over Q
      bool certified = lo == 0, refuted = false;
      for (int attempt = 0; !certified && !refuted && attempt < 8; ++attempt) {
        ModTest t = testMod(s, lo, f0, f1, prime());
        refuted = t.solvable;
        certified = t.certifiedUnsolvable;
      }
      if (certified) break;
      if (!refuted) throw std::runtime_error("could not certify minimality of the relation");
      hi = lo;
      lo = 0;
    }
    rel.m = hi;
    gamma = solveMultiModular(s, hi, f0, f1, avoid);
  } else {
    // exact elimination; for the small morphisms with irrational coefficients
    for (int m = 1;; ++m) {
      if (m > mMax) throw std::runtime_error("relation search exceeded cap");
      auto cols = s.unknowns(m);
      const int N = s.points(m);
      UPoly g0 = f0.dehomogenize(), g1 = f1.dehomogenize();
      std::vector<std::vector<FieldElement>> A(N, std::vector<FieldElement>(cols.size()));
      std::vector<FieldElement> b(N);
      for (int j = 0; j < N; ++j) {
        FieldElement t(static_cast<long>(j));
        FieldElement v0 = g0.eval(t), v1 = g1.eval(t);
        FieldElement ti = i == 0 ? t : FieldElement(1L);
        for (std::size_t c = 0; c < cols.size(); ++c)
          A[j][c] = v0.pow(cols[c].a) * v1.pow(cols[c].b) * ti.pow((m - cols[c].l) * s.delta);
        b[j] = -ti.pow(m * s.delta);
      }
      auto x = linalg::solveExact(std::move(A), std::move(b));
      if (x) {
        rel.m = m;
        gamma = std::move(*x);
        break;
      }
    }
  }

  auto cols = s.unknowns(rel.m);
  const NumberField& F = phi.field();
  for (int l = 1; l <= rel.m; ++l) rel.g.emplace_back(u, l * s.nu);
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (!gamma[c].isZero())
      rel.g[cols[c].l - 1] = rel.g[cols[c].l - 1] + GradedPoly::monomial(u, cols[c].a, cols[c].b, gamma[c]);
  std::vector<int> ws;
  for (int l = 1; l <= rel.m; ++l) ws.push_back(l);
  for (const GradedPoly& gl : rel.g) {
    if (gl.isZero())
      rel.c.emplace_back(std::nullopt);
    else
      rel.c.emplace_back(coefficientIdeal(F, gl));
  }
  rel.dIdeal = scalingIdealOfIdeals(F, Weights(ws), rel.c);
  return rel;
}

GradedPoly relationResidual(const WPLMorphism& phi, const IntegralRelation& rel) {
  const Weights& w = phi.sourceWeights();
  auto xi = [&](int k) {
    return rel.index == 0 ? GradedPoly::monomial(w, k, 0, FieldElement(1L))
                          : GradedPoly::monomial(w, 0, k, FieldElement(1L));
  };
  GradedPoly r = xi(rel.m * rel.delta);
  for (int l = 1; l <= rel.m; ++l) {
    const GradedPoly& gl = rel.g[l - 1];
    if (gl.isZero()) continue;
    r = r + compose(gl, phi.f0(), phi.f1()) * xi((rel.m - l) * rel.delta);
  }
  return r;
}

// ----------------------------------------------------------- containments

ComparisonData comparisonData(const WPLMorphism& phi) {
  const NumberField& F = phi.field();
  ComparisonData d{integralRelation(phi, 0), integralRelation(phi, 1), FractionalIdeal(F), FractionalIdeal(F)};
  std::vector<std::optional<FractionalIdeal>> a{coefficientIdeal(F, phi.f0()), coefficientIdeal(F, phi.f1())};
  d.upperIdeal = scalingIdealOfIdeals(F, phi.targetWeights(), a);
  std::vector<std::optional<FractionalIdeal>> dd{d.rel0.dIdeal, d.rel1.dIdeal};
  d.lowerIdeal = scalingIdealOfIdeals(F, Weights{d.rel0.nu, d.rel1.nu}, dd);
  return d;
}

bool upperContainmentCheck(const WPLMorphism& phi, const ComparisonData& data, std::span<const FieldElement> z) {
  const NumberField& F = phi.field();
  std::vector<FieldElement> y = applyCoords(phi, z);
  FractionalIdeal lhs = scalingIdealOfTuple(F, phi.targetWeights(), y);
  FractionalIdeal rhs = data.upperIdeal * scalingIdealOfTuple(F, phi.sourceWeights(), z).pow(phi.reducedDegree());
  return lhs.isSubsetOf(rhs);
}

bool upperContainmentCheck(const WPLMorphism& phi, std::span<const FieldElement> z) {
  return upperContainmentCheck(phi, comparisonData(phi), z);
}

bool lowerContainmentCheck(const WPLMorphism& phi, const ComparisonData& data, std::span<const FieldElement> z) {
  const NumberField& F = phi.field();
  std::vector<FieldElement> zd{z[0].pow(data.rel0.delta), z[1].pow(data.rel1.delta)};
  FractionalIdeal lhs = scalingIdealOfTuple(F, Weights{data.rel0.nu, data.rel1.nu}, zd);
  std::vector<FieldElement> y = applyCoords(phi, z);
  FractionalIdeal rhs = data.lowerIdeal * scalingIdealOfTuple(F, phi.targetWeights(), y);
  return lhs.isSubsetOf(rhs);
}

bool lowerContainmentCheck(const WPLMorphism& phi, std::span<const FieldElement> z) {
  return lowerContainmentCheck(phi, comparisonData(phi), z);
}

ContainmentTally containmentTally(const WPLMorphism& phi, const Rational& T, unsigned threads) {
  ComparisonData data = comparisonData(phi);
  std::vector<ContainmentTally> per(std::max(1u, threads));
  forEachCanonical(phi.field(), phi.sourceWeights(), T, threads, [&](unsigned wk, std::span<const FieldElement> z) {
    ++per[wk].points;
    if (!upperContainmentCheck(phi, data, z)) ++per[wk].upperFailures;
    if (!lowerContainmentCheck(phi, data, z)) ++per[wk].lowerFailures;
  });
  ContainmentTally all;
  for (const auto& p : per) {
    all.points += p.points;
    all.upperFailures += p.upperFailures;
    all.lowerFailures += p.lowerFailures;
  }
  return all;
}

// ------------------------------------------------------------ size ratios

QvRange qvGrid(const WPLMorphism& phi, int gridN) {
  if (gridN < 2) throw std::invalid_argument("qvGrid: gridN too small");
  const Weights& u = phi.targetWeights();
  const bool complexPlace = !phi.field().isRationals();
  QvRange r{std::numeric_limits<double>::infinity(), 0};
  auto visit = [&](std::complex<long double> x0, std::complex<long double> x1) {
    long double best = 0;
    const GradedPoly* fs[2] = {&phi.f0(), &phi.f1()};
    for (int j = 0; j < 2; ++j) {
      long double a = std::abs(fs[j]->evalComplex(x0, x1));
      if (complexPlace) a *= a;
      if (a > 0) best = std::max(best, std::pow(a, 1.0L / u[j]));
    }
    r.min = std::min(r.min, static_cast<double>(best));
    r.max = std::max(r.max, static_cast<double>(best));
  };
  if (!complexPlace) {
    for (int s : {1, -1}) {
      for (int k = 0; k < gridN; ++k) {
        long double t = -1.0L + 2.0L * k / (gridN - 1);
        visit(s, t);
        visit(t, s);
      }
    }
  } else {
    const int rings = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(gridN))));
    const int spokes = std::max(4, gridN / rings);
    for (int a = 0; a < rings; ++a) {
      long double rad = static_cast<long double>(a) / (rings - 1);
      for (int b = 0; b < spokes; ++b) {
        long double th = 2.0L * std::numbers::pi_v<long double> * b / spokes;
        std::complex<long double> z = std::polar(rad, th);
        visit(1.0L, z);
        visit(z, 1.0L);
      }
    }
  }
  return r;
}

SizeComparison sizeComparisonReport(const WPLMorphism& phi, const Rational& T, int gridN) {
  if (gridN < 100) throw std::invalid_argument("sizeComparisonReport: gridN must be at least 100");
  const NumberField& F = phi.field();
  const int e = phi.reducedDegree();
  SizeComparison rep;
  rep.minRatio = std::numeric_limits<double>::infinity();
  forEachCanonical(F, phi.sourceWeights(), T, 1, [&](unsigned, std::span<const FieldElement> z) {
    WeightedPoint img = normalize(F, phi.targetWeights(), applyCoords(phi, z));
    double logRatio = std::log(size(img)) - e * std::log(archSize(F, phi.sourceWeights(), z));
    double ratio = std::exp(logRatio);
    rep.minRatio = std::min(rep.minRatio, ratio);
    rep.maxRatio = std::max(rep.maxRatio, ratio);
    ++rep.points;
  });
  QvRange q = qvGrid(phi, gridN);
  rep.qvGridMin = q.min;
  rep.qvGridMax = q.max;
  ComparisonData data = comparisonData(phi);
  rep.lowerBound = data.lowerIdeal.norm().get_d() * q.min / 1.1;
  rep.upperBound = q.max * 1.1 / data.upperIdeal.norm().get_d();
  const Weights& w = phi.sourceWeights();
  const bool hypothesis = e == 1 || (w[0] == 1 && w[1] == 1);
  rep.twoSided = hypothesis && rep.points > 0 && rep.minRatio >= rep.lowerBound && rep.maxRatio <= rep.upperBound;
  return rep;
}

// ------------------------------------------------------------------ JSON

namespace {

nlohmann::json polyToJson(const GradedPoly& f) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& [k, c] : f.terms()) a.push_back({k.first, k.second, c.toString()});
  return a;
}

GradedPoly polyFromJson(const NumberField& F, const Weights& w, const nlohmann::json& a, int degree) {
  std::vector<std::tuple<int, int, FieldElement>> terms;
  for (const auto& t : a) {
    if (!t.is_array() || t.size() != 3) throw std::invalid_argument("polynomial term must be [k0, k1, \"c\"]");
    std::string cs = t[2].is_string() ? t[2].get<std::string>() : t[2].dump();
    terms.emplace_back(t[0].get<int>(), t[1].get<int>(), FieldElement::parse(F, cs));
  }
  return GradedPoly::fromTerms(w, terms, degree);
}

}  // namespace

std::string morphismToJson(const WPLMorphism& phi) {
  nlohmann::json j;
  j["field"] = phi.field().name();
  j["source_weights"] = phi.sourceWeights().values();
  j["target_weights"] = phi.targetWeights().values();
  j["f0"] = polyToJson(phi.f0());
  j["f1"] = polyToJson(phi.f1());
  return j.dump();
}

WPLMorphism morphismFromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("morphism JSON: ") + ex.what());
  }
  try {
    NumberField F = NumberField::parse(j.value("field", std::string("Q")));
    Weights w(j.at("source_weights").get<std::vector<int>>());
    Weights u(j.at("target_weights").get<std::vector<int>>());
    if (w.size() != 2 || u.size() != 2) throw std::invalid_argument("weights must have two entries");
    // degrees follow from the first term; the reduced degree is checked by makeMorphism
    auto degreeOf = [&](const nlohmann::json& a) {
      if (!a.is_array() || a.empty()) throw std::invalid_argument("polynomial must have terms");
      return a[0][0].get<int>() * w[0] + a[0][1].get<int>() * w[1];
    };
    GradedPoly f0 = polyFromJson(F, w, j.at("f0"), degreeOf(j.at("f0")));
    GradedPoly f1 = polyFromJson(F, w, j.at("f1"), degreeOf(j.at("f1")));
    return makeMorphism(F, w, u, std::move(f0), std::move(f1));
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("morphism JSON: ") + ex.what());
  }
}

}  // namespace wpcount
