#include "wpcount/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wpcount {

// ---------------------------------------------------------------- fields

NumberField NumberField::imaginaryQuadratic(int d) {
  switch (d) {
    case -1: case -2: case -3: case -7: case -11:
      return NumberField(d);
    default:
      throw std::invalid_argument("unsupported field: Q(sqrt " + std::to_string(d) + ")");
  }
}

NumberField NumberField::parse(std::string_view spec) {
  if (spec == "Q") return rationals();
  if (spec == "Qi") return imaginaryQuadratic(-1);
  constexpr std::string_view prefix = "Qsqrt";
  if (spec.substr(0, prefix.size()) == prefix) {
    std::string rest(spec.substr(prefix.size()));
    std::size_t used = 0;
    int d = 0;
    try {
      d = std::stoi(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == rest.size() && used > 0) return imaginaryQuadratic(d);
  }
  throw std::invalid_argument("unknown field spec '" + std::string(spec) + "'");
}

long NumberField::discriminant() const {
  if (d_ == 0) return 1;
  return halfIntegralBasis() ? d_ : 4L * d_;
}

int NumberField::rootsOfUnity() const {
  if (d_ == -1) return 4;
  if (d_ == -3) return 6;
  return 2;
}

std::string NumberField::name() const {
  if (d_ == 0) return "Q";
  if (d_ == -1) return "Qi";
  return "Qsqrt" + std::to_string(d_);
}

// -------------------------------------------------------------- elements

FieldElement::FieldElement(const NumberField& F, const Rational& a, const Rational& b)
    : d_(F.d()), a_(a), b_(b) {
  if (d_ == 0 && b_ != 0) throw std::invalid_argument("sqrt part in Q");
}

FieldElement FieldElement::fromIntegralBasis(const NumberField& F, const Integer& m, const Integer& n) {
  if (F.halfIntegralBasis()) {
    Rational half(n, 2);
    half.canonicalize();
    return FieldElement(F, Rational(m) + half, half);
  }
  return FieldElement(F, Rational(m), Rational(n));
}

FieldElement FieldElement::parse(const NumberField& F, std::string_view text) {
  auto parseRational = [](std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '+'; }), s.end());
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("bad rational '" + s + "'");
    return q;
  };
  std::size_t comma = text.find(',');
  if (comma == std::string_view::npos) {
    FieldElement x(parseRational(std::string(text)));
    x.d_ = F.d();
    return x;
  }
  Rational a = parseRational(std::string(text.substr(0, comma)));
  Rational b = parseRational(std::string(text.substr(comma + 1)));
  if (F.isRationals() && b != 0) throw std::invalid_argument("quadratic element over Q");
  return FieldElement(F, a, b);
}

NumberField FieldElement::field() const {
  return d_ == 0 ? NumberField::rationals() : NumberField::imaginaryQuadratic(d_);
}

int FieldElement::unify(const FieldElement& o) const {
  if (d_ == o.d_ || o.d_ == 0) return d_;
  if (d_ == 0) return o.d_;
  if (o.b_ == 0) return d_;
  if (b_ == 0) return o.d_;
  throw std::invalid_argument("field mismatch in arithmetic");
}

std::pair<Rational, Rational> FieldElement::basisCoordinates() const {
  if (d_ != 0 && field().halfIntegralBasis()) {
    Rational c1 = 2 * b_;
    return {a_ - b_, c1};
  }
  return {a_, b_};
}

bool FieldElement::isIntegral() const {
  auto [c0, c1] = basisCoordinates();
  return c0.get_den() == 1 && c1.get_den() == 1;
}

Integer FieldElement::denominator() const {
  auto [c0, c1] = basisCoordinates();
  Integer l;
  mpz_lcm(l.get_mpz_t(), c0.get_den_mpz_t(), c1.get_den_mpz_t());
  return l;
}

FieldElement FieldElement::conjugate() const {
  FieldElement r = *this;
  r.b_ = -b_;
  return r;
}

Rational FieldElement::norm() const {
  if (b_ == 0) return d_ == 0 ? a_ : a_ * a_;
  return a_ * a_ - Rational(d_) * b_ * b_;
}

FieldElement FieldElement::inverse() const {
  if (isZero()) throw std::domain_error("division by zero");
  if (b_ == 0) {
    FieldElement r = *this;
    r.a_ = 1 / a_;
    return r;
  }
  Rational n = a_ * a_ - Rational(d_) * b_ * b_;
  FieldElement r = *this;
  r.a_ = a_ / n;
  r.b_ = -b_ / n;
  return r;
}

FieldElement FieldElement::pow(long e) const {
  FieldElement base = e < 0 ? inverse() : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  FieldElement result(1L);
  result.d_ = d_;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

std::complex<long double> FieldElement::embed() const {
  long double re = static_cast<long double>(a_.get_d());
  if (b_ == 0) return {re, 0.0L};
  long double im = static_cast<long double>(b_.get_d()) * std::sqrt(static_cast<long double>(-d_));
  return {re, im};
}

Rational FieldElement::placeAbs(const NumberField& F) const {
  if (F.isRationals()) return abs(a_);
  return a_ * a_ - Rational(F.d()) * b_ * b_;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  d_ = unify(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  d_ = unify(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  d_ = unify(o);
  if (b_ == 0 && o.b_ == 0) {
    a_ *= o.a_;
    return *this;
  }
  Rational na = a_ * o.a_ + Rational(d_) * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  if (o.isZero()) throw std::domain_error("division by zero");
  if (o.b_ == 0) {
    d_ = unify(o);
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string FieldElement::toString() const {
  if (b_ == 0) return a_.get_str();
  return a_.get_str() + "," + b_.get_str();
}

int compareCanonical(const Rational& x, const Rational& y) {
  auto cls = [](const Rational& q) { return q == 0 ? 0 : (q > 0 ? 1 : 2); };
  int cx = cls(x), cy = cls(y);
  if (cx != cy) return cx < cy ? -1 : 1;
  int c = cmp(abs(x), abs(y));
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int compareCanonical(const FieldElement& x, const FieldElement& y) {
  int c = compareCanonical(x.rationalPart(), y.rationalPart());
  if (c != 0) return c;
  return compareCanonical(x.sqrtPart(), y.sqrtPart());
}

// ---------------------------------------------------------------- primes

int PrimeIdeal::compare(const PrimeIdeal& o) const {
  int c = cmp(p, o.p);
  if (c != 0) return c < 0 ? -1 : 1;
  return compareCanonical(generator, o.generator);
}

std::string PrimeIdeal::toString() const {
  return "(" + generator.toString() + ")";
}

namespace {

FieldElement canonicalAssociate(const NumberField& F, const FieldElement& x) {
  FieldElement best = x;
  for (const FieldElement& u : units(F)) {
    FieldElement c = u * x;
    if (compareCanonical(c, best) < 0) best = c;
  }
  return best;
}

// Tonelli-Shanks; a must be a square mod the odd prime p.
Integer sqrtMod(Integer a, const Integer& p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  Integer q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  Integer z = 2;
  while (kronecker(z, p) != -1) ++z;
  auto powm = [&](const Integer& b, const Integer& e) {
    Integer r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  };
  Integer c = powm(z, q), r = powm(a, (q + 1) / 2), t = powm(a, q);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Integer t2 = t;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
    }
    Integer b = c;
    for (unsigned long k = 0; k + 1 < m - i; ++k) b = b * b % p;
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return r;
}

// A generator of a prime above p (p not inert): the prime is (p, theta - r)
// for theta the integral generator and r a root of its minimal polynomial.
FieldElement elementOfNorm(const NumberField& F, const Integer& p) {
  const long d = F.d();
  const Integer c = F.halfIntegralBasis() ? Integer((1 - d) / 4) : Integer(-d);  // theta^2 - b theta + c = 0
  const int b = F.halfIntegralBasis() ? 1 : 0;
  Integer r = -1;
  if (p == 2) {
    for (long t = 0; t < 2 && r < 0; ++t)
      if ((t * t - b * t + c) % 2 == 0) r = t;
  } else {
    Integer disc = Integer(b * b) - 4 * c;
    Integer sq = sqrtMod(disc, p);
    Integer inv2 = (p + 1) / 2;
    r = (Integer(b) + sq) * inv2 % p;
  }
  if (r < 0) throw std::logic_error("no element of norm " + p.get_str());
  FieldElement theta = FieldElement::fromIntegralBasis(F, 0, 1);
  FieldElement pi = integralGcd(F, FieldElement(F, Rational(p)), theta - FieldElement(F, Rational(r)));
  if (abs(pi.norm()) != Rational(p)) throw std::logic_error("no element of norm " + p.get_str());
  return pi;
}

// v_pi(alpha) for nonzero integral alpha and a prime element pi of norm p.
int integralValuationAt(FieldElement alpha, const FieldElement& piConj, const Integer& p) {
  int v = 0;
  const Rational pq(p);
  while (true) {
    FieldElement q = alpha * piConj;
    q /= FieldElement(pq);
    if (!q.isIntegral()) return v;
    alpha = std::move(q);
    ++v;
  }
}

std::set<Integer> rationalPrimesOf(const Integer& n) {
  std::set<Integer> out;
  if (n == 0) return out;
  for (auto& [p, e] : factorInteger(n)) out.insert(p);
  return out;
}

// Rational primes p such that some prime above p can have nonzero valuation
// at min_i v_P(x_i): primes dividing every numerator norm, and primes
// dividing some denominator.
std::set<Integer> candidatePrimes(std::span<const FieldElement> xs) {
  std::set<Integer> out;
  Integer g = 0;
  for (const FieldElement& x : xs) {
    if (x.isZero()) continue;
    Integer m = x.denominator();
    for (const Integer& p : rationalPrimesOf(m)) out.insert(p);
    FieldElement alpha = x * FieldElement(Rational(m));
    Rational n = alpha.norm();
    Integer ni = abs(n.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ni.get_mpz_t());
  }
  if (g > 1)
    for (const Integer& p : rationalPrimesOf(g)) out.insert(p);
  return out;
}

}  // namespace

PrimeIdeal rationalPrime(long p) {
  return PrimeIdeal{NumberField::rationals(), Integer(p), FieldElement(p), 1, 1};
}

std::vector<PrimeIdeal> primesAbove(const NumberField& F, const Integer& p) {
  if (F.isRationals()) return {PrimeIdeal{F, p, FieldElement(Rational(p)), 1, 1}};
  int k = kronecker(Integer(F.discriminant()), p);
  if (k == -1) return {PrimeIdeal{F, p, FieldElement(F, Rational(p)), 2, 1}};
  FieldElement pi = elementOfNorm(F, p);
  if (k == 0) return {PrimeIdeal{F, p, canonicalAssociate(F, pi), 1, 2}};
  PrimeIdeal a{F, p, canonicalAssociate(F, pi), 1, 1};
  PrimeIdeal b{F, p, canonicalAssociate(F, pi.conjugate()), 1, 1};
  if (b < a) std::swap(a, b);
  return {a, b};
}

int valuation(const FieldElement& x, const PrimeIdeal& P) {
  if (x.isZero()) throw std::invalid_argument("valuation of zero undefined");
  if (x.isRational()) {
    // v_P(x) = e(P) * v_p(x)
    Integer n = x.rationalPart().get_num(), dd = x.rationalPart().get_den();
    int v = static_cast<int>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), P.p.get_mpz_t())) -
            static_cast<int>(mpz_remove(dd.get_mpz_t(), dd.get_mpz_t(), P.p.get_mpz_t()));
    return v * P.ramification;
  }
  if (P.residueDegree == 2) {
    // P = pO_F, so v_P is the minimum p-adic valuation of the basis coordinates.
    auto [c0, c1] = x.basisCoordinates();
    int v = std::numeric_limits<int>::max();
    for (const Rational* c : {&c0, &c1}) {
      if (*c == 0) continue;
      Integer n = c->get_num(), dd = c->get_den();
      int vc = static_cast<int>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), P.p.get_mpz_t())) -
               static_cast<int>(mpz_remove(dd.get_mpz_t(), dd.get_mpz_t(), P.p.get_mpz_t()));
      v = std::min(v, vc);
    }
    return v;
  }
  Integer m = x.denominator();
  FieldElement alpha = x * FieldElement(Rational(m));
  int vm = 0;
  if (m != 1) {
    Integer mm = m;
    vm = static_cast<int>(mpz_remove(mm.get_mpz_t(), mm.get_mpz_t(), P.p.get_mpz_t())) * P.ramification;
  }
  return integralValuationAt(alpha, P.generator.conjugate(), P.p) - vm;
}

std::vector<PrimeIdeal> primeSupport(const NumberField& F, const FieldElement& x) {
  if (x.isZero()) throw std::invalid_argument("valuation of zero undefined");
  std::vector<PrimeIdeal> out;
  Integer m = x.denominator();
  FieldElement alpha = x * FieldElement(Rational(m));
  std::set<Integer> ps = rationalPrimesOf(m);
  for (const Integer& p : rationalPrimesOf(abs(alpha.norm().get_num()))) ps.insert(p);
  for (const Integer& p : ps)
    for (const PrimeIdeal& P : primesAbove(F, p))
      if (valuation(x, P) != 0) out.push_back(P);
  return out;
}

// ---------------------------------------------------------------- ideals

void FractionalIdeal::normalizeMap() {
  for (auto it = exps_.begin(); it != exps_.end();) {
    if (it->second == 0)
      it = exps_.erase(it);
    else
      ++it;
  }
}

FractionalIdeal FractionalIdeal::fromFactorization(const NumberField& F, std::map<PrimeIdeal, int> f) {
  FractionalIdeal I(F);
  I.exps_ = std::move(f);
  I.normalizeMap();
  return I;
}

FractionalIdeal FractionalIdeal::principal(const NumberField& F, const FieldElement& x) {
  if (x.isZero()) throw std::invalid_argument("principal ideal of zero");
  FractionalIdeal I(F);
  for (const PrimeIdeal& P : primeSupport(F, x)) I.exps_[P] = wpcount::valuation(x, P);
  return I;
}

FractionalIdeal FractionalIdeal::generatedBy(const NumberField& F, std::span<const FieldElement> xs) {
  if (std::all_of(xs.begin(), xs.end(), [](const FieldElement& x) { return x.isZero(); }))
    throw std::invalid_argument("ideal generated by zero elements");
  FractionalIdeal I(F);
  for (const Integer& p : candidatePrimes(xs)) {
    for (const PrimeIdeal& P : primesAbove(F, p)) {
      int v = std::numeric_limits<int>::max();
      for (const FieldElement& x : xs)
        if (!x.isZero()) v = std::min(v, wpcount::valuation(x, P));
      if (v != 0) I.exps_[P] = v;
    }
  }
  return I;
}

int FractionalIdeal::valuation(const PrimeIdeal& P) const {
  auto it = exps_.find(P);
  return it == exps_.end() ? 0 : it->second;
}

bool FractionalIdeal::isIntegral() const {
  return std::all_of(exps_.begin(), exps_.end(), [](const auto& kv) { return kv.second >= 0; });
}

Rational FractionalIdeal::norm() const {
  Rational n(1);
  for (const auto& [P, e] : exps_) {
    Integer pf;
    mpz_pow_ui(pf.get_mpz_t(), P.p.get_mpz_t(), static_cast<unsigned long>(P.residueDegree));
    n *= rationalPow(Rational(pf), e);
  }
  return n;
}

FieldElement FractionalIdeal::generator() const {
  FieldElement g(1L);
  for (const auto& [P, e] : exps_) g *= P.generator.pow(e);
  return g;
}

FractionalIdeal FractionalIdeal::inverse() const {
  FractionalIdeal I = *this;
  for (auto& kv : I.exps_) kv.second = -kv.second;
  return I;
}

FractionalIdeal FractionalIdeal::pow(int k) const {
  FractionalIdeal I = *this;
  for (auto& kv : I.exps_) kv.second *= k;
  I.normalizeMap();
  return I;
}

FractionalIdeal operator*(const FractionalIdeal& a, const FractionalIdeal& b) {
  FractionalIdeal I = a;
  for (const auto& [P, e] : b.exps_) I.exps_[P] += e;
  I.normalizeMap();
  return I;
}

bool FractionalIdeal::contains(const FieldElement& x) const {
  if (x.isZero()) return true;
  for (const auto& [P, e] : exps_)
    if (wpcount::valuation(x, P) < e) return false;
  Integer m = x.denominator();
  if (m == 1) return true;
  for (const Integer& p : rationalPrimesOf(m))
    for (const PrimeIdeal& P : primesAbove(field_, p))
      if (wpcount::valuation(x, P) < valuation(P)) return false;
  return true;
}

bool FractionalIdeal::isSubsetOf(const FractionalIdeal& other) const {
  for (const auto& [P, e] : exps_)
    if (e < other.valuation(P)) return false;
  for (const auto& [P, e] : other.exps_)
    if (valuation(P) < e) return false;
  return true;
}

std::string FractionalIdeal::toString() const {
  if (exps_.empty()) return "(1)";
  std::ostringstream os;
  bool first = true;
  for (const auto& [P, e] : exps_) {
    if (!first) os << "*";
    first = false;
    os << P.toString();
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

// ------------------------------------------------------- scaling ideals

FractionalIdeal scalingIdealOfTuple(const NumberField& F, const Weights& w,
                                    std::span<const FieldElement> x) {
  if (x.size() != w.size()) throw std::invalid_argument("scaling ideal: length mismatch");
  if (std::all_of(x.begin(), x.end(), [](const FieldElement& v) { return v.isZero(); }))
    throw std::invalid_argument("scaling ideal of the zero tuple");
  std::map<PrimeIdeal, int> exps;
  for (const Integer& p : candidatePrimes(x)) {
    for (const PrimeIdeal& P : primesAbove(F, p)) {
      long v = std::numeric_limits<long>::max();
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].isZero()) continue;
        v = std::min(v, floorDiv(valuation(x[i], P), w[i]));
      }
      if (v != 0) exps[P] = static_cast<int>(v);
    }
  }
  return FractionalIdeal::fromFactorization(F, std::move(exps));
}

FractionalIdeal scalingIdealOfIdeals(const NumberField& F, const Weights& w,
                                     std::span<const std::optional<FractionalIdeal>> b) {
  if (b.size() != w.size()) throw std::invalid_argument("scaling ideal: length mismatch");
  if (std::none_of(b.begin(), b.end(), [](const auto& v) { return v.has_value(); }))
    throw std::invalid_argument("scaling ideal of the zero tuple");
  std::set<PrimeIdeal> support;
  for (const auto& bi : b)
    if (bi)
      for (const auto& [P, e] : bi->factorization()) support.insert(P);
  std::map<PrimeIdeal, int> exps;
  for (const PrimeIdeal& P : support) {
    long v = std::numeric_limits<long>::max();
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i]) v = std::min(v, floorDiv(b[i]->valuation(P), w[i]));
    if (v != 0) exps[P] = static_cast<int>(v);
  }
  return FractionalIdeal::fromFactorization(F, std::move(exps));
}

double archSize(const NumberField& F, const Weights& w, std::span<const FieldElement> x) {
  if (x.size() != w.size()) throw std::invalid_argument("archSize: length mismatch");
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].isZero()) continue;
    any = true;
    best = std::max(best, logRational(x[i].placeAbs(F)) / w[i]);
  }
  if (!any) throw std::invalid_argument("archSize of the zero tuple");
  return std::exp(best);
}

// ----------------------------------------------------------------- zeta

double hurwitzZeta(double s, double a, double relTol) {
  // Euler-Maclaurin: head sum, integral tail, then Bernoulli corrections
  // until they drop below the requested tolerance.
  static constexpr double kBernoulli[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66,
                                          -691.0 / 2730, 7.0 / 6, -3617.0 / 510, 43867.0 / 798,
                                          -174611.0 / 330};
  const int N = 24;
  double sum = 0.0;
  for (int k = 0; k < N; ++k) sum += std::pow(k + a, -s);
  const double x = N + a;
  sum += std::pow(x, 1 - s) / (s - 1) + 0.5 * std::pow(x, -s);
  double rising = s;       // s (s+1) ... (s+2j-2)
  double fact = 2.0;       // (2j)!
  double xpow = std::pow(x, -s - 1);
  for (int j = 1; j <= 10; ++j) {
    double term = kBernoulli[j - 1] / fact * rising * xpow;
    sum += term;
    if (std::abs(term) < relTol * std::abs(sum) * 1e-3) break;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= (2.0 * j + 1) * (2.0 * j + 2);
    xpow /= x * x;
  }
  return sum;
}

double dedekindZeta(const NumberField& F, int s, double relTol) {
  if (s <= 1) throw std::domain_error("pole or divergent");
  double z = hurwitzZeta(s, 1.0, relTol);
  if (F.isRationals()) return z;
  const long D = F.discriminant();
  const long q = -D;
  double L = 0.0;
  for (long a = 1; a <= q; ++a) {
    int chi = kronecker(Integer(D), Integer(a));
    if (chi == 0) continue;
    L += chi * hurwitzZeta(s, static_cast<double>(a) / q, relTol);
  }
  L *= std::pow(static_cast<double>(q), -s);
  return z * L;
}

// ---------------------------------------------------------------- units

std::vector<FieldElement> units(const NumberField& F) {
  switch (F.d()) {
    case 0:
      return {FieldElement(1L), FieldElement(-1L)};
    case -1:
      return {FieldElement(F, 1), FieldElement(F, 0, 1), FieldElement(F, -1), FieldElement(F, 0, -1)};
    case -3: {
      Rational h(1, 2);
      return {FieldElement(F, 1),      FieldElement(F, h, h),  FieldElement(F, -h, h),
              FieldElement(F, -1),     FieldElement(F, -h, -h), FieldElement(F, h, -h)};
    }
    default:
      return {FieldElement(F, 1), FieldElement(F, -1)};
  }
}

FieldElement integralGcd(const NumberField& F, FieldElement a, FieldElement b) {
  while (!b.isZero()) {
    FieldElement q = a / b;
    auto [c0, c1] = q.basisCoordinates();
    Integer r0 = floorRational(c0), r1 = floorRational(c1);
    FieldElement best;
    Rational bestNorm = -1;
    const int jLo = F.isRationals() ? 0 : -1, jHi = F.isRationals() ? 0 : 2;
    for (int i = -1; i <= 2; ++i) {
      for (int j = jLo; j <= jHi; ++j) {
        FieldElement cand = FieldElement::fromIntegralBasis(F, r0 + i, r1 + j);
        Rational n = abs((q - cand).norm());
        if (bestNorm < 0 || n < bestNorm) {
          bestNorm = n;
          best = cand;
        }
      }
    }
    FieldElement r = a - best * b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::optional<FieldElement> sqrtInField(const NumberField& F, const FieldElement& x) {
  if (x.isZero()) return FieldElement(F, 0);
  Rational root;
  if (F.isRationals()) {
    if (rationalSqrt(x.rationalPart(), root)) return FieldElement(root);
    return std::nullopt;
  }
  const Rational A = x.rationalPart(), B = x.sqrtPart();
  const Rational d(F.d());
  std::vector<FieldElement> cands;
  if (B == 0) {
    if (rationalSqrt(A, root)) cands.emplace_back(F, root, 0);
    if (rationalSqrt(A / d, root)) cands.emplace_back(F, 0, root);
  } else {
    Rational s;
    if (rationalSqrt(A * A - d * B * B, s)) {
      for (const Rational& sv : {s, Rational(-s)}) {
        Rational a2 = (A + sv) / 2;
        Rational a;
        if (a2 != 0 && rationalSqrt(a2, a)) cands.emplace_back(F, a, B / (2 * a));
      }
    }
  }
  for (const FieldElement& c : cands)
    if (c * c == x) return c;
  return std::nullopt;
}

}  // namespace wpcount
