#include "wpcount/upoly.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace wpcount {

void UPoly::trim() {
  while (!c_.empty() && c_.back().isZero()) c_.pop_back();
}

bool UPoly::isRational() const {
  return std::all_of(c_.begin(), c_.end(), [](const FieldElement& a) { return a.isRational(); });
}

FieldElement UPoly::eval(const FieldElement& t) const {
  FieldElement acc(0L);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<FieldElement> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * FieldElement(static_cast<long>(i)));
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (isZero()) return *this;
  FieldElement inv = leading().inverse();
  return inv * *this;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<FieldElement> r(std::max(a.c_.size(), b.c_.size()), FieldElement(0L));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<FieldElement> r(std::max(a.c_.size(), b.c_.size()), FieldElement(0L));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
  return UPoly(std::move(r));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.isZero() || b.isZero()) return UPoly();
  std::vector<FieldElement> r(a.c_.size() + b.c_.size() - 1, FieldElement(0L));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].isZero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly operator*(const FieldElement& s, const UPoly& a) {
  std::vector<FieldElement> r = a.c_;
  for (auto& x : r) x *= s;
  return UPoly(std::move(r));
}

UPoly UPoly::pow(unsigned k) const {
  UPoly result = constant(FieldElement(1L)), base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.isZero()) throw std::domain_error("polynomial division by zero");
  std::vector<FieldElement> rem = a.c_;
  int db = b.degree();
  std::vector<FieldElement> quo(std::max(0, a.degree() - db + 1), FieldElement(0L));
  FieldElement inv = b.leading().inverse();
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i].isZero()) continue;
    FieldElement f = rem[i] * inv;
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
  }
  q = UPoly(std::move(quo));
  r = UPoly(std::move(rem));
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.isZero()) {
    UPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

namespace {

using ZPoly = std::vector<Integer>;

ZPoly primitiveIntegerPart(const UPoly& f) {
  Integer den = 1;
  for (const FieldElement& a : f.coeffs()) {
    if (!a.isRational()) throw std::invalid_argument("rationalRoots: non-rational coefficient");
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.rationalPart().get_den_mpz_t());
  }
  ZPoly z;
  Integer content = 0;
  for (const FieldElement& a : f.coeffs()) {
    Rational v = a.rationalPart() * Rational(den);
    z.push_back(v.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.back().get_mpz_t());
  }
  if (content > 1)
    for (auto& c : z) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  return z;
}

Integer evalMod(const ZPoly& f, const Integer& x, const Integer& M) {
  Integer acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = (acc * x + *it) % M;
  }
  if (acc < 0) acc += M;
  return acc;
}

ZPoly derivativeZ(const ZPoly& f) {
  ZPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
  return d;
}

using PPoly = std::vector<long>;

PPoly reduceMod(const ZPoly& f, long p) {
  PPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Integer m = f[i] % p;
    if (m < 0) m += p;
    r[i] = m.get_si();
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

long powMod(long a, long e, long p) {
  long r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

int degreeOfGcdModP(PPoly a, PPoly b, long p) {
  while (!b.empty()) {
    long inv = powMod(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
      long f = a.back() * inv % p;
      std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = ((a[shift + j] - f * b[j]) % p + p) % p;
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace

std::vector<Rational> UPoly::rationalRoots() const {
  if (isZero()) throw std::invalid_argument("rationalRoots of the zero polynomial");
  std::set<Rational> roots;
  UPoly f = *this;
  if (f.coeff(0).isZero()) {
    roots.insert(Rational(0));
    std::size_t k = 0;
    while (f.c_[k].isZero()) ++k;
    f = UPoly(std::vector<FieldElement>(f.c_.begin() + static_cast<long>(k), f.c_.end()));
  }
  if (f.degree() >= 1) {
    // a prime keeping g squarefree; give up after a few tries and take the
    // squarefree part over Q
    auto choosePrime = [](const ZPoly& g, const ZPoly& dg, int tries) -> long {
      int tried = 0;
      for (long p = 101; tries < 0 || tried < tries; p += 2) {
        if (!isPrime(Integer(p))) continue;
        if (mpz_divisible_ui_p(g.back().get_mpz_t(), static_cast<unsigned long>(p))) continue;
        ++tried;
        if (degreeOfGcdModP(reduceMod(g, p), reduceMod(dg, p), p) == 0) return p;
      }
      return 0;
    };
    ZPoly g = primitiveIntegerPart(f);
    ZPoly dg = derivativeZ(g);
    long p = choosePrime(g, dg, 40);
    if (p == 0) {
      UPoly q, r;
      divmod(f, gcd(f, f.derivative()), q, r);
      g = primitiveIntegerPart(q);
      dg = derivativeZ(g);
      p = choosePrime(g, dg, -1);
    }
    Integer B = abs(g.front()) > abs(g.back()) ? Integer(abs(g.front())) : Integer(abs(g.back()));
    Integer target = 2 * B * B + 1;
    PPoly gp = reduceMod(g, p);
    for (long x0 = 0; x0 < p; ++x0) {
      long acc = 0;
      for (auto it = gp.rbegin(); it != gp.rend(); ++it) acc = (acc * x0 + *it) % p;
      if (acc != 0) continue;
      // Newton lifting of the simple root x0 to modulus above 2 B^2.
      Integer M = p, x = x0;
      while (M < target) {
        M *= M;
        Integer fx = evalMod(g, x, M), dfx = evalMod(dg, x, M), inv;
        if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), M.get_mpz_t()) == 0) break;
        x = (x - fx * inv) % M;
        if (x < 0) x += M;
      }
      Rational cand;
      if (!rationalReconstruct(x, M, B, cand)) continue;
      if (f.eval(FieldElement(cand)).isZero()) roots.insert(cand);
    }
  }
  return {roots.begin(), roots.end()};
}

}  // namespace wpcount
