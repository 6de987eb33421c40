#include "wpcount/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace wpcount {

namespace {

constexpr unsigned long kSmallPrimeBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool millerRabinRound(const Integer& n, const Integer& d, unsigned long s, const Integer& a) {
  Integer x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Integer nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

Integer pollardBrent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1, m = 64;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer diff = x - y;
          q = (q * abs(diff)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = x - ys;
        Integer ad = abs(diff);
        mpz_gcd(g.get_mpz_t(), ad.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factorInto(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (isPrime(n)) {
    out[n] += 1;
    return;
  }
  Integer d = pollardBrent(n);
  factorInto(d, out);
  factorInto(Integer(n / d), out);
}

}  // namespace

bool isPrime(const Integer& n) {
  if (n < 2) return false;
  for (unsigned long p : kSmallPrimeBases) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  Integer d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (unsigned long a : kSmallPrimeBases) {
    if (!millerRabinRound(n, d, s, Integer(a))) return false;
  }
  return true;
}

std::vector<std::pair<Integer, int>> factorInteger(const Integer& n) {
  if (n == 0) throw std::invalid_argument("factorInteger: zero");
  Integer m = abs(n);
  std::map<Integer, int> acc;
  for (unsigned long p = 2; p < 10000; p += (p == 2 ? 1 : 2)) {
    if (Integer(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      int e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      }
      acc[Integer(p)] = e;
    }
  }
  factorInto(m, acc);
  return {acc.begin(), acc.end()};
}

int kronecker(const Integer& a, const Integer& n) {
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int integerValuation(const Integer& n, const Integer& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero undefined");
  Integer m = n;
  return static_cast<int>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

Integer floorRational(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceilRational(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer floorRoot(const Rational& q, unsigned long k) {
  if (q < 0) throw std::invalid_argument("floorRoot: negative");
  // Largest integer r with r^k <= q, i.e. r^k * den <= num.
  Integer num = q.get_num(), den = q.get_den();
  Integer guess;
  Integer quotient = num / den;
  mpz_root(guess.get_mpz_t(), quotient.get_mpz_t(), k);
  Integer pw;
  auto fits = [&](const Integer& r) {
    mpz_pow_ui(pw.get_mpz_t(), r.get_mpz_t(), k);
    return pw * den <= num;
  };
  while (!fits(guess)) --guess;
  while (fits(guess + 1)) ++guess;
  return guess;
}

bool rationalSqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return false;
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

Rational rationalPow(const Rational& q, long e) {
  Rational base = q;
  if (e < 0) {
    if (q == 0) throw std::domain_error("rationalPow: zero to negative power");
    base = 1 / q;
    e = -e;
  }
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  Rational r(n, d);
  r.canonicalize();
  return r;
}

double logInteger(const Integer& n) {
  if (n <= 0) throw std::domain_error("logInteger: non-positive");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double logRational(const Rational& q) {
  return logInteger(q.get_num()) - logInteger(q.get_den());
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  std::uint64_t x = a < 0 ? -static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
  std::uint64_t y = b < 0 ? -static_cast<std::uint64_t>(b) : static_cast<std::uint64_t>(b);
  if (x == 0) return static_cast<std::int64_t>(y);
  if (y == 0) return static_cast<std::int64_t>(x);
  int shift = __builtin_ctzll(x | y);
  x >>= __builtin_ctzll(x);
  while (y != 0) {
    y >>= __builtin_ctzll(y);
    if (x > y) std::swap(x, y);
    y -= x;
  }
  return static_cast<std::int64_t>(x << shift);
}

bool rationalReconstruct(const Integer& r, const Integer& M, const Integer& bound, Rational& out) {
  Integer r0 = M, r1 = r % M;
  if (r1 < 0) r1 += M;
  Integer t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    Integer t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

}  // namespace wpcount
