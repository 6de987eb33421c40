#pragma once

// Integer helpers shared by the number-field and enumeration layers.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace wpcount {

using Integer = mpz_class;
using Rational = mpq_class;

/// Deterministic for n < 3.3e24 (first thirteen prime bases); beyond that
/// the same test is a strong probable-prime check.
bool isPrime(const Integer& n);

/// Factorization of |n| (n != 0) as sorted (prime, exponent) pairs.
/// Trial division first, Pollard-Brent for any large composite cofactor.
std::vector<std::pair<Integer, int>> factorInteger(const Integer& n);

/// Kronecker symbol (a/n) for n > 0.
int kronecker(const Integer& a, const Integer& n);

/// floor(a / b) for b > 0.
inline long floorDiv(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

/// v_p(n) for n != 0.
int integerValuation(const Integer& n, const Integer& p);

/// floor(q) and ceil(q) of a rational.
Integer floorRational(const Rational& q);
Integer ceilRational(const Rational& q);

/// floor(q^(1/k)) for q >= 0 rational.
Integer floorRoot(const Rational& q, unsigned long k);

/// Is q the square of a rational? On success stores the non-negative root.
bool rationalSqrt(const Rational& q, Rational& root);

/// q^e for integer e (q != 0 when e < 0).
Rational rationalPow(const Rational& q, long e);

/// Natural log of a positive rational; safe for very large or small values.
double logRational(const Rational& q);
double logInteger(const Integer& n);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

/// Recovers n/d from r mod M with |n| <= bound, 0 < d <= bound, if one exists.
bool rationalReconstruct(const Integer& r, const Integer& M, const Integer& bound, Rational& out);

}  // namespace wpcount
