#pragma once

// Linear systems over Q(sqrt d), exactly, and over Z/p for word-size primes.

#include <cstdint>
#include <optional>
#include <vector>

#include "wpcount/numfield.hpp"

namespace wpcount::linalg {

using u64 = std::uint64_t;

// Moduli stay below 2^32 so products fit in 64 bits.
inline u64 mulMod(u64 a, u64 b, u64 p) { return a * b % p; }
u64 powMod(u64 a, u64 e, u64 p);
inline u64 invMod(u64 a, u64 p) { return powMod(a, p - 2, p); }

/// Primes just below 2^31, in decreasing order, skipping those dividing avoid.
std::vector<u64> largePrimes(std::size_t count, const Integer& avoid = 1, u64 start = (u64{1} << 31));

/// q mod p; p must not divide the denominator.
u64 reduceRational(const Rational& q, u64 p);

struct ModResult {
  bool consistent = false;
  int rank = 0;                 // rank of A
  std::vector<int> pivotColumns;
  std::vector<u64> solution;    // one solution (free variables zero) when consistent
};

/// Gaussian elimination on [A | b] modulo p; A given by rows.
ModResult solveMod(std::vector<std::vector<u64>> A, std::vector<u64> b, u64 p);

/// Exact elimination. Returns a solution (free variables zero) when the
/// system is consistent; rank is reported through the out parameter.
std::optional<std::vector<FieldElement>> solveExact(std::vector<std::vector<FieldElement>> A,
                                                    std::vector<FieldElement> b, int* rank = nullptr);

}  // namespace wpcount::linalg
