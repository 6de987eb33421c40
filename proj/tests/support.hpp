#pragma once

#include <random>
#include <vector>

#include "wpcount/numfield.hpp"

namespace wpcount::testing {

inline const std::vector<int>& quadraticDs() {
  static const std::vector<int> ds{-1, -2, -3, -7, -11};
  return ds;
}

inline std::vector<NumberField> allFields() {
  std::vector<NumberField> out{NumberField()};
  for (int d : quadraticDs()) out.push_back(NumberField::imaginaryQuadratic(d));
  return out;
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// small numerators, denominators built from small primes so valuations vary
inline Rational randomRational(std::mt19937_64& rng, long numBound = 60) {
  static const long dens[] = {1, 1, 1, 2, 3, 4, 5, 6, 8, 9, 12, 25, 27};
  Rational q(uniform(rng, -numBound, numBound), dens[uniform(rng, 0, 12)]);
  q.canonicalize();
  return q;
}

inline FieldElement randomElement(std::mt19937_64& rng, const NumberField& F, long numBound = 60) {
  if (F.isRationals()) return FieldElement(randomRational(rng, numBound));
  return FieldElement(F, randomRational(rng, numBound), randomRational(rng, numBound));
}

inline FieldElement randomNonzero(std::mt19937_64& rng, const NumberField& F, long numBound = 60) {
  for (;;) {
    FieldElement x = randomElement(rng, F, numBound);
    if (!x.isZero()) return x;
  }
}

inline FieldElement randomIntegral(std::mt19937_64& rng, const NumberField& F, long bound) {
  if (F.isRationals()) return FieldElement(Rational(uniform(rng, -bound, bound)));
  return FieldElement::fromIntegralBasis(F, Integer(uniform(rng, -bound, bound)), Integer(uniform(rng, -bound, bound)));
}

}  // namespace wpcount::testing
