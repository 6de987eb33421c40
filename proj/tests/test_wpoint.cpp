#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wpcount/wpoint.hpp"

using namespace wpcount;
using wpcount::testing::allFields;
using wpcount::testing::randomElement;
using wpcount::testing::randomNonzero;

namespace {

const NumberField Q;
const NumberField Qi = NumberField::imaginaryQuadratic(-1);

Rational rat(long a, long b = 1) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

std::vector<FieldElement> tuple(std::initializer_list<FieldElement> xs) { return xs; }

// v_p by repeated division
int naiveVal(Integer n, long p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// S^L over Q straight from the definition, primes by trial division
Rational naiveSizePowerQ(const Weights& w, const std::vector<Rational>& x, long L) {
  Rational arch = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational a = rationalPow(abs(x[i]), L / w[i]);
    if (a > arch) arch = a;
  }
  Integer all = 1;
  for (const auto& xi : x)
    if (xi != 0) all *= xi.get_num() * xi.get_den();
  all = abs(all);
  Rational norm = 1;
  for (long p = 2; p <= all; ++p) {
    if (all % p != 0) continue;
    while (all % p == 0) all /= p;
    std::optional<int> m;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      int v = naiveVal(x[i].get_num(), p) - naiveVal(x[i].get_den(), p);
      int f = static_cast<int>(std::floor(static_cast<double>(v) / w[i]));
      m = m ? std::min(*m, f) : f;
    }
    norm *= rationalPow(Rational(p), *m);
  }
  return arch / rationalPow(norm, L);
}

}  // namespace

TEST_CASE("normalize") {
  CHECK(normalize(Q, {1, 1}, tuple({2, 2})).coords() == tuple({1, 1}));
  CHECK(normalize(Q, {1, 1}, tuple({-3, 6})).coords() == tuple({1, -2}));
  auto a = normalize(Q, {4, 6}, tuple({rat(-48, 16), rat(-864, 64)}));
  auto b = normalize(Q, {4, 6}, tuple({-48, -864}));
  CHECK(a == b);
  CHECK(equalPoints(a, b));
  // (1+i, 2) lies on the orbit of (1, 1-i)
  auto c = normalize(Qi, {1, 1}, tuple({FieldElement(Qi, 1, 1), 2}));
  auto d = normalize(Qi, {1, 1}, tuple({1, FieldElement(Qi, 1, -1)}));
  CHECK(c == d);
  for (const auto& x : c.coords()) CHECK(x.isIntegral());
  CHECK(scalingIdealOfTuple(Qi, {1, 1}, c.coords()).isUnit());
  CHECK_THROWS(normalize(Q, {1, 1}, tuple({0L, 0L})));
  CHECK_THROWS(normalize(Q, {1, 1}, tuple({1})));
}

TEST_CASE("sizes") {
  CHECK(sizePowerExact(normalize(Q, {4, 6}, tuple({-48, 0})), 12) == 27);
  CHECK(sizePowerExact(normalize(Q, {1, 1}, tuple({3, 4})), 1) == 4);
  CHECK(sizePowerExact(normalize(Q, {2}, tuple({3})), 2) == 3);
  CHECK(sizePowerExact(Q, {4, 6}, tuple({-48, 0}), 12) == 27);
  CHECK_THROWS(sizePowerExact(normalize(Q, {4, 6}, tuple({1, 1})), 6));
  CHECK(size(normalize(Q, {4, 6}, tuple({-48, 0}))) == doctest::Approx(std::pow(27.0, 1.0 / 12)));
  // m-th power free x in P(m) has size |x|^(1/m)
  CHECK(sizePowerExact(normalize(Q, {3}, tuple({-12})), 3) == 12);
  CHECK(sizePowerExact(normalize(Q, {3}, tuple({-24})), 3) == 3);
  CHECK(equalPoints(normalize(Q, {1, 1}, tuple({2, 2})), normalize(Q, {1, 1}, tuple({1, 1}))));
  CHECK_FALSE(equalPoints(normalize(Q, {1, 1}, tuple({1, 0L})), normalize(Q, {1, 1}, tuple({0L, 1}))));
  CHECK_THROWS(equalPoints(normalize(Q, {1, 1}, tuple({1, 0L})), normalize(Q, {1, 2}, tuple({1, 0L}))));
}

TEST_CASE("sizes over Q against the definition") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 400; ++k) {
    Weights w{1 + static_cast<int>(k % 4), 1 + static_cast<int>((k / 4) % 6)};
    long L = w.lcm();
    std::vector<Rational> x{wpcount::testing::randomRational(rng), wpcount::testing::randomRational(rng)};
    if (x[0] == 0 && x[1] == 0) continue;
    std::vector<FieldElement> xf{x[0], x[1]};
    CHECK(sizePowerExact(Q, w, xf, L) == naiveSizePowerQ(w, x, L));
    CHECK(sizePowerExact(normalize(Q, w, xf), L) == naiveSizePowerQ(w, x, L));
  }
}

TEST_CASE("primes p <= 97 in P(1,3)") {
  for (long p = 2; p <= 97; ++p) {
    if (!isPrime(Integer(p))) continue;
    auto a = normalize(Q, {1, 3}, tuple({p, p * p}));
    auto b = normalize(Q, {1, 3}, tuple({1, p}));
    CHECK(sizePowerExact(a, 3) == Rational(p * p * p));
    CHECK(sizePowerExact(b, 3) == Rational(p));
    // images under the squaring map
    CHECK(sizePowerExact(Q, {1, 3}, tuple({p * p, p * p * p * p}), 3) == Rational(p * p * p));
    CHECK(sizePowerExact(Q, {1, 3}, tuple({1, p * p}), 3) == Rational(p * p));
  }
}

TEST_CASE("representative independence") {
  std::mt19937_64 rng(8);
  for (const auto& F : allFields()) {
    for (int k = 0; k < 60; ++k) {
      Weights w{1 + static_cast<int>(k % 3), 1 + static_cast<int>((k / 3) % 4)};
      std::vector<FieldElement> x{randomElement(rng, F), randomElement(rng, F)};
      if (x[0].isZero() && x[1].isZero()) continue;
      auto p = normalize(F, w, x);
      CHECK(normalize(F, w, p.coords()) == p);
      auto lam = randomNonzero(rng, F, 12);
      CHECK(normalize(F, w, actBy(w, lam, x)) == p);
      for (const auto& u : units(F)) CHECK(normalize(F, w, actBy(w, u, x)) == p);
      double s = size(p);
      double exact = std::pow(sizePowerExact(p, w.lcm()).get_d(), 1.0 / w.lcm());
      CHECK(s == doctest::Approx(exact).epsilon(1e-12));
      CHECK(compareTuples(p.coords(), p.coords()) == 0);
    }
  }
}
