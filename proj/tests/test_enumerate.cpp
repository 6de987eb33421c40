#include <doctest.h>

#include <cmath>
#include <numbers>
#include <functional>
#include <mutex>
#include <set>

#include "support.hpp"
#include "wpcount/enumerate.hpp"

using namespace wpcount;
using wpcount::testing::allFields;

namespace {

const NumberField Q;
const NumberField Qi = NumberField::imaginaryQuadratic(-1);

std::set<std::string> keys(const std::vector<WeightedPoint>& pts) {
  std::set<std::string> out;
  for (const auto& p : pts) out.insert(p.toString());
  return out;
}

// normalize every tuple of integral elements with |x_i|_v <= T^{w_i}
std::set<std::string> naivePoints(const NumberField& F, const Weights& w, long T) {
  long L = w.lcm();
  Rational TL = rationalPow(Rational(T), L);
  std::vector<std::vector<FieldElement>> choices(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    long B = 1;
    for (int k = 0; k < w[i]; ++k) B *= T;
    if (F.isRationals()) {
      for (long a = -B; a <= B; ++a) choices[i].push_back(FieldElement(Rational(a)));
    } else {
      long R = 2 * static_cast<long>(std::sqrt(static_cast<double>(B))) + 3;
      for (long m = -R; m <= R; ++m)
        for (long n = -R; n <= R; ++n) {
          FieldElement x = FieldElement::fromIntegralBasis(F, m, n);
          if (x.norm() <= B) choices[i].push_back(x);
        }
    }
  }
  std::set<std::string> out;
  std::vector<FieldElement> x(w.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == w.size()) {
      bool allZero = true;
      for (const auto& xi : x) allZero = allZero && xi.isZero();
      if (allZero) return;
      auto p = normalize(F, w, x);
      if (sizePowerExact(p, L) <= TL) out.insert(p.toString());
      return;
    }
    for (const auto& c : choices[i]) {
      x[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

TEST_CASE("small counts") {
  auto pts = enumeratePoints(Q, {1, 1}, 2);
  CHECK(pts.size() == 8);
  std::set<std::string> expect;
  for (auto [a, b] : std::vector<std::pair<long, long>>{{0, 1}, {1, 0}, {1, 1}, {1, -1}, {1, 2}, {1, -2}, {2, 1}, {2, -1}})
    expect.insert(normalize(Q, {1, 1}, std::vector<FieldElement>{a, b}).toString());
  CHECK(keys(pts) == expect);
  CHECK(countPoints(Q, {1, 1}, 2) == 8);
  CHECK(countPoints(Q, {2}, 2) == 6);
  CHECK(countPoints(Q, {2}, 10) == 122);
  auto one = keys(enumeratePoints(Q, {4, 6}, 1));
  for (auto [a, b] : std::vector<std::pair<long, long>>{{1, 1}, {1, 0}, {0, 1}, {1, -1}})
    CHECK(one.count(normalize(Q, {4, 6}, std::vector<FieldElement>{a, b}).toString()) == 1);
  for (const auto& p : enumeratePoints(Q, {4, 6}, 1))
    for (const auto& x : p.coords()) CHECK(abs(x.rationalPart()) <= 1);
}

TEST_CASE("enumeration agrees with the naive box search") {
  struct Case {
    NumberField F;
    Weights w;
    long T;
  };
  std::vector<Case> cases{{Q, {1, 1}, 6},    {Q, {1, 2}, 4},    {Q, {2, 3}, 3},    {Q, {4, 6}, 2},
                          {Q, {2}, 7},       {Q, {1, 1, 2}, 3}, {Q, {2, 2}, 3},    {Q, {3, 3}, 2},
                          {Q, {2, 4}, 2},    {Q, {1, 3}, 3},    {Q, {3, 1}, 3},    {Q, {6, 4}, 2}};
  for (const auto& F : allFields()) {
    if (F.isRationals()) continue;
    cases.push_back({F, {1, 1}, 3});
    cases.push_back({F, {1, 2}, 2});
    cases.push_back({F, {2, 2}, 2});
    cases.push_back({F, {3}, 3});
  }
  cases.push_back({NumberField::imaginaryQuadratic(-3), {2, 3}, 2});
  cases.push_back({NumberField::imaginaryQuadratic(-3), {6}, 2});
  cases.push_back({Qi, {4, 6}, 2});
  for (const auto& c : cases) {
    CAPTURE(c.F.name());
    CAPTURE(c.w.toString());
    CAPTURE(c.T);
    auto pts = enumeratePoints(c.F, c.w, c.T);
    auto got = keys(pts);
    CHECK(got.size() == pts.size());
    CHECK(got == naivePoints(c.F, c.w, c.T));
    CHECK(countPoints(c.F, c.w, c.T, 3) == pts.size());
  }
}

TEST_CASE("canonical test over Q") {
  for (Weights w : {Weights{1, 1}, Weights{1, 3}, Weights{2, 3}, Weights{4, 6}, Weights{2, 4}, Weights{3, 1}, Weights{2, 2}}) {
    for (long a = -40; a <= 40; ++a)
      for (long b = -40; b <= 40; ++b) {
        if (a == 0 && b == 0) continue;
        std::vector<FieldElement> x{a, b};
        std::int64_t xi[2] = {a, b};
        bool canonical = normalize(Q, w, x).coords() == x;
        CHECK(isCanonicalQ(w, xi) == canonical);
      }
  }
}

TEST_CASE("fast Q enumeration against the canonical test") {
  std::mt19937_64 rng(4);
  for (Weights w : {Weights{1, 1}, Weights{1, 2}, Weights{2, 1}, Weights{1, 3}, Weights{2, 3}, Weights{3, 2},
                    Weights{4, 6}, Weights{2, 4}, Weights{2, 2}, Weights{1, 6}, Weights{6, 1}}) {
    for (Rational T : {Rational(3), Rational(17, 2), Rational(12)}) {
      if (std::pow(T.get_d(), w.total()) > 3e5) continue;
      auto B = boxBounds(w, T);
      std::int64_t L = w.lcm();
      Rational TL = rationalPow(T, L);
      std::uint64_t brute = 0;
      for (std::int64_t a = -B[0]; a <= B[0]; ++a)
        for (std::int64_t b = -B[1]; b <= B[1]; ++b) {
          if (a == 0 && b == 0) continue;
          std::int64_t x[2] = {a, b};
          if (!isCanonicalQ(w, x)) continue;
          if (sizePowerExact(Q, w, std::vector<FieldElement>{a, b}, L) <= TL) ++brute;
        }
      std::uint64_t fast = 0;
      std::set<std::pair<std::int64_t, std::int64_t>> seen;
      forEachCanonicalQ(w, T, 1, [&](unsigned, std::span<const std::int64_t> x) {
        ++fast;
        seen.insert({x[0], x[1]});
      });
      CAPTURE(w.toString());
      CAPTURE(T.get_str());
      CHECK(fast == brute);
      CHECK(seen.size() == fast);
      std::mutex m;
      std::uint64_t threaded = 0;
      forEachCanonicalQ(w, T, 4, [&](unsigned, std::span<const std::int64_t>) {
        std::lock_guard<std::mutex> g(m);
        ++threaded;
      });
      CHECK(threaded == fast);
    }
  }
}

TEST_CASE("box bounds") {
  auto B = boxBounds({4, 6}, 3);
  CHECK(B == std::vector<std::int64_t>{81, 729});
  CHECK(boxBounds({1, 2}, Rational(5, 2)) == std::vector<std::int64_t>{2, 6});
}

TEST_CASE("leading constants") {
  const double pi = std::numbers::pi;
  CHECK(leadingConstant(Q, {1, 1}) == doctest::Approx(2 / (pi * pi / 6)).epsilon(1e-8));
  CHECK(leadingConstant(Q, {1, 1}) == doctest::Approx(1.215854).epsilon(1e-6));
  CHECK(leadingConstant(Q, {4, 6}) == doctest::Approx(4 / (std::pow(pi, 10) / 93555)).epsilon(1e-8));
  CHECK(leadingConstant(Qi, {1, 1}) == doctest::Approx(pi * pi / (4 * dedekindZeta(Qi, 2))).epsilon(1e-8));
  CHECK(leadingConstant(Qi, {1, 1}) == doctest::Approx(1.6376).epsilon(1e-4));
  // one weight: the count is 2 * #squarefree, density 6/pi^2
  CHECK(leadingConstant(Q, {2}) == doctest::Approx(2 / (pi * pi / 6)).epsilon(1e-8));
}

TEST_CASE("monotone counts approach the main term") {
  std::uint64_t prev = 0;
  for (long T = 1; T <= 40; ++T) {
    auto n = countPoints(Q, {1, 2}, T);
    CHECK(n >= prev);
    prev = n;
  }
  auto r = convergenceReport(Q, {1, 1}, {10, 50, 100});
  REQUIRE(r.size() == 3);
  CHECK(std::abs(r[2].relDeviation) < 0.02);
  CHECK(r[2].mainTerm == doctest::Approx(1.215854 * 1e4).epsilon(1e-6));
  CHECK(r[2].relDeviation == doctest::Approx(r[2].exactCount / r[2].mainTerm - 1));
  for (const Weights& w : {Weights{1, 1}, Weights{1, 2}}) {
    auto rep = convergenceReport(Q, w, {25, 50, 100, 200});
    for (std::size_t i = 1; i < rep.size(); ++i)
      CHECK(std::abs(rep[i].relDeviation) < std::abs(rep[i - 1].relDeviation) + 0.01);
  }
  auto sq = convergenceReport(Q, {2}, {10});
  CHECK(sq[0].exactCount == 122);
  CHECK(sq[0].mainTerm == doctest::Approx(121.585).epsilon(1e-4));
}
