#include <doctest.h>

#include <cmath>
#include <set>

#include "support.hpp"
#include "wpcount/census.hpp"
#include "wpcount/enumerate.hpp"

using namespace wpcount;

namespace {

const NumberField Q;
const NumberField Qi = NumberField::imaginaryQuadratic(-1);

const std::vector<LevelStructureFamily>& fams() {
  static const auto f = loadFamilies(defaultFamiliesPath());
  return f;
}

const LevelStructureFamily& fam(const std::string& id) { return findFamily(fams(), id); }

// distinct nonsingular images of size^12 <= X among source points of size <= B
std::uint64_t bruteCount(const LevelStructureFamily& f, const NumberField& F, const Rational& X, const Rational& B) {
  WPLMorphism phi = F.isRationals() ? f.phi : makeMorphism(F, f.weights, Weights{4, 6}, f.c4, f.c6);
  std::set<std::string> seen;
  for (const auto& z : enumeratePoints(F, f.weights, B)) {
    auto y = applyCoords(phi, z.coords());
    if (y[0] * y[0] * y[0] == y[1] * y[1]) continue;
    auto p = normalize(F, {4, 6}, y);
    if (sizePowerExact(p, 12) <= X) seen.insert(p.toString());
  }
  return seen.size();
}

std::string row(const std::string& body) {
  return R"J([{"label": "H(1)", "level": 1, "congruence_label": "x", "sl2_index": 1, "weights": [4, 6],
             "reduced_degree": 1, "f0": [[1, 0, "1"]], "f1": [[0, 1, "1"]], "torsion_checks": [])J" +
         body + "}]";
}

}  // namespace

TEST_CASE("families file") {
  REQUIRE(fams().size() == 15);
  CHECK(familyId("G1(5)") == "G1_5");
  CHECK(familyId("G(2,4)") == "G_2_4");
  CHECK(fam("G1_5").label == "G1(5)");
  CHECK(fam("G(2,4)").id() == "G_2_4");
  CHECK_THROWS_WITH(fam("G1_11"), "unknown family 'G1_11'");
  CHECK(fam("G1_1").expectedExponent() == Rational(5, 6));
  CHECK(fam("G1_12").expectedExponent() == Rational(1, 24));
  CHECK(fam("G1_3").expectedExponent() == Rational(1, 3));
  CHECK(fam("G1_5").expectedExponent() == Rational(1, 6));
  CHECK(fam("G1_7").dValue() == 12);
  for (const auto& f : fams()) {
    CAPTURE(f.label);
    CHECK(f.phi.targetWeights() == Weights{4, 6});
    CHECK(f.phi.reducedDegree() == f.reducedDegree);
    CHECK(f.weights[0] * f.weights[1] * f.sl2Index == 24 * f.reducedDegree);
    if (f.label != "G1(1)") CHECK(f.model.has_value());
  }

  CHECK_NOTHROW(parseFamilies(row("")));
  CHECK_THROWS_WITH(parseFamilies("[1"), doctest::Contains("families file"));
  CHECK_THROWS_WITH(parseFamilies("{}"), "families file must hold a JSON array");
  CHECK_THROWS_WITH(parseFamilies(R"J([{"label": "H(1)"}])J"), doctest::Contains("H(1)"));
  std::string two = row("");
  two = two.substr(0, two.size() - 1) + "," + two.substr(1);
  CHECK_THROWS_WITH(parseFamilies(two), doctest::Contains("duplicate label"));
  std::string bad = row("");
  bad.replace(bad.find("\"reduced_degree\": 1"), 19, "\"reduced_degree\": 2");
  CHECK_THROWS_WITH(parseFamilies(bad), doctest::Contains("H(1)"));
  std::string torsion = row("");
  torsion.replace(torsion.find("\"torsion_checks\": []"), 20,
                  R"("torsion_checks": [{"kind": "full_two_torsion", "args": {}}])");
  CHECK_THROWS_WITH(parseFamilies(torsion), doctest::Contains("need a model"));
  CHECK_THROWS_WITH(loadFamilies("/nonexistent/families.json"), doctest::Contains("cannot open"));
}

TEST_CASE("torsion checks on specializations") {
  for (const auto& f : fams()) {
    CAPTURE(f.label);
    auto r = validateFamily(f, 20, 7);
    for (const auto& msg : r.failures) MESSAGE(msg);
    CHECK(r.ok());
    CHECK(r.samples >= 20);
    if (!f.torsionChecks.empty()) CHECK(r.torsionChecksRun >= 20);
  }
}

TEST_CASE("G1(5) passes through 11a3") {
  WeierstrassCurve E(Q, {0L, -1, -1, 0L, 0L});
  auto target = iota(E);
  bool hit = false;
  for (const auto& z : enumeratePoints(Q, {1, 1}, 3)) hit = hit || apply(fam("G1_5").phi, z) == target;
  CHECK(hit);
}

TEST_CASE("counts against a brute-force search") {
  // y^2 = x^3 + x has size^12 = 27
  auto& g1 = fam("G1_1");
  CHECK(countCurves(g1, Q, 27) > countCurves(g1, Q, 26));
  CHECK(countCurves(g1, Q, Rational(1, 2)) == 0);
  auto E = WeierstrassCurve::shortForm(Q, 1, 0L);
  CHECK(sizeOfCurvePow12(E) == 27);

  struct Case {
    std::string id;
    NumberField F;
    Rational X;
  };
  std::vector<Case> cases{{"G1_1", Q, 1000},      {"G1_4", Q, 100000},  {"G_2_2", Q, 10000},
                          {"G1_5", Q, 10000000},  {"G1_6", Q, 100000000}, {"G1_7", Q, Rational(Integer("10000000000000"))},
                          {"G_2_4", Q, 100000000}, {"G_2_6", Q, Rational(Integer("10000000000000"))},
                          {"G1_1", Qi, 100},      {"G1_8", Qi, Rational(Integer("1000000000000"))}};
  for (const auto& c : cases) {
    auto& f = fam(c.id);
    CAPTURE(c.id);
    CAPTURE(c.F.name());
    auto rep = census(f, c.F, {c.X});
    // search past the census bound, as far as about 2e5 source points allow
    double factor = std::pow(2e5 / (leadingConstant(c.F, f.weights) * std::pow(rep.sourceBound.get_d(), f.weights.total())),
                             1.0 / f.weights.total());
    factor = std::min(factor, 2.0);
    CHECK(factor > 1.3);
    Rational B = rep.sourceBound * parseDecimal(std::to_string(std::floor(factor * 100) / 100));
    CHECK(rep.counts[0] == bruteCount(f, c.F, c.X, B));
    CHECK(rep.counts[0] > 0);
  }
  // G1(1) is the identity, so the oracle can use the exact bound
  for (long X : {27L, 1000L, 100000L}) {
    std::uint64_t n = 0;
    Rational T = 1;
    while (rationalPow(T, 12) <= X) T += Rational(1, 64);
    for (const auto& p : enumeratePoints(Q, {4, 6}, T)) {
      auto& y = p.coords();
      if (y[0] * y[0] * y[0] != y[1] * y[1] && sizePowerExact(p, 12) <= X) ++n;
    }
    CHECK(countCurves(g1, Q, X) == n);
  }
}

TEST_CASE("fast path agrees with the exact path") {
  CensusOptions exact;
  exact.forceExact = true;
  // top X chosen for about 10^5 source points
  std::vector<std::pair<std::string, int>> tops{{"G1_1", 4}, {"G1_2", 1},  {"G1_3", 2}, {"G1_4", 4}, {"G_2_2", 4},
                                                {"G1_5", 6}, {"G1_6", 8},  {"G1_7", 13}, {"G_2_4", 8}};
  for (const auto& [id, top] : tops) {
    auto& f = fam(id);
    CAPTURE(id);
    std::vector<Rational> xs;
    for (int k = top - 3; k <= top; ++k) xs.push_back(parseDecimal("1e" + std::to_string(k)));
    auto a = census(f, Q, xs);
    auto b = census(f, Q, xs, exact);
    CHECK(a.counts == b.counts);
    CensusOptions mt;
    mt.threads = 3;
    CHECK(census(f, Q, xs, mt).counts == a.counts);
  }
}

TEST_CASE("counts are saturated and monotone") {
  for (std::string id : {"G1_1", "G1_3", "G1_5", "G1_8", "G_2_6"}) {
    auto& f = fam(id);
    CAPTURE(id);
    std::vector<Rational> xs = parseXs(f.reducedDegree > 1 ? "1e8:1e14:x10" : "1e4:1e8:x10");
    auto a = census(f, Q, xs);
    CensusOptions wide;
    wide.safety = 8;
    auto b = census(f, Q, xs, wide);
    CHECK(a.counts == b.counts);
    CHECK(b.sourceBound > a.sourceBound);
    for (std::size_t i = 1; i < a.counts.size(); ++i) CHECK(a.counts[i] >= a.counts[i - 1]);
    CHECK(a.slack > 0);
  }
  // single-X censuses reproduce the cumulative buckets
  auto& f = fam("G1_4");
  auto xs = parseXs("1e4,1e5,1e6,1e7");
  auto rep = census(f, Q, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(countCurves(f, Q, xs[i]) == rep.counts[i]);
}

TEST_CASE("bound helpers") {
  auto& f = fam("G1_5");
  double c = lowerSizeConstant(f.phi);
  CHECK(c > 0);
  Rational b1 = sourceBound(f.phi, 1000000, c, 2), b2 = sourceBound(f.phi, 1000000, c, 4);
  CHECK(b2 > b1);
  CHECK(sourceBound(f.phi, 100000000, c, 2) > b1);
  CHECK_THROWS(sourceBound(f.phi, 100, 0.0, 2));
  CHECK_THROWS(census(f, Q, {}));
  CHECK_THROWS(census(f, Q, {Rational(-1)}));
  CHECK_THROWS(census(f, NumberField::imaginaryQuadratic(-5), {Rational(10)}));
}

TEST_CASE("exponent fits") {
  std::vector<Rational> xs;
  std::vector<std::uint64_t> n;
  for (int k = 2; k <= 8; ++k) {
    xs.push_back(rationalPow(Rational(10), k));
    n.push_back(static_cast<std::uint64_t>(std::llround(3 * std::pow(10.0, 0.4 * k))));
  }
  CHECK(fitExponent(xs, n) == doctest::Approx(0.4).epsilon(1e-3));
  // points with N < 5 are dropped
  std::vector<std::uint64_t> low = n;
  low[0] = 0;
  low[1] = 1;
  CHECK(fitExponent(xs, low) == doctest::Approx(0.4).epsilon(1e-3));
  CHECK_THROWS_WITH(fitExponent({1, 2, 3}, {5, 6, 7}), "fitExponent needs at least 4 values of X");
  CHECK_THROWS_WITH(fitExponent({1, 2, 3, 4}, {0, 1, 2, 9}), "insufficient data");
  CHECK_THROWS_WITH(fitExponent({1, 2}, {5}), "fitExponent: size mismatch");

  auto rep = fitExponent(fam("G1_1"), Q, parseXs("1e4:1e8:x10"));
  REQUIRE(rep.fittedExponent);
  CHECK(std::abs(*rep.fittedExponent - 5.0 / 6) < 0.05);
  CHECK(rep.expectedExponent == Rational(5, 6));
}

TEST_CASE("number parsing") {
  CHECK(parseDecimal("1e8") == 100000000);
  CHECK(parseDecimal("2.5") == Rational(5, 2));
  CHECK(parseDecimal("1.5e3") == 1500);
  CHECK(parseDecimal("7/3") == Rational(7, 3));
  CHECK(parseDecimal("1e-2") == Rational(1, 100));
  CHECK(parseDecimal("12") == 12);
  CHECK_THROWS(parseDecimal(""));
  CHECK_THROWS(parseDecimal("abc"));
  CHECK_THROWS(parseDecimal("1e"));
  CHECK_THROWS(parseDecimal("1e999999"));
  auto xs = parseXs("1e8:1e14:x10");
  REQUIRE(xs.size() == 7);
  CHECK(xs.front() == 100000000);
  CHECK(xs.back() == Rational(Integer("100000000000000")));
  CHECK(parseXs("10,100,1000") == std::vector<Rational>{10, 100, 1000});
  CHECK(parseXs("1:16:x2").size() == 5);
  CHECK_THROWS(parseXs("1e8:1e4:x10"));
  CHECK_THROWS(parseXs("1:10:+1"));
  CHECK_THROWS(parseXs("1:10"));
  CHECK_THROWS(parseXs("0,1"));
  CHECK_THROWS(parseXs(""));
}

TEST_CASE("table identities") {
  const auto& rows = tableRows();
  REQUIRE(rows.size() == 22);
  for (const auto& c : tableIdentityReport(rows)) {
    CAPTURE(c.label);
    CHECK(c.ok());
  }
  CHECK(tableIdentityCheck(fams()));
  auto broken = rows;
  broken[3].e = 2;
  CHECK_FALSE(tableIdentityReport(broken)[3].ok());
  CHECK(tableIdentityReport(broken)[2].ok());
  broken = rows;
  broken[0].d = Rational(5, 6);
  CHECK_FALSE(tableIdentityReport(broken)[0].dIdentity);
}

TEST_CASE("containment suite at small bounds") {
  auto cases = containmentSuite(fams(), 4, 2, 1e5);
  CHECK(cases.size() == 2 * (fams().size() + 1));
  for (const auto& c : cases) {
    CAPTURE(c.name);
    CAPTURE(c.field.name());
    CHECK(c.pass());
  }
  // a tiny budget forces reduced bounds but never zero points
  for (const auto& c : containmentSuite({fam("G1_1")}, 20, 10, 2000)) {
    CHECK_FALSE(c.complete());
    CHECK(c.used < c.target);
    CHECK(c.pass());
  }
}
