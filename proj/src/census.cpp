#include "wpcount/census.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "wpcount/enumerate.hpp"

#ifndef WPCOUNT_DEFAULT_FAMILIES
#define WPCOUNT_DEFAULT_FAMILIES "data/families.json"
#endif

namespace wpcount {

using nlohmann::json;

std::string TorsionCheck::toString() const {
  switch (kind) {
    case Kind::MarkedPointOrder:
      return "marked point (" + x + ", " + y + ") of order " + std::to_string(order);
    case Kind::ExistsPointOfOrder:
      return "rational point of order " + std::to_string(order);
    case Kind::FullTwoTorsion:
      return "full rational 2-torsion";
  }
  return "?";
}

std::string familyId(const std::string& label) {
  std::string out;
  for (char c : label) {
    if (c == '(' || c == ',') out += '_';
    else if (c == ')' || c == ' ') continue;
    else out += c;
  }
  return out;
}

std::string LevelStructureFamily::id() const { return familyId(label); }

Rational LevelStructureFamily::expectedExponent() const {
  Rational r(weights[0] + weights[1], 12 * reducedDegree);
  r.canonicalize();
  return r;
}

Rational LevelStructureFamily::dValue() const {
  Rational d(12 * reducedDegree, weights[0] + weights[1]);
  d.canonicalize();
  return d;
}

// ------------------------------------------------------------------ loading

namespace {

GradedPoly polyFromTerms(const Weights& w, const json& a, int degree, const std::string& what) {
  if (!a.is_array()) throw std::invalid_argument(what + " must be a list of [k0, k1, \"c\"]");
  std::vector<std::tuple<int, int, FieldElement>> terms;
  for (const auto& t : a) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer())
      throw std::invalid_argument(what + ": term must be [k0, k1, \"c\"]");
    std::string cs = t[2].is_string() ? t[2].get<std::string>() : t[2].dump();
    terms.emplace_back(t[0].get<int>(), t[1].get<int>(), FieldElement::parse(NumberField(), cs));
  }
  try {
    return GradedPoly::fromTerms(w, terms, degree);
  } catch (const std::exception& ex) {
    throw std::invalid_argument(what + ": " + ex.what());
  }
}

LevelStructureFamily familyFromJson(const json& j) {
  LevelStructureFamily f;
  f.label = j.at("label").get<std::string>();
  f.level = j.at("level").get<int>();
  f.congruenceLabel = j.value("congruence_label", std::string());
  f.sl2Index = j.at("sl2_index").get<int>();
  auto wv = j.at("weights").get<std::vector<int>>();
  if (wv.size() != 2) throw std::invalid_argument("weights must have two entries");
  f.weights = Weights(wv);
  f.reducedDegree = j.at("reduced_degree").get<int>();
  f.provenance = j.value("provenance", std::string());
  const int e = f.reducedDegree;
  if (f.sl2Index <= 0 || e <= 0 || f.level <= 0) throw std::invalid_argument("level, index and degree must be positive");
  Rational eData(f.weights[0] * f.weights[1] * f.sl2Index, 24);
  eData.canonicalize();
  if (eData != e)
    throw std::invalid_argument("reduced degree " + std::to_string(e) + " differs from w0 w1 index / 24 = " +
                                eData.get_str());
  if (e != 1 && !(f.weights[0] == 1 && f.weights[1] == 1))
    throw std::invalid_argument("reduced degree " + std::to_string(e) + " needs weights (1,1)");
  f.c4 = polyFromTerms(f.weights, j.at("f0"), 4 * e, "f0");
  f.c6 = polyFromTerms(f.weights, j.at("f1"), 6 * e, "f1");
  f.phi = makeMorphism(NumberField(), f.weights, Weights{4, 6}, f.c4, f.c6);
  if (f.phi.reducedDegree() != e) throw std::invalid_argument("polynomial degrees do not give the declared e");
  if (j.contains("model")) {
    const json& m = j.at("model");
    std::array<GradedPoly, 5> a;
    const char* names[5] = {"a1", "a2", "a3", "a4", "a6"};
    const int ks[5] = {1, 2, 3, 4, 6};
    for (int i = 0; i < 5; ++i)
      a[i] = polyFromTerms(f.weights, m.contains(names[i]) ? m.at(names[i]) : json::array(), ks[i] * e,
                           std::string("model ") + names[i]);
    f.model = a;
  }
  for (const auto& c : j.value("torsion_checks", json::array())) {
    TorsionCheck t;
    std::string kind = c.at("kind").get<std::string>();
    json args = c.value("args", json::object());
    if (kind == "marked_point_order") {
      t.kind = TorsionCheck::Kind::MarkedPointOrder;
      t.order = args.at("order").get<int>();
      t.x = args.value("x", std::string("0"));
      t.y = args.value("y", std::string("0"));
    } else if (kind == "exists_point_of_order") {
      t.kind = TorsionCheck::Kind::ExistsPointOfOrder;
      t.order = args.at("m").get<int>();
    } else if (kind == "full_two_torsion") {
      t.kind = TorsionCheck::Kind::FullTwoTorsion;
    } else {
      throw std::invalid_argument("unknown torsion check kind '" + kind + "'");
    }
    if (t.kind != TorsionCheck::Kind::FullTwoTorsion && t.order < 1)
      throw std::invalid_argument("torsion order must be positive");
    if (!f.model) throw std::invalid_argument("torsion checks need a model");
    f.torsionChecks.push_back(t);
  }
  return f;
}

}  // namespace

std::vector<LevelStructureFamily> parseFamilies(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("families file: ") + ex.what());
  }
  if (!j.is_array()) throw std::invalid_argument("families file must hold a JSON array");
  std::vector<LevelStructureFamily> out;
  std::set<std::string> ids;
  for (std::size_t r = 0; r < j.size(); ++r) {
    std::string name = "row " + std::to_string(r);
    try {
      if (j[r].contains("label") && j[r]["label"].is_string()) name += " (" + j[r]["label"].get<std::string>() + ")";
      out.push_back(familyFromJson(j[r]));
    } catch (const std::exception& ex) {
      throw std::invalid_argument("families file, " + name + ": " + ex.what());
    }
    if (!ids.insert(out.back().id()).second) throw std::invalid_argument("families file, " + name + ": duplicate label");
  }
  return out;
}

std::vector<LevelStructureFamily> loadFamilies(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open families file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parseFamilies(ss.str());
}

const LevelStructureFamily& findFamily(const std::vector<LevelStructureFamily>& fams, const std::string& key) {
  for (const auto& f : fams)
    if (f.id() == key || f.label == key || f.id() == familyId(key)) return f;
  throw std::invalid_argument("unknown family '" + key + "'");
}

std::string defaultFamiliesPath() {
  if (const char* env = std::getenv("WPCOUNT_FAMILIES"); env && *env) return env;
  return WPCOUNT_DEFAULT_FAMILIES;
}

// --------------------------------------------------------------- validation

ValidationReport validateFamily(const LevelStructureFamily& fam, int sampleCount, std::uint64_t seed) {
  ValidationReport rep;
  rep.label = fam.label;
  const NumberField Q;
  std::mt19937_64 rng(seed);
  const long R = 12;
  std::uniform_int_distribution<long> dist(-R, R);
  std::set<std::pair<long, long>> tried;
  int attempts = 0;
  while (rep.samples < sampleCount && attempts < 200 * std::max(1, sampleCount)) {
    ++attempts;
    long z0 = dist(rng), z1 = dist(rng);
    if (z0 == 0 && z1 == 0) continue;
    if (std::gcd(z0, z1) != 1) continue;
    if (!tried.insert({z0, z1}).second) continue;
    FieldElement x0(z0), x1(z1);
    FieldElement c4 = fam.c4.eval(x0, x1), c6 = fam.c6.eval(x0, x1);
    if (c4 * c4 * c4 == c6 * c6) continue;  // cusp
    std::string at = "t = (" + std::to_string(z0) + " : " + std::to_string(z1) + ")";
    ++rep.samples;
    try {
      WeierstrassCurve E = WeierstrassCurve::fromC4C6(Q, c4, c6);
      // the short model has invariants (6^4 c4, 6^6 c6)
      if (!(E.invariants().c4 == FieldElement(1296L) * c4 && E.invariants().c6 == FieldElement(46656L) * c6))
        rep.failures.push_back(at + ": short model invariants");
      std::vector<FieldElement> img = applyCoords(fam.phi, std::vector<FieldElement>{x0, x1});
      if (!equalPoints(iota(E), normalize(Q, Weights{4, 6}, img)))
        rep.failures.push_back(at + ": iota differs from the canonical morphism");
      if (!fam.model) continue;
      std::array<FieldElement, 5> a;
      for (int i = 0; i < 5; ++i) a[i] = (*fam.model)[i].eval(x0, x1);
      WeierstrassCurve M(Q, a);
      if (!(M.invariants().c4 == c4 && M.invariants().c6 == c6)) {
        rep.failures.push_back(at + ": model invariants differ from (f0, f1)");
        continue;
      }
      if (!isIsomorphic(M, E)) rep.failures.push_back(at + ": model not isomorphic to the short model");
      for (const TorsionCheck& t : fam.torsionChecks) {
        ++rep.torsionChecksRun;
        bool ok = false;
        switch (t.kind) {
          case TorsionCheck::Kind::MarkedPointOrder: {
            CurvePoint P = CurvePoint::at(FieldElement::parse(Q, t.x), FieldElement::parse(Q, t.y));
            ok = M.contains(P) && pointOrder(M, P, t.order) == std::optional<int>(t.order);
            break;
          }
          case TorsionCheck::Kind::ExistsPointOfOrder:
            ok = !pointsOfExactOrder(M, t.order).empty();
            break;
          case TorsionCheck::Kind::FullTwoTorsion:
            ok = hasFullTwoTorsion(M);
            break;
        }
        if (!ok) rep.failures.push_back(at + ": " + t.toString() + " failed");
      }
    } catch (const std::exception& ex) {
      rep.failures.push_back(at + ": " + ex.what());
    }
  }
  if (rep.samples < sampleCount)
    rep.failures.push_back("only " + std::to_string(rep.samples) + " nonsingular specializations found");
  return rep;
}

// -------------------------------------------------------------------- census

double lowerSizeConstant(const WPLMorphism& phi, int gridN) {
  ComparisonData data = comparisonData(phi);
  QvRange q = qvGrid(phi, gridN);
  return data.lowerIdeal.norm().get_d() * q.min / 1.1;
}

Rational sourceBound(const WPLMorphism& phi, const Rational& X, double c, double safety) {
  if (!(c > 0)) throw std::invalid_argument("lower size constant must be positive");
  const double e = phi.reducedDegree();
  double logT = (std::log(safety * X.get_d()) / 12.0 - std::log(c)) / e;
  double T = std::exp(logT) * (1 + 1e-9);
  return Rational(T);
}

namespace {

using i128 = __int128;

struct I128PairHash {
  std::size_t operator()(const std::pair<i128, i128>& k) const {
    auto h = [](i128 v) {
      auto u = static_cast<unsigned __int128>(v);
      std::uint64_t a = static_cast<std::uint64_t>(u), b = static_cast<std::uint64_t>(u >> 64);
      return a * 0x9E3779B97F4A7C15ULL ^ (b + 0x632BE59BD9B4E019ULL + (a << 6) + (a >> 2));
    };
    return h(k.first) * 31 + h(k.second);
  }
};

bool mulOv(i128 a, i128 b, i128& out) { return __builtin_mul_overflow(a, b, &out); }
bool addOv(i128 a, i128 b, i128& out) { return __builtin_add_overflow(a, b, &out); }

bool toI128(const Integer& z, i128& out) {
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 125) return false;
  Integer a = abs(z);
  Integer hi = a >> 64;
  Integer lo = a - (hi << 64);
  unsigned __int128 v = (static_cast<unsigned __int128>(hi.get_ui()) << 64) | lo.get_ui();
  out = z < 0 ? -static_cast<i128>(v) : static_cast<i128>(v);
  return true;
}

// |v|^k, false if the result exceeds limit
bool powBounded(i128 v, int k, i128 limit, i128& out) {
  i128 a = v < 0 ? -v : v, r = 1;
  for (int i = 0; i < k; ++i) {
    if (mulOv(r, a, r) || r > limit) return false;
  }
  out = r;
  return true;
}

struct IntPoly {
  std::vector<std::tuple<int, int, i128>> terms;
};

// phi over Q with integral coefficients: y_j = lambda^{u_j} f_j
struct FastQ {
  bool ok = false;
  IntPoly g[2];
  int u[2] = {4, 6};
  std::vector<long> primes;
  std::vector<std::pair<i128, i128>> primePowers;  // p^{u0}, p^{u1}
  Integer scaleBound = 1;  // every image scaling factor divides this
  int maxK0 = 0, maxK1 = 0;
};

FastQ buildFastQ(const WPLMorphism& phi, const ComparisonData& data) {
  FastQ fq;
  Integer D = 1;
  for (const GradedPoly* f : {&phi.f0(), &phi.f1()})
    for (const auto& [k, c] : f->terms()) D = lcm(D, c.rationalPart().get_den());
  std::set<long> ps;
  for (const FractionalIdeal* I : {&data.upperIdeal, &data.lowerIdeal})
    for (const auto& [P, v] : I->factorization()) {
      if (!P.p.fits_slong_p()) return fq;
      ps.insert(P.p.get_si());
    }
  for (const auto& [p, k] : factorInteger(D)) {
    if (!p.fits_slong_p()) return fq;
    ps.insert(p.get_si());
  }
  fq.primes.assign(ps.begin(), ps.end());
  // the scaling ideal of f(z) divides I(d)^{-1} for canonical z
  const FractionalIdeal& low = data.lowerIdeal;
  for (long p : fq.primes) {
    int k = integerValuation(D, Integer(p));
    for (const auto& [P, v] : low.factorization())
      if (P.p == p) k -= v;
    Integer pk;
    if (k > 0) mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    if (k > 0) fq.scaleBound *= pk;
  }
  const GradedPoly* fs[2] = {&phi.f0(), &phi.f1()};
  for (int j = 0; j < 2; ++j) {
    fq.u[j] = phi.targetWeights()[j];
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), D.get_mpz_t(), fq.u[j]);
    for (const auto& [k, c] : fs[j]->terms()) {
      Rational s = c.rationalPart() * scale;
      i128 v;
      if (s.get_den() != 1 || !toI128(s.get_num(), v)) return fq;
      fq.g[j].terms.emplace_back(k.first, k.second, v);
      fq.maxK0 = std::max(fq.maxK0, k.first);
      fq.maxK1 = std::max(fq.maxK1, k.second);
    }
  }
  for (long p : fq.primes) {
    i128 a = 1, b = 1;
    for (int i = 0; i < fq.u[0]; ++i)
      if (mulOv(a, p, a)) return fq;
    for (int i = 0; i < fq.u[1]; ++i)
      if (mulOv(b, p, b)) return fq;
    fq.primePowers.emplace_back(a, b);
  }
  fq.ok = true;
  return fq;
}

struct WorkerState {
  std::vector<std::uint64_t> buckets;  // used without dedup
  std::unordered_map<std::pair<i128, i128>, std::size_t, I128PairHash> fast;
  std::map<std::vector<FieldElement>, std::size_t,
           decltype([](const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
             return compareTuples(a, b) < 0;
           })>
      exact;
  std::uint64_t source = 0;
};

}  // namespace

CensusReport census(const LevelStructureFamily& fam, const NumberField& F, std::vector<Rational> xs,
                    const CensusOptions& opt) {
  if (!F.isRationals() && F.d() != -1 && F.d() != -2 && F.d() != -3 && F.d() != -7 && F.d() != -11)
    throw std::invalid_argument("unsupported field");
  if (xs.empty()) throw std::invalid_argument("census needs at least one X");
  for (const auto& x : xs)
    if (x <= 0) throw std::invalid_argument("X must be positive");
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const int e = fam.reducedDegree;
  WPLMorphism phi = F.isRationals() ? fam.phi
                                    : makeMorphism(F, fam.weights, Weights{4, 6}, fam.c4, fam.c6);
  if (!(phi.targetWeights() == Weights{4, 6})) throw std::invalid_argument("family must map to P(4,6)");
  ComparisonData data = comparisonData(phi);
  double c = data.lowerIdeal.norm().get_d() * qvGrid(phi, opt.gridN).min / 1.1;
  const Rational& maxX = xs.back();

  CensusReport rep;
  rep.label = fam.label;
  rep.field = F;
  rep.xs = xs;
  rep.expectedExponent = fam.expectedExponent();
  rep.sourceBound = sourceBound(phi, maxX, c, opt.safety);
  rep.slack = rep.sourceBound.get_d() / std::pow(maxX.get_d(), 1.0 / (12.0 * e));

  const bool dedup = !(e == 1 && phi.sourceWeights() == phi.targetWeights());
  const unsigned threads = std::max(1u, opt.threads);
  std::vector<WorkerState> st(threads);
  for (auto& s : st) s.buckets.assign(xs.size(), 0);

  auto bucketOf = [&](const Rational& s12) -> std::optional<std::size_t> {
    auto it = std::lower_bound(xs.begin(), xs.end(), s12);
    if (it == xs.end()) return std::nullopt;
    return static_cast<std::size_t>(it - xs.begin());
  };

  const Weights u{4, 6};
  // exact route for one source tuple
  auto exactVisit = [&](WorkerState& ws, std::span<const FieldElement> z) {
    std::vector<FieldElement> y = applyCoords(phi, z);
    if (y[0] * y[0] * y[0] == y[1] * y[1]) return;
    WeightedPoint p = normalize(F, u, y);
    auto b = bucketOf(sizePowerExact(p, 12));
    if (!b) return;
    if (!dedup) {
      ++ws.buckets[*b];
      return;
    }
    ws.exact.emplace(p.coords(), *b);
  };

  FastQ fq;
  std::vector<i128> xsInt;
  bool fast = F.isRationals() && !opt.forceExact && maxX <= Rational(Integer("1000000000000000000000000000000000000"));
  if (fast) {
    fq = buildFastQ(phi, data);
    fast = fq.ok;
    for (const auto& x : xs) {
      Integer fl = x.get_num() / x.get_den();
      i128 v;
      toI128(fl, v);
      xsInt.push_back(v);
    }
  }

  if (fast) {
    const i128 limit = xsInt.back();
    i128 rawBound[2];
    for (int j = 0; j < 2; ++j) {
      Integer r = floorRoot(maxX, static_cast<unsigned long>(12 / fq.u[j]));
      Integer scale;
      mpz_pow_ui(scale.get_mpz_t(), fq.scaleBound.get_mpz_t(), static_cast<unsigned long>(fq.u[j]));
      Integer bound = (r + 1) * scale;
      if (!toI128(bound, rawBound[j])) rawBound[j] = (static_cast<i128>(1) << 125);
    }
    forEachCanonicalQ(phi.sourceWeights(), rep.sourceBound, threads, [&](unsigned wk, std::span<const std::int64_t> z) {
      WorkerState& ws = st[wk];
      ++ws.source;
      // powers of z0, z1
      i128 p0[64], p1[64];
      bool overflow = fq.maxK0 >= 64 || fq.maxK1 >= 64;
      if (!overflow) {
        p0[0] = p1[0] = 1;
        for (int k = 1; k <= fq.maxK0 && !overflow; ++k) overflow = mulOv(p0[k - 1], z[0], p0[k]);
        for (int k = 1; k <= fq.maxK1 && !overflow; ++k) overflow = mulOv(p1[k - 1], z[1], p1[k]);
      }
      i128 y[2] = {0, 0};
      for (int j = 0; j < 2 && !overflow; ++j)
        for (const auto& [k0, k1, cf] : fq.g[j].terms) {
          i128 t;
          if (mulOv(cf, p0[k0], t) || mulOv(t, p1[k1], t) || addOv(y[j], t, y[j])) {
            overflow = true;
            break;
          }
        }
      if (overflow) {
        std::vector<FieldElement> zz{FieldElement(static_cast<long>(z[0])), FieldElement(static_cast<long>(z[1]))};
        exactVisit(ws, zz);
        return;
      }
      // |y_j| <= X^{1/u_j} A^{u_j} for every image that can count
      if ((y[0] < 0 ? -y[0] : y[0]) > rawBound[0] || (y[1] < 0 ? -y[1] : y[1]) > rawBound[1]) return;
      if (y[0] == 0 && y[1] == 0) return;
      for (const auto& [q0, q1] : fq.primePowers) {
        while (y[0] % q0 == 0 && y[1] % q1 == 0) {
          y[0] /= q0;
          y[1] /= q1;
        }
      }
      // target weights (4,6) are even, so no sign normalization is needed
      i128 s0 = 0, s1 = 0;
      if (!powBounded(y[0], 12 / fq.u[0], limit, s0) || !powBounded(y[1], 12 / fq.u[1], limit, s1)) return;
      if (y[0] >= 0 && s0 == s1) return;  // cusp: c4^3 = c6^2
      i128 s12 = std::max(s0, s1);
      std::size_t b = std::lower_bound(xsInt.begin(), xsInt.end(), s12) - xsInt.begin();
      if (b >= xsInt.size()) return;
      if (!dedup) {
        ++ws.buckets[b];
        return;
      }
      ws.fast.emplace(std::pair<i128, i128>{y[0], y[1]}, b);
    });
  } else {
    forEachCanonical(F, phi.sourceWeights(), rep.sourceBound, threads, [&](unsigned wk, std::span<const FieldElement> z) {
      ++st[wk].source;
      exactVisit(st[wk], z);
    });
  }

  std::vector<std::uint64_t> buckets(xs.size(), 0);
  for (auto& s : st) {
    rep.sourcePoints += s.source;
    for (std::size_t k = 0; k < xs.size(); ++k) buckets[k] += s.buckets[k];
  }
  if (dedup) {
    std::unordered_set<std::pair<i128, i128>, I128PairHash> fastAll;
    std::set<std::vector<FieldElement>, decltype([](const std::vector<FieldElement>& a,
                                                    const std::vector<FieldElement>& b) {
               return compareTuples(a, b) < 0;
             })>
        exactAll;
    for (auto& s : st) {
      for (const auto& [key, b] : s.fast)
        if (fastAll.insert(key).second) ++buckets[b];
      for (const auto& [key, b] : s.exact) {
        // exact results over Q are integer pairs; share the key space with the fast path
        if (F.isRationals() && fast) {
          i128 a0, a1;
          if (toI128(key[0].rationalPart().get_num(), a0) && toI128(key[1].rationalPart().get_num(), a1)) {
            if (fastAll.insert({a0, a1}).second) ++buckets[b];
            continue;
          }
        }
        if (exactAll.insert(key).second) ++buckets[b];
      }
    }
  }
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    acc += buckets[k];
    rep.counts.push_back(acc);
  }
  if (xs.size() >= 4) {
    try {
      rep.fittedExponent = fitExponent(xs, rep.counts);
    } catch (const std::invalid_argument&) {
    }
  }
  return rep;
}

std::uint64_t countCurves(const LevelStructureFamily& fam, const NumberField& F, const Rational& X,
                          const CensusOptions& opt) {
  return census(fam, F, {X}, opt).counts.front();
}

double fitExponent(const std::vector<Rational>& xs, const std::vector<std::uint64_t>& counts) {
  if (xs.size() != counts.size()) throw std::invalid_argument("fitExponent: size mismatch");
  if (xs.size() < 4) throw std::invalid_argument("fitExponent needs at least 4 values of X");
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (counts[k] < 5) continue;
    lx.push_back(std::log(xs[k].get_d()));
    ly.push_back(std::log(static_cast<double>(counts[k])));
  }
  if (lx.size() < 2) throw std::invalid_argument("insufficient data");
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= lx.size();
  my /= ly.size();
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  if (sxx == 0) throw std::invalid_argument("insufficient data");
  return sxy / sxx;
}

CensusReport fitExponent(const LevelStructureFamily& fam, const NumberField& F, const std::vector<Rational>& xs,
                         const CensusOptions& opt) {
  if (xs.size() < 4) throw std::invalid_argument("fitExponent needs at least 4 values of X");
  CensusReport rep = census(fam, F, xs, opt);
  rep.fittedExponent = fitExponent(rep.xs, rep.counts);
  return rep;
}

Rational parseDecimal(const std::string& s0) {
  std::string s = s0;
  if (s.empty()) throw std::invalid_argument("empty number");
  if (s.find('/') != std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad number '" + s0 + "'");
    r.canonicalize();
    return r;
  }
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    try {
      std::size_t used = 0;
      exp10 = std::stol(s.substr(epos + 1), &used);
      if (used != s.size() - epos - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number '" + s0 + "'");
    }
    s = s.substr(0, epos);
  }
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  std::string digits;
  long frac = 0;
  bool dot = false;
  for (char ch : s) {
    if (ch == '.' && !dot) {
      dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits += ch;
      if (dot) ++frac;
    } else {
      throw std::invalid_argument("bad number '" + s0 + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad number '" + s0 + "'");
  if (exp10 > 4000 || exp10 < -4000) throw std::invalid_argument("exponent out of range in '" + s0 + "'");
  Integer n(digits, 10);
  long k = exp10 - frac;
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
  Rational r = k >= 0 ? Rational(n * p) : Rational(n, p);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

std::vector<Rational> parseXs(const std::string& spec) {
  std::vector<Rational> out;
  if (spec.find(':') != std::string::npos) {
    auto a = spec.find(':');
    auto b = spec.find(':', a + 1);
    if (b == std::string::npos) throw std::invalid_argument("X range must be start:end:xFACTOR");
    Rational lo = parseDecimal(spec.substr(0, a));
    Rational hi = parseDecimal(spec.substr(a + 1, b - a - 1));
    std::string step = spec.substr(b + 1);
    if (step.empty() || (step[0] != 'x' && step[0] != '*')) throw std::invalid_argument("X step must look like x10");
    Rational r = parseDecimal(step.substr(1));
    if (lo <= 0 || hi < lo || r <= 1) throw std::invalid_argument("bad X range '" + spec + "'");
    for (Rational x = lo; x <= hi; x *= r) {
      out.push_back(x);
      if (out.size() > 1000) throw std::invalid_argument("X range too long");
    }
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parseDecimal(item));
  }
  if (out.empty()) throw std::invalid_argument("no X values");
  for (const auto& x : out)
    if (x <= 0) throw std::invalid_argument("X must be positive");
  return out;
}

// -------------------------------------------------------------- containment

std::vector<ContainmentCase> containmentSuite(const std::vector<LevelStructureFamily>& fams, const Rational& qBound,
                                              const Rational& qiBound, double pointBudget, unsigned threads) {
  struct Source {
    std::string name;
    Weights w, u;
    GradedPoly f0, f1;
  };
  std::vector<Source> sources;
  for (const auto& f : fams) sources.push_back({f.id(), f.weights, Weights{4, 6}, f.c4, f.c6});
  const Weights w13{1, 3};
  sources.push_back({"square_P13", w13, w13, GradedPoly::monomial(w13, 2, 0, 1), GradedPoly::monomial(w13, 0, 2, 1)});
  std::vector<ContainmentCase> out;
  for (const NumberField& F : {NumberField(), NumberField::imaginaryQuadratic(-1)}) {
    const Rational& target = F.isRationals() ? qBound : qiBound;
    for (const auto& s : sources) {
      ContainmentCase c;
      c.name = s.name;
      c.field = F;
      c.target = target;
      c.used = target;
      double estimate = leadingConstant(F, s.w, 1e-6) * std::pow(target.get_d(), s.w.total());
      if (estimate > pointBudget) {
        // largest bound with one decimal whose estimate stays in budget
        double cap = std::pow(pointBudget / leadingConstant(F, s.w, 1e-6), 1.0 / s.w.total());
        c.used = Rational(static_cast<long>(std::floor(cap * 10)), 10);
        c.used.canonicalize();
        if (c.used < 1) c.used = 1;
      }
      WPLMorphism phi = makeMorphism(F, s.w, s.u, s.f0, s.f1);
      c.tally = containmentTally(phi, c.used, threads);
      out.push_back(c);
    }
  }
  return out;
}

// -------------------------------------------------------------------- table

const std::vector<TableRow>& tableRows() {
  static const std::vector<TableRow> rows = {
      {"G1(1)", 1, 4, 6, 1, Rational(6, 5)},
      {"G1(2)", 3, 2, 4, 1, Rational(2)},
      {"G1(3)", 8, 1, 3, 1, Rational(3)},
      {"G1(4)", 12, 1, 2, 1, Rational(4)},
      {"G1(5)", 24, 1, 1, 1, Rational(6)},
      {"G1(6)", 24, 1, 1, 1, Rational(6)},
      {"G1(7)", 48, 1, 1, 2, Rational(12)},
      {"G1(8)", 48, 1, 1, 2, Rational(12)},
      {"G1(9)", 72, 1, 1, 3, Rational(18)},
      {"G1(10)", 72, 1, 1, 3, Rational(18)},
      {"G1(12)", 96, 1, 1, 4, Rational(24)},
      {"G(2,2)", 6, 2, 2, 1, Rational(3)},
      {"G(2,4)", 24, 1, 1, 1, Rational(6)},
      {"G(2,6)", 48, 1, 1, 2, Rational(12)},
      {"G(2,8)", 96, 1, 1, 4, Rational(24)},
      {"G0(4)", 6, 2, 2, 1, Rational(3)},
      {"G(4,4)", 48, 1, 1, 2, Rational(12)},
      {"G0(8)&G1(4)", 24, 1, 1, 1, Rational(6)},
      {"G(3,3)", 24, 1, 1, 1, Rational(6)},
      {"G(3,6)", 72, 1, 1, 3, Rational(18)},
      {"G0(9)&G1(3)", 24, 1, 1, 1, Rational(6)},
      {"G(5,5)", 120, 1, 1, 5, Rational(30)},
  };
  return rows;
}

std::vector<TableCheck> tableIdentityReport(const std::vector<TableRow>& rows) {
  std::vector<TableCheck> out;
  for (const auto& r : rows) {
    Rational prod(r.w0 * r.w1 * r.sl2Index);
    Rational e = prod / 24;
    Rational d = prod / (2 * (r.w0 + r.w1));
    Rational dFromE = Rational(12 * r.e) / (r.w0 + r.w1);
    out.push_back({r.label, e == r.e, d == r.d, dFromE == r.d});
  }
  return out;
}

bool tableIdentityCheck(const std::vector<LevelStructureFamily>& fams) {
  bool ok = true;
  for (const auto& c : tableIdentityReport(tableRows())) ok = ok && c.ok();
  std::vector<TableRow> loaded;
  for (const auto& f : fams) {
    Rational d = f.dValue();
    loaded.push_back({f.label, f.sl2Index, f.weights[0], f.weights[1], f.reducedDegree, d});
    bool matched = false;
    for (const auto& r : tableRows()) {
      if (r.label != f.label) continue;
      matched = true;
      ok = ok && r.sl2Index == f.sl2Index && r.w0 == f.weights[0] && r.w1 == f.weights[1] && r.e == f.reducedDegree;
    }
    ok = ok && matched;
  }
  for (const auto& c : tableIdentityReport(loaded)) ok = ok && c.ok();
  return ok;
}

}  // namespace wpcount
