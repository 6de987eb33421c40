#include "wpcount/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wpcount/census.hpp"
#include "wpcount/enumerate.hpp"
#include "wpcount/graded.hpp"

namespace wpcount {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Cell {
  std::string text;
  json value;
};

Cell str(const std::string& s) { return {s, s}; }
Cell num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return {buf, x};
}
Cell integer(std::uint64_t n) { return {std::to_string(n), n}; }
Cell boolean(bool b) { return {b ? "true" : "false", b}; }
Cell rational(const Rational& q) { return {q.get_str(), q.get_str()}; }
Cell empty() { return {"", nullptr}; }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  void add(std::vector<Cell> r) { rows.push_back(std::move(r)); }
};

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void emit(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json a = json::array();
    for (const auto& r : t.rows) {
      json o = json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r[i].value;
      a.push_back(o);
    }
    out << a.dump(1) << "\n";
    return;
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csvField(r[i].text);
    out << "\n";
  }
}

template <class F>
auto usage(F&& f) {
  try {
    return f();
  } catch (const std::exception& ex) {
    throw UsageError(ex.what());
  }
}

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Rational> parseBounds(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parseDecimal(item));
  if (out.empty()) throw std::invalid_argument("no bound given");
  for (const auto& b : out)
    if (b < 1) throw std::invalid_argument("bounds must be at least 1");
  return out;
}

struct Config {
  std::string format = "csv";
  unsigned threads = 0;
  std::string familiesPath;
  std::string field = "Q";
  std::string weights;
  std::string bound;
  double relTol = 1e-8;
  std::string morphismPath;
  std::string family;
  int index = 0;
  int grid = 400;
  std::string maxX;
  std::string xs;
  double safety = 2.0;
  std::string suite;
  int samples = 20;
  std::string qBound = "20";
  std::string qiBound = "10";
  double budget = 1e6;
  bool exact = false;
  std::size_t limit = 0;

  unsigned threadCount() const { return threads ? threads : defaultThreads(); }
};

std::vector<LevelStructureFamily> families(const Config& c) {
  std::string path = c.familiesPath.empty() ? defaultFamiliesPath() : c.familiesPath;
  return usage([&] { return loadFamilies(path); });
}

WPLMorphism morphismFrom(const Config& c, const NumberField& F) {
  if (!c.morphismPath.empty() && !c.family.empty()) throw UsageError("give either --morphism or --family");
  if (!c.morphismPath.empty()) {
    std::string text = readFile(c.morphismPath);
    return usage([&] { return morphismFromJson(text); });
  }
  if (c.family.empty()) throw UsageError("--morphism or --family is required");
  auto fams = families(c);
  const LevelStructureFamily& f = usage([&]() -> const LevelStructureFamily& { return findFamily(fams, c.family); });
  if (F.isRationals()) return f.phi;
  return makeMorphism(F, f.weights, Weights{4, 6}, f.c4, f.c6);
}

// ------------------------------------------------------------ subcommands

int cmdCount(const Config& c, std::ostream& out) {
  NumberField F = usage([&] { return NumberField::parse(c.field); });
  Weights w = usage([&] { return Weights::parse(c.weights); });
  auto Ts = usage([&] { return parseBounds(c.bound); });
  Table t{{"field", "weights", "T", "count", "constant", "main_term", "rel_deviation"}, {}};
  for (const CountReport& r : convergenceReport(F, w, Ts, c.threadCount()))
    t.add({str(F.name()), str(w.toString()), rational(r.bound), integer(r.exactCount), num(r.constant),
           num(r.mainTerm), num(r.relDeviation)});
  emit(t, c.format, out);
  return 0;
}

int cmdConstant(const Config& c, std::ostream& out) {
  NumberField F = usage([&] { return NumberField::parse(c.field); });
  Weights w = usage([&] { return Weights::parse(c.weights); });
  if (!(c.relTol > 0 && c.relTol < 1)) throw UsageError("--rel-tol must lie in (0, 1)");
  Table t{{"field", "weights", "constant"}, {}};
  t.add({str(F.name()), str(w.toString()), num(leadingConstant(F, w, c.relTol))});
  emit(t, c.format, out);
  return 0;
}

int cmdEnumerate(const Config& c, std::ostream& out) {
  NumberField F = usage([&] { return NumberField::parse(c.field); });
  Weights w = usage([&] { return Weights::parse(c.weights); });
  Rational T = usage([&] { return parseBounds(c.bound).front(); });
  std::vector<WeightedPoint> pts = enumeratePoints(F, w, T, c.threadCount());
  std::sort(pts.begin(), pts.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
    return compareTuples(a.coords(), b.coords()) < 0;
  });
  Table t{{"point", "size"}, {}};
  for (std::size_t i = 0; i < pts.size() && (c.limit == 0 || i < c.limit); ++i)
    t.add({str(pts[i].toString()), num(size(pts[i]))});
  emit(t, c.format, out);
  return 0;
}

int cmdMorphismCheck(const Config& c, std::ostream& out) {
  NumberField F = usage([&] { return NumberField::parse(c.field); });
  WPLMorphism phi = morphismFrom(c, F);
  Rational T = usage([&] { return parseBounds(c.bound.empty() ? "10" : c.bound).front(); });
  if (c.grid < 100) throw UsageError("--grid must be at least 100");
  ContainmentTally tally = containmentTally(phi, T, c.threadCount());
  SizeComparison s = sizeComparisonReport(phi, T, c.grid);
  Table t{{"field", "source_weights", "target_weights", "e", "T", "points", "upper_failures", "lower_failures",
           "min_ratio", "max_ratio", "qv_grid_min", "qv_grid_max", "lower_bound", "upper_bound", "two_sided"},
          {}};
  t.add({str(phi.field().name()), str(phi.sourceWeights().toString()), str(phi.targetWeights().toString()),
         integer(phi.reducedDegree()), rational(T), integer(tally.points), integer(tally.upperFailures),
         integer(tally.lowerFailures), num(s.minRatio), num(s.maxRatio), num(s.qvGridMin), num(s.qvGridMax),
         num(s.lowerBound), num(s.upperBound), boolean(s.twoSided)});
  emit(t, c.format, out);
  return tally.upperFailures + tally.lowerFailures == 0 ? 0 : 1;
}

int cmdRelation(const Config& c, std::ostream& out) {
  NumberField F = usage([&] { return NumberField::parse(c.field); });
  WPLMorphism phi = morphismFrom(c, F);
  if (c.index != 0 && c.index != 1) throw UsageError("--index must be 0 or 1");
  IntegralRelation rel = integralRelation(phi, c.index);
  bool exact = relationResidual(phi, rel).isZero();
  Table t{{"index", "delta", "nu", "m", "l", "coefficient", "ideal", "residual_zero"}, {}};
  for (int l = 1; l <= rel.m; ++l) {
    const GradedPoly& g = rel.g[l - 1];
    t.add({integer(rel.index), integer(rel.delta), integer(rel.nu), integer(rel.m), integer(l),
           str(g.isZero() ? "0" : g.toString("y0", "y1")), str(rel.c[l - 1] ? rel.c[l - 1]->toString() : "0"),
           boolean(exact)});
  }
  emit(t, c.format, out);
  return exact ? 0 : 1;
}

std::vector<Rational> censusXs(const Config& c) {
  if (!c.xs.empty() && !c.maxX.empty()) throw UsageError("give either --xs or --max-x");
  if (!c.xs.empty()) return usage([&] { return parseXs(c.xs); });
  if (c.maxX.empty()) throw UsageError("--max-x or --xs is required");
  Rational top = usage([&] { return parseDecimal(c.maxX); });
  if (top <= 0) throw UsageError("--max-x must be positive");
  std::vector<Rational> xs;
  Rational x = top;
  for (int k = 0; k < 6 && x >= 1; ++k, x /= 10) xs.push_back(x);
  std::reverse(xs.begin(), xs.end());
  return xs;
}

void censusRows(Table& t, const CensusReport& r) {
  for (std::size_t k = 0; k < r.xs.size(); ++k)
    t.add({str(familyId(r.label)), str(r.field.name()), rational(r.xs[k]), integer(r.counts[k]),
           num(r.expectedExponent.get_d()), r.fittedExponent ? num(*r.fittedExponent) : empty(), num(r.slack)});
}

const std::vector<std::string> kCensusColumns = {"family", "field", "X", "count", "expected_exponent",
                                                 "fitted_exponent", "slack"};

CensusOptions censusOptions(const Config& c) {
  if (!(c.safety >= 1)) throw UsageError("--safety must be at least 1");
  CensusOptions o;
  o.safety = c.safety;
  o.threads = c.threadCount();
  o.gridN = c.grid;
  o.forceExact = c.exact;
  return o;
}

int cmdCensus(const Config& c, std::ostream& out, bool fit) {
  NumberField F = usage([&] { return NumberField::parse(c.field); });
  if (c.family.empty()) throw UsageError("--family is required");
  auto fams = families(c);
  const LevelStructureFamily& fam = usage([&]() -> const LevelStructureFamily& { return findFamily(fams, c.family); });
  std::vector<Rational> xs = censusXs(c);
  if (fit && xs.size() < 4) throw UsageError("fit needs at least 4 values of X");
  CensusOptions o = censusOptions(c);
  CensusReport r = fit ? fitExponent(fam, F, xs, o) : census(fam, F, xs, o);
  Table t{kCensusColumns, {}};
  censusRows(t, r);
  emit(t, c.format, out);
  return 0;
}

// ----------------------------------------------------------------- verify

int verifyContainments(const Config& c, std::ostream& out) {
  auto fams = families(c);
  Rational tq = usage([&] { return parseDecimal(c.qBound); });
  Rational ti = usage([&] { return parseDecimal(c.qiBound); });
  if (tq < 1 || ti < 1) throw UsageError("bounds must be at least 1");
  if (!(c.budget > 0)) throw UsageError("--budget must be positive");
  Table t{{"case", "field", "T", "T_used", "points", "upper_failures", "lower_failures", "result"}, {}};
  bool ok = true;
  for (const ContainmentCase& k : containmentSuite(fams, tq, ti, c.budget, c.threadCount())) {
    ok = ok && k.pass();
    std::string result = !k.pass() ? "FAIL" : k.complete() ? "pass" : "pass at reduced bound";
    t.add({str(k.name), str(k.field.name()), rational(k.target), rational(k.used), integer(k.tally.points),
           integer(k.tally.upperFailures), integer(k.tally.lowerFailures), str(result)});
  }
  emit(t, c.format, out);
  return ok ? 0 : 1;
}

int verifyTable(const Config& c, std::ostream& out) {
  auto fams = families(c);
  Table t{{"label", "index", "weights", "e", "d", "e_identity", "d_identity", "d_formula", "result"}, {}};
  auto checks = tableIdentityReport(tableRows());
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const TableRow& r = tableRows()[k];
    t.add({str(r.label), integer(r.sl2Index), str(std::to_string(r.w0) + "," + std::to_string(r.w1)), integer(r.e),
           rational(r.d), boolean(checks[k].eIdentity), boolean(checks[k].dIdentity), boolean(checks[k].dFormula),
           str(checks[k].ok() ? "pass" : "FAIL")});
  }
  bool ok = tableIdentityCheck(fams);
  t.add({str("families file"), empty(), empty(), empty(), empty(), empty(), empty(), empty(),
         str(ok ? "pass" : "FAIL")});
  emit(t, c.format, out);
  return ok ? 0 : 1;
}

int verifyFamilies(const Config& c, std::ostream& out) {
  auto fams = families(c);
  if (c.samples < 1) throw UsageError("--samples must be positive");
  Table t{{"family", "samples", "torsion_checks", "failures", "first_failure", "result"}, {}};
  bool ok = true;
  for (const auto& f : fams) {
    ValidationReport r = validateFamily(f, c.samples);
    ok = ok && r.ok();
    t.add({str(f.id()), integer(r.samples), integer(r.torsionChecksRun), integer(r.failures.size()),
           str(r.failures.empty() ? "" : r.failures.front()), str(r.ok() ? "pass" : "FAIL")});
  }
  emit(t, c.format, out);
  return ok ? 0 : 1;
}

int verifyAsymptotics(const Config& c, std::ostream& out) {
  struct Case {
    NumberField F;
    Weights w;
    Rational T;
    double tol;
  };
  std::vector<Case> cases = {{NumberField(), Weights{1, 1}, Rational(100), 0.02},
                             {NumberField(), Weights{4, 6}, Rational(3), 0.05},
                             {NumberField::imaginaryQuadratic(-1), Weights{1, 1}, Rational(50), 0.05}};
  Table t{{"field", "weights", "T", "count", "main_term", "rel_deviation", "tolerance", "result"}, {}};
  bool ok = true;
  for (const auto& k : cases) {
    CountReport r = convergenceReport(k.F, k.w, {k.T}, c.threadCount()).front();
    bool pass = std::abs(r.relDeviation) <= k.tol;
    ok = ok && pass;
    t.add({str(k.F.name()), str(k.w.toString()), rational(k.T), integer(r.exactCount), num(r.mainTerm),
           num(r.relDeviation), num(k.tol), str(pass ? "pass" : "FAIL")});
  }
  emit(t, c.format, out);
  return ok ? 0 : 1;
}

int cmdVerify(const Config& c, std::ostream& out) {
  if (c.suite == "containments") return verifyContainments(c, out);
  if (c.suite == "table1") return verifyTable(c, out);
  if (c.suite == "families") return verifyFamilies(c, out);
  if (c.suite == "asymptotics") return verifyAsymptotics(c, out);
  throw UsageError("unknown suite '" + c.suite + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting points of bounded size on weighted projective spaces", "wpcount"};
  app.require_subcommand(1);
  Config c;
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", c.threads, "worker threads (default: all cores)");
  app.add_option("--families", c.familiesPath, "families file (default: $WPCOUNT_FAMILIES or the shipped file)");

  auto fieldOpt = [&](CLI::App* s) { s->add_option("--field", c.field, "Q, Qi or Qsqrt-d"); };
  auto* count = app.add_subcommand("count", "count points of size <= T and compare with C T^|w|");
  fieldOpt(count);
  count->add_option("--weights", c.weights, "e.g. 4,6")->required();
  count->add_option("--bound", c.bound, "T, or a comma list")->required();

  auto* constant = app.add_subcommand("constant", "leading constant of the point count");
  fieldOpt(constant);
  constant->add_option("--weights", c.weights)->required();
  constant->add_option("--rel-tol", c.relTol, "relative tolerance for the zeta value");

  auto* enumerate = app.add_subcommand("enumerate", "list canonical points of size <= T");
  fieldOpt(enumerate);
  enumerate->add_option("--weights", c.weights)->required();
  enumerate->add_option("--bound", c.bound)->required();
  enumerate->add_option("--limit", c.limit, "print at most this many points");

  auto* mcheck = app.add_subcommand("morphism-check", "containments and size ratios for a morphism");
  fieldOpt(mcheck);
  mcheck->add_option("--morphism", c.morphismPath, "morphism JSON file");
  mcheck->add_option("--family", c.family, "use a family's morphism to P(4,6)");
  mcheck->add_option("--bound", c.bound, "source size bound (default 10)");
  mcheck->add_option("--grid", c.grid, "grid points for q_v");

  auto* relation = app.add_subcommand("relation", "monic integral relation for x_i^delta");
  fieldOpt(relation);
  relation->add_option("--morphism", c.morphismPath);
  relation->add_option("--family", c.family);
  relation->add_option("--index", c.index, "0 or 1");

  auto* census = app.add_subcommand("census", "count curves with a level structure");
  auto* fit = app.add_subcommand("fit", "fit the growth exponent of the census");
  for (CLI::App* s : {census, fit}) {
    fieldOpt(s);
    s->add_option("--family", c.family, "e.g. G1_5")->required();
    s->add_option("--xs", c.xs, "start:end:xFACTOR or a comma list");
    s->add_option("--safety", c.safety, "completeness safety factor (default 2)");
    s->add_option("--grid", c.grid);
    s->add_flag("--exact", c.exact, "skip the machine-integer evaluation");
  }
  census->add_option("--max-x", c.maxX, "largest X");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", c.suite)
      ->required()
      ->check(CLI::IsMember({"containments", "table1", "families", "asymptotics"}));
  verify->add_option("--samples", c.samples, "specializations per family");
  verify->add_option("--q-bound", c.qBound, "source bound over Q for containments");
  verify->add_option("--qi-bound", c.qiBound, "source bound over Q(i) for containments");
  verify->add_option("--budget", c.budget, "largest estimated point count per containment case");

  for (CLI::App* s : app.get_subcommands({})) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (count->parsed()) return cmdCount(c, out);
    if (constant->parsed()) return cmdConstant(c, out);
    if (enumerate->parsed()) return cmdEnumerate(c, out);
    if (mcheck->parsed()) return cmdMorphismCheck(c, out);
    if (relation->parsed()) return cmdRelation(c, out);
    if (census->parsed()) return cmdCensus(c, out, false);
    if (fit->parsed()) return cmdCensus(c, out, true);
    if (verify->parsed()) return cmdVerify(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << app.help();
  return 2;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"wpcount"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace wpcount
