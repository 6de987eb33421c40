#pragma once

// Level-structure families of elliptic curves as morphisms P(w) -> P(4,6),
// and counts of the curves they parametrize.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wpcount/elliptic.hpp"
#include "wpcount/graded.hpp"

namespace wpcount {

struct TorsionCheck {
  enum class Kind { MarkedPointOrder, ExistsPointOfOrder, FullTwoTorsion };
  Kind kind = Kind::FullTwoTorsion;
  int order = 0;
  std::string x = "0", y = "0";  // marked point, in the model's coordinates
  std::string toString() const;
};

struct LevelStructureFamily {
  std::string label;
  std::string congruenceLabel;
  int level = 1;
  int sl2Index = 1;
  NumberField baseField;
  Weights weights{1, 1};
  int reducedDegree = 1;
  /// (c4, c6) exactly as stored; phi is their canonical form.
  GradedPoly c4, c6;
  WPLMorphism phi;
  /// a1, a2, a3, a4, a6 of a model with these invariants, when shipped.
  std::optional<std::array<GradedPoly, 5>> model;
  std::vector<TorsionCheck> torsionChecks;
  std::string provenance;

  /// "G1(5)" -> "G1_5", "G(2,4)" -> "G_2_4".
  std::string id() const;
  /// 1/d(G) = (w0 + w1) / (12 e).
  Rational expectedExponent() const;
  Rational dValue() const;
};

std::string familyId(const std::string& label);

/// Reads and validates a families file. Errors name the offending row.
std::vector<LevelStructureFamily> loadFamilies(const std::string& path);
std::vector<LevelStructureFamily> parseFamilies(const std::string& jsonText);
const LevelStructureFamily& findFamily(const std::vector<LevelStructureFamily>& fams, const std::string& idOrLabel);
/// Compiled-in default, overridden by WPCOUNT_FAMILIES.
std::string defaultFamiliesPath();

struct ValidationReport {
  std::string label;
  int samples = 0;
  int torsionChecksRun = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty() && samples > 0; }
};

/// Checks the family on sampleCount random nonsingular specializations.
ValidationReport validateFamily(const LevelStructureFamily& fam, int sampleCount, std::uint64_t seed = 1);

struct CensusOptions {
  double safety = 2.0;
  unsigned threads = 1;
  int gridN = 400;
  /// Evaluate through GradedPoly and normalize() instead of the integer fast path.
  bool forceExact = false;
};

struct CensusReport {
  std::string label;
  NumberField field;
  std::vector<Rational> xs;
  std::vector<std::uint64_t> counts;
  Rational expectedExponent;
  std::optional<double> fittedExponent;
  /// Source bound divided by X^{1/(12e)} for the largest X.
  double slack = 0;
  Rational sourceBound;
  std::uint64_t sourcePoints = 0;
};

/// Lower constant c with S(phi(z)) >= c S(z)^e, from the relation ideals and
/// the padded grid infimum of q_v.
double lowerSizeConstant(const WPLMorphism& phi, int gridN = 400);

/// Source size bound guaranteeing completeness for S(phi(z))^12 <= X.
Rational sourceBound(const WPLMorphism& phi, const Rational& X, double lowerConstant, double safety);

/// N(X) for every X in xs from a single enumeration.
CensusReport census(const LevelStructureFamily& fam, const NumberField& F, std::vector<Rational> xs,
                    const CensusOptions& opt = {});
std::uint64_t countCurves(const LevelStructureFamily& fam, const NumberField& F, const Rational& X,
                          const CensusOptions& opt = {});

/// Least-squares slope of log N against log X over the points with N >= 5.
double fitExponent(const std::vector<Rational>& xs, const std::vector<std::uint64_t>& counts);
CensusReport fitExponent(const LevelStructureFamily& fam, const NumberField& F, const std::vector<Rational>& xs,
                         const CensusOptions& opt = {});

/// "1e8:1e14:x10", or a comma list.
std::vector<Rational> parseXs(const std::string& spec);
Rational parseDecimal(const std::string& s);

struct ContainmentCase {
  std::string name;
  NumberField field;
  Rational target, used;  // requested and enumerated source bounds
  ContainmentTally tally;
  bool complete() const { return used == target; }
  bool pass() const { return tally.points > 0 && tally.upperFailures == 0 && tally.lowerFailures == 0; }
};

/// Every family morphism and the squaring map on P(1,3), over Q up to qBound
/// and over Q(i) up to qiBound. A case whose estimated point count exceeds
/// pointBudget runs at the largest bound that fits.
std::vector<ContainmentCase> containmentSuite(const std::vector<LevelStructureFamily>& fams, const Rational& qBound,
                                              const Rational& qiBound, double pointBudget, unsigned threads = 1);

struct TableRow {
  std::string label;
  int sl2Index;
  int w0, w1;
  int e;
  Rational d;
};
const std::vector<TableRow>& tableRows();

struct TableCheck {
  std::string label;
  bool eIdentity, dIdentity, dFormula;
  bool ok() const { return eIdentity && dIdentity && dFormula; }
};
std::vector<TableCheck> tableIdentityReport(const std::vector<TableRow>& rows);
/// All compiled rows plus the loaded families must satisfy the identities.
bool tableIdentityCheck(const std::vector<LevelStructureFamily>& fams);

}  // namespace wpcount
