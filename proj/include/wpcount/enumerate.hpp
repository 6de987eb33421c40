#pragma once

// Points of P(w)(K) of size at most T, and the leading constant of their
// count T^{|w|}.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "wpcount/wpoint.hpp"

namespace wpcount {

struct CountReport {
  NumberField field;
  Weights weights;
  Rational bound;
  std::uint64_t exactCount = 0;
  double constant = 0;
  double mainTerm = 0;
  double relDeviation = 0;
};

/// Integer coordinate bounds floor(T^{w_i}) for the archimedean box.
std::vector<std::int64_t> boxBounds(const Weights& w, const Rational& T);

/// Visits canonical integral representatives over Q with size <= T. The
/// callback receives the index of the worker that found the tuple.
using QVisitor = std::function<void(unsigned worker, std::span<const std::int64_t> x)>;
void forEachCanonicalQ(const Weights& w, const Rational& T, unsigned threads, const QVisitor& visit);

/// Same over an arbitrary supported field.
using Visitor = std::function<void(unsigned worker, std::span<const FieldElement> x)>;
void forEachCanonical(const NumberField& F, const Weights& w, const Rational& T, unsigned threads,
                      const Visitor& visit);

/// Is x (integral over Q) the canonical representative of its point?
bool isCanonicalQ(const Weights& w, std::span<const std::int64_t> x);

std::vector<WeightedPoint> enumeratePoints(const NumberField& F, const Weights& w, const Rational& T,
                                           unsigned threads = 1);
std::uint64_t countPoints(const NumberField& F, const Weights& w, const Rational& T, unsigned threads = 1);

/// C_K^w.
double leadingConstant(const NumberField& F, const Weights& w, double relTol = 1e-8);

std::vector<CountReport> convergenceReport(const NumberField& F, const Weights& w,
                                           const std::vector<Rational>& Ts, unsigned threads = 1);

unsigned defaultThreads();

}  // namespace wpcount
