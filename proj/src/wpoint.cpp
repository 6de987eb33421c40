#include "wpcount/wpoint.hpp"

#include <algorithm>
#include <stdexcept>

namespace wpcount {

std::vector<FieldElement> actBy(const Weights& w, const FieldElement& lambda,
                                std::span<const FieldElement> x) {
  if (x.size() != w.size()) throw std::invalid_argument("actBy: length mismatch");
  std::vector<FieldElement> y;
  y.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y.push_back(lambda.pow(w[i]) * x[i]);
  return y;
}

int compareTuples(std::span<const FieldElement> a, std::span<const FieldElement> b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    int c = compareCanonical(a[i], b[i]);
    if (c != 0) return c;
  }
  return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

WeightedPoint normalize(const NumberField& F, const Weights& w, std::span<const FieldElement> coords) {
  if (coords.size() != w.size()) throw std::invalid_argument("normalize: length mismatch");
  if (std::all_of(coords.begin(), coords.end(), [](const FieldElement& x) { return x.isZero(); }))
    throw std::invalid_argument("normalize: all coordinates zero");
  FractionalIdeal I = scalingIdealOfTuple(F, w, coords);
  std::vector<FieldElement> y(coords.begin(), coords.end());
  if (!I.isUnit()) y = actBy(w, I.generator().inverse(), y);
  std::vector<FieldElement> best = y;
  for (const FieldElement& u : units(F)) {
    std::vector<FieldElement> c = actBy(w, u, y);
    if (compareTuples(c, best) < 0) best = std::move(c);
  }
  for (auto& c : best)
    if (c.isZero()) c = FieldElement(F, 0);
  WeightedPoint p;
  p.field_ = F;
  p.w_ = w;
  p.x_ = std::move(best);
  return p;
}

std::string WeightedPoint::toString() const {
  std::string s = "[";
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (i) s += " : ";
    s += x_[i].isRational() ? x_[i].toString() : "(" + x_[i].toString() + ")";
  }
  return s + "]";
}

double size(const WeightedPoint& p) {
  return archSize(p.field(), p.weights(), p.coords());
}

Rational archSizePowerExact(const NumberField& F, const Weights& w, std::span<const FieldElement> x, long L) {
  if (x.size() != w.size()) throw std::invalid_argument("sizePowerExact: length mismatch");
  for (int wi : w)
    if (L <= 0 || L % wi != 0) throw std::invalid_argument("sizePowerExact: L must be a common multiple of the weights");
  Rational best = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].isZero()) continue;
    Rational v = rationalPow(x[i].placeAbs(F), L / w[i]);
    if (v > best) best = v;
  }
  return best;
}

Rational sizePowerExact(const NumberField& F, const Weights& w, std::span<const FieldElement> x, long L) {
  Rational arch = archSizePowerExact(F, w, x, L);
  if (arch == 0) throw std::invalid_argument("sizePowerExact: all coordinates zero");
  Rational n = scalingIdealOfTuple(F, w, x).norm();
  return arch / rationalPow(n, L);
}

Rational sizePowerExact(const WeightedPoint& p, long L) {
  return archSizePowerExact(p.field(), p.weights(), p.coords(), L);
}

bool equalPoints(const WeightedPoint& p, const WeightedPoint& q) {
  if (!(p.field() == q.field()) || !(p.weights() == q.weights()))
    throw std::invalid_argument("equalPoints: field or weights differ");
  return p.coords() == q.coords();
}

}  // namespace wpcount
