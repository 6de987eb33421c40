#pragma once

// Points of P(w)(K), stored through a canonical representative: integral,
// scaling ideal (1), and minimal in its root-of-unity orbit.

#include <span>
#include <string>
#include <vector>

#include "wpcount/numfield.hpp"
#include "wpcount/weights.hpp"

namespace wpcount {

class WeightedPoint {
 public:
  const NumberField& field() const { return field_; }
  const Weights& weights() const { return w_; }
  const std::vector<FieldElement>& coords() const { return x_; }
  std::string toString() const;

  friend bool operator==(const WeightedPoint& a, const WeightedPoint& b) {
    return a.field_ == b.field_ && a.w_ == b.w_ && a.x_ == b.x_;
  }

 private:
  friend WeightedPoint normalize(const NumberField&, const Weights&, std::span<const FieldElement>);
  NumberField field_;
  Weights w_;
  std::vector<FieldElement> x_;
};

/// lambda ._w x = (lambda^{w_i} x_i).
std::vector<FieldElement> actBy(const Weights& w, const FieldElement& lambda,
                                std::span<const FieldElement> x);

/// Lexicographic comparison of coordinate tuples via compareCanonical.
int compareTuples(std::span<const FieldElement> a, std::span<const FieldElement> b);

WeightedPoint normalize(const NumberField& F, const Weights& w, std::span<const FieldElement> coords);

/// S_{w,K}(p) as a double; for reporting only.
double size(const WeightedPoint& p);

/// S(p)^L exactly, L a common multiple of the weights.
Rational sizePowerExact(const WeightedPoint& p, long L);

/// Same quantity for an arbitrary representative x.
Rational sizePowerExact(const NumberField& F, const Weights& w, std::span<const FieldElement> x, long L);

/// Archimedean part only: prod_v max_i |x_i|_v^{L/w_i}.
Rational archSizePowerExact(const NumberField& F, const Weights& w, std::span<const FieldElement> x, long L);

bool equalPoints(const WeightedPoint& p, const WeightedPoint& q);

}  // namespace wpcount
