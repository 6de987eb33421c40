#pragma once

#include <numeric>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpcount {

/// Weights (w_0, ..., w_n) of a weighted projective space; all entries >= 1.
class Weights {
 public:
  Weights() = default;
  Weights(std::initializer_list<int> w) : w_(w) { validate(); }
  explicit Weights(std::vector<int> w) : w_(std::move(w)) { validate(); }

  /// Parses "4,6".
  static Weights parse(const std::string& text);

  std::size_t size() const { return w_.size(); }
  int operator[](std::size_t i) const { return w_[i]; }
  const std::vector<int>& values() const { return w_; }
  auto begin() const { return w_.begin(); }
  auto end() const { return w_.end(); }

  int total() const { return std::accumulate(w_.begin(), w_.end(), 0); }
  long lcm() const {
    long l = 1;
    for (int w : w_) l = std::lcm(l, static_cast<long>(w));
    return l;
  }
  int gcd() const {
    int g = 0;
    for (int w : w_) g = std::gcd(g, w);
    return g;
  }

  std::string toString() const;

  friend bool operator==(const Weights&, const Weights&) = default;
  friend auto operator<=>(const Weights&, const Weights&) = default;

 private:
  void validate() const {
    if (w_.empty()) throw std::invalid_argument("weights: empty");
    for (int w : w_)
      if (w < 1) throw std::invalid_argument("weights: entries must be positive");
  }
  std::vector<int> w_;
};

inline Weights Weights::parse(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("weights: cannot parse '" + text + "'");
    }
    if (used != item.size()) throw std::invalid_argument("weights: cannot parse '" + text + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return Weights(std::move(out));
}

inline std::string Weights::toString() const {
  std::string s;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(w_[i]);
  }
  return s;
}

}  // namespace wpcount
