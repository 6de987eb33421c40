#include "wpcount/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace wpcount {

unsigned defaultThreads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

std::vector<std::int64_t> boxBounds(const Weights& w, const Rational& T) {
  if (T <= 0) throw std::invalid_argument("bound must be positive");
  std::vector<std::int64_t> B;
  for (int wi : w) {
    Integer b = floorRational(rationalPow(T, wi));
    if (!b.fits_slong_p() || b > (Integer(1) << 61)) throw std::overflow_error("bound too large to enumerate");
    B.push_back(b.get_si());
  }
  return B;
}

namespace {

// Runs body(worker, lo, hi) over [lo, hi] split into contiguous chunks.
template <class Body>
void splitRange(std::int64_t lo, std::int64_t hi, unsigned threads, Body body) {
  if (threads <= 1 || hi - lo < 64) {
    body(0u, lo, hi);
    return;
  }
  std::vector<std::thread> pool;
  std::int64_t n = hi - lo + 1;
  std::int64_t chunk = (n + threads - 1) / threads;
  unsigned worker = 0;
  for (std::int64_t a = lo; a <= hi; a += chunk, ++worker)
    pool.emplace_back(body, worker, a, std::min(hi, a + chunk - 1));
  for (auto& t : pool) t.join();
}

std::vector<std::int64_t> smallPrimeFactors(std::int64_t g) {
  std::vector<std::int64_t> ps;
  for (std::int64_t p = 2; p * p <= g; p += (p == 2 ? 1 : 2)) {
    if (g % p == 0) {
      ps.push_back(p);
      while (g % p == 0) g /= p;
    }
  }
  if (g > 1) ps.push_back(g);
  return ps;
}

}  // namespace

bool isCanonicalQ(const Weights& w, std::span<const std::int64_t> x) {
  std::int64_t g = 0;
  for (std::int64_t xi : x)
    if (xi != 0) g = gcd64(g, xi);
  if (g == 0) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0 && (w[i] & 1)) {
      if (x[i] < 0) return false;
      break;
    }
  }
  if (g == 1) return true;
  for (std::int64_t p : smallPrimeFactors(g)) {
    bool divides = true;
    for (std::size_t i = 0; i < x.size() && divides; ++i) {
      if (x[i] == 0) continue;
      std::int64_t v = x[i];
      for (int k = 0; k < w[i]; ++k) {
        if (v % p != 0) {
          divides = false;
          break;
        }
        v /= p;
      }
    }
    if (divides) return false;
  }
  return true;
}

void forEachCanonicalQ(const Weights& w, const Rational& T, unsigned threads, const QVisitor& visit) {
  const std::vector<std::int64_t> B = boxBounds(w, T);
  const std::size_t n = w.size();
  std::int64_t lo0 = (w[0] & 1) ? 0 : -B[0];
  splitRange(lo0, B[0], threads, [&](unsigned worker, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> x(n);
    for (std::int64_t x0 = lo; x0 <= hi; ++x0) {
      x[0] = x0;
      if (n == 1) {
        if (isCanonicalQ(w, x)) visit(worker, x);
        continue;
      }
      if (n == 2 && x0 != 0) {
        // (x0, x1) is reducible exactly when p^{w1} | x1 for a prime p with
        // p^{w0} | x0
        const std::int64_t a = x0 < 0 ? -x0 : x0;
        bool x0Reducible = false;
        std::vector<std::int64_t> bad;
        std::int64_t rest = a;
        for (std::int64_t p = 2; p * p <= rest || rest > 1; ++p) {
          if (p * p > rest) p = rest;
          if (rest % p != 0) continue;
          int v = 0;
          while (rest % p == 0) {
            rest /= p;
            ++v;
          }
          if (v < w[0]) continue;
          x0Reducible = true;
          std::int64_t q = 1;
          int k = 0;
          while (k < w[1] && q <= B[1]) {
            q *= p;
            ++k;
          }
          if (q <= B[1]) bad.push_back(q);
        }
        const bool needPositive = !(w[0] & 1) && (w[1] & 1);
        const std::int64_t start = needPositive ? 0 : -B[1];
        std::vector<std::int64_t> r(bad.size());
        for (std::size_t j = 0; j < bad.size(); ++j) r[j] = ((start % bad[j]) + bad[j]) % bad[j];
        for (std::int64_t x1 = start; x1 <= B[1]; ++x1) {
          bool ok = true;
          for (std::size_t j = 0; j < bad.size(); ++j) {
            if (r[j] == 0) ok = false;
            if (++r[j] == bad[j]) r[j] = 0;
          }
          if (x1 == 0) ok = !x0Reducible;
          if (ok) {
            x[1] = x1;
            visit(worker, x);
          }
        }
        continue;
      }
      // odometer over the remaining coordinates
      for (std::size_t i = 1; i < n; ++i) x[i] = -B[i];
      while (true) {
        if (isCanonicalQ(w, x)) visit(worker, x);
        std::size_t i = n - 1;
        while (i >= 1 && x[i] == B[i]) {
          x[i] = -B[i];
          --i;
        }
        if (i == 0) break;
        ++x[i];
      }
    }
  });
}

namespace {

struct LatticeElement {
  std::int64_t m, n;     // m + n*omega
  std::int64_t norm;
  std::int64_t ka, kb;   // integer keys ordered like (a, b) in a + b*sqrt d
};

struct QuadContext {
  NumberField F;
  bool half;
  std::int64_t k;        // N(omega) for the half basis
  int mu;
  bool omegaUnit;        // omega generates the unit group

  std::int64_t norm(std::int64_t m, std::int64_t n) const {
    return half ? m * m + m * n + k * n * n : m * m - static_cast<std::int64_t>(F.d()) * n * n;
  }
  void keys(std::int64_t m, std::int64_t n, std::int64_t& ka, std::int64_t& kb) const {
    if (half) {
      ka = 2 * m + n;
      kb = n;
    } else {
      ka = m;
      kb = n;
    }
  }
  // multiply by the generator of the unit group
  void step(std::int64_t& m, std::int64_t& n) const {
    if (!omegaUnit) {
      m = -m;
      n = -n;
    } else if (half) {
      std::int64_t nm = -k * n, nn = m + n;
      m = nm;
      n = nn;
    } else {
      std::int64_t nm = static_cast<std::int64_t>(F.d()) * n, nn = m;
      m = nm;
      n = nn;
    }
  }
};

int compareKey(std::int64_t x, std::int64_t y) {
  auto cls = [](std::int64_t q) { return q == 0 ? 0 : (q > 0 ? 1 : 2); };
  int cx = cls(x), cy = cls(y);
  if (cx != cy) return cx < cy ? -1 : 1;
  std::int64_t ax = x < 0 ? -x : x, ay = y < 0 ? -y : y;
  return ax < ay ? -1 : (ax > ay ? 1 : 0);
}

std::vector<LatticeElement> elementsUpToNorm(const QuadContext& c, std::int64_t B) {
  std::vector<LatticeElement> out;
  const long double md = -static_cast<long double>(c.F.d());
  std::int64_t nmax = c.half ? static_cast<std::int64_t>(std::sqrt(4.0L * B / md)) + 1
                             : static_cast<std::int64_t>(std::sqrt(B / md)) + 1;
  for (std::int64_t n = -nmax; n <= nmax; ++n) {
    std::int64_t mlo, mhi;
    long double s = c.half ? std::sqrt(std::max(0.0L, 4.0L * B - md * n * n)) : std::sqrt(std::max(0.0L, B - md * n * n));
    if (c.half) {
      mlo = static_cast<std::int64_t>(std::floor((-s - n) / 2)) - 1;
      mhi = static_cast<std::int64_t>(std::ceil((s - n) / 2)) + 1;
    } else {
      mlo = static_cast<std::int64_t>(-s) - 1;
      mhi = static_cast<std::int64_t>(s) + 1;
    }
    for (std::int64_t m = mlo; m <= mhi; ++m) {
      std::int64_t nv = c.norm(m, n);
      if (nv > B) continue;
      LatticeElement e{m, n, nv, 0, 0};
      c.keys(m, n, e.ka, e.kb);
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end(), [](const LatticeElement& a, const LatticeElement& b) {
    int c0 = compareKey(a.ka, b.ka);
    if (c0 != 0) return c0 < 0;
    return compareKey(a.kb, b.kb) < 0;
  });
  return out;
}

void forEachCanonicalQuad(const NumberField& F, const Weights& w, const Rational& T, unsigned threads,
                          const Visitor& visit) {
  QuadContext c{F, F.halfIntegralBasis(), (1 - F.d()) / 4, F.rootsOfUnity(), F.d() == -1 || F.d() == -3};
  const std::vector<std::int64_t> B = boxBounds(w, T);
  const std::size_t n = w.size();
  std::vector<std::vector<LatticeElement>> lists;
  for (std::size_t i = 0; i < n; ++i) lists.push_back(elementsUpToNorm(c, B[i]));
  // generator exponent per coordinate: unit u = zeta^j acts on x_i by zeta^{j w_i}
  const int steps = c.omegaUnit ? c.mu : 2;
  splitRange(0, static_cast<std::int64_t>(lists[0].size()) - 1, threads,
             [&](unsigned worker, std::int64_t lo, std::int64_t hi) {
    std::vector<std::size_t> idx(n, 0);
    std::vector<FieldElement> coords(n);
    std::vector<std::int64_t> tm(n), tn(n);
    for (std::int64_t i0 = lo; i0 <= hi; ++i0) {
      idx[0] = static_cast<std::size_t>(i0);
      for (std::size_t i = 1; i < n; ++i) idx[i] = 0;
      while (true) {
        bool keep = true;
        std::int64_t g = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const LatticeElement& e = lists[i][idx[i]];
          if (e.norm != 0) g = std::gcd(g, e.norm);
        }
        if (g == 0) keep = false;
        // unit orbit minimality
        for (int j = 1; keep && j < steps; ++j) {
          int cmpResult = 0;
          for (std::size_t i = 0; i < n && cmpResult == 0; ++i) {
            const LatticeElement& e = lists[i][idx[i]];
            std::int64_t m = e.m, nn = e.n;
            int reps = static_cast<int>((static_cast<long>(j) * w[i]) % steps);
            for (int r = 0; r < reps; ++r) c.step(m, nn);
            std::int64_t ka, kb;
            c.keys(m, nn, ka, kb);
            cmpResult = compareKey(ka, e.ka);
            if (cmpResult == 0) cmpResult = compareKey(kb, e.kb);
          }
          if (cmpResult < 0) keep = false;
        }
        if (keep) {
          for (std::size_t i = 0; i < n; ++i) {
            const LatticeElement& e = lists[i][idx[i]];
            coords[i] = FieldElement::fromIntegralBasis(F, Integer(static_cast<long>(e.m)), Integer(static_cast<long>(e.n)));
          }
          if (g != 1 && !scalingIdealOfTuple(F, w, coords).isUnit()) keep = false;
          if (keep) visit(worker, coords);
        }
        std::size_t i = n - 1;
        while (i >= 1 && idx[i] + 1 == lists[i].size()) {
          idx[i] = 0;
          --i;
        }
        if (i == 0 || n == 1) break;
        ++idx[i];
      }
    }
  });
}

}  // namespace

void forEachCanonical(const NumberField& F, const Weights& w, const Rational& T, unsigned threads,
                      const Visitor& visit) {
  if (F.isRationals()) {
    forEachCanonicalQ(w, T, threads, [&](unsigned worker, std::span<const std::int64_t> x) {
      std::vector<FieldElement> v;
      v.reserve(x.size());
      for (std::int64_t xi : x) v.emplace_back(static_cast<long>(xi));
      visit(worker, v);
    });
    return;
  }
  forEachCanonicalQuad(F, w, T, threads, visit);
}

std::vector<WeightedPoint> enumeratePoints(const NumberField& F, const Weights& w, const Rational& T,
                                           unsigned threads) {
  std::vector<std::vector<WeightedPoint>> parts(std::max(1u, threads));
  forEachCanonical(F, w, T, threads, [&](unsigned worker, std::span<const FieldElement> x) {
    parts[worker].push_back(normalize(F, w, x));
  });
  std::vector<WeightedPoint> out;
  for (auto& p : parts)
    for (auto& q : p) out.push_back(std::move(q));
  return out;
}

std::uint64_t countPoints(const NumberField& F, const Weights& w, const Rational& T, unsigned threads) {
  std::vector<std::uint64_t> counts(std::max(1u, threads), 0);
  if (F.isRationals()) {
    forEachCanonicalQ(w, T, threads, [&](unsigned worker, std::span<const std::int64_t>) { ++counts[worker]; });
  } else {
    forEachCanonical(F, w, T, threads, [&](unsigned worker, std::span<const FieldElement>) { ++counts[worker]; });
  }
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

double leadingConstant(const NumberField& F, const Weights& w, double relTol) {
  const int n1 = static_cast<int>(w.size());
  const int mu = F.rootsOfUnity();
  int g = mu;
  for (int wi : w) g = std::gcd(g, wi);
  const double muW = static_cast<double>(mu) / g;
  const double zeta = dedekindZeta(F, w.total(), relTol);
  const double local = std::pow(2.0, F.realPlaces()) * std::pow(2.0 * std::numbers::pi, F.complexPlaces()) /
                       std::sqrt(static_cast<double>(std::labs(F.discriminant())));
  const double hR = F.classNumber() * F.regulator();
  return hR / (muW * zeta) * std::pow(local, n1) *
         std::pow(static_cast<double>(w.total()), F.realPlaces() + F.complexPlaces() - 1);
}

std::vector<CountReport> convergenceReport(const NumberField& F, const Weights& w,
                                           const std::vector<Rational>& Ts, unsigned threads) {
  std::vector<CountReport> out;
  const double C = leadingConstant(F, w);
  for (const Rational& T : Ts) {
    CountReport r{F, w, T, countPoints(F, w, T, threads), C, 0, 0};
    r.mainTerm = C * std::pow(T.get_d(), w.total());
    r.relDeviation = static_cast<double>(r.exactCount) / r.mainTerm - 1;
    out.push_back(r);
  }
  return out;
}

}  // namespace wpcount
