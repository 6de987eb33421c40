#include "wpcount/linalg.hpp"

#include <stdexcept>

namespace wpcount::linalg {

u64 powMod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulMod(r, a, p);
    a = mulMod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::vector<u64> largePrimes(std::size_t count, const Integer& avoid, u64 start) {
  std::vector<u64> out;
  for (u64 n = start - 1; out.size() < count; n -= 2) {
    if ((n & 1) == 0) --n;
    Integer z(static_cast<unsigned long>(n));
    if (!isPrime(z)) continue;
    if (avoid != 0 && mpz_divisible_ui_p(avoid.get_mpz_t(), n)) continue;
    out.push_back(n);
  }
  return out;
}

u64 reduceRational(const Rational& q, u64 p) {
  Integer pz(static_cast<unsigned long>(p));
  Integer n = q.get_num() % pz;
  if (n < 0) n += pz;
  Integer d = q.get_den() % pz;
  if (d == 0) throw std::domain_error("reduceRational: prime divides denominator");
  return mulMod(n.get_ui(), invMod(d.get_ui(), p), p);
}

ModResult solveMod(std::vector<std::vector<u64>> A, std::vector<u64> b, u64 p) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  ModResult res;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[r]);
    std::swap(b[piv], b[r]);
    u64 inv = invMod(A[r][c], p);
    for (std::size_t j = c; j < cols; ++j) A[r][j] = mulMod(A[r][j], inv, p);
    b[r] = mulMod(b[r], inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      u64 f = A[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (A[r][j] == 0) continue;
        u64 t = mulMod(f, A[r][j], p);
        A[i][j] = A[i][j] >= t ? A[i][j] - t : A[i][j] + p - t;
      }
      u64 t = mulMod(f, b[r], p);
      b[i] = b[i] >= t ? b[i] - t : b[i] + p - t;
    }
    res.pivotColumns.push_back(static_cast<int>(c));
    ++r;
  }
  res.rank = static_cast<int>(r);
  res.consistent = true;
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) res.consistent = false;
  if (res.consistent) {
    res.solution.assign(cols, 0);
    for (std::size_t k = 0; k < r; ++k) res.solution[res.pivotColumns[k]] = b[k];
  }
  return res;
}

std::optional<std::vector<FieldElement>> solveExact(std::vector<std::vector<FieldElement>> A,
                                                    std::vector<FieldElement> b, int* rank) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A[piv][c].isZero()) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[r]);
    std::swap(b[piv], b[r]);
    FieldElement inv = A[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) A[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c].isZero()) continue;
      FieldElement f = A[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!A[r][j].isZero()) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    pivots.push_back(c);
    ++r;
  }
  if (rank) *rank = static_cast<int>(r);
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].isZero()) return std::nullopt;
  std::vector<FieldElement> x(cols, FieldElement(0L));
  for (std::size_t k = 0; k < r; ++k) x[pivots[k]] = b[k];
  return x;
}

}  // namespace wpcount::linalg
