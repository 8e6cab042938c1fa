#include <stdexcept>
#include <string>
#include <utility>

#include "semid/matroid.hpp"

namespace semid {

namespace {

constexpr int kExactRankEntryCap = 400;

// Fraction-free Gaussian elimination with column skipping; every update is an
// exact division by the previous pivot.
int bareiss_rank(std::vector<std::vector<Polynomial>> a, int nvars) {
  const auto rows = static_cast<int>(a.size());
  if (rows == 0) return 0;
  const auto cols = static_cast<int>(a.front().size());
  Polynomial prev = Polynomial::constant(nvars, Rational(1));
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (a[r][c].is_zero()) continue;
      if (pivot < 0 || a[r][c].size() < a[pivot][c].size()) pivot = r;
    }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    const Polynomial& p = a[rank][c];
    for (int r = rank + 1; r < rows; ++r) {
      const Polynomial factor = a[r][c];
      for (int k = c + 1; k < cols; ++k) {
        Polynomial v = p * a[r][k] - factor * a[rank][k];
        a[r][k] = v.is_zero() ? std::move(v) : v.exact_divide(prev);
      }
      a[r][c] = Polynomial(nvars);
    }
    prev = p;
    ++rank;
  }
  return rank;
}

}  // namespace

int exact_rank(const PolyMatrix& m, std::span<const int> columns) {
  const long long entries = static_cast<long long>(columns.size()) * m.rows;
  if (entries > kExactRankEntryCap) {
    throw std::length_error("exact rank limited to " + std::to_string(kExactRankEntryCap) +
                            " entries, got " + std::to_string(entries));
  }
  if (columns.empty() || m.rows == 0) return 0;
  const int nvars = m.data.front().nvars();
  std::vector<std::vector<Polynomial>> a(static_cast<std::size_t>(m.rows));
  for (int r = 0; r < m.rows; ++r) {
    for (int c : columns) {
      if (c < 0 || c >= m.cols) throw std::out_of_range("column " + std::to_string(c) + " out of range");
      a[static_cast<std::size_t>(r)].push_back(m.at(r, c));
    }
  }
  return bareiss_rank(std::move(a), nvars);
}

int exact_rank(const Jacobian& j, const ColumnSet& s) {
  return exact_rank(j.matrix(), s.positions(j.graph().node_count()));
}

}  // namespace semid
