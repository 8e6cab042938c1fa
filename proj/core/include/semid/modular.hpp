#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semid/rational.hpp"

namespace semid {

__extension__ using uint128 = unsigned __int128;

/// Default field characteristic: the Mersenne prime 2^61 - 1.
inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

/// Arithmetic modulo a prime q < 2^63.
class PrimeField {
 public:
  /// Throws std::invalid_argument unless q is a prime in [3, 2^63).
  explicit PrimeField(std::uint64_t q = kMersenne61);

  [[nodiscard]] std::uint64_t modulus() const { return q_; }

  [[nodiscard]] std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  [[nodiscard]] std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + q_ - b;
  }
  [[nodiscard]] std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : q_ - a; }
  [[nodiscard]] std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    const uint128 p = static_cast<uint128>(a) * b;
    if (mersenne_) {
      const std::uint64_t lo = static_cast<std::uint64_t>(p) & kMersenne61;
      const std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
      const std::uint64_t s = lo + hi;
      return s >= q_ ? s - q_ : s;
    }
    return static_cast<std::uint64_t>(p % q_);
  }
  [[nodiscard]] std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const;
  /// Multiplicative inverse; a must be nonzero.
  [[nodiscard]] std::uint64_t inv(std::uint64_t a) const { return pow(a, q_ - 2); }

  [[nodiscard]] std::uint64_t from_int(long long v) const;
  /// Image of a rational; throws std::domain_error if q divides the denominator.
  [[nodiscard]] std::uint64_t from_rational(const Rational& r) const;

 private:
  std::uint64_t q_;
  bool mersenne_;
};

bool is_prime_u64(std::uint64_t n);

/// Dense row-major matrix over a PrimeField.
struct ModMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint64_t> data;

  ModMatrix() = default;
  ModMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}
  std::uint64_t& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  [[nodiscard]] std::uint64_t at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
};

/// Rank of the submatrix formed by the given columns (all columns if empty
/// span and all_columns is true).
int rank_mod(const PrimeField& field, const ModMatrix& m, std::span<const int> columns);
int rank_mod(const PrimeField& field, const ModMatrix& m);

/// Incremental column echelon basis over F_q. Columns are offered one at a
/// time; add() reports whether the column was independent of those kept.
class ColumnEchelon {
 public:
  ColumnEchelon(const PrimeField& field, int rows);

  /// Tries to extend the basis; returns true (and keeps it) if independent.
  bool add(std::span<const std::uint64_t> column);
  /// Drops the most recently kept column.
  void pop();
  void clear() { pivots_.clear(); }
  [[nodiscard]] int rank() const { return static_cast<int>(pivots_.size()); }

 private:
  const PrimeField* field_;
  int rows_;
  // Row k of basis_ (length rows_) is normalized so that its entry at
  // pivots_[k] is 1 and its entries at earlier pivots are 0.
  std::vector<std::uint64_t> basis_;
  std::vector<int> pivots_;
  std::vector<std::uint64_t> scratch_;
};

}  // namespace semid
