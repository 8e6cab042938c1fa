#include "semid/modular.hpp"

#include <stdexcept>
#include <string>

namespace semid {

namespace {

std::uint64_t mulmod_generic(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

std::uint64_t powmod_generic(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod_generic(result, base, m);
    base = mulmod_generic(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++r;
  }
  // These bases are deterministic for all 64-bit inputs.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_generic(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int k = 1; k < r; ++k) {
      x = mulmod_generic(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t q) : q_(q), mersenne_(q == kMersenne61) {
  if (q < 3 || q >= (std::uint64_t{1} << 63) || !is_prime_u64(q)) {
    throw std::invalid_argument("field modulus " + std::to_string(q) +
                                " is not an odd prime below 2^63");
  }
}

std::uint64_t PrimeField::pow(std::uint64_t base, std::uint64_t exp) const {
  std::uint64_t result = 1;
  base %= q_;
  while (exp > 0) {
    if (exp & 1U) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t PrimeField::from_int(long long v) const {
  const auto q = static_cast<long long>(q_);
  long long r = v % q;
  if (r < 0) r += q;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeField::from_rational(const Rational& r) const {
  const mpz_class qz(std::to_string(q_));
  mpz_class num = r.get_num() % qz;
  if (num < 0) num += qz;
  mpz_class den = r.get_den() % qz;
  if (den == 0) throw std::domain_error("denominator vanishes modulo the field prime");
  const std::uint64_t n = std::stoull(num.get_str());
  const std::uint64_t d = std::stoull(den.get_str());
  return mul(n, inv(d));
}

int rank_mod(const PrimeField& field, const ModMatrix& m, std::span<const int> columns) {
  ColumnEchelon echelon(field, m.rows);
  std::vector<std::uint64_t> col(static_cast<std::size_t>(m.rows));
  for (int c : columns) {
    for (int r = 0; r < m.rows; ++r) col[static_cast<std::size_t>(r)] = m.at(r, c);
    echelon.add(col);
    if (echelon.rank() == m.rows) break;
  }
  return echelon.rank();
}

int rank_mod(const PrimeField& field, const ModMatrix& m) {
  std::vector<int> all(static_cast<std::size_t>(m.cols));
  for (int c = 0; c < m.cols; ++c) all[static_cast<std::size_t>(c)] = c;
  return rank_mod(field, m, all);
}

ColumnEchelon::ColumnEchelon(const PrimeField& field, int rows)
    : field_(&field),
      rows_(rows),
      basis_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(rows)),
      scratch_(static_cast<std::size_t>(rows)) {
  pivots_.reserve(static_cast<std::size_t>(rows));
}

bool ColumnEchelon::add(std::span<const std::uint64_t> column) {
  const auto rows = static_cast<std::size_t>(rows_);
  if (pivots_.size() == rows) return false;
  std::copy(column.begin(), column.end(), scratch_.begin());
  for (std::size_t k = 0; k < pivots_.size(); ++k) {
    const std::uint64_t c = scratch_[static_cast<std::size_t>(pivots_[k])];
    if (c == 0) continue;
    const std::uint64_t* b = basis_.data() + k * rows;
    for (std::size_t r = 0; r < rows; ++r) {
      if (b[r] != 0) scratch_[r] = field_->sub(scratch_[r], field_->mul(c, b[r]));
    }
  }
  std::size_t pivot = rows;
  for (std::size_t r = 0; r < rows; ++r) {
    if (scratch_[r] != 0) {
      pivot = r;
      break;
    }
  }
  if (pivot == rows) return false;
  const std::uint64_t scale = field_->inv(scratch_[pivot]);
  std::uint64_t* dst = basis_.data() + pivots_.size() * rows;
  for (std::size_t r = 0; r < rows; ++r) dst[r] = field_->mul(scratch_[r], scale);
  pivots_.push_back(static_cast<int>(pivot));
  return true;
}

void ColumnEchelon::pop() { pivots_.pop_back(); }

}  // namespace semid
