#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semid/digraph.hpp"
#include "semid/jacobian.hpp"
#include "semid/modular.hpp"

namespace semid {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// Parameters of the randomized rank oracle.
struct RankOracleConfig {
  std::uint64_t prime = kMersenne61;
  int trials = 3;
  std::uint64_t seed = kDefaultSeed;
  /// Largest number of r-subsets matroids_equal may enumerate.
  std::uint64_t subset_cap = 10'000'000;
};

/// Schwartz-Zippel degree bound for a graph with `edges` edges: 2(|D|+1).
int degree_bound(int edges);
/// Upper bound (d/q)^t on the chance that one trial batch underestimates a rank.
double failure_bound(const RankOracleConfig& cfg, int edges);
/// Throws std::invalid_argument unless prime is prime, prime > 2*degree
/// bound and trials >= 1.
void validate(const RankOracleConfig& cfg, int edges);

/// Set of precision-matrix entries, kept in global column order (diagonals
/// first, then off-diagonals lexicographically).
class ColumnSet {
 public:
  ColumnSet() = default;
  ColumnSet(std::initializer_list<ColumnIndex> cols);
  explicit ColumnSet(std::vector<ColumnIndex> cols);
  /// Columns whose layout positions (for n nodes) are set in `mask`.
  static ColumnSet from_mask(int n, std::uint64_t mask);
  /// Parses "K11,K12,..." (see parse_column_label).
  static ColumnSet parse(const std::string& text);

  void insert(ColumnIndex c);
  void erase(ColumnIndex c);
  [[nodiscard]] bool contains(ColumnIndex c) const;
  [[nodiscard]] int size() const { return static_cast<int>(cols_.size()); }
  [[nodiscard]] bool empty() const { return cols_.empty(); }
  [[nodiscard]] auto begin() const { return cols_.begin(); }
  [[nodiscard]] auto end() const { return cols_.end(); }
  [[nodiscard]] const std::vector<ColumnIndex>& columns() const { return cols_; }

  [[nodiscard]] std::vector<int> positions(int n) const;
  [[nodiscard]] std::uint64_t mask(int n) const;
  /// "{K11, K12}"
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ColumnSet&, const ColumnSet&) = default;

 private:
  void normalize();
  std::vector<ColumnIndex> cols_;
};

/// Layout order for columns independent of n: diagonals, then (i, j).
bool layout_less(ColumnIndex a, ColumnIndex b);

/// Random evaluation point for trial `trial` of graph g: one uniform F_q
/// value per variable, s resampled until nonzero. Derived from (seed, graph
/// hash, trial) only.
std::vector<std::uint64_t> trial_point(const Digraph& g, const RankOracleConfig& cfg, int trial);

/// Max over cfg.trials random evaluations of rank(J|_S) over F_q. Never
/// exceeds the generic rank.
int generic_rank(const Jacobian& j, const ColumnSet& s, const RankOracleConfig& cfg);
/// Same oracle for an arbitrary polynomial matrix; every variable is sampled
/// uniformly. `key` separates the random streams of different matrices.
int generic_rank(const PolyMatrix& m, std::span<const int> columns, const RankOracleConfig& cfg,
                 std::uint64_t key = 0);

/// Rank over the fraction field by fraction-free (Bareiss) elimination on the
/// polynomial entries. Throws std::length_error when |S| * rows > 400.
int exact_rank(const Jacobian& j, const ColumnSet& s);
/// Bareiss rank of an arbitrary polynomial matrix restricted to `columns`.
int exact_rank(const PolyMatrix& m, std::span<const int> columns);

bool is_independent(const Jacobian& j, const ColumnSet& s, const RankOracleConfig& cfg);

/// Generic rank of the full Jacobian of g.
int matroid_rank(const Digraph& g, const RankOracleConfig& cfg);

/// Jacobian matroid of one graph, held as its trial evaluations plus the
/// complete list of bases. Bases are position masks over column_layout(n),
/// sorted lexicographically by their position lists.
class JacobianMatroid {
 public:
  /// Throws std::length_error if C(columns, rank) exceeds cfg.subset_cap.
  static JacobianMatroid compute(const Digraph& g, const RankOracleConfig& cfg);
  /// Evaluations only; bases() stays empty. Enough for rank queries.
  static JacobianMatroid evaluate_only(const Digraph& g, const RankOracleConfig& cfg);

  [[nodiscard]] const Digraph& graph() const { return graph_; }
  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] int ground_size() const { return ground_; }
  [[nodiscard]] const std::vector<std::uint64_t>& bases() const { return bases_; }
  [[nodiscard]] bool has_bases() const { return bases_computed_; }

  /// Max over trials of the rank of the columns in `mask`.
  [[nodiscard]] int rank_of(std::uint64_t mask) const;
  [[nodiscard]] bool is_independent(std::uint64_t mask) const;

 private:
  JacobianMatroid() = default;
  void enumerate_bases(std::uint64_t subset_cap);

  Digraph graph_;
  PrimeField field_;
  int rank_ = 0;
  int ground_ = 0;
  std::vector<ModMatrix> trials_;
  std::vector<std::uint64_t> bases_;
  bool bases_computed_ = false;
};

/// Lexicographic order on equal-size position masks (compare sorted lists).
bool mask_lex_less(std::uint64_t a, std::uint64_t b);

struct MatroidComparison {
  enum class Verdict { kEqual, kDifferent };
  Verdict verdict = Verdict::kEqual;
  /// Present iff Different: independent in exactly one matroid.
  std::optional<ColumnSet> witness;
  std::pair<int, int> ranks{0, 0};
  double failure_bound = 0.0;
};

const char* to_string(MatroidComparison::Verdict v);

/// Compares two computed matroids (see matroids_equal).
MatroidComparison compare(const JacobianMatroid& a, const JacobianMatroid& b,
                          const RankOracleConfig& cfg);

/// Decides whether G1 and G2 have the same Jacobian matroid by comparing
/// basis lists. A Different verdict carries the lexicographically first
/// disagreeing r-set, greedily shrunk (largest column first) while it still
/// disagrees. Throws std::invalid_argument on a node-count mismatch.
MatroidComparison matroids_equal(const Digraph& g1, const Digraph& g2, const RankOracleConfig& cfg);

/// Smallest column set independent in exactly one of the two matroids,
/// searched by increasing size; nullopt when the matroids agree.
std::optional<ColumnSet> find_distinguishing_set(const Digraph& g1, const Digraph& g2,
                                                 const RankOracleConfig& cfg);

}  // namespace semid
