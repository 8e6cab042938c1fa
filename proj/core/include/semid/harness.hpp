#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semid/criteria.hpp"
#include "semid/digraph.hpp"
#include "semid/matroid.hpp"

namespace semid {

/// Pairs processed between checkpoints.
inline constexpr std::uint64_t kCheckpointInterval = 10'000;

struct SweepConfig {
  enum class Mode { kExhaustive, kSampled };

  int n = 4;
  Mode mode = Mode::kExhaustive;
  /// Pairs drawn per out-degree class in sampled mode. Classes with at most
  /// this many pairs are swept exhaustively.
  std::uint64_t sample_size = 100'000;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  /// JSON-lines stream of witness-less pairs; empty for none.
  std::string output_path;
  /// Sidecar checkpoint; empty disables checkpointing and resume.
  std::string checkpoint_path;
  /// Permits exhaustive sweeps above 5 nodes.
  bool allow_large_exhaustive = false;
  /// Stop after this many checkpoint intervals (0 = run to completion).
  std::uint64_t max_chunks = 0;
  /// Echoed in reports only.
  RankOracleConfig oracle;
};

/// Throws std::invalid_argument on an unusable configuration.
void validate(const SweepConfig& cfg);

struct WitnessLessPair {
  Digraph g1;
  Digraph g2;
  bool same_components = false;

  /// Differing strongly connected components: a counterexample to the
  /// conjecture rather than an instance of its carve-out.
  [[nodiscard]] bool counterexample() const { return !same_components; }
};

struct ClassResult {
  /// Out-degree of each node, shared by the class.
  std::vector<int> out_degrees;
  std::uint64_t class_size = 0;
  bool exhaustive = true;
  std::uint64_t pairs_tested = 0;
  std::uint64_t witnesses = 0;
  std::vector<WitnessLessPair> witness_less;
};

struct SweepResult {
  SweepConfig config;
  std::vector<ClassResult> classes;
  std::uint64_t pairs_tested = 0;
  std::uint64_t witnesses = 0;
  std::uint64_t witness_less = 0;
  std::uint64_t counterexamples = 0;
  /// False when max_chunks stopped the run early.
  bool complete = true;
  double seconds = 0.0;
};

/// Sweeps pairs of distinct non-complete simple digraphs with the same
/// per-node out-degrees, looking for a parentally closed set that separates
/// each pair. Classes are visited in lexicographic order of their out-degree
/// vectors; results do not depend on the worker count.
SweepResult verify_pc_conjecture(const SweepConfig& cfg);

struct CompleteSweepConfig {
  int p = 4;
  /// Sweep every orientation even at 6 nodes.
  bool full = false;
  std::uint64_t sample_size = 1000;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  RankOracleConfig oracle;
};

struct OrientationPair {
  /// Bit b reverses the b-th pair (in lexicographic order, skipping the
  /// flipped pair) from i->j to j->i.
  std::uint64_t orientation = 0;
  Digraph forward;   // contains p-1 -> p
  Digraph backward;  // contains p -> p-1
  MatroidComparison comparison;
};

struct CompleteSweepResult {
  CompleteSweepConfig config;
  std::uint64_t orientations_total = 0;
  bool sampled = false;
  std::vector<OrientationPair> pairs;
  std::uint64_t equal = 0;
  std::uint64_t different = 0;
  double seconds = 0.0;
};

/// Compares the matroids of complete digraphs that differ only in the
/// direction of the edge between nodes p-1 and p. Exhaustive for p <= 5;
/// samples distinct orientations at p = 6 unless `full`. Throws
/// std::invalid_argument unless 2 <= p <= 6.
CompleteSweepResult verify_complete_conjecture(const CompleteSweepConfig& cfg);

struct FamilyPair {
  int first = 0;
  int second = 0;
  DistinguishReport report;
};

struct FamilyReport {
  std::vector<Digraph> graphs;
  std::vector<FamilyPair> pairs;
  /// Every pair has different Jacobian matroids.
  bool identifiable = true;
  bool any_complete = false;
  /// Pairwise different per-node out-degrees.
  bool unique_out_degrees = true;
  bool all_transitive_triangle_free = true;
  /// Every pair is separated by a parentally closed set.
  bool pairwise_pc_witness = true;
};

/// Distinguishes every unordered pair of a family. Throws
/// std::invalid_argument if node counts differ.
FamilyReport classify_family(const std::vector<Digraph>& graphs, const RankOracleConfig& cfg);

/// Same strongly connected components, compared as partitions.
bool same_components(const Digraph& g1, const Digraph& g2);

}  // namespace semid
