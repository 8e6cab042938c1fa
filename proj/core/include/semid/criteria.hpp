#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semid/digraph.hpp"
#include "semid/matroid.hpp"

namespace semid {

/// A subset L of neighbors(anchor) with pa(L) ∩ neighbors(anchor) ⊆ L.
struct PCSet {
  Node anchor = 0;
  NodeSet members;

  friend bool operator==(const PCSet&, const PCSet&) = default;
};

/// True if `members` is a parentally closed set of g with respect to `anchor`.
bool is_parentally_closed(const Digraph& g, Node anchor, NodeSet members);

/// Largest neighborhood pc_sets will enumerate.
inline constexpr int kMaxPCNeighborhood = 20;

/// Calls `visit` on every parentally closed set of g with respect to i,
/// ordered by size and then lexicographically, until it returns false.
/// Throws std::length_error if |neighbors(i)| exceeds kMaxPCNeighborhood.
void for_each_pc_set(const Digraph& g, Node i, const std::function<bool(const PCSet&)>& visit);
std::vector<PCSet> pc_sets(const Digraph& g, Node i);

enum class CriterionKind { kOutDegree, kTransitiveTriangleFree, kParentallyClosed, kAcyclicConstruction };
const char* to_string(CriterionKind kind);

/// Which branch of a column-set construction produced a witness.
enum class Construction {
  kNone,             // no column set (edge counts differ)
  kRankLowerBound,   // rank lower-bound set for a node
  kFullDegree,       // same, for a node adjacent to every other node
  kNonAdjacent,      // single column K_ij, nonzero in one graph only
  kCommonChild,      // lower-bound set with K_ll swapped for K_ij
  kReverseEdge,      // lower-bound set with K_ii swapped for K_ij
  kParentallyClosed  // set built from a parentally closed L
};
const char* to_string(Construction c);

/// Evidence that two graphs have different Jacobian matroids.
struct CriterionWitness {
  CriterionKind kind = CriterionKind::kOutDegree;
  Node node = 0;
  /// Graph k (1 or 2) with the larger child count, restricted to the PC set
  /// when there is one. The column set is built on graph 3 - k and has
  /// larger rank there.
  int direction = 1;
  std::optional<PCSet> pc_set;
  std::optional<ColumnSet> columns;
  Construction construction = Construction::kNone;
  /// Second node of a transitive-triangle-free witness, and the common child
  /// when one was used.
  std::optional<Node> partner;
  std::optional<Node> common_child;

  [[nodiscard]] int favored() const { return 3 - direction; }
};

/// Column set of size |D|+1 avoiding every K_i* column, with rank at least
/// |D| - |ch(i)| + 1 in g. When i is not adjacent to every node the set
/// includes one non-neighbor's diagonal: `extra_diagonal`, or by default the
/// smallest non-neighbor. Throws std::invalid_argument if g is complete or
/// `extra_diagonal` is i or a neighbor of i.
ColumnSet rank_lower_bound_set(const Digraph& g, Node i, std::optional<Node> extra_diagonal = {});

/// Column set of size |D_k|+1 built on g (the graph with the smaller
/// intersection) from a parentally closed set L of the other graph.
ColumnSet pc_witness_set(const Digraph& g, Node i, NodeSet members);

std::optional<CriterionWitness> outdegree_criterion(const Digraph& g1, const Digraph& g2);
std::optional<CriterionWitness> ttf_criterion(const Digraph& g1, const Digraph& g2);
/// Absent when either graph is complete or no parentally closed set
/// separates the graphs. The witness carries a column set only when the edge
/// counts agree. Nodes with more than kMaxPCNeighborhood neighbors
/// are skipped; `truncated` (if given) reports whether that happened.
std::optional<CriterionWitness> pc_criterion(const Digraph& g1, const Digraph& g2,
                                             bool* truncated = nullptr);

/// Node and parentally closed set given directly by the acyclic
/// construction. Throws std::invalid_argument unless the graphs share their
/// per-node out-degrees, differ, are both non-complete and at least one is
/// acyclic.
std::optional<CriterionWitness> acyclic_pc_witness(const Digraph& g1, const Digraph& g2);
/// True when acyclic_pc_witness's preconditions hold.
bool acyclic_construction_applies(const Digraph& g1, const Digraph& g2);

struct NecessaryConditionReport {
  /// Pairs {i, j} that are adjacent or share a child in exactly one graph.
  std::vector<std::pair<Node, Node>> pattern_mismatches;
  /// Sinks of both graphs whose parent sets differ.
  std::vector<Node> sink_mismatches;

  [[nodiscard]] bool violated() const { return !pattern_mismatches.empty() || !sink_mismatches.empty(); }
};

/// Necessary conditions for equal matroids. A violation certifies different
/// matroids; a clean report certifies nothing.
NecessaryConditionReport necessary_condition_checks(const Digraph& g1, const Digraph& g2);

struct StageOutcome {
  std::string name;
  bool fired = false;
  /// Why the stage did not run, if it did not.
  std::string skipped;
  std::optional<CriterionWitness> witness;
  std::optional<NecessaryConditionReport> conditions;
  /// Generic ranks of the witness column set in the favored and the other
  /// graph; filled in by distinguish when the matroid comparison runs.
  std::optional<std::pair<int, int>> column_ranks;
};

struct DistinguishReport {
  std::vector<StageOutcome> stages;
  std::optional<MatroidComparison> matroid;
  /// Name of the first stage that fired, "matroid" if only the matroid
  /// comparison separates the graphs, or "none".
  std::string decided_by = "none";
  bool pc_truncated = false;
};

/// The cheap stages only: edge counts, necessary conditions, out-degree,
/// transitive-triangle-free and parentally-closed criteria.
DistinguishReport run_criteria(const Digraph& g1, const Digraph& g2);

/// run_criteria followed by the matroid comparison (unless skipped). Throws
/// std::invalid_argument on a node-count mismatch.
DistinguishReport distinguish(const Digraph& g1, const Digraph& g2, const RankOracleConfig& cfg,
                              bool skip_matroid = false);
/// Same, reusing matroids computed with JacobianMatroid::compute.
DistinguishReport distinguish(const JacobianMatroid& m1, const JacobianMatroid& m2, const RankOracleConfig& cfg);

}  // namespace semid
