#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semid/node_set.hpp"

namespace semid {

/// Directed edge tail -> head.
struct Edge {
  Node tail;
  Node head;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Raised when a graph would violate a structural invariant (self-loop,
/// anti-parallel pair, duplicate edge, node out of range).
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Labeled simple directed graph on nodes 1..n.
///
/// Edges are kept sorted lexicographically; adjacency is cached as bitmasks
/// so neighbourhood queries are O(1). Instances are immutable.
class Digraph {
 public:
  Digraph() = default;
  /// Throws GraphError if any edge breaks simplicity or is out of range.
  Digraph(int n, std::vector<Edge> edges);

  static Digraph edgeless(int n) { return Digraph(n, {}); }
  /// Complete digraph in which i -> j for every i < j, then with the listed
  /// pairs reversed.
  static Digraph complete_oriented(int n, std::span<const Edge> reversed = {});

  [[nodiscard]] int node_count() const { return n_; }
  [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] NodeSet nodes() const { return NodeSet::range(n_); }

  [[nodiscard]] bool has_edge(Node from, Node to) const;
  [[nodiscard]] bool adjacent(Node a, Node b) const;
  /// Position of edge (from, to) in edges(), or -1.
  [[nodiscard]] int edge_index(Node from, Node to) const;

  [[nodiscard]] NodeSet children(Node i) const;
  [[nodiscard]] NodeSet parents(Node i) const;
  [[nodiscard]] NodeSet neighbors(Node i) const;
  /// {a : a directed path a -> ... -> i of length >= 1 exists}. Contains i
  /// itself iff i lies on a directed cycle.
  [[nodiscard]] NodeSet ancestors(Node i) const;
  /// Union of parents over a set.
  [[nodiscard]] NodeSet parents_of(NodeSet set) const;

  [[nodiscard]] int out_degree(Node i) const { return children(i).size(); }
  [[nodiscard]] bool is_sink(Node i) const { return children(i).empty(); }

  /// Structural hash, stable across runs and platforms.
  [[nodiscard]] std::uint64_t hash() const;

  /// Image of the graph under node relabeling v -> perm[v - 1].
  [[nodiscard]] Digraph relabeled(std::span<const Node> perm) const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void check_node(Node v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> children_;  // indexed by node, slot 0 unused
  std::vector<std::uint64_t> parents_;
};

/// Out-degrees sorted descending.
using OutDegreeSequence = std::vector<int>;

OutDegreeSequence out_degree_sequence(const Digraph& g);
/// Per-node out-degrees (|ch(1)|, ..., |ch(n)|), in node order.
std::vector<int> out_degree_vector(const Digraph& g);

bool is_complete(const Digraph& g);
/// True iff for every edge j -> i, ch(j) and ch(i) are disjoint.
bool is_transitive_triangle_free(const Digraph& g);

/// SCC partition; each class sorted, classes ordered by their minimum.
std::vector<std::vector<Node>> strongly_connected_components(const Digraph& g);

bool is_acyclic(const Digraph& g);
/// Lexicographically smallest topological order, or nullopt on a cycle.
std::optional<std::vector<Node>> topological_order(const Digraph& g);

// ---------------------------------------------------------------------------
// Enumeration

/// Default maximum node count accepted by the enumerators.
inline constexpr int kEnumerationCap = 7;

/// Number of labeled simple digraphs on n nodes: 3^(n(n-1)/2).
std::uint64_t simple_digraph_count(int n);

/// The index-th labeled simple digraph on n nodes. Unordered pairs {i < j}
/// are taken in lexicographic order; pair t reads ternary digit t of index
/// (least significant first): 0 = absent, 1 = i -> j, 2 = j -> i.
Digraph digraph_from_index(int n, std::uint64_t index);
/// Inverse of digraph_from_index.
std::uint64_t digraph_index(const Digraph& g);

/// Restartable stream over all labeled simple digraphs on n nodes.
class SimpleDigraphRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Digraph;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(int n, std::uint64_t index) : n_(n), index_(index) {}
    Digraph operator*() const { return digraph_from_index(n_, index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    void operator++(int) { ++index_; }
    bool operator==(const iterator& o) const { return index_ == o.index_; }
    [[nodiscard]] std::uint64_t index() const { return index_; }

   private:
    int n_ = 0;
    std::uint64_t index_ = 0;
  };

  [[nodiscard]] iterator begin() const { return {n_, first_}; }
  [[nodiscard]] iterator end() const { return {n_, last_}; }
  [[nodiscard]] std::uint64_t size() const { return last_ - first_; }

 private:
  friend SimpleDigraphRange enumerate_simple_digraphs(int, std::uint64_t, int);
  SimpleDigraphRange(int n, std::uint64_t first, std::uint64_t last)
      : n_(n), first_(first), last_(last) {}
  int n_;
  std::uint64_t first_;
  std::uint64_t last_;
};

/// Throws std::out_of_range if n < 1 or n > cap.
SimpleDigraphRange enumerate_simple_digraphs(int n, std::uint64_t start_index = 0,
                                             int cap = kEnumerationCap);

// ---------------------------------------------------------------------------
// Text format

enum class ParseErrorKind {
  kMalformedLine,
  kMissingHeader,
  kNodeOutOfRange,
  kSelfLoop,
  kDuplicateEdge,
  kAntiParallel,
};

const char* to_string(ParseErrorKind kind);

class GraphParseError : public std::runtime_error {
 public:
  GraphParseError(ParseErrorKind kind, int line, const std::string& detail);
  [[nodiscard]] ParseErrorKind kind() const { return kind_; }
  [[nodiscard]] int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

/// Parses "n <p>" followed by "<u> <v>" lines; '#' starts a comment.
Digraph parse_graph(std::string_view text);
std::string serialize_graph(const Digraph& g);
Digraph read_graph_file(const std::string& path);

}  // namespace semid
