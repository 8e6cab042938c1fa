#include "semid/digraph.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace semid {

namespace {

std::string edge_str(const Edge& e) {
  return std::to_string(e.tail) + "->" + std::to_string(e.head);
}

}  // namespace

Digraph::Digraph(int n, std::vector<Edge> edges)
    : n_(n),
      edges_(std::move(edges)),
      children_(static_cast<std::size_t>(n) + 1, 0),
      parents_(static_cast<std::size_t>(n) + 1, 0) {
  if (n < 0 || n > kMaxNodes) {
    throw GraphError("node count " + std::to_string(n) + " outside 0.." +
                     std::to_string(kMaxNodes));
  }
  std::sort(edges_.begin(), edges_.end());
  for (const Edge& e : edges_) {
    if (e.tail < 1 || e.tail > n || e.head < 1 || e.head > n) {
      throw GraphError("edge " + edge_str(e) + " has an endpoint outside 1.." +
                       std::to_string(n));
    }
    if (e.tail == e.head) throw GraphError("self-loop at node " + std::to_string(e.tail));
    const std::uint64_t head_bit = std::uint64_t{1} << e.head;
    if (children_[e.tail] & head_bit) throw GraphError("duplicate edge " + edge_str(e));
    if (children_[e.head] & (std::uint64_t{1} << e.tail)) {
      throw GraphError("anti-parallel pair at edge " + edge_str(e));
    }
    children_[e.tail] |= head_bit;
    parents_[e.head] |= std::uint64_t{1} << e.tail;
  }
}

Digraph Digraph::complete_oriented(int n, std::span<const Edge> reversed) {
  std::vector<Edge> edges;
  for (Node i = 1; i <= n; ++i) {
    for (Node j = i + 1; j <= n; ++j) {
      const bool flip = std::any_of(reversed.begin(), reversed.end(), [&](const Edge& e) {
        return (e.tail == i && e.head == j) || (e.tail == j && e.head == i);
      });
      edges.push_back(flip ? Edge{j, i} : Edge{i, j});
    }
  }
  return Digraph(n, std::move(edges));
}

void Digraph::check_node(Node v) const {
  if (v < 1 || v > n_) {
    throw std::out_of_range("node " + std::to_string(v) + " outside 1.." + std::to_string(n_));
  }
}

bool Digraph::has_edge(Node from, Node to) const {
  check_node(from);
  check_node(to);
  return (children_[from] >> to) & 1U;
}

bool Digraph::adjacent(Node a, Node b) const { return has_edge(a, b) || has_edge(b, a); }

int Digraph::edge_index(Node from, Node to) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{from, to});
  if (it == edges_.end() || *it != Edge{from, to}) return -1;
  return static_cast<int>(it - edges_.begin());
}

NodeSet Digraph::children(Node i) const {
  check_node(i);
  return NodeSet::from_bits(children_[i]);
}

NodeSet Digraph::parents(Node i) const {
  check_node(i);
  return NodeSet::from_bits(parents_[i]);
}

NodeSet Digraph::neighbors(Node i) const {
  check_node(i);
  return NodeSet::from_bits(children_[i] | parents_[i]);
}

NodeSet Digraph::ancestors(Node i) const {
  check_node(i);
  NodeSet found;
  NodeSet frontier = parents(i);
  while (!frontier.empty()) {
    found |= frontier;
    NodeSet next;
    for (Node v : frontier) next |= parents(v);
    frontier = next - found;
  }
  return found;
}

NodeSet Digraph::parents_of(NodeSet set) const {
  NodeSet out;
  for (Node v : set) out |= parents(v);
  return out;
}

std::uint64_t Digraph::hash() const {
  // FNV-1a over (n, tail, head, ...).
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(n_));
  for (const Edge& e : edges_) {
    mix(static_cast<std::uint64_t>(e.tail));
    mix(static_cast<std::uint64_t>(e.head));
  }
  return h;
}

Digraph Digraph::relabeled(std::span<const Node> perm) const {
  if (static_cast<int>(perm.size()) != n_) {
    throw std::invalid_argument("permutation size does not match node count");
  }
  std::vector<Edge> mapped;
  mapped.reserve(edges_.size());
  for (const Edge& e : edges_) mapped.push_back({perm[e.tail - 1], perm[e.head - 1]});
  return Digraph(n_, std::move(mapped));
}

OutDegreeSequence out_degree_sequence(const Digraph& g) {
  OutDegreeSequence seq = out_degree_vector(g);
  std::sort(seq.begin(), seq.end(), std::greater<>());
  return seq;
}

std::vector<int> out_degree_vector(const Digraph& g) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(g.node_count()));
  for (Node i = 1; i <= g.node_count(); ++i) out.push_back(g.out_degree(i));
  return out;
}

bool is_complete(const Digraph& g) {
  const int n = g.node_count();
  return g.edge_count() == n * (n - 1) / 2;
}

bool is_transitive_triangle_free(const Digraph& g) {
  for (const Edge& e : g.edges()) {
    if (!(g.children(e.tail) & g.children(e.head)).empty()) return false;
  }
  return true;
}

std::vector<std::vector<Node>> strongly_connected_components(const Digraph& g) {
  // Mutual reachability via ancestor sets; n is at most 63 so this is cheap.
  std::vector<std::vector<Node>> classes;
  NodeSet assigned;
  for (Node v = 1; v <= g.node_count(); ++v) {
    if (assigned.contains(v)) continue;
    NodeSet cls{v};
    const NodeSet anc = g.ancestors(v);
    for (Node u : anc) {
      if (u != v && g.ancestors(u).contains(v)) cls.insert(u);
    }
    assigned |= cls;
    classes.push_back(cls.to_vector());
  }
  return classes;
}

bool is_acyclic(const Digraph& g) { return topological_order(g).has_value(); }

std::optional<std::vector<Node>> topological_order(const Digraph& g) {
  std::vector<Node> order;
  NodeSet placed;
  const NodeSet all = g.nodes();
  while (placed != all) {
    // Smallest unplaced node whose parents are all placed.
    bool progressed = false;
    for (Node v : all - placed) {
      if (g.parents(v).is_subset_of(placed)) {
        order.push_back(v);
        placed.insert(v);
        progressed = true;
        break;
      }
    }
    if (!progressed) return std::nullopt;
  }
  return order;
}

std::uint64_t simple_digraph_count(int n) {
  std::uint64_t count = 1;
  for (int t = 0; t < n * (n - 1) / 2; ++t) count *= 3;
  return count;
}

Digraph digraph_from_index(int n, std::uint64_t index) {
  std::vector<Edge> edges;
  for (Node i = 1; i <= n; ++i) {
    for (Node j = i + 1; j <= n; ++j) {
      const auto digit = index % 3;
      index /= 3;
      if (digit == 1) edges.push_back({i, j});
      if (digit == 2) edges.push_back({j, i});
    }
  }
  return Digraph(n, std::move(edges));
}

std::uint64_t digraph_index(const Digraph& g) {
  std::uint64_t index = 0;
  std::uint64_t place = 1;
  const int n = g.node_count();
  for (Node i = 1; i <= n; ++i) {
    for (Node j = i + 1; j <= n; ++j) {
      if (g.has_edge(i, j)) index += place;
      if (g.has_edge(j, i)) index += 2 * place;
      place *= 3;
    }
  }
  return index;
}

SimpleDigraphRange enumerate_simple_digraphs(int n, std::uint64_t start_index, int cap) {
  if (n < 1 || n > cap) {
    throw std::out_of_range("enumeration node count " + std::to_string(n) + " outside 1.." +
                            std::to_string(cap));
  }
  const std::uint64_t total = simple_digraph_count(n);
  return SimpleDigraphRange(n, std::min(start_index, total), total);
}

}  // namespace semid
