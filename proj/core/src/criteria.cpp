#include "semid/criteria.hpp"

#include <stdexcept>

namespace semid {

namespace {

void require_same_nodes(const Digraph& g1, const Digraph& g2) {
  if (g1.node_count() != g2.node_count()) {
    throw std::invalid_argument("graphs have " + std::to_string(g1.node_count()) + " and " +
                                std::to_string(g2.node_count()) + " nodes");
  }
}

// Prefers a pair avoiding `avoid` when one exists.
std::optional<std::pair<Node, Node>> smallest_nonadjacent_pair(const Digraph& g, Node avoid = 0) {
  std::optional<std::pair<Node, Node>> fallback;
  for (Node x = 1; x <= g.node_count(); ++x) {
    for (Node y = x + 1; y <= g.node_count(); ++y) {
      if (g.adjacent(x, y)) continue;
      if (x != avoid && y != avoid) return std::pair{x, y};
      if (!fallback) fallback = std::pair{x, y};
    }
  }
  return fallback;
}

Construction lower_bound_kind(const Digraph& g, Node i) {
  return g.neighbors(i).size() == g.node_count() - 1 ? Construction::kFullDegree
                                                     : Construction::kRankLowerBound;
}

// Columns of edges of g not joining i to a member of `removed`.
ColumnSet edge_columns_without(const Digraph& g, Node i, NodeSet removed) {
  std::vector<ColumnIndex> cols;
  for (const Edge& e : g.edges()) {
    if ((e.tail == i && removed.contains(e.head)) || (e.head == i && removed.contains(e.tail))) continue;
    cols.push_back(column(e.tail, e.head));
  }
  return ColumnSet(std::move(cols));
}

StageOutcome stage(std::string name) {
  StageOutcome s;
  s.name = std::move(name);
  return s;
}

const Digraph& pick(int k, const Digraph& g1, const Digraph& g2) { return k == 1 ? g1 : g2; }

CriterionWitness pc_witness(CriterionKind kind, const Digraph& gk, const Digraph& other, int k, Node i,
                            NodeSet members) {
  CriterionWitness w;
  w.kind = kind;
  w.node = i;
  w.direction = k;
  w.pc_set = PCSet{i, members};
  if (gk.edge_count() == other.edge_count()) {
    w.columns = pc_witness_set(other, i, members);
    NodeSet rest = other.nodes();
    rest.erase(i);
    w.construction = members == rest ? lower_bound_kind(other, i) : Construction::kParentallyClosed;
  }
  return w;
}

}  // namespace

bool is_parentally_closed(const Digraph& g, Node anchor, NodeSet members) {
  const NodeSet nb = g.neighbors(anchor);
  if (!members.is_subset_of(nb)) return false;
  return (g.parents_of(members) & nb).is_subset_of(members);
}

void for_each_pc_set(const Digraph& g, Node i, const std::function<bool(const PCSet&)>& visit) {
  const std::vector<Node> nb = g.neighbors(i).to_vector();
  const auto m = static_cast<int>(nb.size());
  if (m > kMaxPCNeighborhood) {
    throw std::length_error("node " + std::to_string(i) + " has " + std::to_string(m) +
                            " neighbors; parentally closed sets are enumerated up to " +
                            std::to_string(kMaxPCNeighborhood));
  }
  std::vector<int> idx;
  for (int size = 0; size <= m; ++size) {
    idx.resize(static_cast<std::size_t>(size));
    for (int t = 0; t < size; ++t) idx[static_cast<std::size_t>(t)] = t;
    while (true) {
      NodeSet members;
      for (int t : idx) members.insert(nb[static_cast<std::size_t>(t)]);
      if (is_parentally_closed(g, i, members) && !visit(PCSet{i, members})) return;
      int t = size - 1;
      while (t >= 0 && idx[static_cast<std::size_t>(t)] == m - size + t) --t;
      if (t < 0) break;
      ++idx[static_cast<std::size_t>(t)];
      for (int u = t + 1; u < size; ++u) idx[static_cast<std::size_t>(u)] = idx[static_cast<std::size_t>(u - 1)] + 1;
    }
  }
}

std::vector<PCSet> pc_sets(const Digraph& g, Node i) {
  std::vector<PCSet> out;
  for_each_pc_set(g, i, [&](const PCSet& l) {
    out.push_back(l);
    return true;
  });
  return out;
}

const char* to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::kOutDegree: return "OutDegree";
    case CriterionKind::kTransitiveTriangleFree: return "TransitiveTriangleFree";
    case CriterionKind::kParentallyClosed: return "ParentallyClosed";
    case CriterionKind::kAcyclicConstruction: return "AcyclicConstruction";
  }
  return "?";
}

const char* to_string(Construction c) {
  switch (c) {
    case Construction::kNone: return "none";
    case Construction::kRankLowerBound: return "rank-lower-bound";
    case Construction::kFullDegree: return "full-degree";
    case Construction::kNonAdjacent: return "non-adjacent";
    case Construction::kCommonChild: return "common-child";
    case Construction::kReverseEdge: return "reverse-edge";
    case Construction::kParentallyClosed: return "parentally-closed";
  }
  return "?";
}

namespace {

ColumnSet lower_bound_set(const Digraph& g, Node i, std::optional<Node> extra_diagonal, Node avoid) {
  if (is_complete(g)) throw std::invalid_argument("rank lower-bound set needs a non-complete graph");
  const int n = g.node_count();
  const NodeSet nb = g.neighbors(i);
  ColumnSet s = edge_columns_without(g, i, nb);
  if (nb.size() < n - 1) {
    NodeSet outside = g.nodes() - nb;
    outside.erase(i);
    const Node j0 = extra_diagonal.value_or(outside.min());
    if (!outside.contains(j0)) {
      throw std::invalid_argument("node " + std::to_string(j0) + " is not a non-neighbor of " +
                                  std::to_string(i));
    }
    for (Node m : nb) s.insert(column(m, m));
    s.insert(column(j0, j0));
  } else {
    for (Node m = 1; m <= n; ++m) {
      if (m != i) s.insert(column(m, m));
    }
    const auto [x, y] = *smallest_nonadjacent_pair(g, avoid);
    s.insert(column(x, y));
  }
  return s;
}

}  // namespace

ColumnSet rank_lower_bound_set(const Digraph& g, Node i, std::optional<Node> extra_diagonal) {
  return lower_bound_set(g, i, extra_diagonal, 0);
}

ColumnSet pc_witness_set(const Digraph& g, Node i, NodeSet members) {
  NodeSet rest = g.nodes();
  rest.erase(i);
  if (members == rest) return rank_lower_bound_set(g, i);
  ColumnSet s = edge_columns_without(g, i, members);
  for (Node m : members & g.neighbors(i)) s.insert(column(m, m));
  s.insert(column((rest - members).min(), (rest - members).min()));
  return s;
}

std::optional<CriterionWitness> outdegree_criterion(const Digraph& g1, const Digraph& g2) {
  require_same_nodes(g1, g2);
  if (is_complete(g1) && is_complete(g2)) return std::nullopt;
  for (Node i = 1; i <= g1.node_count(); ++i) {
    const int d1 = g1.out_degree(i);
    const int d2 = g2.out_degree(i);
    if (d1 == d2) continue;
    CriterionWitness w;
    w.kind = CriterionKind::kOutDegree;
    w.node = i;
    w.direction = d1 > d2 ? 1 : 2;
    if (g1.edge_count() == g2.edge_count()) {
      const Digraph& favored = pick(w.favored(), g1, g2);
      w.columns = rank_lower_bound_set(favored, i);
      w.construction = lower_bound_kind(favored, i);
    }
    return w;
  }
  return std::nullopt;
}

std::optional<CriterionWitness> ttf_criterion(const Digraph& g1, const Digraph& g2) {
  require_same_nodes(g1, g2);
  if (g1 == g2 || is_complete(g1) || is_complete(g2)) return std::nullopt;
  if (!is_transitive_triangle_free(g1) || !is_transitive_triangle_free(g2)) return std::nullopt;

  if (auto w = outdegree_criterion(g1, g2)) {
    w->kind = CriterionKind::kTransitiveTriangleFree;
    return w;
  }

  Node i = 1;
  while (g1.children(i) == g2.children(i)) ++i;
  const Node j = (g1.children(i) - g2.children(i)).min();

  CriterionWitness w;
  w.kind = CriterionKind::kTransitiveTriangleFree;
  w.node = i;
  w.partner = j;
  w.direction = 1;
  const NodeSet common = g2.children(i) & g2.children(j);
  if (!g2.has_edge(j, i) && common.empty()) {
    w.direction = 2;
    w.columns = ColumnSet{column(i, j)};
    w.construction = Construction::kNonAdjacent;
  } else if (!g2.has_edge(j, i)) {
    const Node l = common.min();
    ColumnSet s = rank_lower_bound_set(g2, j, i);
    s.erase(column(l, l));
    s.insert(column(i, j));
    w.columns = std::move(s);
    w.common_child = l;
    w.construction = Construction::kCommonChild;
  } else {
    // The free off-diagonal of the full-degree case must not touch i.
    ColumnSet s = lower_bound_set(g2, j, std::nullopt, i);
    s.erase(column(i, i));
    s.insert(column(i, j));
    w.columns = std::move(s);
    w.construction = Construction::kReverseEdge;
  }
  return w;
}

std::optional<CriterionWitness> pc_criterion(const Digraph& g1, const Digraph& g2, bool* truncated) {
  require_same_nodes(g1, g2);
  if (truncated != nullptr) *truncated = false;
  if (is_complete(g1) || is_complete(g2)) return std::nullopt;
  for (Node i = 1; i <= g1.node_count(); ++i) {
    for (int k = 1; k <= 2; ++k) {
      const Digraph& gk = pick(k, g1, g2);
      const Digraph& other = pick(3 - k, g1, g2);
      if (gk.neighbors(i).size() > kMaxPCNeighborhood) {
        if (truncated != nullptr) *truncated = true;
        continue;
      }
      const NodeSet ck = gk.children(i);
      const NodeSet co = other.children(i);
      std::optional<NodeSet> hit;
      for_each_pc_set(gk, i, [&](const PCSet& l) {
        if ((ck & l.members).size() > (co & l.members).size()) hit = l.members;
        return !hit;
      });
      if (hit) return pc_witness(CriterionKind::kParentallyClosed, gk, other, k, i, *hit);
    }
  }
  return std::nullopt;
}

bool acyclic_construction_applies(const Digraph& g1, const Digraph& g2) {
  return g1.node_count() == g2.node_count() && !(g1 == g2) && !is_complete(g1) && !is_complete(g2) &&
         (is_acyclic(g1) || is_acyclic(g2)) && out_degree_vector(g1) == out_degree_vector(g2);
}

std::optional<CriterionWitness> acyclic_pc_witness(const Digraph& g1, const Digraph& g2) {
  require_same_nodes(g1, g2);
  if (!acyclic_construction_applies(g1, g2)) {
    throw std::invalid_argument(
        "acyclic construction needs two different non-complete graphs with equal out-degrees, "
        "one of them acyclic");
  }
  const int k = is_acyclic(g1) ? 1 : 2;
  const Digraph& gk = pick(k, g1, g2);
  const Digraph& other = pick(3 - k, g1, g2);
  Node i = 0;
  const std::vector<Node> order = *topological_order(gk);
  for (Node v : order) {
    if (gk.children(v) != other.children(v)) {
      i = v;
      break;
    }
  }
  const Node j = (gk.children(i) - other.children(i)).min();
  NodeSet up = gk.ancestors(j);
  up.insert(j);
  const NodeSet members = up & gk.neighbors(i);
  if ((gk.children(i) & members).size() <= (other.children(i) & members).size()) return std::nullopt;
  CriterionWitness w = pc_witness(CriterionKind::kAcyclicConstruction, gk, other, k, i, members);
  w.partner = j;
  return w;
}

NecessaryConditionReport necessary_condition_checks(const Digraph& g1, const Digraph& g2) {
  require_same_nodes(g1, g2);
  auto linked = [](const Digraph& g, Node a, Node b) {
    return g.adjacent(a, b) || !(g.children(a) & g.children(b)).empty();
  };
  NecessaryConditionReport out;
  const int n = g1.node_count();
  for (Node a = 1; a <= n; ++a) {
    for (Node b = a + 1; b <= n; ++b) {
      if (linked(g1, a, b) != linked(g2, a, b)) out.pattern_mismatches.emplace_back(a, b);
    }
  }
  for (Node v = 1; v <= n; ++v) {
    if (g1.is_sink(v) && g2.is_sink(v) && g1.parents(v) != g2.parents(v)) out.sink_mismatches.push_back(v);
  }
  return out;
}

DistinguishReport run_criteria(const Digraph& g1, const Digraph& g2) {
  require_same_nodes(g1, g2);
  DistinguishReport report;
  const bool complete1 = is_complete(g1);
  const bool complete2 = is_complete(g2);

  StageOutcome edges = stage("edge-count");
  edges.fired = g1.edge_count() != g2.edge_count();
  report.stages.push_back(edges);

  StageOutcome necessary = stage("necessary-conditions");
  necessary.conditions = necessary_condition_checks(g1, g2);
  necessary.fired = necessary.conditions->violated();
  report.stages.push_back(necessary);

  StageOutcome outdegree = stage("outdegree");
  if (complete1 && complete2) {
    outdegree.skipped = "both graphs are complete";
  } else {
    outdegree.witness = outdegree_criterion(g1, g2);
    outdegree.fired = outdegree.witness.has_value();
  }
  report.stages.push_back(outdegree);

  StageOutcome ttf = stage("transitive-triangle-free");
  if (complete1 || complete2) {
    ttf.skipped = "a graph is complete";
  } else if (!is_transitive_triangle_free(g1) || !is_transitive_triangle_free(g2)) {
    ttf.skipped = "a graph has a transitive triangle";
  } else {
    ttf.witness = ttf_criterion(g1, g2);
    ttf.fired = ttf.witness.has_value();
  }
  report.stages.push_back(ttf);

  StageOutcome pc = stage("parentally-closed");
  if (complete1 || complete2) {
    pc.skipped = "a graph is complete";
  } else {
    if (acyclic_construction_applies(g1, g2)) pc.witness = acyclic_pc_witness(g1, g2);
    if (!pc.witness) pc.witness = pc_criterion(g1, g2, &report.pc_truncated);
    pc.fired = pc.witness.has_value();
  }
  report.stages.push_back(pc);

  for (const StageOutcome& s : report.stages) {
    if (s.fired) {
      report.decided_by = s.name;
      break;
    }
  }
  return report;
}

DistinguishReport distinguish(const Digraph& g1, const Digraph& g2, const RankOracleConfig& cfg,
                              bool skip_matroid) {
  if (skip_matroid) return run_criteria(g1, g2);
  require_same_nodes(g1, g2);
  return distinguish(JacobianMatroid::compute(g1, cfg), JacobianMatroid::compute(g2, cfg), cfg);
}

DistinguishReport distinguish(const JacobianMatroid& m1, const JacobianMatroid& m2, const RankOracleConfig& cfg) {
  DistinguishReport report = run_criteria(m1.graph(), m2.graph());
  report.matroid = compare(m1, m2, cfg);
  for (StageOutcome& s : report.stages) {
    if (!s.witness || !s.witness->columns) continue;
    const std::uint64_t mask = s.witness->columns->mask(m1.graph().node_count());
    const bool first = s.witness->favored() == 1;
    s.column_ranks = std::pair{(first ? m1 : m2).rank_of(mask), (first ? m2 : m1).rank_of(mask)};
  }
  if (report.decided_by == "none" && report.matroid->verdict == MatroidComparison::Verdict::kDifferent) {
    report.decided_by = "matroid";
  }
  return report;
}

}  // namespace semid
