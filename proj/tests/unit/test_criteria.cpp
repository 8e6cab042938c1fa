#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "semid/criteria.hpp"

using namespace semid;
using semid::testing::load;

namespace {

const RankOracleConfig kCfg{};

NodeSet nodes(std::initializer_list<Node> vs) { return NodeSet(vs); }

// j=1, i=2, l1=3, l2=4 in the drawing.
Digraph layered_g1() { return Digraph(4, {{1, 2}, {1, 3}, {2, 3}, {2, 4}}); }
Digraph layered_g2() { return Digraph(4, {{2, 1}, {1, 3}, {1, 4}, {2, 4}}); }

bool closed_by_definition(const Digraph& g, Node i, NodeSet l) {
  for (Node m : l)
    for (Node p : g.parents(m))
      if (g.neighbors(i).contains(p) && !l.contains(p)) return false;
  return true;
}

class FourNodeMatroids {
 public:
  const JacobianMatroid& operator[](std::uint64_t index) {
    auto it = cache_.find(index);
    if (it == cache_.end()) it = cache_.emplace(index, JacobianMatroid::compute(digraph_from_index(4, index), kCfg)).first;
    return it->second;
  }

 private:
  std::map<std::uint64_t, JacobianMatroid> cache_;
};

}  // namespace

TEST(OutdegreeCriterion, Examples) {
  const auto w = outdegree_criterion(load("diamond.g"), load("four_cycle.g"));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->node, 1);
  EXPECT_EQ(w->direction, 1);
  EXPECT_EQ(w->kind, CriterionKind::kOutDegree);
  EXPECT_FALSE(outdegree_criterion(load("same_outdeg_g1.g"), load("same_outdeg_g2.g")).has_value());
  EXPECT_FALSE(outdegree_criterion(load("diamond.g"), load("diamond.g")).has_value());
  EXPECT_FALSE(outdegree_criterion(load("complete_flip_g1.g"), load("complete_flip_g2.g")).has_value());
}

TEST(OutdegreeCriterion, WitnessSetHasEdgeCountPlusOneColumns) {
  const Digraph g1(4, {{1, 2}, {1, 3}, {2, 4}});
  const Digraph g2(4, {{1, 2}, {3, 2}, {2, 4}});
  const auto w = outdegree_criterion(g1, g2);
  ASSERT_TRUE(w.has_value() && w->columns.has_value());
  EXPECT_EQ(w->columns->size(), 4);
  for (ColumnIndex c : *w->columns) EXPECT_TRUE(c.i != w->node && c.j != w->node) << c.label();
}

TEST(TtfCriterion, SameOutDegreeExample) {
  const auto w = ttf_criterion(load("same_outdeg_g1.g"), load("same_outdeg_g2.g"));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->node, 1);
  EXPECT_EQ(w->partner, 2);
  EXPECT_EQ(w->common_child, 5);
  EXPECT_EQ(w->construction, Construction::kCommonChild);
  EXPECT_EQ(w->favored(), 2);
  EXPECT_EQ(w->columns, ColumnSet::parse("K11,K12,K66,K14,K15,K16,K35,K36"));
}

TEST(TtfCriterion, AbsentCases) {
  EXPECT_FALSE(ttf_criterion(layered_g1(), layered_g2()).has_value());
  EXPECT_FALSE(ttf_criterion(load("diamond.g"), load("diamond.g")).has_value());
}

TEST(PcSets, Examples) {
  const Digraph g1 = load("no_pc_witness_g1.g");
  std::vector<NodeSet> node1;
  for (const PCSet& l : pc_sets(g1, 1)) node1.push_back(l.members);
  EXPECT_NE(std::find(node1.begin(), node1.end(), nodes({6})), node1.end());
  EXPECT_NE(std::find(node1.begin(), node1.end(), nodes({2, 3, 4, 5})), node1.end());

  const auto empty = pc_sets(Digraph::edgeless(3), 2);
  ASSERT_EQ(empty.size(), 1u);
  EXPECT_TRUE(empty[0].members.empty());

  bool found = false;
  for (const PCSet& l : pc_sets(layered_g2(), 2)) found = found || l.members == nodes({1, 4});
  EXPECT_TRUE(found);
}

TEST(PcSets, NoPcWitnessListing) {
  // Nonempty closed sets; the listing omits node 1's whole neighborhood.
  const std::map<Node, std::vector<NodeSet>> listed{
      {1, {nodes({6}), nodes({2, 3, 4, 5})}}, {2, {nodes({1, 3, 4, 5})}}, {3, {nodes({1, 2, 4, 5})}},
      {4, {nodes({1, 2, 3, 5})}},            {5, {nodes({1, 2, 3, 4})}}, {6, {nodes({1})}}};
  for (const char* name : {"no_pc_witness_g1.g", "no_pc_witness_g2.g"}) {
    const Digraph g = load(name);
    for (const auto& [i, expected] : listed) {
      std::vector<NodeSet> got;
      for (const PCSet& l : pc_sets(g, i))
        if (!l.members.empty() && !(i == 1 && l.members == g.neighbors(i))) got.push_back(l.members);
      EXPECT_EQ(got, expected) << name << " node " << i;
    }
  }
}

TEST(PcSets, ClosureMatchesBruteForce) {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 200; ++t) {
    const Digraph g = semid::testing::random_digraph(t < 100 ? 4 : 6, gen);
    for (Node i = 1; i <= g.node_count(); ++i) {
      const NodeSet nb = g.neighbors(i);
      std::vector<NodeSet> expected;
      std::vector<Node> members(nb.begin(), nb.end());
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << members.size()); ++mask) {
        NodeSet l;
        for (std::size_t b = 0; b < members.size(); ++b)
          if (mask >> b & 1) l.insert(members[b]);
        if (closed_by_definition(g, i, l)) expected.push_back(l);
      }
      std::vector<NodeSet> got;
      for (const PCSet& l : pc_sets(g, i)) {
        EXPECT_TRUE(is_parentally_closed(g, i, l.members));
        got.push_back(l.members);
      }
      ASSERT_EQ(got.size(), expected.size()) << serialize_graph(g) << " node " << i;
      for (const NodeSet& l : expected) EXPECT_NE(std::find(got.begin(), got.end(), l), got.end());
      for (std::size_t k = 1; k < got.size(); ++k) {
        EXPECT_LE(got[k - 1].size(), got[k].size());
      }
    }
  }
}

TEST(PcCriterion, Examples) {
  const auto w = pc_criterion(layered_g1(), layered_g2());
  ASSERT_TRUE(w.has_value());
  const Node i = w->node;
  const Digraph& gk = w->direction == 1 ? layered_g1() : layered_g2();
  const Digraph& other = w->direction == 1 ? layered_g2() : layered_g1();
  ASSERT_TRUE(w->pc_set.has_value());
  EXPECT_GT((gk.children(i) & w->pc_set->members).size(), (other.children(i) & w->pc_set->members).size());

  const NodeSet l = nodes({1, 4});
  EXPECT_TRUE(is_parentally_closed(layered_g2(), 2, l));
  EXPECT_EQ((layered_g2().children(2) & l).size(), 2);
  EXPECT_EQ((layered_g1().children(2) & l).size(), 1);

  EXPECT_FALSE(pc_criterion(load("no_pc_witness_g1.g"), load("no_pc_witness_g2.g")).has_value());
}

TEST(PcCriterion, SubsumesOutdegreeCriterion) {
  int checked = 0;
  for (std::uint64_t a = 0; a < 729; ++a) {
    const Digraph g1 = digraph_from_index(4, a);
    for (std::uint64_t b = a + 1; b < 729; ++b) {
      const Digraph g2 = digraph_from_index(4, b);
      if (g1.edge_count() != g2.edge_count() || is_complete(g1) || is_complete(g2)) continue;
      const auto w = outdegree_criterion(g1, g2);
      if (!w) continue;
      ++checked;
      const Digraph& gk = w->direction == 1 ? g1 : g2;
      EXPECT_TRUE(is_parentally_closed(gk, w->node, gk.neighbors(w->node)));
      EXPECT_TRUE(pc_criterion(g1, g2).has_value());
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(PcWitnessSet, ConstructionGapCounterexample) {
  const Digraph g1(3, {{2, 1}, {3, 1}});
  const Digraph g2(3, {{1, 3}, {2, 3}});
  EXPECT_TRUE(is_parentally_closed(g2, 1, nodes({3})));
  const ColumnSet s = pc_witness_set(g1, 1, nodes({3}));
  EXPECT_EQ(s, ColumnSet::parse("K22,K33,K12"));
  EXPECT_EQ(generic_rank(build_jacobian(g1), s, kCfg), 3);
  EXPECT_EQ(generic_rank(build_jacobian(g2), s, kCfg), 3);
  EXPECT_EQ(exact_rank(build_jacobian(g1), s), 3);
  EXPECT_EQ(exact_rank(build_jacobian(g2), s), 3);
}

TEST(AcyclicWitness, ValidOnAllFourNodePairs) {
  int pairs = 0;
  for (std::uint64_t a = 0; a < 729; ++a) {
    const Digraph g1 = digraph_from_index(4, a);
    for (std::uint64_t b = 0; b < 729; ++b) {
      const Digraph g2 = digraph_from_index(4, b);
      if (!acyclic_construction_applies(g1, g2)) continue;
      ++pairs;
      const auto w = acyclic_pc_witness(g1, g2);
      ASSERT_TRUE(w.has_value()) << serialize_graph(g1) << serialize_graph(g2);
      const Digraph& gk = w->direction == 1 ? g1 : g2;
      const Digraph& other = w->direction == 1 ? g2 : g1;
      EXPECT_TRUE(is_acyclic(gk));
      const NodeSet l = w->pc_set->members;
      EXPECT_TRUE(closed_by_definition(gk, w->node, l));
      EXPECT_GT((gk.children(w->node) & l).size(), (other.children(w->node) & l).size());
    }
  }
  EXPECT_GT(pairs, 0);
  EXPECT_THROW(acyclic_pc_witness(load("diamond.g"), load("diamond.g")), std::invalid_argument);
}

TEST(AcyclicWitness, DiamondAgainstSameOutDegrees) {
  const Digraph diamond = load("diamond.g");
  int found = 0;
  for (const Digraph& g : enumerate_simple_digraphs(4)) {
    if (g == diamond || out_degree_vector(g) != out_degree_vector(diamond)) continue;
    EXPECT_TRUE(acyclic_pc_witness(diamond, g).has_value());
    ++found;
  }
  EXPECT_GT(found, 0);
}

TEST(NecessaryConditions, Examples) {
  const NecessaryConditionReport r = necessary_condition_checks(load("four_cycle.g"), load("diamond.g"));
  EXPECT_TRUE(r.violated());
  EXPECT_NE(std::find(r.pattern_mismatches.begin(), r.pattern_mismatches.end(), std::pair<Node, Node>{1, 4}),
            r.pattern_mismatches.end());
  EXPECT_FALSE(necessary_condition_checks(load("diamond.g"), load("diamond.g")).violated());
  EXPECT_FALSE(necessary_condition_checks(load("complete_flip_g1.g"), load("complete_flip_g2.g")).violated());
  const Digraph a(3, {{1, 3}});
  const Digraph b(3, {{2, 3}});
  EXPECT_EQ(necessary_condition_checks(a, b).sink_mismatches, std::vector<Node>{3});
}

TEST(Distinguish, FigureExamples) {
  const DistinguishReport same = distinguish(load("same_outdeg_g1.g"), load("same_outdeg_g2.g"), kCfg);
  EXPECT_EQ(same.decided_by, "transitive-triangle-free");
  ASSERT_TRUE(same.matroid.has_value());
  EXPECT_EQ(same.matroid->verdict, MatroidComparison::Verdict::kDifferent);

  const DistinguishReport nopc = distinguish(load("no_pc_witness_g1.g"), load("no_pc_witness_g2.g"), kCfg);
  EXPECT_EQ(nopc.decided_by, "matroid");
  EXPECT_EQ(nopc.matroid->verdict, MatroidComparison::Verdict::kDifferent);

  const DistinguishReport flip = distinguish(load("complete_flip_g1.g"), load("complete_flip_g2.g"), kCfg);
  EXPECT_EQ(flip.decided_by, "none");
  EXPECT_EQ(flip.matroid->verdict, MatroidComparison::Verdict::kEqual);
  for (const StageOutcome& s : flip.stages) EXPECT_FALSE(s.fired) << s.name;

  const DistinguishReport quick = distinguish(load("diamond.g"), load("four_cycle.g"), kCfg, true);
  EXPECT_FALSE(quick.matroid.has_value());
  EXPECT_THROW(distinguish(load("diamond.g"), Digraph::edgeless(3), kCfg), std::invalid_argument);
}

TEST(Distinguish, CriteriaAreSoundOnFourNodes) {
  FourNodeMatroids matroids;
  int fired = 0;
  int pc_set_gaps_missing = 0;
  for (std::uint64_t a = 0; a < 729; ++a) {
    const Digraph g1 = digraph_from_index(4, a);
    for (std::uint64_t b = a + 1; b < 729; ++b) {
      const Digraph g2 = digraph_from_index(4, b);
      const DistinguishReport r = run_criteria(g1, g2);
      std::vector<const CriterionWitness*> witnesses;
      for (const StageOutcome& s : r.stages)
        if (s.witness) witnesses.push_back(&*s.witness);
      const bool criterion = std::any_of(r.stages.begin() + 2, r.stages.end(), [](const auto& s) { return s.fired; });
      if (!criterion && !r.stages[1].fired) continue;
      ++fired;
      const JacobianMatroid& m1 = matroids[a];
      const JacobianMatroid& m2 = matroids[b];
      ASSERT_EQ(compare(m1, m2, kCfg).verdict, MatroidComparison::Verdict::kDifferent)
          << serialize_graph(g1) << serialize_graph(g2);
      for (const CriterionWitness* w : witnesses) {
        if (!w->columns) continue;
        if (w->construction != Construction::kNonAdjacent) {
          EXPECT_EQ(w->columns->size(), g1.edge_count() + 1);
        }
        const std::uint64_t mask = w->columns->mask(4);
        const int favored = (w->favored() == 1 ? m1 : m2).rank_of(mask);
        const int other = (w->favored() == 1 ? m2 : m1).rank_of(mask);
        if (w->construction == Construction::kParentallyClosed) {
          if (favored <= other) ++pc_set_gaps_missing;
          continue;
        }
        EXPECT_GT(favored, other) << to_string(w->construction) << "\n"
                                  << serialize_graph(g1) << serialize_graph(g2);
      }
    }
  }
  EXPECT_GT(fired, 0);
  EXPECT_GT(pc_set_gaps_missing, 0);
}
