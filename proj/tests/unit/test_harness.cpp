#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "semid/harness.hpp"
#include "semid/report.hpp"

using namespace semid;
using semid::testing::load;

namespace {

std::uint64_t choose2(std::uint64_t m) { return m * (m - 1) / 2; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class ScratchDir {
 public:
  ScratchDir() : path_(std::filesystem::temp_directory_path() / ("semid-test-" + std::to_string(std::random_device{}()))) {
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() { std::filesystem::remove_all(path_); }
  [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// Report with the run-specific parts of the config echo reset.
std::string canonical(SweepResult r) {
  r.config.workers = 1;
  r.config.output_path.clear();
  r.config.checkpoint_path.clear();
  r.config.max_chunks = 0;
  return sweep_json(r, false);
}

SweepConfig exhaustive(int n) {
  SweepConfig cfg;
  cfg.n = n;
  cfg.mode = SweepConfig::Mode::kExhaustive;
  return cfg;
}

bool flip_nodes_are_common_children(const Digraph& g) {
  const int p = g.node_count();
  for (Node v = 1; v <= p - 2; ++v)
    if (!g.has_edge(v, p - 1) || !g.has_edge(v, p)) return false;
  return true;
}

}  // namespace

TEST(PcSweep, TwoNodesHasNoCounterexample) {
  const SweepResult r = verify_pc_conjecture(exhaustive(2));
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.counterexamples, 0u);
  EXPECT_EQ(r.witnesses + r.witness_less, r.pairs_tested);
}

TEST(PcSweep, FourNodesExhaustive) {
  const SweepResult r = verify_pc_conjecture(exhaustive(4));
  EXPECT_EQ(r.witness_less, 0u);
  EXPECT_EQ(r.counterexamples, 0u);

  std::map<std::vector<int>, std::uint64_t> sizes;
  for (const Digraph& g : enumerate_simple_digraphs(4))
    if (!is_complete(g)) ++sizes[out_degree_vector(g)];
  std::uint64_t expected_pairs = 0;
  for (const auto& [degrees, size] : sizes) expected_pairs += choose2(size);

  std::uint64_t members = 0;
  for (const ClassResult& c : r.classes) {
    EXPECT_TRUE(c.exhaustive);
    EXPECT_EQ(c.class_size, sizes.at(c.out_degrees));
    EXPECT_EQ(c.pairs_tested, choose2(c.class_size));
    EXPECT_EQ(c.witnesses + c.witness_less.size(), c.pairs_tested);
    members += c.class_size;
  }
  EXPECT_EQ(members, 729u - 64u);
  EXPECT_EQ(r.pairs_tested, expected_pairs);
  EXPECT_TRUE(std::is_sorted(r.classes.begin(), r.classes.end(),
                             [](const ClassResult& a, const ClassResult& b) { return a.out_degrees < b.out_degrees; }));
}

TEST(PcSweep, ResultIndependentOfWorkerCount) {
  SweepConfig cfg = exhaustive(4);
  const std::string one = canonical(verify_pc_conjecture(cfg));
  cfg.workers = 3;
  EXPECT_EQ(canonical(verify_pc_conjecture(cfg)), one);

  SweepConfig sampled;
  sampled.n = 5;
  sampled.mode = SweepConfig::Mode::kSampled;
  sampled.sample_size = 10;
  const std::string a = canonical(verify_pc_conjecture(sampled));
  EXPECT_EQ(canonical(verify_pc_conjecture(sampled)), a);
  sampled.workers = 2;
  EXPECT_EQ(canonical(verify_pc_conjecture(sampled)), a);
}

TEST(PcSweep, SampledClassesUseSampleSize) {
  SweepConfig cfg;
  cfg.n = 5;
  cfg.mode = SweepConfig::Mode::kSampled;
  cfg.sample_size = 10;
  const SweepResult r = verify_pc_conjecture(cfg);
  EXPECT_EQ(r.counterexamples, 0u);
  for (const ClassResult& c : r.classes) {
    EXPECT_EQ(c.exhaustive, choose2(c.class_size) <= 10);
    EXPECT_EQ(c.pairs_tested, c.exhaustive ? choose2(c.class_size) : 10u);
  }
}

TEST(PcSweep, ResumesFromCheckpoint) {
  ScratchDir dir;
  SweepConfig cfg;
  cfg.n = 5;
  cfg.mode = SweepConfig::Mode::kSampled;
  cfg.sample_size = 30;
  cfg.output_path = dir.file("full.jsonl");
  const SweepResult full = verify_pc_conjecture(cfg);
  ASSERT_GT(full.pairs_tested, 2 * kCheckpointInterval);

  cfg.output_path = dir.file("resumed.jsonl");
  cfg.checkpoint_path = dir.file("sweep.ckpt");
  cfg.max_chunks = 1;
  const SweepResult partial = verify_pc_conjecture(cfg);
  EXPECT_FALSE(partial.complete);
  EXPECT_EQ(partial.pairs_tested, kCheckpointInterval);
  ASSERT_TRUE(std::filesystem::exists(cfg.checkpoint_path));

  cfg.max_chunks = 0;
  const SweepResult resumed = verify_pc_conjecture(cfg);
  EXPECT_TRUE(resumed.complete);
  EXPECT_EQ(resumed.pairs_tested, full.pairs_tested);
  EXPECT_EQ(slurp(dir.file("resumed.jsonl")), slurp(dir.file("full.jsonl")));

  EXPECT_EQ(canonical(resumed), canonical(full));

  cfg.seed += 1;
  EXPECT_THROW(verify_pc_conjecture(cfg), std::runtime_error);
}

TEST(PcSweep, ConfigGuards) {
  EXPECT_THROW(validate(exhaustive(1)), std::invalid_argument);
  EXPECT_THROW(validate(exhaustive(7)), std::invalid_argument);
  EXPECT_THROW(validate(exhaustive(6)), std::invalid_argument);
  SweepConfig large = exhaustive(6);
  large.allow_large_exhaustive = true;
  EXPECT_NO_THROW(validate(large));
  SweepConfig bad;
  bad.mode = SweepConfig::Mode::kSampled;
  bad.sample_size = 0;
  EXPECT_THROW(validate(bad), std::invalid_argument);
  bad = SweepConfig{};
  bad.workers = 0;
  EXPECT_THROW(validate(bad), std::invalid_argument);
}

TEST(CompleteSweep, SmallCases) {
  CompleteSweepConfig cfg;
  cfg.p = 2;
  const CompleteSweepResult two = verify_complete_conjecture(cfg);
  EXPECT_EQ(two.orientations_total, 1u);
  EXPECT_EQ(two.equal, 1u);

  for (int p : {3, 4}) {
    cfg.p = p;
    const CompleteSweepResult r = verify_complete_conjecture(cfg);
    EXPECT_FALSE(r.sampled);
    EXPECT_EQ(r.orientations_total, std::uint64_t{1} << (p * (p - 1) / 2 - 1));
    EXPECT_EQ(r.pairs.size(), r.orientations_total);
    EXPECT_EQ(r.equal + r.different, r.orientations_total);
    for (const OrientationPair& o : r.pairs) {
      EXPECT_TRUE(o.forward.has_edge(p - 1, p));
      EXPECT_TRUE(o.backward.has_edge(p, p - 1));
      EXPECT_TRUE(is_complete(o.forward) && is_complete(o.backward));
      const bool equal = o.comparison.verdict == MatroidComparison::Verdict::kEqual;
      EXPECT_EQ(equal, flip_nodes_are_common_children(o.forward)) << serialize_graph(o.forward);
    }
  }
  cfg.p = 3;
  EXPECT_EQ(verify_complete_conjecture(cfg).equal, 1u);
  cfg.p = 4;
  EXPECT_EQ(verify_complete_conjecture(cfg).equal, 2u);

  cfg.p = 1;
  EXPECT_THROW(verify_complete_conjecture(cfg), std::invalid_argument);
  cfg.p = 7;
  EXPECT_THROW(verify_complete_conjecture(cfg), std::invalid_argument);
}

TEST(CompleteSweep, ReportIsDeterministic) {
  CompleteSweepConfig cfg;
  cfg.p = 4;
  EXPECT_EQ(complete_sweep_json(verify_complete_conjecture(cfg), false),
            complete_sweep_json(verify_complete_conjecture(cfg), false));
}

TEST(ClassifyFamily, Examples) {
  const RankOracleConfig oracle;
  const FamilyReport single = classify_family({load("diamond.g")}, oracle);
  EXPECT_TRUE(single.identifiable);
  EXPECT_TRUE(single.pairs.empty());

  const FamilyReport flip = classify_family({load("complete_flip_g1.g"), load("complete_flip_g2.g")}, oracle);
  EXPECT_FALSE(flip.identifiable);
  EXPECT_TRUE(flip.any_complete);
  EXPECT_FALSE(flip.pairwise_pc_witness);

  EXPECT_THROW(classify_family({load("diamond.g"), Digraph::edgeless(3)}, oracle), std::invalid_argument);
}

TEST(ClassifyFamily, TransitiveTriangleFreeFourNodeFamily) {
  std::vector<Digraph> family;
  for (const Digraph& g : enumerate_simple_digraphs(4))
    if (is_transitive_triangle_free(g) && !is_complete(g)) family.push_back(g);
  const FamilyReport r = classify_family(family, RankOracleConfig{});
  EXPECT_TRUE(r.all_transitive_triangle_free);
  EXPECT_FALSE(r.any_complete);
  EXPECT_TRUE(r.identifiable);
  EXPECT_EQ(r.pairs.size(), family.size() * (family.size() - 1) / 2);
}

TEST(Reports, CarryOracleHeader) {
  const RankOracleConfig oracle;
  const std::string j = jacobian_json(build_jacobian(load("diamond.g")), oracle);
  for (const char* key : {"\"tool_version\"", "\"seed\"", "\"prime\"", "\"trials\"", "\"rows\"", "\"cols\""})
    EXPECT_NE(j.find(key), std::string::npos) << key;
  const std::string s = sweep_json(verify_pc_conjecture(exhaustive(3)), false);
  EXPECT_EQ(s.find("\"timing\""), std::string::npos);
  EXPECT_NE(sweep_json(verify_pc_conjecture(exhaustive(3))).find("\"timing\""), std::string::npos);
}
