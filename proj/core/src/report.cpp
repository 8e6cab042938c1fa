#include "semid/report.hpp"

#include <nlohmann/json.hpp>

#include "semid/version.hpp"

namespace semid {

namespace {

using json = nlohmann::ordered_json;

json header(std::uint64_t seed, std::uint64_t prime, int trials) {
  json j;
  j["tool_version"] = kVersion;
  j["seed"] = seed;
  j["prime"] = prime;
  j["trials"] = trials;
  return j;
}

json header(const RankOracleConfig& cfg) { return header(cfg.seed, cfg.prime, cfg.trials); }

json edges(const Digraph& g) {
  json out = json::array();
  for (const Edge& e : g.edges()) out.push_back({e.tail, e.head});
  return out;
}

json graph(const Digraph& g) { return {{"nodes", g.node_count()}, {"edges", edges(g)}}; }

json labels(const ColumnSet& s) {
  json out = json::array();
  for (ColumnIndex c : s) out.push_back({std::to_string(c.i), std::to_string(c.j)});
  return out;
}

json nodes(NodeSet s) {
  json out = json::array();
  for (Node v : s) out.push_back(v);
  return out;
}

json witness(const CriterionWitness& w) {
  json j;
  j["kind"] = to_string(w.kind);
  j["node"] = w.node;
  j["direction"] = w.direction;
  j["favored"] = w.favored();
  if (w.pc_set) j["pc_set"] = {{"anchor", w.pc_set->anchor}, {"members", nodes(w.pc_set->members)}};
  if (w.columns) j["columns"] = labels(*w.columns);
  j["construction"] = to_string(w.construction);
  if (w.partner) j["partner"] = *w.partner;
  if (w.common_child) j["common_child"] = *w.common_child;
  return j;
}

json comparison(const MatroidComparison& c) {
  json j;
  j["verdict"] = to_string(c.verdict);
  j["witness"] = c.witness ? labels(*c.witness) : json(nullptr);
  j["ranks"] = {c.ranks.first, c.ranks.second};
  j["failure_bound"] = c.failure_bound;
  return j;
}

json sweep_config(const SweepConfig& c) {
  json j;
  j["n"] = c.n;
  j["mode"] = c.mode == SweepConfig::Mode::kExhaustive ? "exhaustive" : "sampled";
  j["sample_size"] = c.sample_size;
  j["workers"] = c.workers;
  return j;
}

}  // namespace

std::string jacobian_json(const Jacobian& jac, const RankOracleConfig& cfg) {
  json j = header(cfg);
  j["graph"] = graph(jac.graph());
  j["rows"] = jac.row_labels();
  j["cols"] = jac.column_labels();
  json entries = json::array();
  for (int r = 0; r < jac.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < jac.cols(); ++c) row.push_back(jac.render(r, c));
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j.dump(2);
}

std::string rank_json(const Digraph& g, const ColumnSet& s, int rank, const RankOracleConfig& cfg,
                      std::optional<int> exact) {
  json j = header(cfg);
  j["graph"] = graph(g);
  j["columns"] = labels(s);
  j["rank"] = rank;
  j["independent"] = rank == s.size();
  j["failure_bound"] = failure_bound(cfg, g.edge_count());
  if (exact) j["exact_rank"] = *exact;
  return j.dump(2);
}

std::string comparison_json(const MatroidComparison& c, const RankOracleConfig& cfg) {
  json j = header(cfg);
  j.update(comparison(c));
  return j.dump(2);
}

std::string distinguish_json(const DistinguishReport& r, const RankOracleConfig& cfg) {
  json j = header(cfg);
  json stages = json::array();
  for (const StageOutcome& s : r.stages) {
    json st;
    st["name"] = s.name;
    st["fired"] = s.fired;
    if (!s.skipped.empty()) st["skipped"] = s.skipped;
    st["witness"] = s.witness ? witness(*s.witness) : json(nullptr);
    if (s.conditions) {
      json pairs = json::array();
      for (const auto& [a, b] : s.conditions->pattern_mismatches) pairs.push_back({a, b});
      st["pattern_mismatches"] = std::move(pairs);
      st["sink_mismatches"] = s.conditions->sink_mismatches;
    }
    if (s.column_ranks) st["column_ranks"] = {s.column_ranks->first, s.column_ranks->second};
    stages.push_back(std::move(st));
  }
  j["stages"] = std::move(stages);
  j["matroid"] = r.matroid ? comparison(*r.matroid) : json(nullptr);
  j["decided_by"] = r.decided_by;
  j["pc_truncated"] = r.pc_truncated;
  return j.dump(2);
}

std::string pc_sets_json(const Digraph& g, Node i, const std::vector<PCSet>& sets, const RankOracleConfig& cfg) {
  json j = header(cfg);
  j["graph"] = graph(g);
  j["node"] = i;
  json out = json::array();
  for (const PCSet& s : sets) out.push_back(nodes(s.members));
  j["pc_sets"] = std::move(out);
  return j.dump(2);
}

std::string sweep_json(const SweepResult& r, bool with_timing) {
  json j = header(r.config.seed, r.config.oracle.prime, r.config.oracle.trials);
  j["config"] = sweep_config(r.config);
  j["complete"] = r.complete;
  j["pairs_tested"] = r.pairs_tested;
  j["witnesses"] = r.witnesses;
  j["witness_less"] = r.witness_less;
  j["counterexamples"] = r.counterexamples;
  json classes = json::array();
  for (const ClassResult& c : r.classes) {
    json cj;
    cj["out_degrees"] = c.out_degrees;
    cj["class_size"] = c.class_size;
    cj["exhaustive"] = c.exhaustive;
    cj["pairs_tested"] = c.pairs_tested;
    cj["witnesses"] = c.witnesses;
    json wl = json::array();
    for (const WitnessLessPair& w : c.witness_less) {
      wl.push_back({{"g1", edges(w.g1)},
                    {"g2", edges(w.g2)},
                    {"same_components", w.same_components},
                    {"counterexample", w.counterexample()}});
    }
    cj["witness_less"] = std::move(wl);
    classes.push_back(std::move(cj));
  }
  j["classes"] = std::move(classes);
  if (with_timing) j["timing"] = {{"seconds", r.seconds}};
  return j.dump(2);
}

std::string complete_sweep_json(const CompleteSweepResult& r, bool with_timing) {
  json j = header(r.config.seed, r.config.oracle.prime, r.config.oracle.trials);
  j["p"] = r.config.p;
  j["orientations_total"] = r.orientations_total;
  j["sampled"] = r.sampled;
  j["pairs_compared"] = r.pairs.size();
  j["equal"] = r.equal;
  j["different"] = r.different;
  json pairs = json::array();
  for (const OrientationPair& op : r.pairs) {
    json pj;
    pj["orientation"] = op.orientation;
    pj["forward"] = edges(op.forward);
    pj["backward"] = edges(op.backward);
    pj.update(comparison(op.comparison));
    pairs.push_back(std::move(pj));
  }
  j["pairs"] = std::move(pairs);
  if (with_timing) j["timing"] = {{"seconds", r.seconds}};
  return j.dump(2);
}

std::string family_json(const FamilyReport& r, const RankOracleConfig& cfg) {
  json j = header(cfg);
  json graphs = json::array();
  for (const Digraph& g : r.graphs) graphs.push_back(graph(g));
  j["graphs"] = std::move(graphs);
  json pairs = json::array();
  for (const FamilyPair& p : r.pairs) {
    pairs.push_back({{"first", p.first},
                     {"second", p.second},
                     {"decided_by", p.report.decided_by},
                     {"verdict", p.report.matroid ? to_string(p.report.matroid->verdict) : "unknown"}});
  }
  j["pairs"] = std::move(pairs);
  j["identifiable"] = r.identifiable;
  j["any_complete"] = r.any_complete;
  j["conditions"] = {{"unique_out_degrees", r.unique_out_degrees},
                     {"all_transitive_triangle_free", r.all_transitive_triangle_free},
                     {"pairwise_pc_witness", r.pairwise_pc_witness}};
  return j.dump(2);
}

}  // namespace semid
