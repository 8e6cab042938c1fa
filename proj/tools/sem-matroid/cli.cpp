#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "semid/criteria.hpp"
#include "semid/harness.hpp"
#include "semid/jacobian.hpp"
#include "semid/matroid.hpp"
#include "semid/report.hpp"
#include "semid/version.hpp"

namespace semid {

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_table(std::ostream& out, const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                 const std::function<std::string(int, int)>& cell) {
  std::vector<std::size_t> width(cols.size() + 1, 0);
  for (const std::string& r : rows) width[0] = std::max(width[0], r.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    width[c + 1] = cols[c].size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      width[c + 1] = std::max(width[c + 1], cell(static_cast<int>(r), static_cast<int>(c)).size());
    }
  }
  auto line = [&](const std::string& head, const std::function<std::string(std::size_t)>& text) {
    out << std::left << std::setw(static_cast<int>(width[0])) << head;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out << "  " << std::setw(c + 1 == cols.size() ? 0 : static_cast<int>(width[c + 1])) << text(c);
    }
    out << std::right << '\n';
  };
  line("", [&](std::size_t c) { return cols[c]; });
  for (std::size_t r = 0; r < rows.size(); ++r) {
    line(rows[r], [&](std::size_t c) { return cell(static_cast<int>(r), static_cast<int>(c)); });
  }
}

void print_witness(std::ostream& out, const CriterionWitness& w) {
  out << "    " << to_string(w.kind) << " at node " << w.node << ", larger child count in G" << w.direction;
  if (w.partner) out << ", partner " << *w.partner;
  if (w.common_child) out << ", common child " << *w.common_child;
  out << '\n';
  if (w.pc_set) {
    out << "    parentally closed set {";
    bool first = true;
    for (Node v : w.pc_set->members) {
      out << (first ? "" : ", ") << v;
      first = false;
    }
    out << "}\n";
  }
  if (w.columns) {
    out << "    columns " << w.columns->to_string() << " (" << to_string(w.construction) << ", built on G"
        << w.favored() << ")\n";
  }
}

void print_comparison(std::ostream& out, const MatroidComparison& c) {
  out << "matroids: " << to_string(c.verdict) << " (ranks " << c.ranks.first << ", " << c.ranks.second << ")\n";
  if (c.witness) out << "  witness " << c.witness->to_string() << '\n';
  out << "  failure bound " << c.failure_bound << '\n';
}

void print_report(std::ostream& out, const DistinguishReport& r) {
  for (const StageOutcome& s : r.stages) {
    out << s.name << ": ";
    if (!s.skipped.empty()) {
      out << "skipped (" << s.skipped << ")\n";
      continue;
    }
    out << (s.fired ? "fired" : "no") << '\n';
    if (s.conditions) {
      for (const auto& [a, b] : s.conditions->pattern_mismatches) {
        out << "    adjacency or common child of " << a << ", " << b << " differs\n";
      }
      for (Node v : s.conditions->sink_mismatches) out << "    parents of sink " << v << " differ\n";
    }
    if (s.witness) print_witness(out, *s.witness);
    if (s.column_ranks) {
      out << "    column ranks " << s.column_ranks->first << " (favored) vs " << s.column_ranks->second << '\n';
    }
  }
  if (r.pc_truncated) out << "parentally-closed search skipped a node with more than " << kMaxPCNeighborhood
                          << " neighbors\n";
  if (r.matroid) print_comparison(out, *r.matroid);
  out << "decided by: " << r.decided_by << '\n';
}

ColumnSet all_columns(int n) {
  return ColumnSet(column_layout(n));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jacobian matroids and identifiability of homoscedastic linear SEMs", "sem-matroid"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  RankOracleConfig oracle;
  int workers = 1;
  app.add_option("--seed", oracle.seed, "Master seed for random evaluation points and sampling")
      ->envname("SEM_MATROID_SEED");
  app.add_option("--trials", oracle.trials, "Random evaluation points per rank query")->check(CLI::PositiveNumber);
  app.add_option("--workers", workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);

  std::function<int()> action;

  // jacobian
  auto* jac = app.add_subcommand("jacobian", "Print the symbolic Jacobian");
  std::string jac_graph;
  bool simplify = false;
  std::string format = "pretty";
  jac->add_option("graph", jac_graph, "Graph file")->required();
  jac->add_flag("--simplify-s-row", simplify, "Replace the s-row by its simplified form");
  jac->add_option("--format", format, "pretty or json")->check(CLI::IsMember({"pretty", "json"}));
  jac->callback([&] {
    action = [&] {
      Jacobian j = build_jacobian(read_graph_file(jac_graph));
      if (simplify) j = simplify_s_row(j);
      if (format == "json") {
        out << jacobian_json(j, oracle) << '\n';
      } else {
        print_table(out, j.row_labels(), j.column_labels(), [&](int r, int c) { return j.render(r, c); });
      }
      return 0;
    };
  });

  // rank
  auto* rank = app.add_subcommand("rank", "Generic rank of a set of Jacobian columns");
  std::string rank_graph;
  std::string columns;
  bool exact = false;
  bool rank_json_out = false;
  rank->add_option("graph", rank_graph, "Graph file")->required();
  rank->add_option("--columns", columns, "Comma-separated columns, e.g. K11,K12 (default: all)");
  rank->add_flag("--exact", exact, "Also compute the rank symbolically");
  rank->add_flag("--json", rank_json_out, "JSON output");
  rank->callback([&] {
    action = [&] {
      const Digraph g = read_graph_file(rank_graph);
      const ColumnSet s = columns.empty() ? all_columns(g.node_count()) : ColumnSet::parse(columns);
      const Jacobian j = build_jacobian(g);
      const int r = generic_rank(j, s, oracle);
      if (rank_json_out) {
        out << rank_json(g, s, r, oracle, exact ? std::optional<int>(exact_rank(j, s)) : std::nullopt) << '\n';
        return 0;
      }
      out << "rank " << r << " of " << s.size() << " columns " << s.to_string() << '\n';
      out << "failure bound " << failure_bound(oracle, g.edge_count()) << '\n';
      if (exact) out << "exact rank " << exact_rank(j, s) << '\n';
      return 0;
    };
  });

  // compare
  auto* cmp = app.add_subcommand("compare", "Compare the Jacobian matroids of two graphs");
  std::string g1_path;
  std::string g2_path;
  bool json_out = false;
  cmp->add_option("graph1", g1_path, "First graph file")->required();
  cmp->add_option("graph2", g2_path, "Second graph file")->required();
  cmp->add_flag("--json", json_out, "JSON output");
  cmp->callback([&] {
    action = [&] {
      const MatroidComparison c = matroids_equal(read_graph_file(g1_path), read_graph_file(g2_path), oracle);
      if (json_out) {
        out << comparison_json(c, oracle) << '\n';
      } else {
        print_comparison(out, c);
      }
      return 0;
    };
  });

  // criteria
  auto* crit = app.add_subcommand("criteria", "Run the graphical criteria without the matroid comparison");
  crit->add_option("graph1", g1_path, "First graph file")->required();
  crit->add_option("graph2", g2_path, "Second graph file")->required();
  crit->add_flag("--json", json_out, "JSON output");
  crit->callback([&] {
    action = [&] {
      const DistinguishReport r = run_criteria(read_graph_file(g1_path), read_graph_file(g2_path));
      if (json_out) {
        out << distinguish_json(r, oracle) << '\n';
      } else {
        print_report(out, r);
      }
      return 0;
    };
  });

  // pc-sets
  auto* pcs = app.add_subcommand("pc-sets", "List the parentally closed sets of a node");
  std::string pc_graph;
  Node pc_node = 0;
  pcs->add_option("graph", pc_graph, "Graph file")->required();
  pcs->add_option("--node", pc_node, "Anchor node")->required();
  pcs->add_flag("--json", json_out, "JSON output");
  pcs->callback([&] {
    action = [&] {
      const Digraph g = read_graph_file(pc_graph);
      if (pc_node < 1 || pc_node > g.node_count()) {
        throw std::invalid_argument("node " + std::to_string(pc_node) + " is not in the graph");
      }
      const std::vector<PCSet> sets = pc_sets(g, pc_node);
      if (json_out) {
        out << pc_sets_json(g, pc_node, sets, oracle) << '\n';
        return 0;
      }
      for (const PCSet& s : sets) {
        out << '{';
        bool first = true;
        for (Node v : s.members) {
          out << (first ? "" : ", ") << v;
          first = false;
        }
        out << "}\n";
      }
      return 0;
    };
  });

  // distinguish
  auto* dist = app.add_subcommand("distinguish", "Criteria cascade followed by the matroid comparison");
  bool skip_matroid = false;
  dist->add_option("graph1", g1_path, "First graph file")->required();
  dist->add_option("graph2", g2_path, "Second graph file")->required();
  dist->add_flag("--json", json_out, "JSON output");
  dist->add_flag("--skip-matroid", skip_matroid, "Skip the matroid comparison");
  dist->callback([&] {
    action = [&] {
      const DistinguishReport r =
          distinguish(read_graph_file(g1_path), read_graph_file(g2_path), oracle, skip_matroid);
      if (json_out) {
        out << distinguish_json(r, oracle) << '\n';
      } else {
        print_report(out, r);
      }
      return 0;
    };
  });

  // verify-pc-conjecture
  auto* vpc = app.add_subcommand("verify-pc-conjecture", "Sweep same-out-degree pairs for separating PC sets");
  SweepConfig sweep;
  std::uint64_t sample = 0;
  vpc->add_option("--n", sweep.n, "Node count")->required();
  vpc->add_option("--sample", sample, "Sample this many pairs per out-degree class");
  vpc->add_option("--out", sweep.output_path, "JSON-lines file for witness-less pairs");
  vpc->add_option("--checkpoint", sweep.checkpoint_path, "Checkpoint file; resumes when present");
  vpc->add_option("--max-chunks", sweep.max_chunks, "Stop after this many checkpoint intervals");
  vpc->add_flag("--allow-large-exhaustive", sweep.allow_large_exhaustive, "Permit exhaustive sweeps above 5 nodes");
  vpc->add_flag("--json", json_out, "Print the full JSON report");
  vpc->callback([&] {
    action = [&] {
      sweep.seed = oracle.seed;
      sweep.workers = workers;
      sweep.oracle = oracle;
      if (sample > 0) {
        sweep.mode = SweepConfig::Mode::kSampled;
        sweep.sample_size = sample;
      }
      const SweepResult r = verify_pc_conjecture(sweep);
      if (json_out) {
        out << sweep_json(r) << '\n';
        return 0;
      }
      out << "n " << sweep.n << ", " << r.classes.size() << " out-degree classes\n";
      out << "pairs tested " << r.pairs_tested << ", with witness " << r.witnesses << ", witness-less "
          << r.witness_less << ", counterexamples " << r.counterexamples << '\n';
      out << "complete " << yes_no(r.complete) << ", " << r.seconds << " s\n";
      return 0;
    };
  });

  // verify-complete-conjecture
  auto* vcc = app.add_subcommand("verify-complete-conjecture", "Compare complete digraphs that differ in one edge");
  CompleteSweepConfig complete;
  vcc->add_option("--p", complete.p, "Node count")->required();
  vcc->add_flag("--full", complete.full, "Sweep every orientation at 6 nodes");
  vcc->add_option("--sample", complete.sample_size, "Orientations sampled at 6 nodes");
  vcc->add_flag("--json", json_out, "Print the full JSON report");
  vcc->callback([&] {
    action = [&] {
      complete.seed = oracle.seed;
      complete.workers = workers;
      complete.oracle = oracle;
      const CompleteSweepResult r = verify_complete_conjecture(complete);
      if (json_out) {
        out << complete_sweep_json(r) << '\n';
        return 0;
      }
      out << "p " << complete.p << ", " << r.pairs.size() << " of " << r.orientations_total << " orientations"
          << (r.sampled ? " (sampled)" : "") << '\n';
      out << "Equal " << r.equal << ", Different " << r.different << ", " << r.seconds << " s\n";
      return 0;
    };
  });

  // classify
  auto* cls = app.add_subcommand("classify", "Pairwise identifiability of a family of graphs");
  std::vector<std::string> files;
  cls->add_option("graphs", files, "Graph files")->required();
  cls->add_flag("--json", json_out, "JSON output");
  cls->callback([&] {
    action = [&] {
      std::vector<Digraph> graphs;
      for (const std::string& f : files) graphs.push_back(read_graph_file(f));
      const FamilyReport r = classify_family(graphs, oracle);
      if (json_out) {
        out << family_json(r, oracle) << '\n';
        return 0;
      }
      for (const FamilyPair& p : r.pairs) {
        out << files[static_cast<std::size_t>(p.first)] << " vs " << files[static_cast<std::size_t>(p.second)] << ": "
            << (p.report.matroid ? to_string(p.report.matroid->verdict) : "unknown") << " (decided by "
            << p.report.decided_by << ")\n";
      }
      out << "identifiable: " << yes_no(r.identifiable) << '\n';
      out << "unique out-degrees: " << yes_no(r.unique_out_degrees) << '\n';
      out << "all transitive-triangle-free: " << yes_no(r.all_transitive_triangle_free) << '\n';
      out << "pairwise parentally closed witness: " << yes_no(r.pairwise_pc_witness) << '\n';
      return 0;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace semid
