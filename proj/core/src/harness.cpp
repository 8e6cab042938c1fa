#include "semid/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "random.hpp"

namespace semid {

namespace {

using json = nlohmann::json;

constexpr int kCheckpointVersion = 1;
constexpr int kMaxSweepNodes = 6;

void parallel_for(std::uint64_t count, int workers, const std::function<void(std::uint64_t)>& body) {
  if (workers <= 1 || count <= 1) {
    for (std::uint64_t t = 0; t < count; ++t) body(t);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::uint64_t t = next++; t < count; t = next++) body(t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Out-degree classes

struct DegreeClass {
  std::vector<int> degrees;
  std::uint64_t key = 0;
  std::vector<std::uint32_t> members;  // enumeration indices, increasing
  bool exhaustive = true;
  std::uint64_t pairs = 0;
};

std::vector<DegreeClass> build_classes(const SweepConfig& cfg) {
  const int n = cfg.n;
  const std::uint64_t total = simple_digraph_count(n);
  std::unordered_map<std::uint64_t, std::size_t> slot;
  std::vector<DegreeClass> classes;
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (std::uint64_t index = 0; index < total; ++index) {
    std::fill(deg.begin(), deg.end(), 0);
    std::uint64_t rest = index;
    bool complete = true;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const auto digit = rest % 3;
        rest /= 3;
        if (digit == 0) complete = false;
        if (digit == 1) ++deg[static_cast<std::size_t>(i)];
        if (digit == 2) ++deg[static_cast<std::size_t>(j)];
      }
    }
    if (complete) continue;
    std::uint64_t key = 0;
    for (int d : deg) key = key * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(d);
    auto [it, inserted] = slot.try_emplace(key, classes.size());
    if (inserted) {
      DegreeClass c;
      c.degrees = deg;
      c.key = key;
      classes.push_back(std::move(c));
    }
    classes[it->second].members.push_back(static_cast<std::uint32_t>(index));
  }
  std::sort(classes.begin(), classes.end(), [](const DegreeClass& a, const DegreeClass& b) { return a.key < b.key; });
  for (DegreeClass& c : classes) {
    const std::uint64_t m = c.members.size();
    const std::uint64_t all = m * (m - 1) / 2;
    c.exhaustive = cfg.mode == SweepConfig::Mode::kExhaustive || all <= cfg.sample_size;
    c.pairs = c.exhaustive ? all : cfg.sample_size;
  }
  return classes;
}

std::pair<std::uint64_t, std::uint64_t> unrank_pair(std::uint64_t m, std::uint64_t t) {
  std::uint64_t a = 0;
  while (t >= m - 1 - a) {
    t -= m - 1 - a;
    ++a;
  }
  return {a, a + 1 + t};
}

std::pair<std::uint64_t, std::uint64_t> sample_pair(const SweepConfig& cfg, const DegreeClass& c,
                                                    std::uint64_t t) {
  std::mt19937_64 gen = detail::seeded_engine({cfg.seed, c.key, t});
  const std::uint64_t m = c.members.size();
  const std::uint64_t a = detail::uniform_below(gen, m);
  std::uint64_t b = detail::uniform_below(gen, m - 1);
  if (b >= a) ++b;
  return {std::min(a, b), std::max(a, b)};
}

// ---------------------------------------------------------------------------
// Chunked evaluation

struct PendingPair {
  std::size_t cls = 0;
  std::uint32_t first = 0;
  std::uint32_t second = 0;
  bool same = false;
};

struct ChunkResult {
  std::vector<std::pair<std::size_t, std::pair<std::uint64_t, std::uint64_t>>> counts;  // class -> (pairs, witnesses)
  std::vector<PendingPair> witness_less;
};

ChunkResult run_chunk(const SweepConfig& cfg, const std::vector<DegreeClass>& classes,
                      const std::vector<std::uint64_t>& offsets, std::uint64_t begin, std::uint64_t end) {
  ChunkResult out;
  std::uint64_t g = begin;
  while (g < end) {
    const auto cls = static_cast<std::size_t>(std::upper_bound(offsets.begin(), offsets.end(), g) - offsets.begin() - 1);
    const DegreeClass& c = classes[cls];
    const std::uint64_t stop = std::min(end, offsets[cls + 1]);
    std::uint64_t t = g - offsets[cls];
    std::pair<std::uint64_t, std::uint64_t> ab{0, 0};
    if (c.exhaustive) ab = unrank_pair(c.members.size(), t);
    std::uint64_t pairs = 0;
    std::uint64_t witnesses = 0;
    for (; g < stop; ++g, ++t) {
      if (!c.exhaustive) ab = sample_pair(cfg, c, t);
      const std::uint32_t ia = c.members[ab.first];
      const std::uint32_t ib = c.members[ab.second];
      const Digraph g1 = digraph_from_index(cfg.n, ia);
      const Digraph g2 = digraph_from_index(cfg.n, ib);
      ++pairs;
      if (pc_criterion(g1, g2)) {
        ++witnesses;
      } else {
        out.witness_less.push_back({cls, ia, ib, same_components(g1, g2)});
      }
      if (c.exhaustive && ++ab.second == c.members.size()) {
        ++ab.first;
        ab.second = ab.first + 1;
      }
    }
    out.counts.push_back({cls, {pairs, witnesses}});
  }
  return out;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_hash(const SweepConfig& cfg) {
  const std::string canonical = "n=" + std::to_string(cfg.n) +
                                ";mode=" + (cfg.mode == SweepConfig::Mode::kExhaustive ? "exhaustive" : "sampled") +
                                ";sample=" + std::to_string(cfg.sample_size) + ";seed=" + std::to_string(cfg.seed) +
                                ";interval=" + std::to_string(kCheckpointInterval);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical)));
  return buf;
}

json edges_json(const Digraph& g) {
  json out = json::array();
  for (const Edge& e : g.edges()) out.push_back({e.tail, e.head});
  return out;
}

struct SweepState {
  std::uint64_t next_chunk = 0;
  std::uint64_t stream_offset = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;
  std::vector<PendingPair> witness_less;
};

void write_checkpoint(const SweepConfig& cfg, const SweepState& s) {
  json j;
  j["format"] = "semid-sweep-checkpoint";
  j["version"] = kCheckpointVersion;
  j["config_hash"] = config_hash(cfg);
  j["next_chunk"] = s.next_chunk;
  j["stream_offset"] = s.stream_offset;
  j["counts"] = s.counts;
  json pending = json::array();
  for (const PendingPair& p : s.witness_less) pending.push_back({p.cls, p.first, p.second, p.same});
  j["witness_less"] = pending;
  const std::string tmp = cfg.checkpoint_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint '" + tmp + "'");
    out << j.dump();
  }
  std::filesystem::rename(tmp, cfg.checkpoint_path);
}

bool read_checkpoint(const SweepConfig& cfg, SweepState& s) {
  std::ifstream in(cfg.checkpoint_path);
  if (!in) return false;
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("checkpoint '" + cfg.checkpoint_path + "' is unreadable: " + e.what());
  }
  if (j.value("format", "") != "semid-sweep-checkpoint" || j.value("version", 0) != kCheckpointVersion) {
    throw std::runtime_error("checkpoint '" + cfg.checkpoint_path + "' has an unknown format");
  }
  if (j.at("config_hash").get<std::string>() != config_hash(cfg)) {
    throw std::runtime_error("checkpoint '" + cfg.checkpoint_path + "' was written for a different configuration");
  }
  s.next_chunk = j.at("next_chunk").get<std::uint64_t>();
  s.stream_offset = j.at("stream_offset").get<std::uint64_t>();
  s.counts = j.at("counts").get<std::vector<std::pair<std::uint64_t, std::uint64_t>>>();
  for (const json& p : j.at("witness_less")) {
    s.witness_less.push_back({p[0].get<std::size_t>(), p[1].get<std::uint32_t>(), p[2].get<std::uint32_t>(),
                              p[3].get<bool>()});
  }
  return true;
}

}  // namespace

bool same_components(const Digraph& g1, const Digraph& g2) {
  return strongly_connected_components(g1) == strongly_connected_components(g2);
}

void validate(const SweepConfig& cfg) {
  if (cfg.n < 2 || cfg.n > kMaxSweepNodes) {
    throw std::invalid_argument("sweeps support 2 to " + std::to_string(kMaxSweepNodes) + " nodes, got " +
                                std::to_string(cfg.n));
  }
  if (cfg.mode == SweepConfig::Mode::kExhaustive && cfg.n > 5 && !cfg.allow_large_exhaustive) {
    throw std::invalid_argument("exhaustive sweeps above 5 nodes need the override flag; use sampling");
  }
  if (cfg.sample_size < 1) throw std::invalid_argument("sample size must be at least 1");
  if (cfg.workers < 1) throw std::invalid_argument("worker count must be at least 1");
}

SweepResult verify_pc_conjecture(const SweepConfig& cfg) {
  validate(cfg);
  const auto started = std::chrono::steady_clock::now();
  const std::vector<DegreeClass> classes = build_classes(cfg);
  std::vector<std::uint64_t> offsets{0};
  for (const DegreeClass& c : classes) offsets.push_back(offsets.back() + c.pairs);
  const std::uint64_t total = offsets.back();
  const std::uint64_t chunks = (total + kCheckpointInterval - 1) / kCheckpointInterval;

  SweepState state;
  const bool resumed = !cfg.checkpoint_path.empty() && read_checkpoint(cfg, state);
  if (!resumed) state.counts.assign(classes.size(), {0, 0});
  if (state.counts.size() != classes.size()) throw std::runtime_error("checkpoint class count mismatch");

  std::ofstream stream;
  if (!cfg.output_path.empty()) {
    if (resumed && std::filesystem::exists(cfg.output_path)) {
      std::filesystem::resize_file(cfg.output_path, state.stream_offset);
      stream.open(cfg.output_path, std::ios::app);
    } else {
      stream.open(cfg.output_path, std::ios::trunc);
      state.stream_offset = 0;
    }
    if (!stream) throw std::runtime_error("cannot open '" + cfg.output_path + "' for writing");
  }

  const std::uint64_t first = state.next_chunk;
  const std::uint64_t last = cfg.max_chunks == 0 ? chunks : std::min(chunks, first + cfg.max_chunks);

  auto merge = [&](std::uint64_t chunk, const ChunkResult& r) {
    for (const auto& [cls, pw] : r.counts) {
      state.counts[cls].first += pw.first;
      state.counts[cls].second += pw.second;
    }
    for (const PendingPair& p : r.witness_less) {
      state.witness_less.push_back(p);
      if (stream.is_open()) {
        const Digraph g1 = digraph_from_index(cfg.n, p.first);
        const Digraph g2 = digraph_from_index(cfg.n, p.second);
        json line;
        line["out_degrees"] = classes[p.cls].degrees;
        line["g1"] = edges_json(g1);
        line["g2"] = edges_json(g2);
        line["same_components"] = p.same;
        line["counterexample"] = !p.same;
        stream << line.dump() << '\n';
      }
    }
    state.next_chunk = chunk + 1;
    if (stream.is_open()) {
      stream.flush();
      state.stream_offset = static_cast<std::uint64_t>(stream.tellp());
    }
    if (!cfg.checkpoint_path.empty()) write_checkpoint(cfg, state);
  };
  auto chunk_bounds = [&](std::uint64_t chunk) {
    return std::pair{chunk * kCheckpointInterval, std::min(total, (chunk + 1) * kCheckpointInterval)};
  };

  if (cfg.workers <= 1) {
    for (std::uint64_t chunk = first; chunk < last; ++chunk) {
      const auto [b, e] = chunk_bounds(chunk);
      merge(chunk, run_chunk(cfg, classes, offsets, b, e));
    }
  } else {
    // Workers evaluate chunks in any order; this thread merges them in order.
    std::mutex mutex;
    std::condition_variable ready;
    std::map<std::uint64_t, ChunkResult> done;
    std::atomic<std::uint64_t> next{first};
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    for (int w = 0; w < cfg.workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t chunk = next++; chunk < last; chunk = next++) {
          try {
            const auto [b, e] = chunk_bounds(chunk);
            ChunkResult r = run_chunk(cfg, classes, offsets, b, e);
            std::lock_guard lock(mutex);
            done.emplace(chunk, std::move(r));
          } catch (...) {
            std::lock_guard lock(mutex);
            if (!failure) failure = std::current_exception();
            next = last;
          }
          ready.notify_one();
        }
      });
    }
    for (std::uint64_t chunk = first; chunk < last; ++chunk) {
      ChunkResult r;
      {
        std::unique_lock lock(mutex);
        ready.wait(lock, [&] { return failure || done.count(chunk) > 0; });
        if (failure) break;
        r = std::move(done.at(chunk));
        done.erase(chunk);
      }
      merge(chunk, r);
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  SweepResult result;
  result.config = cfg;
  result.complete = state.next_chunk >= chunks;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    ClassResult cr;
    cr.out_degrees = classes[c].degrees;
    cr.class_size = classes[c].members.size();
    cr.exhaustive = classes[c].exhaustive;
    cr.pairs_tested = state.counts[c].first;
    cr.witnesses = state.counts[c].second;
    result.classes.push_back(std::move(cr));
  }
  for (const PendingPair& p : state.witness_less) {
    WitnessLessPair w{digraph_from_index(cfg.n, p.first), digraph_from_index(cfg.n, p.second), p.same};
    result.counterexamples += w.counterexample() ? 1 : 0;
    result.classes[p.cls].witness_less.push_back(std::move(w));
  }
  for (const ClassResult& cr : result.classes) {
    result.pairs_tested += cr.pairs_tested;
    result.witnesses += cr.witnesses;
    result.witness_less += cr.witness_less.size();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

CompleteSweepResult verify_complete_conjecture(const CompleteSweepConfig& cfg) {
  if (cfg.p < 2 || cfg.p > 6) {
    throw std::invalid_argument("complete-graph sweep supports 2 to 6 nodes, got " + std::to_string(cfg.p));
  }
  if (cfg.workers < 1) throw std::invalid_argument("worker count must be at least 1");
  const auto started = std::chrono::steady_clock::now();
  const int p = cfg.p;
  std::vector<Edge> free_pairs;
  for (Node i = 1; i <= p; ++i) {
    for (Node j = i + 1; j <= p; ++j) {
      if (!(i == p - 1 && j == p)) free_pairs.push_back({i, j});
    }
  }
  CompleteSweepResult result;
  result.config = cfg;
  result.orientations_total = std::uint64_t{1} << free_pairs.size();

  std::vector<std::uint64_t> chosen;
  if (p == 6 && !cfg.full && cfg.sample_size < result.orientations_total) {
    result.sampled = true;
    // Partial Fisher-Yates over all orientation indices.
    std::vector<std::uint64_t> all(result.orientations_total);
    for (std::uint64_t t = 0; t < all.size(); ++t) all[t] = t;
    std::mt19937_64 gen = detail::seeded_engine({cfg.seed, static_cast<std::uint64_t>(p)});
    for (std::uint64_t t = 0; t < cfg.sample_size; ++t) {
      const std::uint64_t pick = t + detail::uniform_below(gen, all.size() - t);
      std::swap(all[t], all[pick]);
    }
    chosen.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(cfg.sample_size));
    std::sort(chosen.begin(), chosen.end());
  } else {
    chosen.resize(result.orientations_total);
    for (std::uint64_t t = 0; t < chosen.size(); ++t) chosen[t] = t;
  }

  result.pairs.resize(chosen.size());
  parallel_for(chosen.size(), cfg.workers, [&](std::uint64_t t) {
    const std::uint64_t orientation = chosen[t];
    std::vector<Edge> edges;
    for (std::size_t b = 0; b < free_pairs.size(); ++b) {
      const Edge e = free_pairs[b];
      edges.push_back((orientation >> b) & 1 ? Edge{e.head, e.tail} : e);
    }
    std::vector<Edge> forward = edges;
    forward.push_back({p - 1, p});
    edges.push_back({p, p - 1});
    OrientationPair& out = result.pairs[t];
    out.orientation = orientation;
    out.forward = Digraph(p, std::move(forward));
    out.backward = Digraph(p, std::move(edges));
    out.comparison = matroids_equal(out.forward, out.backward, cfg.oracle);
  });
  for (const OrientationPair& op : result.pairs) {
    (op.comparison.verdict == MatroidComparison::Verdict::kEqual ? result.equal : result.different) += 1;
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

FamilyReport classify_family(const std::vector<Digraph>& graphs, const RankOracleConfig& cfg) {
  for (const Digraph& g : graphs) {
    if (g.node_count() != graphs.front().node_count()) {
      throw std::invalid_argument("family graphs have different node counts");
    }
  }
  FamilyReport out;
  out.graphs = graphs;
  for (const Digraph& g : graphs) {
    out.any_complete = out.any_complete || is_complete(g);
    out.all_transitive_triangle_free = out.all_transitive_triangle_free && is_transitive_triangle_free(g);
  }
  std::vector<JacobianMatroid> matroids;
  matroids.reserve(graphs.size());
  for (const Digraph& g : graphs) matroids.push_back(JacobianMatroid::compute(g, cfg));
  for (int a = 0; a < static_cast<int>(graphs.size()); ++a) {
    for (int b = a + 1; b < static_cast<int>(graphs.size()); ++b) {
      const Digraph& g1 = graphs[static_cast<std::size_t>(a)];
      const Digraph& g2 = graphs[static_cast<std::size_t>(b)];
      FamilyPair fp{a, b, distinguish(matroids[static_cast<std::size_t>(a)], matroids[static_cast<std::size_t>(b)], cfg)};
      if (fp.report.matroid->verdict == MatroidComparison::Verdict::kEqual) out.identifiable = false;
      if (out_degree_vector(g1) == out_degree_vector(g2)) out.unique_out_degrees = false;
      if (!pc_criterion(g1, g2)) out.pairwise_pc_witness = false;
      out.pairs.push_back(std::move(fp));
    }
  }
  return out;
}

}  // namespace semid
