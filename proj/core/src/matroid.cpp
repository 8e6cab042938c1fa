#include "semid/matroid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "random.hpp"

namespace semid {

int degree_bound(int edges) { return 2 * (edges + 1); }

double failure_bound(const RankOracleConfig& cfg, int edges) {
  const double per_trial = static_cast<double>(degree_bound(edges)) / static_cast<double>(cfg.prime);
  return std::pow(per_trial, cfg.trials);
}

void validate(const RankOracleConfig& cfg, int edges) {
  if (cfg.trials < 1) throw std::invalid_argument("rank oracle needs at least one trial");
  if (!is_prime_u64(cfg.prime)) {
    throw std::invalid_argument("rank oracle modulus " + std::to_string(cfg.prime) + " is not prime");
  }
  if (cfg.prime <= 2ULL * static_cast<std::uint64_t>(degree_bound(edges))) {
    throw std::invalid_argument("prime " + std::to_string(cfg.prime) +
                                " too small for degree bound " + std::to_string(degree_bound(edges)));
  }
}

bool layout_less(ColumnIndex a, ColumnIndex b) {
  if (a.diagonal() != b.diagonal()) return a.diagonal();
  return a < b;
}

ColumnSet::ColumnSet(std::initializer_list<ColumnIndex> cols) : cols_(cols) { normalize(); }

ColumnSet::ColumnSet(std::vector<ColumnIndex> cols) : cols_(std::move(cols)) { normalize(); }

void ColumnSet::normalize() {
  for (auto& c : cols_) c = column(c.i, c.j);
  std::sort(cols_.begin(), cols_.end(), layout_less);
  cols_.erase(std::unique(cols_.begin(), cols_.end()), cols_.end());
}

ColumnSet ColumnSet::from_mask(int n, std::uint64_t mask) {
  const std::vector<ColumnIndex> layout = column_layout(n);
  std::vector<ColumnIndex> cols;
  while (mask != 0) {
    cols.push_back(layout[static_cast<std::size_t>(std::countr_zero(mask))]);
    mask &= mask - 1;
  }
  return ColumnSet(std::move(cols));
}

ColumnSet ColumnSet::parse(const std::string& text) {
  std::vector<ColumnIndex> cols;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](char c) { return c == ' ' || c == '{' || c == '}'; }),
               item.end());
    if (!item.empty()) cols.push_back(parse_column_label(item));
  }
  return ColumnSet(std::move(cols));
}

void ColumnSet::insert(ColumnIndex c) {
  c = column(c.i, c.j);
  auto it = std::lower_bound(cols_.begin(), cols_.end(), c, layout_less);
  if (it == cols_.end() || *it != c) cols_.insert(it, c);
}

void ColumnSet::erase(ColumnIndex c) {
  c = column(c.i, c.j);
  auto it = std::lower_bound(cols_.begin(), cols_.end(), c, layout_less);
  if (it != cols_.end() && *it == c) cols_.erase(it);
}

bool ColumnSet::contains(ColumnIndex c) const {
  return std::binary_search(cols_.begin(), cols_.end(), column(c.i, c.j), layout_less);
}

std::vector<int> ColumnSet::positions(int n) const {
  std::vector<int> out;
  out.reserve(cols_.size());
  for (const ColumnIndex& c : cols_) out.push_back(column_position(n, c));
  return out;
}

std::uint64_t ColumnSet::mask(int n) const {
  if (column_count(n) > 64) throw std::length_error("column masks need at most 64 columns");
  std::uint64_t m = 0;
  for (int p : positions(n)) m |= std::uint64_t{1} << p;
  return m;
}

std::string ColumnSet::to_string() const {
  std::string out = "{";
  for (std::size_t k = 0; k < cols_.size(); ++k) {
    if (k > 0) out += ", ";
    out += cols_[k].label();
  }
  return out + "}";
}

namespace {

std::vector<std::uint64_t> random_values(std::uint64_t seed, std::uint64_t key, int trial,
                                         const PrimeField& field, int count, bool last_nonzero) {
  std::mt19937_64 gen = detail::seeded_engine({seed, key, static_cast<std::uint64_t>(trial)});
  std::vector<std::uint64_t> values(static_cast<std::size_t>(count));
  for (int v = 0; v < count; ++v) {
    std::uint64_t x = detail::uniform_below(gen, field.modulus());
    if (last_nonzero && v == count - 1) {
      while (x == 0) x = detail::uniform_below(gen, field.modulus());
    }
    values[static_cast<std::size_t>(v)] = x;
  }
  return values;
}

std::uint64_t binomial_saturating(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  uint128 acc = 1;
  for (int t = 1; t <= k; ++t) {
    acc = acc * static_cast<unsigned>(n - k + t) / static_cast<unsigned>(t);
    if (acc > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

std::vector<std::uint64_t> trial_point(const Digraph& g, const RankOracleConfig& cfg, int trial) {
  const PrimeField field(cfg.prime);
  return random_values(cfg.seed, g.hash(), trial, field, g.edge_count() + 1, true);
}

int generic_rank(const Jacobian& j, const ColumnSet& s, const RankOracleConfig& cfg) {
  validate(cfg, j.graph().edge_count());
  if (s.empty()) return 0;
  const int n = j.graph().node_count();
  const std::vector<int> cols = s.positions(n);
  const PrimeField field(cfg.prime);
  int best = 0;
  for (int t = 0; t < cfg.trials && best < static_cast<int>(cols.size()); ++t) {
    const std::vector<std::uint64_t> point = trial_point(j.graph(), cfg, t);
    const ModMatrix m = evaluate(j, field, point);
    best = std::max(best, rank_mod(field, m, cols));
  }
  return best;
}

int generic_rank(const PolyMatrix& m, std::span<const int> columns, const RankOracleConfig& cfg,
                 std::uint64_t key) {
  if (columns.empty() || m.rows == 0) return 0;
  const PrimeField field(cfg.prime);
  const int nvars = m.data.front().nvars();
  int best = 0;
  for (int t = 0; t < cfg.trials && best < static_cast<int>(columns.size()); ++t) {
    const std::vector<std::uint64_t> point = random_values(cfg.seed, key, t, field, nvars, false);
    ModMatrix numeric(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r) {
      for (int c : columns) numeric.at(r, c) = m.at(r, c).evaluate(field, point);
    }
    best = std::max(best, rank_mod(field, numeric, columns));
  }
  return best;
}

bool is_independent(const Jacobian& j, const ColumnSet& s, const RankOracleConfig& cfg) {
  return generic_rank(j, s, cfg) == s.size();
}

int matroid_rank(const Digraph& g, const RankOracleConfig& cfg) {
  return JacobianMatroid::evaluate_only(g, cfg).rank();
}

// ---------------------------------------------------------------------------

JacobianMatroid JacobianMatroid::evaluate_only(const Digraph& g, const RankOracleConfig& cfg) {
  validate(cfg, g.edge_count());
  JacobianMatroid m;
  m.graph_ = g;
  m.field_ = PrimeField(cfg.prime);
  m.ground_ = column_count(g.node_count());
  for (int t = 0; t < cfg.trials; ++t) {
    m.trials_.push_back(jacobian_mod(g, m.field_, trial_point(g, cfg, t)));
  }
  std::uint64_t all = 0;
  for (int c = 0; c < m.ground_; ++c) all |= std::uint64_t{1} << c;
  if (m.ground_ > 64) {
    // Masks cannot address the full ground set; fall back to explicit lists.
    std::vector<int> cols(static_cast<std::size_t>(m.ground_));
    for (int c = 0; c < m.ground_; ++c) cols[static_cast<std::size_t>(c)] = c;
    for (const ModMatrix& mm : m.trials_) m.rank_ = std::max(m.rank_, rank_mod(m.field_, mm, cols));
  } else {
    m.rank_ = m.rank_of(all);
  }
  return m;
}

JacobianMatroid JacobianMatroid::compute(const Digraph& g, const RankOracleConfig& cfg) {
  JacobianMatroid m = evaluate_only(g, cfg);
  m.enumerate_bases(cfg.subset_cap);
  return m;
}

int JacobianMatroid::rank_of(std::uint64_t mask) const {
  std::vector<int> cols;
  for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) cols.push_back(std::countr_zero(rest));
  int best = 0;
  for (const ModMatrix& m : trials_) {
    best = std::max(best, rank_mod(field_, m, cols));
    if (best == static_cast<int>(cols.size())) break;
  }
  return best;
}

bool JacobianMatroid::is_independent(std::uint64_t mask) const {
  return rank_of(mask) == std::popcount(mask);
}

void JacobianMatroid::enumerate_bases(std::uint64_t subset_cap) {
  if (ground_ > 64) throw std::length_error("basis enumeration supports at most 64 columns");
  if (binomial_saturating(ground_, rank_, subset_cap) > subset_cap) {
    throw std::length_error("C(" + std::to_string(ground_) + ", " + std::to_string(rank_) +
                            ") exceeds the subset cap of " + std::to_string(subset_cap));
  }
  const int rows = trials_.front().rows;
  const auto ntrials = static_cast<int>(trials_.size());

  // Column-major copies for fast column access.
  std::vector<std::vector<std::uint64_t>> colmajor(trials_.size());
  for (int t = 0; t < ntrials; ++t) {
    auto& cm = colmajor[static_cast<std::size_t>(t)];
    cm.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(ground_));
    for (int c = 0; c < ground_; ++c) {
      for (int r = 0; r < rows; ++r) {
        cm[static_cast<std::size_t>(c * rows + r)] = trials_[static_cast<std::size_t>(t)].at(r, c);
      }
    }
  }
  auto col = [&](int t, int c) {
    return std::span<const std::uint64_t>(
        colmajor[static_cast<std::size_t>(t)].data() + static_cast<std::size_t>(c) * rows,
        static_cast<std::size_t>(rows));
  };

  std::vector<ColumnEchelon> echelons;
  for (int t = 0; t < ntrials; ++t) echelons.emplace_back(field_, rows);
  std::vector<int> chosen;
  bases_.clear();

  // A prefix dependent under trial k stays dependent under k for every
  // superset, so each subtree only consults trials at or after its parent's.
  std::function<void(int, int, std::uint64_t)> dfs = [&](int start, int active, std::uint64_t mask) {
    const int depth = static_cast<int>(chosen.size());
    if (depth == rank_) {
      bases_.push_back(mask);
      return;
    }
    for (int c = start; c <= ground_ - (rank_ - depth); ++c) {
      int used = -1;
      if (echelons[static_cast<std::size_t>(active)].add(col(active, c))) {
        used = active;
      } else {
        for (int t = active + 1; t < ntrials && used < 0; ++t) {
          auto& e = echelons[static_cast<std::size_t>(t)];
          e.clear();
          bool ok = true;
          for (int prev : chosen) ok = ok && e.add(col(t, prev));
          if (ok && e.add(col(t, c))) used = t;
        }
      }
      if (used < 0) continue;
      chosen.push_back(c);
      dfs(c + 1, used, mask | (std::uint64_t{1} << c));
      chosen.pop_back();
      echelons[static_cast<std::size_t>(used)].pop();
    }
  };
  dfs(0, 0, 0);
  // DFS in increasing column order already emits lexicographic order.
  bases_computed_ = true;
}

bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

const char* to_string(MatroidComparison::Verdict v) {
  return v == MatroidComparison::Verdict::kEqual ? "Equal" : "Different";
}

namespace {

bool disagrees(const JacobianMatroid& a, const JacobianMatroid& b, std::uint64_t mask) {
  return a.is_independent(mask) != b.is_independent(mask);
}

std::uint64_t shrink_witness(const JacobianMatroid& a, const JacobianMatroid& b, std::uint64_t mask) {
  bool changed = true;
  while (changed) {
    changed = false;
    // Largest layout position first.
    for (int bit = 63; bit >= 0; --bit) {
      const std::uint64_t e = std::uint64_t{1} << bit;
      if (!(mask & e)) continue;
      if (disagrees(a, b, mask & ~e)) {
        mask &= ~e;
        changed = true;
      }
    }
  }
  return mask;
}

}  // namespace

MatroidComparison compare(const JacobianMatroid& a, const JacobianMatroid& b,
                          const RankOracleConfig& cfg) {
  const int n = a.graph().node_count();
  if (n != b.graph().node_count()) {
    throw std::invalid_argument("cannot compare matroids of graphs with " + std::to_string(n) +
                                " and " + std::to_string(b.graph().node_count()) + " nodes");
  }
  MatroidComparison out;
  out.ranks = {a.rank(), b.rank()};
  out.failure_bound = failure_bound(cfg, std::max(a.graph().edge_count(), b.graph().edge_count()));

  if (a.rank() != b.rank()) {
    const JacobianMatroid& larger = a.rank() > b.rank() ? a : b;
    out.verdict = MatroidComparison::Verdict::kDifferent;
    out.witness = ColumnSet::from_mask(n, larger.bases().front());
    return out;
  }

  const auto& ba = a.bases();
  const auto& bb = b.bases();
  std::size_t i = 0;
  std::size_t j = 0;
  std::optional<std::uint64_t> first;
  while (i < ba.size() || j < bb.size()) {
    if (i < ba.size() && j < bb.size() && ba[i] == bb[j]) {
      ++i;
      ++j;
      continue;
    }
    if (j == bb.size() || (i < ba.size() && mask_lex_less(ba[i], bb[j]))) {
      first = ba[i];
    } else {
      first = bb[j];
    }
    break;
  }
  if (!first) return out;
  out.verdict = MatroidComparison::Verdict::kDifferent;
  out.witness = ColumnSet::from_mask(n, shrink_witness(a, b, *first));
  return out;
}

MatroidComparison matroids_equal(const Digraph& g1, const Digraph& g2, const RankOracleConfig& cfg) {
  if (g1.node_count() != g2.node_count()) {
    throw std::invalid_argument("cannot compare matroids of graphs with " +
                                std::to_string(g1.node_count()) + " and " +
                                std::to_string(g2.node_count()) + " nodes");
  }
  const JacobianMatroid a = JacobianMatroid::compute(g1, cfg);
  const JacobianMatroid b = JacobianMatroid::compute(g2, cfg);
  return compare(a, b, cfg);
}

std::optional<ColumnSet> find_distinguishing_set(const Digraph& g1, const Digraph& g2,
                                                 const RankOracleConfig& cfg) {
  if (g1.node_count() != g2.node_count()) {
    throw std::invalid_argument("cannot compare matroids of graphs with different node counts");
  }
  const int n = g1.node_count();
  const JacobianMatroid a = JacobianMatroid::evaluate_only(g1, cfg);
  const JacobianMatroid b = JacobianMatroid::evaluate_only(g2, cfg);
  const int ground = a.ground_size();
  if (ground > 64) throw std::length_error("distinguishing-set search supports at most 64 columns");
  const int max_size = std::max(a.rank(), b.rank());

  // Iterative deepening; a prefix dependent in both matroids cannot grow into
  // a disagreement, and a disagreeing prefix would have been found earlier.
  for (int size = 1; size <= max_size; ++size) {
    std::optional<std::uint64_t> found;
    std::function<void(int, int, std::uint64_t)> dfs = [&](int start, int depth, std::uint64_t mask) {
      if (found) return;
      for (int c = start; c <= ground - (size - depth) && !found; ++c) {
        const std::uint64_t next = mask | (std::uint64_t{1} << c);
        const bool ia = a.is_independent(next);
        const bool ib = b.is_independent(next);
        if (ia != ib) {
          if (depth + 1 == size) found = next;
          continue;
        }
        if (!ia) continue;
        if (depth + 1 < size) dfs(c + 1, depth + 1, next);
      }
    };
    dfs(0, 0, 0);
    if (found) return ColumnSet::from_mask(n, *found);
  }
  return std::nullopt;
}

}  // namespace semid
