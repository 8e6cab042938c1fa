#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "semid/digraph.hpp"
#include "semid/jacobian.hpp"
#include "semid/polynomial.hpp"

namespace semid::testing {

inline std::string data_path(const std::string& name) { return std::string(SEMID_TEST_DATA_DIR) + "/" + name; }

inline Digraph load(const std::string& name) { return read_graph_file(data_path(name)); }

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, sep);) out.push_back(trim(part));
  return out;
}

/// Golden matrix: a "cols" header of K-labels, then "<row> ; e1 ; e2 ..." lines.
struct GoldenMatrix {
  std::vector<std::string> cols;
  std::vector<std::string> rows;
  std::vector<std::vector<std::string>> entries;
};

inline GoldenMatrix read_golden(const std::string& name) {
  std::ifstream in(data_path(name));
  if (!in) throw std::runtime_error("missing golden file " + name);
  GoldenMatrix g;
  for (std::string line; std::getline(in, line);) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("cols ", 0) == 0) {
      for (const std::string& c : split(line.substr(5), ' ')) {
        if (!c.empty()) g.cols.push_back(c);
      }
      continue;
    }
    std::vector<std::string> parts = split(line, ';');
    g.rows.push_back(parts.front());
    g.entries.emplace_back(parts.begin() + 1, parts.end());
  }
  return g;
}

/// Random simple digraph: each unordered pair is absent or oriented either way.
inline Digraph random_digraph(int n, std::mt19937_64& gen) {
  std::uniform_int_distribution<std::uint64_t> pick(0, simple_digraph_count(n) - 1);
  return digraph_from_index(n, pick(gen));
}

}  // namespace semid::testing
