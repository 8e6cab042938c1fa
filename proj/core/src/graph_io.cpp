#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "semid/digraph.hpp"

namespace semid {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMalformedLine: return "malformed line";
    case ParseErrorKind::kMissingHeader: return "missing 'n <p>' header";
    case ParseErrorKind::kNodeOutOfRange: return "node out of range";
    case ParseErrorKind::kSelfLoop: return "self-loop";
    case ParseErrorKind::kDuplicateEdge: return "duplicate edge";
    case ParseErrorKind::kAntiParallel: return "anti-parallel edge pair (graph not simple)";
  }
  return "unknown";
}

GraphParseError::GraphParseError(ParseErrorKind kind, int line, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": " + to_string(kind) +
                         (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      line_(line) {}

namespace {

// Reads exactly `count` integers from a comment-stripped line.
bool read_ints(const std::string& body, int count, long long* out) {
  std::istringstream in(body);
  for (int k = 0; k < count; ++k) {
    if (!(in >> out[k])) return false;
  }
  std::string rest;
  return !(in >> rest);
}

}  // namespace

Digraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  int n = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string body = raw.substr(0, raw.find('#'));
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;

    if (n < 0) {
      std::istringstream hdr(body);
      std::string tag;
      long long value = 0;
      std::string rest;
      if (!(hdr >> tag) || tag != "n") {
        throw GraphParseError(ParseErrorKind::kMissingHeader, line_no, body);
      }
      if (!(hdr >> value) || (hdr >> rest) || value < 1 || value > kMaxNodes) {
        throw GraphParseError(ParseErrorKind::kMalformedLine, line_no, body);
      }
      n = static_cast<int>(value);
      continue;
    }

    long long uv[2];
    if (!read_ints(body, 2, uv)) {
      throw GraphParseError(ParseErrorKind::kMalformedLine, line_no, body);
    }
    if (uv[0] < 1 || uv[0] > n || uv[1] < 1 || uv[1] > n) {
      throw GraphParseError(ParseErrorKind::kNodeOutOfRange, line_no, body);
    }
    const Edge e{static_cast<Node>(uv[0]), static_cast<Node>(uv[1])};
    if (e.tail == e.head) throw GraphParseError(ParseErrorKind::kSelfLoop, line_no, body);
    if (seen.contains(e)) throw GraphParseError(ParseErrorKind::kDuplicateEdge, line_no, body);
    if (seen.contains(Edge{e.head, e.tail})) {
      throw GraphParseError(ParseErrorKind::kAntiParallel, line_no, body);
    }
    seen.insert(e);
    edges.push_back(e);
  }
  if (n < 0) throw GraphParseError(ParseErrorKind::kMissingHeader, line_no, "");
  return Digraph(n, std::move(edges));
}

std::string serialize_graph(const Digraph& g) {
  std::string out = "n " + std::to_string(g.node_count()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.tail) + " " + std::to_string(e.head) + "\n";
  }
  return out;
}

Digraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph(buf.str());
  } catch (const GraphParseError& e) {
    throw GraphParseError(e.kind(), e.line(), "in " + path);
  }
}

}  // namespace semid
