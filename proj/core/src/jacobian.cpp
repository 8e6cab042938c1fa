#include "semid/jacobian.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace semid {

std::string Variable::name() const {
  if (kind == Kind::kS) return "s";
  return "l_" + std::to_string(from) + "_" + std::to_string(to);
}

VariableSet::VariableSet(const Digraph& g)
    : n_(g.node_count()),
      lambda_index_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), -1) {
  for (const Edge& e : g.edges()) {
    lambda_index_[static_cast<std::size_t>((e.tail - 1) * n_ + (e.head - 1))] =
        static_cast<int>(vars_.size());
    vars_.push_back(Variable::lambda(e.tail, e.head));
  }
  vars_.push_back(Variable::s());
  for (const Variable& v : vars_) names_.push_back(v.name());
}

int VariableSet::lambda_index(Node k, Node l) const {
  if (k < 1 || k > n_ || l < 1 || l > n_) return -1;
  return lambda_index_[static_cast<std::size_t>((k - 1) * n_ + (l - 1))];
}

std::vector<int> VariableSet::print_order() const {
  std::vector<int> order{s_index()};
  for (int v = 0; v < s_index(); ++v) order.push_back(v);
  return order;
}

std::string VariableSet::render(const Polynomial& p) const {
  const std::vector<int> order = print_order();
  return p.to_string(names_, order);
}

std::string ColumnIndex::label() const {
  if (i < 10 && j < 10) return "K" + std::to_string(i) + std::to_string(j);
  return "K_" + std::to_string(i) + "_" + std::to_string(j);
}

ColumnIndex column(Node a, Node b) { return a <= b ? ColumnIndex{a, b} : ColumnIndex{b, a}; }

std::vector<ColumnIndex> column_layout(int n) {
  std::vector<ColumnIndex> cols;
  cols.reserve(static_cast<std::size_t>(column_count(n)));
  for (Node i = 1; i <= n; ++i) cols.push_back({i, i});
  for (Node i = 1; i <= n; ++i) {
    for (Node j = i + 1; j <= n; ++j) cols.push_back({i, j});
  }
  return cols;
}

int column_count(int n) { return n * (n + 1) / 2; }

int column_position(int n, ColumnIndex c) {
  if (c.i < 1 || c.j > n || c.i > c.j) {
    throw std::out_of_range("column " + c.label() + " outside a " + std::to_string(n) +
                            "-node layout");
  }
  if (c.i == c.j) return c.i - 1;
  // Off-diagonals of rows 1..i-1 precede row i.
  const int before = (c.i - 1) * n - (c.i - 1) * c.i / 2;
  return n + before + (c.j - c.i - 1);
}

ColumnIndex parse_column_label(const std::string& text) {
  std::string body = text;
  if (!body.empty() && (body[0] == 'K' || body[0] == 'k')) body = body.substr(1);
  int a = 0;
  int b = 0;
  if (body.find('_') != std::string::npos) {
    if (body[0] == '_') body = body.substr(1);
    const auto sep = body.find('_');
    if (sep == std::string::npos) throw std::invalid_argument("bad column label '" + text + "'");
    try {
      a = std::stoi(body.substr(0, sep));
      b = std::stoi(body.substr(sep + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad column label '" + text + "'");
    }
  } else {
    if (body.size() != 2 || !std::isdigit(static_cast<unsigned char>(body[0])) ||
        !std::isdigit(static_cast<unsigned char>(body[1]))) {
      throw std::invalid_argument("bad column label '" + text + "'");
    }
    a = body[0] - '0';
    b = body[1] - '0';
  }
  if (a < 1 || b < 1) throw std::invalid_argument("bad column label '" + text + "'");
  return column(a, b);
}

std::vector<Rational> ParamPoint::values() const {
  std::vector<Rational> out = lambda;
  out.push_back(s);
  return out;
}

Jacobian::Jacobian(Digraph graph, PolyMatrix entries)
    : graph_(std::move(graph)),
      vars_(graph_),
      columns_(column_layout(graph_.node_count())),
      entries_(std::move(entries)) {
  if (entries_.rows != vars_.size() || entries_.cols != static_cast<int>(columns_.size())) {
    throw std::invalid_argument("Jacobian shape does not match its graph");
  }
}

const Polynomial& Jacobian::entry(const Variable& row, ColumnIndex col) const {
  const int r = row.kind == Variable::Kind::kS ? vars_.s_index()
                                                : vars_.lambda_index(row.from, row.to);
  if (r < 0) throw std::out_of_range("no row for variable " + row.name());
  return entries_.at(r, column_position(graph_.node_count(), col));
}

std::vector<std::string> Jacobian::row_labels() const { return vars_.names(); }

std::vector<std::string> Jacobian::column_labels() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const ColumnIndex& c : columns_) out.push_back(c.label());
  return out;
}

std::string Jacobian::render(int row, int col) const { return vars_.render(entry(row, col)); }

Jacobian build_jacobian(const Digraph& g) {
  const VariableSet vars(g);
  const int nv = vars.size();
  const int n = g.node_count();
  const std::vector<ColumnIndex> cols = column_layout(n);
  PolyMatrix m(nv, static_cast<int>(cols.size()), nv);

  const Polynomial s = Polynomial::variable(nv, vars.s_index());
  auto lam = [&](Node k, Node l) { return Polynomial::variable(nv, vars.lambda_index(k, l)); };
  const Rational two(2);

  for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
    const auto [i, j] = cols[static_cast<std::size_t>(c)];
    // Edge rows.
    for (int r = 0; r < vars.s_index(); ++r) {
      const Node k = vars.variables()[static_cast<std::size_t>(r)].from;
      const Node l = vars.variables()[static_cast<std::size_t>(r)].to;
      Polynomial& e = m.at(r, c);
      if (i == j) {
        if (k == i) e = two * (s * lam(i, l));
      } else if ((k == i && l == j) || (k == j && l == i)) {
        e = -s;
      } else if (k == i && g.has_edge(j, l)) {
        e = s * lam(j, l);
      } else if (k == j && g.has_edge(i, l)) {
        e = s * lam(i, l);
      }
    }
    // s row.
    Polynomial& e = m.at(vars.s_index(), c);
    if (i == j) {
      e = Polynomial::constant(nv, 1);
      for (Node l : g.children(i)) e += lam(i, l) * lam(i, l);
    } else {
      if (g.has_edge(i, j)) e -= lam(i, j);
      if (g.has_edge(j, i)) e -= lam(j, i);
      for (Node l : g.children(i) & g.children(j)) e += lam(i, l) * lam(j, l);
    }
  }
  return Jacobian(g, std::move(m));
}

PolyMatrix precision_matrix_symbolic(const Digraph& g) {
  const VariableSet vars(g);
  const int nv = vars.size();
  const int n = g.node_count();
  // A = I - Lambda.
  PolyMatrix a(n, n, nv);
  for (int r = 0; r < n; ++r) a.at(r, r) = Polynomial::constant(nv, 1);
  for (const Edge& e : g.edges()) {
    a.at(e.tail - 1, e.head - 1) = -Polynomial::variable(nv, vars.lambda_index(e.tail, e.head));
  }
  const Polynomial s = Polynomial::variable(nv, vars.s_index());
  PolyMatrix k(n, n, nv);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      Polynomial sum(nv);
      for (int t = 0; t < n; ++t) sum += a.at(r, t) * a.at(c, t);
      k.at(r, c) = s * sum;
    }
  }
  return k;
}

Jacobian differentiate_precision_matrix(const Digraph& g) {
  const VariableSet vars(g);
  const int nv = vars.size();
  const PolyMatrix k = precision_matrix_symbolic(g);
  const std::vector<ColumnIndex> cols = column_layout(g.node_count());
  PolyMatrix m(nv, static_cast<int>(cols.size()), nv);
  for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
    const Polynomial& entry = k.at(cols[static_cast<std::size_t>(c)].i - 1, cols[static_cast<std::size_t>(c)].j - 1);
    for (int r = 0; r < nv; ++r) m.at(r, c) = entry.derivative(r);
  }
  return Jacobian(g, std::move(m));
}

Jacobian simplify_s_row(const Jacobian& j) {
  const Digraph& g = j.graph();
  const VariableSet& vars = j.variables();
  const int nv = vars.size();
  const int sr = j.s_row();
  const Polynomial s = Polynomial::variable(nv, vars.s_index());

  PolyMatrix m = j.matrix();
  for (int c = 0; c < j.cols(); ++c) {
    const auto [a, b] = j.columns()[static_cast<std::size_t>(c)];
    Polynomial closed(nv);
    if (a == b) {
      closed = Polynomial::constant(nv, 2);
    } else if (g.has_edge(a, b)) {
      closed = -Polynomial::variable(nv, vars.lambda_index(a, b));
    } else if (g.has_edge(b, a)) {
      closed = -Polynomial::variable(nv, vars.lambda_index(b, a));
    }

    // s * R_s' must equal 2s R_s - sum_e lambda_e R_e.
    Polynomial op = Rational(2) * (s * j.entry(sr, c));
    for (int r = 0; r < sr; ++r) {
      if (!j.entry(r, c).is_zero()) op -= Polynomial::variable(nv, r) * j.entry(r, c);
    }
    if (!(s * closed == op)) {
      throw std::logic_error("s-row closed form disagrees with the row operation at column " +
                             j.columns()[static_cast<std::size_t>(c)].label());
    }
    m.at(sr, c) = std::move(closed);
  }
  return Jacobian(g, std::move(m));
}

namespace {

void check_point(const Digraph& g, std::size_t lambda_count, bool s_nonzero) {
  if (lambda_count != static_cast<std::size_t>(g.edge_count())) {
    throw std::invalid_argument("parameter point assigns " + std::to_string(lambda_count) +
                                " edge weights but the graph has " +
                                std::to_string(g.edge_count()) + " edges");
  }
  if (!s_nonzero) throw std::invalid_argument("parameter point has s = 0");
}

}  // namespace

RationalMatrix evaluate(const Jacobian& j, const ParamPoint& point) {
  check_point(j.graph(), point.lambda.size(), point.s != 0);
  const std::vector<Rational> values = point.values();
  RationalMatrix out(j.rows(), j.cols());
  for (int r = 0; r < j.rows(); ++r) {
    for (int c = 0; c < j.cols(); ++c) out.at(r, c) = j.entry(r, c).evaluate(values);
  }
  return out;
}

ModMatrix evaluate(const Jacobian& j, const PrimeField& field, std::span<const std::uint64_t> values) {
  check_point(j.graph(), values.size() - (values.empty() ? 0 : 1),
              !values.empty() && values.back() != 0);
  ModMatrix out(j.rows(), j.cols());
  for (int r = 0; r < j.rows(); ++r) {
    for (int c = 0; c < j.cols(); ++c) out.at(r, c) = j.entry(r, c).evaluate(field, values);
  }
  return out;
}

ModMatrix jacobian_mod(const Digraph& g, const PrimeField& field,
                       std::span<const std::uint64_t> values) {
  const int ne = g.edge_count();
  check_point(g, values.size() - (values.empty() ? 0 : 1), !values.empty() && values.back() != 0);
  const int n = g.node_count();
  const std::uint64_t s = values[static_cast<std::size_t>(ne)];
  const std::uint64_t neg_s = field.neg(s);
  const std::uint64_t two_s = field.add(s, s);

  // Edge weight lookup, n x n, zero for non-edges.
  std::vector<std::uint64_t> lam(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  auto w = [&](Node a, Node b) -> std::uint64_t& {
    return lam[static_cast<std::size_t>((a - 1) * n + (b - 1))];
  };
  const auto& edges = g.edges();
  for (int e = 0; e < ne; ++e) {
    w(edges[static_cast<std::size_t>(e)].tail, edges[static_cast<std::size_t>(e)].head) =
        values[static_cast<std::size_t>(e)];
  }

  ModMatrix m(ne + 1, column_count(n));
  for (int r = 0; r < ne; ++r) {
    const Node k = edges[static_cast<std::size_t>(r)].tail;
    const Node l = edges[static_cast<std::size_t>(r)].head;
    // Diagonal K_kk.
    m.at(r, k - 1) = field.mul(two_s, w(k, l));
    // Off-diagonals K_kj (j != k): -s at j = l, s*lambda_jl when j -> l.
    for (Node j = 1; j <= n; ++j) {
      if (j == k) continue;
      const int c = column_position(n, column(k, j));
      if (j == l) {
        m.at(r, c) = neg_s;
      } else if (g.has_edge(j, l)) {
        m.at(r, c) = field.mul(s, w(j, l));
      }
    }
  }
  const int sr = ne;
  for (Node i = 1; i <= n; ++i) {
    std::uint64_t acc = 1;
    for (Node l : g.children(i)) acc = field.add(acc, field.mul(w(i, l), w(i, l)));
    m.at(sr, i - 1) = acc;
    for (Node j = i + 1; j <= n; ++j) {
      std::uint64_t v = 0;
      v = field.sub(v, w(i, j));
      v = field.sub(v, w(j, i));
      for (Node l : g.children(i) & g.children(j)) v = field.add(v, field.mul(w(i, l), w(j, l)));
      m.at(sr, column_position(n, {i, j})) = v;
    }
  }
  return m;
}

RationalMatrix precision_matrix(const Digraph& g, const ParamPoint& point) {
  check_point(g, point.lambda.size(), point.s != 0);
  const int n = g.node_count();
  RationalMatrix a(n, n);
  for (int r = 0; r < n; ++r) a.at(r, r) = 1;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
    a.at(edge.tail - 1, edge.head - 1) = -point.lambda[static_cast<std::size_t>(e)];
  }
  RationalMatrix k(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      Rational sum = 0;
      for (int t = 0; t < n; ++t) sum += a.at(r, t) * a.at(c, t);
      k.at(r, c) = point.s * sum;
    }
  }
  return k;
}

namespace {

std::vector<double> upper_triangle_of_k(const Digraph& g, std::span<const double> values) {
  const int n = g.node_count();
  std::vector<double> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < n; ++r) a[static_cast<std::size_t>(r * n + r)] = 1.0;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
    a[static_cast<std::size_t>((edge.tail - 1) * n + (edge.head - 1))] = -values[static_cast<std::size_t>(e)];
  }
  const double s = values[static_cast<std::size_t>(g.edge_count())];
  std::vector<double> out;
  for (const ColumnIndex& c : column_layout(n)) {
    double sum = 0.0;
    for (int t = 0; t < n; ++t) {
      sum += a[static_cast<std::size_t>((c.i - 1) * n + t)] * a[static_cast<std::size_t>((c.j - 1) * n + t)];
    }
    out.push_back(s * sum);
  }
  return out;
}

}  // namespace

RealMatrix numeric_jacobian_fd(const Digraph& g, std::span<const double> values, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const int nv = g.edge_count() + 1;
  if (static_cast<int>(values.size()) != nv) {
    throw std::invalid_argument("parameter point has the wrong number of values");
  }
  RealMatrix out(nv, column_count(g.node_count()));
  std::vector<double> x(values.begin(), values.end());
  for (int r = 0; r < nv; ++r) {
    const double x0 = x[static_cast<std::size_t>(r)];
    x[static_cast<std::size_t>(r)] = x0 + h;
    const std::vector<double> plus = upper_triangle_of_k(g, x);
    x[static_cast<std::size_t>(r)] = x0 - h;
    const std::vector<double> minus = upper_triangle_of_k(g, x);
    x[static_cast<std::size_t>(r)] = x0;
    for (int c = 0; c < out.cols; ++c) {
      out.at(r, c) = (plus[static_cast<std::size_t>(c)] - minus[static_cast<std::size_t>(c)]) / (2.0 * h);
    }
  }
  return out;
}

}  // namespace semid
