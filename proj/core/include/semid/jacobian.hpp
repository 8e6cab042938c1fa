#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "semid/digraph.hpp"
#include "semid/modular.hpp"
#include "semid/polynomial.hpp"
#include "semid/rational.hpp"

namespace semid {

/// Parameter of the precision parameterization: an edge weight lambda_kl or
/// the inverse error variance s.
struct Variable {
  enum class Kind { kLambda, kS };
  Kind kind = Kind::kS;
  Node from = 0;
  Node to = 0;

  static Variable lambda(Node k, Node l) { return {Kind::kLambda, k, l}; }
  static Variable s() { return {}; }
  [[nodiscard]] std::string name() const;
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Ordered parameter list of a graph: lambdas in edge order, then s.
/// Polynomial variable v and Jacobian row v refer to variables()[v].
class VariableSet {
 public:
  VariableSet() = default;
  explicit VariableSet(const Digraph& g);

  [[nodiscard]] int size() const { return static_cast<int>(vars_.size()); }
  [[nodiscard]] const std::vector<Variable>& variables() const { return vars_; }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] int s_index() const { return size() - 1; }
  /// Index of lambda_kl, or -1 if (k, l) is not an edge.
  [[nodiscard]] int lambda_index(Node k, Node l) const;
  /// s first, then lambdas: the factor order used when printing terms.
  [[nodiscard]] std::vector<int> print_order() const;
  [[nodiscard]] std::string render(const Polynomial& p) const;

 private:
  int n_ = 0;
  std::vector<int> lambda_index_;  // n*n table, -1 for non-edges
  std::vector<Variable> vars_;
  std::vector<std::string> names_;
};

/// Precision-matrix entry K_ij with i <= j.
struct ColumnIndex {
  Node i = 0;
  Node j = 0;

  [[nodiscard]] bool diagonal() const { return i == j; }
  /// "K11", or "K_10_12" once a label exceeds one digit.
  [[nodiscard]] std::string label() const;
  friend auto operator<=>(const ColumnIndex&, const ColumnIndex&) = default;
};

/// Normalizes (a, b) to i <= j.
ColumnIndex column(Node a, Node b);

/// Global column order for n nodes: K11..Knn, then off-diagonals ordered
/// lexicographically by (i, j).
std::vector<ColumnIndex> column_layout(int n);
int column_count(int n);
/// Position of a column in column_layout(n).
int column_position(int n, ColumnIndex c);
/// Parses "K12", "K_10_12" or "12" forms; throws std::invalid_argument.
ColumnIndex parse_column_label(const std::string& text);

/// Dense row-major matrix of exact rationals.
struct RationalMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rational> data;

  RationalMatrix() = default;
  RationalMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
  Rational& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  [[nodiscard]] const Rational& at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
};

/// Dense row-major matrix of doubles.
struct RealMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  RealMatrix() = default;
  RealMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  [[nodiscard]] double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

/// Dense row-major matrix of polynomials over a shared variable list.
struct PolyMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Polynomial> data;

  PolyMatrix() = default;
  PolyMatrix(int r, int c, int nvars)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, Polynomial(nvars)) {}
  Polynomial& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  [[nodiscard]] const Polynomial& at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
};

/// Parameter values: one weight per edge (in edge order) and s != 0.
struct ParamPoint {
  std::vector<Rational> lambda;
  Rational s = 1;

  /// Flattened in VariableSet order (lambdas, then s).
  [[nodiscard]] std::vector<Rational> values() const;
};

/// Transposed Jacobian of (Lambda, s) -> upper triangle of s(I-Lambda)(I-Lambda)^T.
/// Row r is the derivative with respect to variables()[r]; columns follow
/// column_layout(n).
class Jacobian {
 public:
  Jacobian(Digraph graph, PolyMatrix entries);

  [[nodiscard]] const Digraph& graph() const { return graph_; }
  [[nodiscard]] const VariableSet& variables() const { return vars_; }
  [[nodiscard]] const std::vector<ColumnIndex>& columns() const { return columns_; }
  [[nodiscard]] const PolyMatrix& matrix() const { return entries_; }
  [[nodiscard]] int rows() const { return entries_.rows; }
  [[nodiscard]] int cols() const { return entries_.cols; }
  [[nodiscard]] int s_row() const { return rows() - 1; }

  [[nodiscard]] const Polynomial& entry(int row, int col) const { return entries_.at(row, col); }
  [[nodiscard]] const Polynomial& entry(const Variable& row, ColumnIndex col) const;
  [[nodiscard]] std::vector<std::string> row_labels() const;
  [[nodiscard]] std::vector<std::string> column_labels() const;
  [[nodiscard]] std::string render(int row, int col) const;

 private:
  Digraph graph_;
  VariableSet vars_;
  std::vector<ColumnIndex> columns_;
  PolyMatrix entries_;
};

/// Symbolic Jacobian from the closed-form entry formulas.
Jacobian build_jacobian(const Digraph& g);

/// Symbolic Jacobian by differentiating precision_matrix_symbolic; an
/// independent route to the same matrix.
Jacobian differentiate_precision_matrix(const Digraph& g);

/// Replaces the s-row by 2(R_s - sum_e lambda_e/(2s) R_e): 2 on diagonals,
/// -lambda on adjacent pairs, 0 elsewhere. The closed form is checked against
/// the row operation (scaled by s); a mismatch throws std::logic_error.
Jacobian simplify_s_row(const Jacobian& j);

/// Exact entrywise evaluation. Throws std::invalid_argument if the point does
/// not assign every variable of the graph.
RationalMatrix evaluate(const Jacobian& j, const ParamPoint& point);
/// Entrywise evaluation over F_q; `values` is in VariableSet order.
ModMatrix evaluate(const Jacobian& j, const PrimeField& field, std::span<const std::uint64_t> values);

/// Closed-form Jacobian built directly over F_q, skipping polynomial
/// arithmetic. Same layout as build_jacobian.
ModMatrix jacobian_mod(const Digraph& g, const PrimeField& field,
                       std::span<const std::uint64_t> values);

/// K = s(I - Lambda)(I - Lambda)^T as an n x n matrix of polynomials.
PolyMatrix precision_matrix_symbolic(const Digraph& g);
/// K = s(I - Lambda)(I - Lambda)^T, exact.
RationalMatrix precision_matrix(const Digraph& g, const ParamPoint& point);

/// Central finite differences of (Lambda, s) -> upper triangle of K, laid out
/// like the Jacobian. `values` is in VariableSet order.
RealMatrix numeric_jacobian_fd(const Digraph& g, std::span<const double> values, double h = 1e-5);

}  // namespace semid
