#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "semid/jacobian.hpp"
#include "semid/modular.hpp"

using namespace semid;
using semid::testing::load;

namespace {

Polynomial P(const Jacobian& j, const std::string& text) { return parse_polynomial(text, j.variables().names()); }

int row_of(const Jacobian& j, const std::string& label) {
  const auto labels = j.row_labels();
  const auto it = std::find(labels.begin(), labels.end(), label);
  return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

const Polynomial& at(const Jacobian& j, const std::string& row, const std::string& col) {
  return j.entry(row_of(j, row), column_position(j.graph().node_count(), parse_column_label(col)));
}

void expect_matches_golden(const Jacobian& j, const std::string& file) {
  const auto golden = semid::testing::read_golden(file);
  ASSERT_EQ(static_cast<int>(golden.rows.size()), j.rows());
  ASSERT_EQ(static_cast<int>(golden.cols.size()), j.cols());
  for (std::size_t r = 0; r < golden.rows.size(); ++r) {
    ASSERT_GE(row_of(j, golden.rows[r]), 0) << golden.rows[r];
    ASSERT_EQ(golden.entries[r].size(), golden.cols.size());
    for (std::size_t c = 0; c < golden.cols.size(); ++c) {
      EXPECT_EQ(at(j, golden.rows[r], golden.cols[c]), P(j, golden.entries[r][c]))
          << golden.rows[r] << " x " << golden.cols[c];
    }
  }
}

ParamPoint random_point(const Digraph& g, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  ParamPoint p;
  for (int e = 0; e < g.edge_count(); ++e) p.lambda.emplace_back(num(gen), den(gen));
  p.s = Rational(den(gen), den(gen));
  return p;
}

}  // namespace

TEST(Jacobian, DiamondMatchesDisplayedMatrix) {
  expect_matches_golden(build_jacobian(load("diamond.g")), "diamond.jac");
}

TEST(Jacobian, RankBoundExampleMatchesDisplayedMatrix) {
  expect_matches_golden(build_jacobian(load("rank_bound_display.g")), "rank_bound_display.jac");
}

TEST(Jacobian, DiamondSpotEntries) {
  const Jacobian j = build_jacobian(load("diamond.g"));
  EXPECT_EQ(at(j, "l_2_4", "K23"), P(j, "s*l_3_4"));
  EXPECT_EQ(at(j, "l_1_2", "K11"), P(j, "2*s*l_1_2"));
  EXPECT_TRUE(at(j, "s", "K14").is_zero());
  EXPECT_EQ(at(j, "s", "K23"), P(j, "l_2_4*l_3_4"));
}

TEST(Jacobian, FourCycleEntries) {
  const Jacobian j = build_jacobian(load("four_cycle.g"));
  EXPECT_EQ(at(j, "s", "K23"), P(j, "-l_2_3"));
  EXPECT_EQ(at(j, "s", "K14"), P(j, "l_1_2*l_4_2"));
  EXPECT_EQ(at(j, "l_4_2", "K14"), P(j, "s*l_1_2"));
  EXPECT_EQ(at(j, "l_1_2", "K14"), P(j, "s*l_4_2"));
}

TEST(Jacobian, EdgelessTwoNodes) {
  const Jacobian j = build_jacobian(Digraph::edgeless(2));
  ASSERT_EQ(j.rows(), 1);
  ASSERT_EQ(j.cols(), 3);
  EXPECT_EQ(j.entry(0, 0), P(j, "1"));
  EXPECT_EQ(j.entry(0, 1), P(j, "1"));
  EXPECT_TRUE(j.entry(0, 2).is_zero());
  const Jacobian simple = simplify_s_row(j);
  EXPECT_EQ(simple.entry(0, 0), P(j, "2"));
  EXPECT_EQ(simple.entry(0, 1), P(j, "2"));
  EXPECT_TRUE(simple.entry(0, 2).is_zero());
}

TEST(Jacobian, ColumnLayout) {
  const auto cols = column_layout(4);
  std::vector<std::string> labels;
  for (const ColumnIndex& c : cols) labels.push_back(c.label());
  EXPECT_EQ(labels, (std::vector<std::string>{"K11", "K22", "K33", "K44", "K12", "K13", "K14", "K23", "K24", "K34"}));
  EXPECT_EQ(column_position(4, column(3, 1)), 5);
  EXPECT_EQ(parse_column_label("K_10_12"), (ColumnIndex{10, 12}));
  EXPECT_THROW(parse_column_label("L12"), std::invalid_argument);
}

TEST(Jacobian, PrecisionMatrixOfFourCycle) {
  const Digraph g = load("four_cycle.g");
  const PolyMatrix k = precision_matrix_symbolic(g);
  const VariableSet vars(g);
  std::ifstream in(semid::testing::data_path("four_cycle.prec"));
  int checked = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto parts = semid::testing::split(line, ';');
    const ColumnIndex c = parse_column_label(parts[0]);
    const Polynomial expected = parse_polynomial(parts[1], vars.names());
    EXPECT_EQ(k.at(c.i - 1, c.j - 1), expected) << parts[0];
    EXPECT_EQ(k.at(c.j - 1, c.i - 1), expected) << parts[0];
    ++checked;
  }
  EXPECT_EQ(checked, 10);
}

TEST(Jacobian, PrecisionMatrixAgreesWithEntryFormula) {
  const Digraph g = load("diamond.g");
  ParamPoint one;
  one.lambda.assign(g.edge_count(), Rational(1));
  const RationalMatrix k = precision_matrix(g, one);
  const auto lam = [&](Node a, Node b) { return g.has_edge(a, b) ? Rational(1) : Rational(0); };
  for (Node i = 1; i <= 4; ++i) {
    for (Node j = 1; j <= 4; ++j) {
      Rational v = i == j ? 1 : 0;
      for (Node l = 1; l <= 4; ++l) v += lam(i, l) * lam(j, l);
      v -= lam(i, j) + lam(j, i);
      EXPECT_EQ(k.at(i - 1, j - 1), v);
    }
  }
  ParamPoint zero;
  zero.lambda.assign(g.edge_count(), Rational(0));
  const RationalMatrix id = precision_matrix(g, zero);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(id.at(i, j), Rational(i == j ? 1 : 0));
}

TEST(Jacobian, ClosedFormMatchesDifferentiation) {
  for (const Digraph& g : enumerate_simple_digraphs(4)) {
    const Jacobian a = build_jacobian(g);
    const Jacobian b = differentiate_precision_matrix(g);
    ASSERT_EQ(a.rows(), b.rows());
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c) ASSERT_EQ(a.entry(r, c), b.entry(r, c)) << serialize_graph(g);
  }
}

TEST(Jacobian, EvaluateDiamondAtOrigin) {
  const Jacobian j = build_jacobian(load("diamond.g"));
  ParamPoint p;
  p.lambda.assign(4, Rational(0));
  const RationalMatrix m = evaluate(j, p);
  for (int c = 0; c < 10; ++c) {
    EXPECT_EQ(m.at(0, c), Rational(c == 4 ? -1 : 0));
    EXPECT_EQ(m.at(4, c), Rational(c < 4 ? 1 : 0));
  }
  ParamPoint short_point;
  EXPECT_THROW(evaluate(j, short_point), std::invalid_argument);
}

TEST(Jacobian, RankBoundSubmatrixAtPerturbedPoint) {
  const Digraph g = load("rank_bound_display.g");
  const Jacobian j = build_jacobian(g);
  const Rational eps(1, 10);
  ParamPoint p;
  p.lambda.assign(4, Rational(0));
  p.lambda[static_cast<std::size_t>(g.edge_index(2, 3))] = eps;
  const RationalMatrix m = evaluate(j, p);
  const auto cell = [&](const char* row, const char* col) {
    return m.at(row_of(j, row), column_position(4, parse_column_label(col)));
  };
  EXPECT_EQ(cell("l_1_2", "K12"), Rational(-1));
  EXPECT_EQ(cell("l_2_4", "K24"), Rational(-1));
  EXPECT_EQ(cell("l_2_3", "K22"), 2 * eps);
  EXPECT_EQ(cell("s", "K11"), Rational(1));
  EXPECT_EQ(cell("s", "K22"), 1 + eps * eps);
  EXPECT_EQ(cell("s", "K44"), Rational(1));
  for (const char* col : {"K11", "K22", "K44", "K12", "K24"}) EXPECT_EQ(cell("l_3_4", col), Rational(0));
}

TEST(Jacobian, SimplifiedSRowExamples) {
  const Jacobian d = simplify_s_row(build_jacobian(load("diamond.g")));
  EXPECT_TRUE(at(d, "s", "K23").is_zero());
  EXPECT_EQ(at(d, "s", "K12"), P(d, "-l_1_2"));
  EXPECT_EQ(at(d, "s", "K22"), P(d, "2"));
  const Jacobian c = simplify_s_row(build_jacobian(load("four_cycle.g")));
  EXPECT_TRUE(at(c, "s", "K14").is_zero());
  EXPECT_EQ(at(c, "s", "K24"), P(c, "-l_4_2"));
}

TEST(Jacobian, SimplifiedSRowKeepsRowSpace) {
  std::mt19937_64 gen(21);
  const PrimeField f(kMersenne61);
  std::uniform_int_distribution<std::uint64_t> pick(1, kMersenne61 - 1);
  for (int t = 0; t < 40; ++t) {
    const Digraph g = semid::testing::random_digraph(2 + t % 4, gen);
    const Jacobian a = build_jacobian(g);
    const Jacobian b = simplify_s_row(a);
    for (int r = 0; r < a.s_row(); ++r)
      for (int c = 0; c < a.cols(); ++c) ASSERT_EQ(a.entry(r, c), b.entry(r, c));
    for (int point = 0; point < 5; ++point) {
      std::vector<std::uint64_t> v(static_cast<std::size_t>(a.rows()));
      for (auto& x : v) x = pick(gen);
      const ModMatrix ma = evaluate(a, f, v);
      const ModMatrix mb = evaluate(b, f, v);
      ModMatrix both(2 * a.rows(), a.cols());
      for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) {
          both.at(r, c) = ma.at(r, c);
          both.at(a.rows() + r, c) = mb.at(r, c);
        }
      }
      EXPECT_EQ(rank_mod(f, ma), rank_mod(f, mb));
      EXPECT_EQ(rank_mod(f, both), rank_mod(f, mb));
    }
  }
}

TEST(Jacobian, NonzeroPatternAndDegrees) {
  for (const Digraph& g : enumerate_simple_digraphs(4)) {
    const Jacobian j = build_jacobian(g);
    const Jacobian simple = simplify_s_row(j);
    const int s = j.variables().s_index();
    for (int c = 0; c < j.cols(); ++c) {
      const ColumnIndex col = j.columns()[static_cast<std::size_t>(c)];
      bool zero = true;
      for (int r = 0; r < j.rows(); ++r) {
        const Polynomial& e = j.entry(r, c);
        zero = zero && e.is_zero();
        EXPECT_LE(e.total_degree(), 2);
        if (r < j.s_row()) {
          EXPECT_TRUE(e.divisible_by_variable(s));
        } else if (!e.is_zero()) {
          EXPECT_FALSE(e.divisible_by_variable(s));
        }
      }
      EXPECT_LE(simple.entry(simple.s_row(), c).total_degree(), 1);
      if (!col.diagonal()) {
        const bool linked = g.adjacent(col.i, col.j) || !(g.children(col.i) & g.children(col.j)).empty();
        EXPECT_EQ(zero, !linked) << serialize_graph(g) << col.label();
      }
    }
  }
}

TEST(Jacobian, FiniteDifferencesAgree) {
  std::mt19937_64 gen(8);
  const auto check = [](const Digraph& g, const std::vector<double>& x) {
    const Jacobian j = build_jacobian(g);
    const RealMatrix fd = numeric_jacobian_fd(g, x);
    for (int r = 0; r < j.rows(); ++r) {
      for (int c = 0; c < j.cols(); ++c) {
        const double exact = j.entry(r, c).evaluate(std::span<const double>(x));
        const double err = std::abs(fd.at(r, c) - exact);
        if (std::abs(exact) < 1e-9) {
          EXPECT_LT(err, 1e-9);
        } else {
          EXPECT_LT(err / std::abs(exact), 1e-6);
        }
      }
    }
  };
  check(load("four_cycle.g"), {0.5, 1.0 / 3, 0.25, 0.2, 2.0});
  check(Digraph::edgeless(3), {1.5});
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (int t = 0; t < 20; ++t) {
    const Digraph g = semid::testing::random_digraph(2 + t % 4, gen);
    std::vector<double> x(static_cast<std::size_t>(g.edge_count() + 1));
    for (auto& v : x) v = val(gen);
    x.back() = 0.5 + std::abs(x.back());
    check(g, x);
  }
}

TEST(Jacobian, ExactEvaluationMatchesFieldEvaluation) {
  std::mt19937_64 gen(4);
  const PrimeField f(kMersenne61);
  for (int t = 0; t < 20; ++t) {
    const Digraph g = semid::testing::random_digraph(4, gen);
    const Jacobian j = build_jacobian(g);
    const ParamPoint p = random_point(g, gen);
    const RationalMatrix exact = evaluate(j, p);
    std::vector<std::uint64_t> v;
    for (const Rational& x : p.values()) v.push_back(f.from_rational(x));
    const ModMatrix direct = jacobian_mod(g, f, v);
    for (int r = 0; r < j.rows(); ++r)
      for (int c = 0; c < j.cols(); ++c) EXPECT_EQ(f.from_rational(exact.at(r, c)), direct.at(r, c));
  }
}
