#include "fiberwalk/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fiberwalk {

TableShape TableShape::ways(std::vector<std::size_t> d) {
  if (d.empty()) throw DimensionError("table shape needs at least one dimension");
  for (auto x : d)
    if (x == 0) throw DimensionError("table dimensions must be positive");
  TableShape s;
  s.dims = std::move(d);
  return s;
}

TableShape TableShape::dyadic(std::size_t n) {
  if (n < 2) throw DimensionError("dyadic shape needs at least two nodes");
  TableShape s;
  s.nodes = n;
  return s;
}

std::size_t TableShape::cell_count() const {
  if (is_dyadic()) return 4 * (nodes * (nodes - 1) / 2);
  std::size_t c = 1;
  for (auto d : dims) c *= d;
  return c;
}

Table::Table(TableShape s, IntVector c) : shape(std::move(s)), cells(std::move(c)) {
  if (cells.size() != shape.cell_count())
    throw DimensionError("table cell count does not match shape");
  for (const auto& x : cells)
    if (x < 0) throw ModelError("table entries must be nonnegative");
  if (shape.is_dyadic()) {
    for (std::size_t b = 0; b + 4 <= cells.size(); b += 4) {
      Int sum = 0;
      bool binary = true;
      for (std::size_t k = 0; k < 4; ++k) {
        sum += cells[b + k];
        if (cells[b + k] > 1) binary = false;
      }
      if (sum != 1 || !binary)
        throw ModelError("dyadic table blocks must have exactly one 1");
    }
  }
}

Graph::Graph(std::size_t n_, std::vector<std::pair<std::size_t, std::size_t>> e)
    : n(n_), edges(std::move(e)) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [i, j] : edges) {
    if (i >= n || j >= n) throw ModelError("edge endpoint out of range");
    if (i == j) throw ModelError("self-loops are not allowed");
    if (!seen.insert({i, j}).second) throw ModelError("duplicate edge");
  }
}

std::size_t dyad_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  // dyads {0,1},{0,2},...,{0,n-1},{1,2},... in lex order
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

TableShape ModelSpec::shape() const {
  switch (family) {
    case Family::independence:
      return TableShape::ways({d1, d2});
    case Family::p1:
      return TableShape::dyadic(nodes);
    default:
      return TableShape::ways({design.cols()});
  }
}

namespace {

bool all_ones_in_row_span(const IntMatrix& a) {
  IntMatrix ext(a.rows() + 1, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) ext.at(i, j) = a.at(i, j);
  for (std::size_t j = 0; j < a.cols(); ++j) ext.at(a.rows(), j) = 1;
  return integer_rank(a) == integer_rank(ext);
}

void check_row_span(const IntMatrix& a) {
  if (!all_ones_in_row_span(a))
    throw ModelError("the all-ones vector is not in the row span of the design");
}

}  // namespace

ModelSpec independence_design(std::size_t d1, std::size_t d2) {
  if (d1 < 2 || d2 < 2)
    throw DimensionError("independence model needs both dimensions >= 2");
  ModelSpec spec;
  spec.family = Family::independence;
  spec.d1 = d1;
  spec.d2 = d2;
  spec.design = IntMatrix(d1 + d2, d1 * d2);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j) {
      spec.design.at(i, i * d2 + j) = 1;
      spec.design.at(d1 + j, i * d2 + j) = 1;
      spec.cell_labels.push_back("cell(" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
    }
  for (std::size_t i = 0; i < d1; ++i)
    spec.statistic_labels.push_back("row(" + std::to_string(i) + ")");
  for (std::size_t j = 0; j < d2; ++j)
    spec.statistic_labels.push_back("col(" + std::to_string(j) + ")");
  check_row_span(spec.design);
  return spec;
}

ModelSpec p1_design(std::size_t n, Reciprocity mode) {
  if (n < 3) throw DimensionError("p1 model needs at least three nodes");
  ModelSpec spec;
  spec.family = Family::p1;
  spec.nodes = n;
  spec.reciprocity = mode;
  const std::size_t ndyads = n * (n - 1) / 2;
  const std::size_t ncells = 4 * ndyads;
  std::size_t nrows = ndyads + 2 * n;
  if (mode == Reciprocity::constant) nrows += 1;
  if (mode == Reciprocity::differential) nrows += n;
  spec.design = IntMatrix(nrows, ncells);

  static const char* state_names[4] = {"00", "10", "01", "11"};
  const std::size_t out_base = ndyads;
  const std::size_t in_base = ndyads + n;
  const std::size_t recip_base = ndyads + 2 * n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t d = dyad_index(n, i, j);
      const std::size_t base = 4 * d;
      for (std::size_t s = 0; s < 4; ++s) {
        spec.design.at(d, base + s) = 1;
        spec.cell_labels.push_back("dyad(" + std::to_string(i) + "," +
                                   std::to_string(j) + "):" + state_names[s]);
      }
      // state 10: i->j present; state 01: j->i present; state 11: both
      spec.design.at(out_base + i, base + 1) = 1;
      spec.design.at(out_base + i, base + 3) = 1;
      spec.design.at(out_base + j, base + 2) = 1;
      spec.design.at(out_base + j, base + 3) = 1;
      spec.design.at(in_base + j, base + 1) = 1;
      spec.design.at(in_base + j, base + 3) = 1;
      spec.design.at(in_base + i, base + 2) = 1;
      spec.design.at(in_base + i, base + 3) = 1;
      if (mode == Reciprocity::constant) {
        spec.design.at(recip_base, base + 3) = 1;
      } else if (mode == Reciprocity::differential) {
        spec.design.at(recip_base + i, base + 3) = 1;
        spec.design.at(recip_base + j, base + 3) = 1;
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      spec.statistic_labels.push_back("dyad(" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
  for (std::size_t i = 0; i < n; ++i)
    spec.statistic_labels.push_back("out(" + std::to_string(i) + ")");
  for (std::size_t i = 0; i < n; ++i)
    spec.statistic_labels.push_back("in(" + std::to_string(i) + ")");
  if (mode == Reciprocity::constant) spec.statistic_labels.push_back("recip");
  if (mode == Reciprocity::differential)
    for (std::size_t i = 0; i < n; ++i)
      spec.statistic_labels.push_back("recip(" + std::to_string(i) + ")");
  check_row_span(spec.design);
  return spec;
}

ModelSpec generic_design(const IntMatrix& a,
                         std::vector<std::string> cell_labels,
                         std::vector<std::string> statistic_labels) {
  if (a.rows() == 0 || a.cols() == 0)
    throw DimensionError("design matrix must be nonempty");
  check_row_span(a);
  ModelSpec spec;
  spec.family = Family::generic;
  spec.design = a;
  if (cell_labels.empty())
    for (std::size_t c = 0; c < a.cols(); ++c)
      cell_labels.push_back("x(" + std::to_string(c) + ")");
  if (statistic_labels.empty())
    for (std::size_t r = 0; r < a.rows(); ++r)
      statistic_labels.push_back("s(" + std::to_string(r) + ")");
  if (cell_labels.size() != a.cols() || statistic_labels.size() != a.rows())
    throw DimensionError("label count does not match design dimensions");
  spec.cell_labels = std::move(cell_labels);
  spec.statistic_labels = std::move(statistic_labels);
  return spec;
}

Table graph_to_table(const Graph& g) {
  const std::size_t ndyads = g.n * (g.n - 1) / 2;
  std::vector<int> state(ndyads, 0);
  for (const auto& [i, j] : g.edges) {
    const std::size_t d = dyad_index(g.n, i, j);
    state[d] |= (i < j) ? 1 : 2;
  }
  IntVector cells(4 * ndyads, 0);
  for (std::size_t d = 0; d < ndyads; ++d) cells[4 * d + state[d]] = 1;
  return Table(TableShape::dyadic(g.n), std::move(cells));
}

Graph table_to_graph(const Table& t) {
  if (!t.shape.is_dyadic())
    throw ModelError("table_to_graph needs a dyadic table");
  const std::size_t n = t.shape.nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t d = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++d) {
      if (t.cells[4 * d + 1] == 1 || t.cells[4 * d + 3] == 1)
        edges.push_back({i, j});
      if (t.cells[4 * d + 2] == 1 || t.cells[4 * d + 3] == 1)
        edges.push_back({j, i});
    }
  return Graph(n, std::move(edges));
}

IntVector sufficient_statistics(const ModelSpec& spec, const Table& u) {
  if (u.cells.size() != spec.design.cols())
    throw DimensionError("table length does not match design columns");
  return spec.design.mul(u.cells);
}

double conditional_log_weight_cells(const IntVector& cells) {
  double w = 0.0;
  for (const auto& c : cells) w -= std::lgamma(c.convert_to<double>() + 1.0);
  return w;
}

double conditional_log_weight(const Table& u) {
  return conditional_log_weight_cells(u.cells);
}

}  // namespace fiberwalk
