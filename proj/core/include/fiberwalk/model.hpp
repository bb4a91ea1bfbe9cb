#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fiberwalk/intlin.hpp"

namespace fiberwalk {

// Shape of a count table: either a k-way box d1 x ... x dk or the dyadic
// state space of a directed graph on n nodes (4 cells per unordered pair).
struct TableShape {
  std::vector<std::size_t> dims;  // empty iff dyadic
  std::size_t nodes = 0;          // nonzero iff dyadic

  static TableShape ways(std::vector<std::size_t> d);
  static TableShape dyadic(std::size_t n);

  bool is_dyadic() const { return nodes != 0; }
  std::size_t cell_count() const;

  bool operator==(const TableShape& o) const {
    return dims == o.dims && nodes == o.nodes;
  }
};

// Flattened nonnegative count table. Dyadic tables are one-hot per dyad
// block (each unordered pair is in exactly one of its four states).
struct Table {
  TableShape shape;
  IntVector cells;

  Table(TableShape s, IntVector c);
};

// Simple directed graph, no self-loops, no duplicate edges.
struct Graph {
  std::size_t n;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  Graph(std::size_t n_, std::vector<std::pair<std::size_t, std::size_t>> e);
};

enum class Family { generic, independence, p1 };
enum class Reciprocity { zero, constant, differential };

// Log-linear model: integer design matrix plus labels. The all-ones vector
// lies in the row span of the design (verified at construction).
struct ModelSpec {
  Family family = Family::generic;
  IntMatrix design;
  std::vector<std::string> cell_labels;
  std::vector<std::string> statistic_labels;
  // family parameters (meaningful fields depend on family)
  std::size_t d1 = 0, d2 = 0;
  std::size_t nodes = 0;
  Reciprocity reciprocity = Reciprocity::zero;

  TableShape shape() const;
};

// Two-way independence model: row-sum and column-sum statistics on a
// d1 x d2 table flattened row-major.
ModelSpec independence_design(std::size_t d1, std::size_t d2);

// Dyadic p1 network model on n nodes. Cells are dyad states in lex dyad
// order (i<j), four states per dyad ordered 00, 10, 01, 11 where "10"
// means the lower-index node points to the higher-index node. Rows: one
// per-dyad sum constraint, then out-degrees, in-degrees, and reciprocity
// rows (none, one global, or one per node).
ModelSpec p1_design(std::size_t n, Reciprocity mode);

// Wraps a user-supplied design matrix after checking the all-ones row-span
// condition. Labels default to x(c) / s(r) when not provided.
ModelSpec generic_design(const IntMatrix& a,
                         std::vector<std::string> cell_labels = {},
                         std::vector<std::string> statistic_labels = {});

// Dyadic table of a directed graph (one-hot dyad states).
Table graph_to_table(const Graph& g);

// Inverse of graph_to_table on valid dyadic tables.
Graph table_to_graph(const Table& t);

IntVector sufficient_statistics(const ModelSpec& spec, const Table& u);

// Log of the unnormalized conditional (hypergeometric-type) weight of a
// table on its fiber: -sum_c log(u_c!).
double conditional_log_weight(const Table& u);

// Same weight on a raw cell vector (walk internals).
double conditional_log_weight_cells(const IntVector& cells);

// Index of dyad {i,j} (i<j) among the C(n,2) dyads in lex order.
std::size_t dyad_index(std::size_t n, std::size_t i, std::size_t j);

}  // namespace fiberwalk
