#pragma once

#include <string>
#include <vector>

#include "fiberwalk/basis.hpp"
#include "fiberwalk/intlin.hpp"
#include "fiberwalk/model.hpp"

namespace fiberwalk {

// Rectangular CSV of nonnegative integers, no header, flattened row-major
// into a (rows x cols) table shape.
Table read_table_csv(const std::string& path);

// One "i j" 0-based ordered pair per line; node count given explicitly so
// isolated nodes are representable.
Graph read_edge_list(const std::string& path, std::size_t nodes);

// First line "m r", then m rows of r integers.
IntMatrix read_matrix_file(const std::string& path);

// Basis file: first line "r n" (vector length, move count), then n rows of
// r integers, sign-normalized and sorted.
std::vector<Move> read_basis_file(const std::string& path);
void write_basis_file(const std::string& path, const std::vector<Move>& moves,
                      std::size_t vector_length);

// Shortest round-trip decimal formatting (golden-file stability).
std::string format_double(double x);

}  // namespace fiberwalk
