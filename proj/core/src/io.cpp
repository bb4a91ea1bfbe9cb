#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "fiberwalk/io.hpp"

namespace fiberwalk {
namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  return in;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

long long parse_int(const std::string& tok, std::size_t line) {
  long long v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError("expected an integer, got \"" + tok + "\"", line);
  return v;
}

std::vector<long long> split_ints(const std::string& line, char sep,
                                  std::size_t lineno) {
  std::vector<long long> out;
  std::string tok;
  std::istringstream ss(line);
  if (sep == ' ') {
    while (ss >> tok) out.push_back(parse_int(tok, lineno));
  } else {
    while (std::getline(ss, tok, sep)) {
      tok = trim(tok);
      if (tok.empty())
        throw ParseError("empty field", lineno);
      out.push_back(parse_int(tok, lineno));
    }
  }
  return out;
}

}  // namespace

Table read_table_csv(const std::string& path) {
  auto in = open_or_throw(path);
  std::vector<std::vector<long long>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto vals = split_ints(line, ',', lineno);
    for (auto v : vals)
      if (v < 0) throw ParseError("negative cell count", lineno);
    if (!rows.empty() && vals.size() != rows.front().size())
      throw ParseError("ragged row: expected " +
                           std::to_string(rows.front().size()) + " fields",
                       lineno);
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw ParseError("empty table file: " + path);
  IntVector cells;
  for (const auto& r : rows)
    for (auto v : r) cells.push_back(v);
  return Table(TableShape::ways({rows.size(), rows.front().size()}),
               std::move(cells));
}

Graph read_edge_list(const std::string& path, std::size_t nodes) {
  auto in = open_or_throw(path);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::set<std::pair<long long, long long>> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto vals = split_ints(line, ' ', lineno);
    if (vals.size() != 2)
      throw ParseError("expected \"i j\" on each line", lineno);
    const long long i = vals[0], j = vals[1];
    if (i < 0 || j < 0 || i >= static_cast<long long>(nodes) ||
        j >= static_cast<long long>(nodes))
      throw ParseError("edge endpoint out of range", lineno);
    if (i == j) throw ParseError("self-loop is not allowed", lineno);
    if (!seen.insert({i, j}).second)
      throw ParseError("duplicate edge", lineno);
    edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
  }
  return Graph(nodes, std::move(edges));
}

IntMatrix read_matrix_file(const std::string& path) {
  auto in = open_or_throw(path);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty matrix file: " + path);
  ++lineno;
  auto header = split_ints(line, ' ', lineno);
  if (header.size() != 2 || header[0] < 1 || header[1] < 1)
    throw ParseError("matrix header must be \"rows cols\"", lineno);
  const std::size_t m = static_cast<std::size_t>(header[0]);
  const std::size_t r = static_cast<std::size_t>(header[1]);
  IntMatrix a(m, r);
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::getline(in, line))
      throw ParseError("matrix ends early: expected " + std::to_string(m) +
                           " rows",
                       lineno);
    ++lineno;
    auto vals = split_ints(line, ' ', lineno);
    if (vals.size() != r)
      throw ParseError("expected " + std::to_string(r) + " entries", lineno);
    for (std::size_t j = 0; j < r; ++j) a.at(i, j) = vals[j];
  }
  return a;
}

std::vector<Move> read_basis_file(const std::string& path) {
  auto in = open_or_throw(path);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty basis file: " + path);
  ++lineno;
  auto header = split_ints(line, ' ', lineno);
  if (header.size() != 2 || header[0] < 1 || header[1] < 0)
    throw ParseError("basis header must be \"length count\"", lineno);
  const std::size_t r = static_cast<std::size_t>(header[0]);
  const std::size_t n = static_cast<std::size_t>(header[1]);
  std::vector<Move> moves;
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::getline(in, line))
      throw ParseError("basis ends early: expected " + std::to_string(n) +
                           " moves",
                       lineno);
    ++lineno;
    auto vals = split_ints(line, ' ', lineno);
    if (vals.size() != r)
      throw ParseError("expected " + std::to_string(r) + " entries", lineno);
    IntVector v(vals.begin(), vals.end());
    try {
      moves.push_back(Move(std::move(v)));
    } catch (const ModelError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return moves;
}

void write_basis_file(const std::string& path, const std::vector<Move>& moves,
                      std::size_t vector_length) {
  std::set<IntVector> canon;
  for (const auto& m : moves) {
    if (m.vector.size() != vector_length)
      throw DimensionError("move length does not match the declared length");
    IntVector v = m.vector;
    for (const auto& x : v) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
    canon.insert(std::move(v));
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  out << vector_length << ' ' << canon.size() << '\n';
  for (const auto& v : canon) {
    for (std::size_t c = 0; c < v.size(); ++c)
      out << (c ? " " : "") << v[c];
    out << '\n';
  }
}

std::string format_double(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, p);
}

}  // namespace fiberwalk
