#include "fiberwalk/intlin.hpp"

#include <algorithm>
#include <utility>

namespace fiberwalk {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) return IntMatrix();
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols)
      throw DimensionError("from_rows: ragged row lengths");
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  IntVector out(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out[j] = at(r, j);
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntVector IntMatrix::mul(const IntVector& v) const {
  if (v.size() != cols_)
    throw DimensionError("mul: vector length does not match column count");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc += at(i, j) * v[j];
    out[i] = std::move(acc);
  }
  return out;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

// row a -= q * row b
void subtract_scaled(IntMatrix& m, std::size_t a, std::size_t b,
                     const Int& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) -= q * m.at(b, j);
}

}  // namespace

HnfResult hermite_normal_form(const IntMatrix& a) {
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(a.rows());
  const std::size_t m = a.rows(), n = a.cols();

  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < n && pivot_row < m; ++col) {
    // Euclidean reduction: repeatedly subtract multiples of the row with
    // the smallest nonzero entry in this column until one survivor remains.
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = pivot_row; i < m; ++i) {
        if (h.at(i, col) == 0) continue;
        if (best == m ||
            abs(h.at(i, col)) < abs(h.at(best, col)))
          best = i;
      }
      if (best == m) break;  // column is zero below pivot_row
      if (best != pivot_row) {
        swap_rows(h, pivot_row, best);
        swap_rows(u, pivot_row, best);
      }
      if (h.at(pivot_row, col) < 0) {
        negate_row(h, pivot_row);
        negate_row(u, pivot_row);
      }
      bool cleared = true;
      for (std::size_t i = pivot_row + 1; i < m; ++i) {
        if (h.at(i, col) == 0) continue;
        Int q = h.at(i, col) / h.at(pivot_row, col);
        if (h.at(i, col) - q * h.at(pivot_row, col) < 0) q -= 1;
        subtract_scaled(h, i, pivot_row, q);
        subtract_scaled(u, i, pivot_row, q);
        if (h.at(i, col) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h.at(pivot_row, col) == 0) continue;
    // Reduce entries above the pivot into [0, pivot).
    for (std::size_t i = 0; i < pivot_row; ++i) {
      Int q = h.at(i, col) / h.at(pivot_row, col);
      if (h.at(i, col) - q * h.at(pivot_row, col) < 0) q -= 1;
      subtract_scaled(h, i, pivot_row, q);
      subtract_scaled(u, i, pivot_row, q);
    }
    ++pivot_row;
  }
  return {std::move(h), std::move(u), pivot_row};
}

std::size_t integer_rank(const IntMatrix& a) {
  return hermite_normal_form(a).rank;
}

std::vector<IntVector> lattice_kernel_basis(const IntMatrix& a) {
  // Kernel vectors of a are rows of U that transform rows of a^T to zero.
  HnfResult r = hermite_normal_form(a.transposed());
  std::vector<IntVector> basis;
  for (std::size_t i = r.rank; i < r.u.rows(); ++i) {
    IntVector v = r.u.row(i);
    for (const auto& x : v) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
    basis.push_back(std::move(v));
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

bool in_kernel(const IntMatrix& a, const IntVector& v) {
  IntVector av = a.mul(v);
  return std::all_of(av.begin(), av.end(),
                     [](const Int& x) { return x == 0; });
}

}  // namespace fiberwalk
