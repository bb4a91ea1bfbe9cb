#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fiberwalk/errors.hpp"

namespace fiberwalk {

using Int = boost::multiprecision::cpp_int;
using IntVector = std::vector<Int>;

// Dense row-major integer matrix over arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  IntVector row(std::size_t r) const;
  IntMatrix transposed() const;
  IntVector mul(const IntVector& v) const;

  bool operator==(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           data_ == other.data_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Int> data_;
};

struct HnfResult {
  IntMatrix h;  // row-style Hermite normal form of the input
  IntMatrix u;  // unimodular transform with u * input == h
  std::size_t rank;
};

// Row-style Hermite normal form by integer row operations. Pivots are
// positive and entries above each pivot are reduced to [0, pivot).
HnfResult hermite_normal_form(const IntMatrix& a);

std::size_t integer_rank(const IntMatrix& a);

// Basis for the integer kernel {v : a * v == 0}, one vector per element.
// Each basis vector has its first nonzero entry positive; the list is
// sorted lexicographically. Empty when the kernel is trivial.
std::vector<IntVector> lattice_kernel_basis(const IntMatrix& a);

bool in_kernel(const IntMatrix& a, const IntVector& v);

}  // namespace fiberwalk
