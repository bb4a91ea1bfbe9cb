#include <doctest.h>

#include <fiberwalk/intlin.hpp>
#include <fiberwalk/rng.hpp>

using namespace fiberwalk;

namespace {

IntVector iv(std::initializer_list<long long> xs) {
  IntVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

// Test-side determinant by minor expansion (small matrices only).
Int det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  REQUIRE(n == m.cols());
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  Int total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    Int term = m.at(0, j) * det(minor);
    total += (j % 2 == 0) ? term : -term;
  }
  return total;
}

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                        long long lo, long long hi) {
  IntMatrix a(rows, cols);
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      a.at(i, j) = lo + static_cast<long long>(rng.below(span));
  return a;
}

bool hnf_shape_ok(const IntMatrix& h, std::size_t rank) {
  // Pivots strictly move right, are positive, and entries above each pivot
  // lie in [0, pivot). Rows past the rank are zero.
  std::size_t prev = 0;
  bool first = true;
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t c = 0;
    while (c < h.cols() && h.at(r, c) == 0) ++c;
    if (r >= rank) {
      if (c != h.cols()) return false;
      continue;
    }
    if (c == h.cols()) return false;
    if (h.at(r, c) <= 0) return false;
    if (!first && c <= prev) return false;
    for (std::size_t rr = 0; rr < r; ++rr)
      if (h.at(rr, c) < 0 || h.at(rr, c) >= h.at(r, c)) return false;
    prev = c;
    first = false;
  }
  return true;
}

}  // namespace

TEST_CASE("matrix construction and multiplication") {
  auto a = IntMatrix::from_rows({iv({1, 2, 3}), iv({4, 5, 6})});
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(a.at(1, 2) == 6);
  CHECK(a.row(0) == iv({1, 2, 3}));
  CHECK(a.mul(iv({1, 1, 1})) == iv({6, 15}));
  CHECK(a.transposed().at(2, 1) == 6);
  CHECK(a.transposed().transposed() == a);
  CHECK(IntMatrix::identity(3).mul(iv({7, -8, 9})) == iv({7, -8, 9}));
  CHECK_THROWS_AS((void)a.mul(iv({1, 1})), DimensionError);
  CHECK_THROWS_AS((void)IntMatrix::from_rows({iv({1}), iv({1, 2})}),
                  DimensionError);
}

TEST_CASE("hermite normal form of a pinned 2x2") {
  auto a = IntMatrix::from_rows({iv({2, 4}), iv({1, 3})});
  auto r = hermite_normal_form(a);
  CHECK(r.rank == 2);
  CHECK(r.h == IntMatrix::from_rows({iv({1, 1}), iv({0, 2})}));
  Int d = det(r.u);
  CHECK((d == 1 || d == -1));
  // u * a == h, column by column
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(r.u.at(i, 0) * a.at(0, j) + r.u.at(i, 1) * a.at(1, j) ==
            r.h.at(i, j));
}

TEST_CASE("hermite normal form properties on random matrices") {
  Rng rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t rows = 1 + rng.below(4);
    std::size_t cols = 1 + rng.below(4);
    auto a = random_matrix(rng, rows, cols, -5, 5);
    auto r = hermite_normal_form(a);
    // u * a == h
    for (std::size_t i = 0; i < rows; ++i) {
      IntVector lhs(cols, 0);
      for (std::size_t k = 0; k < rows; ++k)
        for (std::size_t j = 0; j < cols; ++j)
          lhs[j] += r.u.at(i, k) * a.at(k, j);
      CHECK(lhs == r.h.row(i));
    }
    // u unimodular
    Int d = det(r.u);
    CHECK((d == 1 || d == -1));
    CHECK(hnf_shape_ok(r.h, r.rank));
    CHECK(r.rank == integer_rank(a));
  }
}

TEST_CASE("hermite normal form edge cases") {
  auto z = IntMatrix(2, 3);
  auto r = hermite_normal_form(z);
  CHECK(r.rank == 0);
  CHECK(r.h == z);
  auto id = IntMatrix::identity(4);
  auto ri = hermite_normal_form(id);
  CHECK(ri.rank == 4);
  CHECK(ri.h == id);
  CHECK(integer_rank(IntMatrix(0, 0)) == 0);
}

TEST_CASE("kernel basis of a single sum constraint") {
  auto a = IntMatrix::from_rows({iv({1, 1})});
  auto k = lattice_kernel_basis(a);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == iv({1, -1}));
}

TEST_CASE("kernel basis of the 2x2 two-margin design") {
  // rows: two row sums then two column sums of a flattened 2x2 table
  auto a = IntMatrix::from_rows({iv({1, 1, 0, 0}), iv({0, 0, 1, 1}),
                                 iv({1, 0, 1, 0}), iv({0, 1, 0, 1})});
  auto k = lattice_kernel_basis(a);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == iv({1, -1, -1, 1}));
}

TEST_CASE("kernel of an invertible matrix is trivial") {
  auto a = IntMatrix::from_rows({iv({2, 1}), iv({1, 1})});
  CHECK(lattice_kernel_basis(a).empty());
  CHECK(integer_rank(a) == 2);
}

TEST_CASE("kernel basis properties on random matrices") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    auto a = random_matrix(rng, 1 + rng.below(4), 1 + rng.below(6), -3, 3);
    auto k = lattice_kernel_basis(a);
    CHECK(k.size() == a.cols() - integer_rank(a));
    for (const auto& v : k) {
      CHECK(in_kernel(a, v));
      // sign normalization: first nonzero entry positive
      for (const auto& x : v) {
        if (x == 0) continue;
        CHECK(x > 0);
        break;
      }
    }
    // sorted and duplicate-free
    for (std::size_t i = 1; i < k.size(); ++i) CHECK(k[i - 1] < k[i]);
  }
}

TEST_CASE("kernel membership") {
  auto a = IntMatrix::from_rows({iv({1, 1, 1}), iv({0, 1, 2})});
  CHECK(in_kernel(a, iv({1, -2, 1})));
  CHECK_FALSE(in_kernel(a, iv({1, -1, 0})));
  CHECK_THROWS_AS((void)in_kernel(a, iv({1, 1})), DimensionError);
}

TEST_CASE("splitmix64 reference output and child seeding") {
  SplitMix64 sm(0);
  CHECK(sm.next() == 0xE220A8397B1DCDAFull);
  CHECK(Rng::child_seed(0, 0) == 0xE220A8397B1DCDAFull);
  CHECK(Rng::child_seed(0, 1) != Rng::child_seed(0, 0));
  // same master/index always the same stream
  CHECK(Rng::child_seed(123, 4) == Rng::child_seed(123, 4));
}

TEST_CASE("rng draws are deterministic and in range") {
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    auto x = a.below(17);
    CHECK(x == b.below(17));
    CHECK(x < 17);
    double u = a.uniform01();
    CHECK(u == b.uniform01());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
