#include <algorithm>
#include <vector>

#include "fiberwalk/fiber.hpp"

namespace fiberwalk {
namespace {

// Backtracking enumerator for {v >= 0 integer : A v = t}. Cells are
// assigned in natural order. Static per-cell upper bounds come from rows
// with only nonnegative coefficients; per-node pruning keeps each row's
// residual inside the window reachable by the unassigned suffix.
class FiberEnumerator {
 public:
  FiberEnumerator(const IntMatrix& a, const IntVector& t, std::size_t cap)
      : a_(a), cap_(cap), n_(a.cols()), m_(a.rows()), residual_(t) {
    compute_bounds(t);
    lo_.assign(m_, IntVector(n_ + 1, 0));
    hi_.assign(m_, IntVector(n_ + 1, 0));
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t c = n_; c-- > 0;) {
        const Int contrib = a_.at(i, c) * bound_[c];
        lo_[i][c] = lo_[i][c + 1] + (contrib < 0 ? contrib : Int(0));
        hi_[i][c] = hi_[i][c + 1] + (contrib > 0 ? contrib : Int(0));
      }
    current_.assign(n_, 0);
  }

  std::vector<IntVector> run() {
    if (!infeasible_) descend(0);
    return std::move(out_);
  }

 private:
  void compute_bounds(const IntVector& t) {
    bound_.assign(n_, -1);
    std::vector<bool> row_nonneg(m_, true);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t c = 0; c < n_; ++c)
        if (a_.at(i, c) < 0) {
          row_nonneg[i] = false;
          break;
        }
    for (std::size_t i = 0; i < m_; ++i) {
      if (!row_nonneg[i]) continue;
      bool zero_row = true;
      for (std::size_t c = 0; c < n_; ++c)
        if (a_.at(i, c) > 0) zero_row = false;
      if (t[i] < 0 || (zero_row && t[i] != 0)) {
        infeasible_ = true;
        return;
      }
      for (std::size_t c = 0; c < n_; ++c) {
        if (a_.at(i, c) <= 0) continue;
        const Int b = t[i] / a_.at(i, c);
        if (bound_[c] < 0 || b < bound_[c]) bound_[c] = b;
      }
    }
    for (std::size_t c = 0; c < n_; ++c)
      if (bound_[c] < 0)
        throw FiberCapError(
            "fiber cell has no bounding constraint; enumeration would not "
            "terminate",
            cap_);
  }

  bool window_ok(std::size_t next_cell) const {
    for (std::size_t i = 0; i < m_; ++i)
      if (residual_[i] < lo_[i][next_cell] || residual_[i] > hi_[i][next_cell])
        return false;
    return true;
  }

  void descend(std::size_t c) {
    if (c == n_) {
      if (out_.size() >= cap_)
        throw FiberCapError("fiber enumeration exceeded the point cap", cap_);
      out_.push_back(current_);
      return;
    }
    for (Int v = 0; v <= bound_[c]; ++v) {
      current_[c] = v;
      if (v > 0)
        for (std::size_t i = 0; i < m_; ++i) residual_[i] -= a_.at(i, c);
      if (window_ok(c + 1)) descend(c + 1);
    }
    for (std::size_t i = 0; i < m_; ++i)
      residual_[i] += a_.at(i, c) * bound_[c];
    current_[c] = 0;
  }

  const IntMatrix& a_;
  std::size_t cap_, n_, m_;
  IntVector residual_;
  IntVector bound_;
  std::vector<IntVector> lo_, hi_;
  IntVector current_;
  std::vector<IntVector> out_;
  bool infeasible_ = false;
};

}  // namespace

std::vector<IntVector> enumerate_fiber_vectors(const IntMatrix& a,
                                               const IntVector& u,
                                               std::size_t cap) {
  if (cap < 1) throw ConfigError("enumeration cap must be at least 1");
  if (u.size() != a.cols())
    throw DimensionError("table length does not match design columns");
  FiberEnumerator e(a, a.mul(u), cap);
  return e.run();
}

std::vector<Table> enumerate_fiber(const IntMatrix& a, const Table& u,
                                   std::size_t cap) {
  auto vecs = enumerate_fiber_vectors(a, u.cells, cap);
  std::vector<Table> out;
  out.reserve(vecs.size());
  for (auto& v : vecs) out.push_back(Table(u.shape, std::move(v)));
  return out;
}

}  // namespace fiberwalk
