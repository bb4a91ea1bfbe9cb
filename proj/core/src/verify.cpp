#include <map>
#include <vector>

#include "fiberwalk/basis.hpp"
#include "fiberwalk/fiber.hpp"
#include "fiberwalk/rng.hpp"

namespace fiberwalk {
namespace {

bool applicable(const IntVector& cells, const Move& m, int sign) {
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Int& delta = sign > 0 ? m.negative_part[c] : m.positive_part[c];
    if (cells[c] < delta) return false;
  }
  return true;
}

IntVector applied(const IntVector& cells, const Move& m, int sign) {
  IntVector out = cells;
  for (std::size_t c = 0; c < cells.size(); ++c)
    out[c] += sign > 0 ? m.vector[c] : -m.vector[c];
  return out;
}

Int one_norm_distance(const IntVector& a, const IntVector& b) {
  Int d = 0;
  for (std::size_t c = 0; c < a.size(); ++c) d += abs(a[c] - b[c]);
  return d;
}

}  // namespace

bool verify_connects(const IntMatrix& a, const MarkovBasis& basis,
                     const Table& u, std::size_t cap) {
  auto fiber = enumerate_fiber_vectors(a, u.cells, cap);
  if (fiber.size() <= 1) return true;
  std::map<IntVector, std::size_t> index;
  for (std::size_t i = 0; i < fiber.size(); ++i) index[fiber[i]] = i;

  std::vector<bool> visited(fiber.size(), false);
  std::vector<std::size_t> stack = {0};
  visited[0] = true;
  std::size_t seen = 1;
  while (!stack.empty()) {
    const std::size_t cur = stack.back();
    stack.pop_back();
    for (const auto& m : basis.moves)
      for (int sign : {+1, -1}) {
        if (!applicable(fiber[cur], m, sign)) continue;
        auto it = index.find(applied(fiber[cur], m, sign));
        if (it == index.end() || visited[it->second]) continue;
        visited[it->second] = true;
        ++seen;
        stack.push_back(it->second);
      }
  }
  return seen == fiber.size();
}

DistanceReport distance_reducing_check(const IntMatrix& a,
                                       const MarkovBasis& basis,
                                       std::size_t trials,
                                       std::uint64_t seed) {
  constexpr std::size_t kFiberCap = 2000;
  DistanceReport report;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    IntVector u(a.cols());
    for (auto& x : u) x = static_cast<long long>(rng.below(5));
    std::vector<IntVector> fiber;
    try {
      fiber = enumerate_fiber_vectors(a, u, kFiberCap);
    } catch (const FiberCapError&) {
      continue;
    }
    if (fiber.size() < 2) continue;
    const std::size_t i = rng.below(fiber.size());
    std::size_t j = rng.below(fiber.size() - 1);
    if (j >= i) ++j;
    const IntVector& p = fiber[i];
    const IntVector& q = fiber[j];
    const Int dist = one_norm_distance(p, q);
    bool reduced = false;
    for (const auto& m : basis.moves) {
      for (int sign : {+1, -1}) {
        if (applicable(p, m, sign) &&
            one_norm_distance(applied(p, m, sign), q) < dist)
          reduced = true;
        if (applicable(q, m, sign) &&
            one_norm_distance(applied(q, m, sign), p) < dist)
          reduced = true;
        if (reduced) break;
      }
      if (reduced) break;
    }
    ++report.pairs_checked;
    if (!reduced) report.violations.push_back({p, q});
  }
  return report;
}

}  // namespace fiberwalk
