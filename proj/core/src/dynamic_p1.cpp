// Dynamic proposer for p1 fibers: pick a handful of dyads, enumerate every
// joint reassignment of their states that leaves all sufficient statistics
// unchanged, and propose a uniformly drawn alternative. The candidate set
// is a function of the dyad subset and the off-subset cells only, so the
// proposal kernel is symmetric and plain Metropolis acceptance applies.

#include <algorithm>
#include <vector>

#include "fiberwalk/fiber.hpp"

namespace fiberwalk {

std::optional<Move> dynamic_p1_propose_cells(const IntVector& cells,
                                             const ModelSpec& spec, Rng& rng) {
  if (spec.family != Family::p1)
    throw ConfigError("dynamic proposal is only defined for p1 models");
  const std::size_t n = spec.nodes;
  const std::size_t ndyads = n * (n - 1) / 2;
  if (cells.size() != 4 * ndyads)
    throw DimensionError("table length does not match the dyadic state space");

  std::vector<std::size_t> state(ndyads);
  for (std::size_t d = 0; d < ndyads; ++d) {
    std::size_t found = 4;
    for (std::size_t s = 0; s < 4; ++s)
      if (cells[4 * d + s] == 1) {
        found = s;
        break;
      }
    if (found == 4) throw ModelError("dyad block is not one-hot");
    state[d] = found;
  }

  // number of dyads touched: 2 with weight 5/10, 3 with 3/10, 4 with 2/10
  const std::uint64_t r = rng.below(10);
  std::size_t k = r < 5 ? 2 : (r < 8 ? 3 : 4);
  if (k > ndyads) k = ndyads;

  // uniform k-subset of dyads (Floyd's algorithm), kept sorted
  std::vector<std::size_t> chosen;
  for (std::size_t i = ndyads - k; i < ndyads; ++i) {
    const std::size_t pick = rng.below(i + 1);
    if (std::find(chosen.begin(), chosen.end(), pick) != chosen.end())
      chosen.push_back(i);
    else
      chosen.push_back(pick);
  }
  std::sort(chosen.begin(), chosen.end());

  // Statistic deltas per chosen dyad and candidate state, over the
  // degree/reciprocity rows (dyad-sum rows never change: one state each).
  const std::size_t nrows = spec.design.rows();
  const std::size_t nfree = nrows - ndyads;
  std::vector<std::vector<long long>> delta(4 * k,
                                            std::vector<long long>(nfree, 0));
  for (std::size_t di = 0; di < k; ++di) {
    const std::size_t d = chosen[di];
    for (std::size_t s = 0; s < 4; ++s)
      for (std::size_t row = 0; row < nfree; ++row)
        delta[4 * di + s][row] =
            (spec.design.at(ndyads + row, 4 * d + s) -
             spec.design.at(ndyads + row, 4 * d + state[d]))
                .convert_to<long long>();
  }

  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= 4;
  std::size_t cur_code = 0;
  for (std::size_t di = k; di-- > 0;)
    cur_code = cur_code * 4 + state[chosen[di]];

  std::vector<std::size_t> valid;
  std::vector<long long> acc(nfree);
  for (std::size_t code = 0; code < total; ++code) {
    std::fill(acc.begin(), acc.end(), 0);
    std::size_t rest = code;
    for (std::size_t di = 0; di < k; ++di) {
      const std::size_t s = rest % 4;
      rest /= 4;
      const auto& dl = delta[4 * di + s];
      for (std::size_t row = 0; row < nfree; ++row) acc[row] += dl[row];
    }
    if (std::all_of(acc.begin(), acc.end(),
                    [](long long x) { return x == 0; }))
      valid.push_back(code);
  }

  if (valid.size() <= 1) return std::nullopt;
  // uniform pick among the alternatives (valid is ascending, contains cur_code)
  const std::size_t pos =
      std::lower_bound(valid.begin(), valid.end(), cur_code) - valid.begin();
  std::size_t pick = rng.below(valid.size() - 1);
  if (pick >= pos) ++pick;
  const std::size_t target = valid[pick];

  IntVector vec(cells.size(), 0);
  std::size_t rest = target;
  for (std::size_t di = 0; di < k; ++di) {
    const std::size_t s = rest % 4;
    rest /= 4;
    const std::size_t d = chosen[di];
    if (s == state[d]) continue;
    vec[4 * d + state[d]] = -1;
    vec[4 * d + s] = 1;
  }
  Move m(std::move(vec));
  if (!in_kernel(spec.design, m.vector))
    throw Error("dynamic proposal failed the kernel check");
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (cells[c] + m.vector[c] < 0)
      throw Error("dynamic proposal drives a cell negative");
  return m;
}

std::optional<Move> dynamic_p1_propose(const Table& current,
                                       const ModelSpec& spec, Rng& rng) {
  if (!current.shape.is_dyadic())
    throw ModelError("dynamic proposal needs a dyadic table");
  return dynamic_p1_propose_cells(current.cells, spec, rng);
}

}  // namespace fiberwalk
