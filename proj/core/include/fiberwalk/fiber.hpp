#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fiberwalk/basis.hpp"
#include "fiberwalk/intlin.hpp"
#include "fiberwalk/model.hpp"
#include "fiberwalk/rng.hpp"

namespace fiberwalk {

// All nonnegative integer solutions of A v = A u, found by backtracking in
// lexicographic cell order (output comes back lex-sorted). Throws if the
// fiber would exceed cap or some cell has no bounding constraint.
std::vector<Table> enumerate_fiber(const IntMatrix& a, const Table& u,
                                   std::size_t cap);

// Raw-vector core of enumerate_fiber (fiber of target statistics t = A u).
std::vector<IntVector> enumerate_fiber_vectors(const IntMatrix& a,
                                               const IntVector& u,
                                               std::size_t cap);

enum class Target { uniform, hypergeometric };
enum class ProposalKind { basis, dynamic_p1 };

struct WalkConfig {
  std::size_t steps = 100000;
  std::size_t burn_in = 10000;
  std::size_t thin = 1;
  std::uint64_t seed = 0;
  Target target = Target::hypergeometric;
  ProposalKind proposal = ProposalKind::basis;
};

struct WalkSample {
  std::vector<IntVector> states;  // post burn-in, thinned
  std::size_t acceptance_count = 0;
  std::size_t proposal_count = 0;
};

struct WalkCounters {
  std::size_t acceptance_count = 0;
  std::size_t proposal_count = 0;
  std::size_t recorded = 0;
};

// Metropolis-Hastings walk over the fiber of u0. Rejected or inapplicable
// proposals still advance the step counter (lazy chain). Recorded states
// are those after burn_in at the thinning stride. steps == burn_in is a
// legal degenerate run that records nothing.
WalkSample walk(const ModelSpec& spec, const MarkovBasis& basis,
                const Table& u0, const WalkConfig& cfg);

// Streaming variant: calls visit on each recorded state instead of
// storing the sample.
WalkCounters walk_visit(const ModelSpec& spec, const MarkovBasis& basis,
                        const Table& u0, const WalkConfig& cfg,
                        const std::function<void(const IntVector&)>& visit);

// One proposal of the dynamic p1 chain: picks 2-4 dyads, enumerates their
// joint states with unchanged sufficient statistics, and returns a
// uniformly chosen alternative as a move (or nothing when the drawn dyads
// admit no alternative). Every returned move is kernel-checked and keeps
// the current table nonnegative. The construction is symmetric as a
// proposal kernel, so a Metropolis chain built on it has the configured
// target as its stationary distribution.
std::optional<Move> dynamic_p1_propose(const Table& current,
                                       const ModelSpec& spec, Rng& rng);

// Raw-vector variant used by the walk loop.
std::optional<Move> dynamic_p1_propose_cells(const IntVector& cells,
                                             const ModelSpec& spec, Rng& rng);

// current + move, throwing if any entry would go negative.
IntVector apply_move(const IntVector& cells, const Move& move, int sign);

}  // namespace fiberwalk
