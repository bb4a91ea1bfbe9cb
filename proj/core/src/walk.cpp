#include <cmath>

#include "fiberwalk/fiber.hpp"

namespace fiberwalk {
namespace {

bool sign_applicable(const IntVector& cells, const Move& m, int sign) {
  const IntVector& need = sign > 0 ? m.negative_part : m.positive_part;
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (cells[c] < need[c]) return false;
  return true;
}

// log weight change of replacing cells by cells + sign*move, summed over
// the move's support only
double log_weight_delta(const IntVector& cells, const Move& m, int sign) {
  double delta = 0.0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (m.vector[c] == 0) continue;
    const double cur = cells[c].convert_to<double>();
    const double nxt =
        cur + (sign > 0 ? m.vector[c] : -m.vector[c]).convert_to<double>();
    delta += std::lgamma(cur + 1.0) - std::lgamma(nxt + 1.0);
  }
  return delta;
}

void add_move(IntVector& cells, const Move& m, int sign) {
  for (std::size_t c = 0; c < cells.size(); ++c)
    cells[c] += sign > 0 ? m.vector[c] : -m.vector[c];
}

}  // namespace

IntVector apply_move(const IntVector& cells, const Move& move, int sign) {
  if (cells.size() != move.vector.size())
    throw DimensionError("move length does not match table length");
  IntVector out = cells;
  add_move(out, move, sign);
  for (const auto& x : out)
    if (x < 0) throw ModelError("move drives a table entry negative");
  return out;
}

WalkCounters walk_visit(const ModelSpec& spec, const MarkovBasis& basis,
                        const Table& u0, const WalkConfig& cfg,
                        const std::function<void(const IntVector&)>& visit) {
  if (cfg.thin < 1) throw ConfigError("thin must be at least 1");
  if (cfg.steps < cfg.burn_in)
    throw ConfigError("steps must be at least burn_in");
  if (u0.cells.size() != spec.design.cols())
    throw DimensionError("table length does not match design columns");
  if (cfg.proposal == ProposalKind::basis) {
    if (basis.moves.empty())
      throw ConfigError("basis proposal needs a nonempty Markov basis");
    for (const auto& m : basis.moves)
      if (!in_kernel(spec.design, m.vector))
        throw ConfigError("basis move lies outside the model kernel");
  } else if (spec.family != Family::p1) {
    throw ConfigError("dynamic proposal is only defined for p1 models");
  }

  Rng rng(cfg.seed);
  IntVector cur = u0.cells;
  WalkCounters counters;
  const bool uniform = cfg.target == Target::uniform;

  for (std::size_t s = 1; s <= cfg.steps; ++s) {
    ++counters.proposal_count;
    if (cfg.proposal == ProposalKind::basis) {
      const std::size_t idx = rng.below(basis.moves.size());
      const int sign = rng.below(2) == 0 ? +1 : -1;
      const Move& m = basis.moves[idx];
      if (sign_applicable(cur, m, sign)) {
        const double delta = uniform ? 0.0 : log_weight_delta(cur, m, sign);
        if (std::log(rng.uniform01()) < delta) {
          add_move(cur, m, sign);
          ++counters.acceptance_count;
        }
      }
    } else {
      auto m = dynamic_p1_propose_cells(cur, spec, rng);
      if (m) {
        const double delta = uniform ? 0.0 : log_weight_delta(cur, *m, +1);
        if (std::log(rng.uniform01()) < delta) {
          add_move(cur, *m, +1);
          ++counters.acceptance_count;
        }
      }
    }
    if (s > cfg.burn_in && (s - cfg.burn_in) % cfg.thin == 0) {
      ++counters.recorded;
      visit(cur);
    }
  }
  return counters;
}

WalkSample walk(const ModelSpec& spec, const MarkovBasis& basis,
                const Table& u0, const WalkConfig& cfg) {
  WalkSample sample;
  auto counters = walk_visit(spec, basis, u0, cfg,
                             [&](const IntVector& v) { sample.states.push_back(v); });
  sample.acceptance_count = counters.acceptance_count;
  sample.proposal_count = counters.proposal_count;
  return sample;
}

}  // namespace fiberwalk
