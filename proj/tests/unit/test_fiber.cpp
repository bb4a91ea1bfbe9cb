#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include <fiberwalk/basis.hpp>
#include <fiberwalk/fiber.hpp>
#include <fiberwalk/model.hpp>
#include <fiberwalk/rng.hpp>

using namespace fiberwalk;

namespace {

IntVector iv(std::initializer_list<long long> xs) {
  IntVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("fiber of a diagonal 2x2 table") {
  auto spec = independence_design(2, 2);
  Table u(spec.shape(), iv({1, 0, 0, 1}));
  auto fiber = enumerate_fiber(spec.design, u, 1000);
  REQUIRE(fiber.size() == 2);
  CHECK(fiber[0].cells == iv({0, 1, 1, 0}));
  CHECK(fiber[1].cells == iv({1, 0, 0, 1}));
}

TEST_CASE("fiber of margins (2,2),(2,2)") {
  auto spec = independence_design(2, 2);
  Table u(spec.shape(), iv({2, 0, 0, 2}));
  auto fiber = enumerate_fiber(spec.design, u, 1000);
  CHECK(fiber.size() == 3);
  for (const auto& v : fiber)
    CHECK(spec.design.mul(v.cells) == spec.design.mul(u.cells));
}

TEST_CASE("fiber output is lex-sorted and duplicate-free") {
  auto spec = independence_design(3, 3);
  Table u(spec.shape(), IntVector(9, 1));
  auto fiber = enumerate_fiber(spec.design, u, 10000);
  CHECK(fiber.size() == 55);
  for (std::size_t i = 1; i < fiber.size(); ++i)
    CHECK(fiber[i - 1].cells < fiber[i].cells);
}

TEST_CASE("fiber cap triggers a loud failure") {
  auto spec = independence_design(2, 2);
  Table u(spec.shape(), iv({1, 0, 0, 1}));
  CHECK_THROWS_AS((void)enumerate_fiber(spec.design, u, 1), FiberCapError);
  try {
    (void)enumerate_fiber(spec.design, u, 1);
  } catch (const FiberCapError& e) {
    CHECK(e.cap() == 1);
  }
}

TEST_CASE("unbounded fibers are detected") {
  auto a = IntMatrix::from_rows({iv({1, -1})});
  CHECK_THROWS_AS((void)enumerate_fiber_vectors(a, iv({1, 1}), 1000),
                  FiberCapError);
}

TEST_CASE("fiber of a 3-node tournament under the dyadic model") {
  auto spec = p1_design(3, Reciprocity::constant);
  Graph g(3, {{0, 1}, {1, 2}, {2, 0}});
  auto fiber = enumerate_fiber(spec.design, graph_to_table(g), 1000);
  // exactly the two cyclic orientations share these degrees with no mutuals
  CHECK(fiber.size() == 2);
}

TEST_CASE("applying moves enforces nonnegativity") {
  // worked 3x3 example: the rectangle swap on corners, applied both ways
  Move m(iv({1, 0, -1, 0, 0, 0, -1, 0, 1}));
  IntVector u = iv({2, 3, 4, 0, 3, 4, 0, 0, 1});
  CHECK_THROWS_AS((void)apply_move(u, m, +1), ModelError);
  auto v = apply_move(u, m, -1);
  CHECK(v == iv({1, 3, 5, 0, 3, 4, 1, 0, 0}));
  // and back
  CHECK(apply_move(v, m, +1) == u);
}

TEST_CASE("walk visits both points of a two-point fiber about equally") {
  auto spec = independence_design(2, 2);
  auto basis = toric_markov_basis(spec.design);
  Table u(spec.shape(), iv({1, 0, 0, 1}));
  WalkConfig cfg;
  cfg.steps = 20000;
  cfg.burn_in = 1000;
  cfg.seed = 5;
  cfg.target = Target::uniform;
  auto sample = walk(spec, basis, u, cfg);
  REQUIRE(sample.states.size() == 19000);
  std::map<IntVector, std::size_t> freq;
  for (const auto& s : sample.states) ++freq[s];
  CHECK(freq.size() == 2);
  for (const auto& [state, count] : freq) {
    double f = double(count) / double(sample.states.size());
    CHECK(f > 0.46);
    CHECK(f < 0.54);
  }
}

TEST_CASE("walk preserves statistics and nonnegativity") {
  auto spec = independence_design(3, 3);
  auto basis = independence_basis(3, 3);
  Table u(spec.shape(), iv({2, 3, 4, 0, 3, 4, 0, 0, 1}));
  auto target = spec.design.mul(u.cells);
  WalkConfig cfg;
  cfg.steps = 3000;
  cfg.burn_in = 0;
  cfg.seed = 9;
  auto sample = walk(spec, basis, u, cfg);
  for (const auto& s : sample.states) {
    CHECK(spec.design.mul(s) == target);
    for (const auto& x : s) CHECK(x >= 0);
  }
  CHECK(sample.proposal_count == 3000);
  CHECK(sample.acceptance_count <= sample.proposal_count);
  CHECK(sample.acceptance_count > 0);
}

TEST_CASE("walks are reproducible by seed") {
  auto spec = independence_design(3, 3);
  auto basis = independence_basis(3, 3);
  Table u(spec.shape(), IntVector(9, 1));
  WalkConfig cfg;
  cfg.steps = 2000;
  cfg.burn_in = 100;
  cfg.seed = 1234;
  auto a = walk(spec, basis, u, cfg);
  auto b = walk(spec, basis, u, cfg);
  CHECK(a.states == b.states);
  CHECK(a.acceptance_count == b.acceptance_count);
  cfg.seed = 1235;
  auto c = walk(spec, basis, u, cfg);
  CHECK(a.states != c.states);
}

TEST_CASE("burn-in and thinning control what is recorded") {
  auto spec = independence_design(2, 2);
  auto basis = toric_markov_basis(spec.design);
  Table u(spec.shape(), iv({1, 1, 1, 1}));
  WalkConfig cfg;
  cfg.steps = 100;
  cfg.burn_in = 0;
  cfg.thin = 10;
  cfg.seed = 2;
  auto sample = walk(spec, basis, u, cfg);
  CHECK(sample.states.size() == 10);
  cfg.burn_in = 100;  // degenerate but legal: records nothing
  cfg.thin = 1;
  auto empty = walk(spec, basis, u, cfg);
  CHECK(empty.states.empty());
  CHECK(empty.proposal_count == 100);
}

TEST_CASE("walk configuration is validated") {
  auto spec = independence_design(2, 2);
  auto basis = toric_markov_basis(spec.design);
  Table u(spec.shape(), iv({1, 1, 1, 1}));
  WalkConfig cfg;
  cfg.steps = 10;
  cfg.burn_in = 20;
  CHECK_THROWS_AS((void)walk(spec, basis, u, cfg), ConfigError);
  cfg.burn_in = 0;
  cfg.thin = 0;
  CHECK_THROWS_AS((void)walk(spec, basis, u, cfg), ConfigError);
  cfg.thin = 1;
  MarkovBasis empty;
  empty.design = spec.design;
  CHECK_THROWS_AS((void)walk(spec, empty, u, cfg), ConfigError);
  MarkovBasis bad;
  bad.design = spec.design;
  bad.moves.push_back(Move(iv({1, 0, 0, 0})));
  CHECK_THROWS_AS((void)walk(spec, bad, u, cfg), ConfigError);
}

TEST_CASE("streaming walk matches the stored walk") {
  auto spec = independence_design(2, 2);
  auto basis = toric_markov_basis(spec.design);
  Table u(spec.shape(), iv({2, 1, 1, 2}));
  WalkConfig cfg;
  cfg.steps = 500;
  cfg.burn_in = 50;
  cfg.seed = 77;
  auto stored = walk(spec, basis, u, cfg);
  std::vector<IntVector> seen;
  auto counters = walk_visit(spec, basis, u, cfg,
                             [&](const IntVector& s) { seen.push_back(s); });
  CHECK(seen == stored.states);
  CHECK(counters.recorded == stored.states.size());
  CHECK(counters.acceptance_count == stored.acceptance_count);
}

TEST_CASE("dynamic dyadic proposals stay on the fiber") {
  auto spec = p1_design(4, Reciprocity::constant);
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto u = graph_to_table(g);
  auto target = spec.design.mul(u.cells);
  Rng rng(31);
  std::size_t produced = 0;
  for (int t = 0; t < 200; ++t) {
    auto mv = dynamic_p1_propose(u, spec, rng);
    if (!mv) continue;
    ++produced;
    CHECK(in_kernel(spec.design, mv->vector));
    auto v = apply_move(u.cells, *mv, +1);
    CHECK(spec.design.mul(v) == target);
  }
  CHECK(produced > 0);
}

TEST_CASE("dynamic proposals on a rigid table always decline") {
  // empty graph: every dyad must stay empty to keep all degrees zero
  auto spec = p1_design(4, Reciprocity::constant);
  auto u = graph_to_table(Graph(4, {}));
  Rng rng(8);
  for (int t = 0; t < 100; ++t) CHECK_FALSE(dynamic_p1_propose(u, spec, rng));
}

TEST_CASE("dynamic walk explores the 3-cycle fiber") {
  auto spec = p1_design(3, Reciprocity::constant);
  Graph g(3, {{0, 1}, {1, 2}, {2, 0}});
  auto u = graph_to_table(g);
  MarkovBasis nobasis;
  nobasis.design = spec.design;
  WalkConfig cfg;
  cfg.steps = 2000;
  cfg.burn_in = 0;
  cfg.seed = 3;
  cfg.target = Target::uniform;
  cfg.proposal = ProposalKind::dynamic_p1;
  auto sample = walk(spec, nobasis, u, cfg);
  std::set<IntVector> distinct(sample.states.begin(), sample.states.end());
  CHECK(distinct.size() == 2);  // both cyclic orientations
  auto target = spec.design.mul(u.cells);
  for (const auto& s : sample.states) CHECK(spec.design.mul(s) == target);
}

TEST_CASE("dynamic proposals require a dyadic model") {
  auto spec = independence_design(2, 2);
  auto basis = toric_markov_basis(spec.design);
  Table u(spec.shape(), iv({1, 1, 1, 1}));
  WalkConfig cfg;
  cfg.steps = 10;
  cfg.burn_in = 0;
  cfg.seed = 1;
  cfg.proposal = ProposalKind::dynamic_p1;
  CHECK_THROWS_AS((void)walk(spec, basis, u, cfg), ConfigError);
}
