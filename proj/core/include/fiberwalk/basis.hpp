#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fiberwalk/intlin.hpp"
#include "fiberwalk/model.hpp"

namespace fiberwalk {

// A fiber move b = b+ - b- with disjoint nonnegative parts, b != 0.
struct Move {
  IntVector vector;
  IntVector positive_part;
  IntVector negative_part;

  explicit Move(IntVector v);
};

struct MarkovBasis {
  std::vector<Move> moves;
  IntMatrix design;
};

struct CompletionCaps {
  std::size_t max_binomials = 100000;  // binomials kept across a completion
  std::size_t max_degree = 40;         // total degree of any kept binomial
};

// Markov basis of ker_Z(A) via lattice kernel -> binomial completion with
// variable-by-variable saturation. Non-graded kernels (some kernel vector
// with nonzero coordinate sum) are handled by a homogenizing variable that
// is dropped from the result. Moves come back sign-normalized (first
// nonzero entry positive), deduplicated, lexicographically sorted.
MarkovBasis toric_markov_basis(const IntMatrix& a, CompletionCaps caps = {});

// Closed-form basis for independence(d1,d2): one move per pair of rows
// i<k and columns j<l, +1 at (i,j),(k,l), -1 at (i,l),(k,j).
MarkovBasis independence_basis(std::size_t d1, std::size_t d2);

// Buchberger completion of pure-difference binomials under graded reverse
// lexicographic order (variable 0 most significant). Returns the reduced
// completed set: every S-vector of output pairs reduces to zero. No
// saturation is performed here.
std::vector<Move> binomial_completion(const std::vector<Move>& generators,
                                      const IntMatrix& a,
                                      CompletionCaps caps = {});

// True iff the basis connects the (fully enumerated) fiber of u: vertices
// are fiber points, edges join v and v+b. Throws on fibers larger than cap.
bool verify_connects(const IntMatrix& a, const MarkovBasis& basis,
                     const Table& u, std::size_t cap);

struct DistanceViolation {
  IntVector u, v;
};

struct DistanceReport {
  std::size_t pairs_checked = 0;
  std::vector<DistanceViolation> violations;
};

// Samples random tables (entries 0..4), enumerates their small fibers, and
// checks that for every sampled fiber pair some signed applicable move
// strictly reduces the 1-norm distance. Violating pairs are returned as
// counterexample certificates.
DistanceReport distance_reducing_check(const IntMatrix& a,
                                       const MarkovBasis& basis,
                                       std::size_t trials, std::uint64_t seed);

}  // namespace fiberwalk
