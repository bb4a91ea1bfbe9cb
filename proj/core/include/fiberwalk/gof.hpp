#pragma once

#include <cstddef>
#include <vector>

#include "fiberwalk/basis.hpp"
#include "fiberwalk/fiber.hpp"
#include "fiberwalk/model.hpp"

namespace fiberwalk {

struct FitResult {
  std::vector<double> fitted;  // expected cell counts
  bool converged = false;
  std::size_t iterations = 0;
  double max_moment_gap = 0.0;  // ||A*fitted - A*u||_inf
};

// Maximum-likelihood expected counts, characterized by moment matching
// A*fitted = A*u. Independence models use the closed form r_i*c_j/N and
// cross-check it against the iterative fitter; everything else runs
// iterative proportional scaling. Non-convergence comes back as
// converged=false, never as a silent answer.
FitResult fit_mle(const ModelSpec& spec, const Table& u);

// The iterative-proportional-scaling path regardless of family.
FitResult fit_mle_iterative(const ModelSpec& spec, const Table& u,
                            std::size_t max_sweeps = 10000);

// Pearson chi-square against a converged fit. Cells with zero expected
// count must be observed zero and contribute nothing.
double chi_square(const Table& u, const FitResult& fit);
double chi_square_cells(const IntVector& cells,
                        const std::vector<double>& fitted);

struct HistogramBin {
  double lo, hi;
  std::size_t count;
};

// Equal-width bins spanning [min, max], right-open except the last.
std::vector<HistogramBin> histogram(const std::vector<double>& values,
                                    std::size_t bin_count);

struct TestResult {
  double observed_stat = 0.0;
  std::size_t sample_size = 0;
  std::size_t exceed_count = 0;
  double p_value = 0.0;
  double mc_std_error = 0.0;
  std::vector<HistogramBin> histogram;
};

// Monte Carlo exact conditional p-value: walks the fiber with the
// hypergeometric target (forced regardless of cfg.target), scores every
// recorded state with the chi-square statistic against the observed
// table's fit, and counts statistics >= observed (1e-12 slack, ties
// count as extreme). chains > 1 pools chains seeded by the documented
// child-stream rule in index order; chains == 1 uses cfg.seed directly.
TestResult exact_pvalue_mc(const ModelSpec& spec, const Table& u,
                           const MarkovBasis& basis, const WalkConfig& cfg,
                           std::size_t chains = 1, std::size_t bin_count = 50);

// Brute-force oracle: enumerates the fiber and sums normalized
// hypergeometric weights of points at least as extreme as observed.
// sample_size is the fiber size; exceed_count the number of such points;
// mc_std_error 0.
TestResult exact_pvalue_enumerated(const ModelSpec& spec, const Table& u,
                                   std::size_t cap,
                                   std::size_t bin_count = 50);

}  // namespace fiberwalk
