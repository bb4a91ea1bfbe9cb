#include <algorithm>
#include <cmath>

#include "fiberwalk/gof.hpp"

namespace fiberwalk {

namespace {
constexpr double kTieSlack = 1e-12;
constexpr double kZeroExpected = 1e-12;
}  // namespace

double chi_square_cells(const IntVector& cells,
                        const std::vector<double>& fitted) {
  if (cells.size() != fitted.size())
    throw DimensionError("table length does not match fitted length");
  double s = 0.0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const double e = fitted[c];
    if (e <= kZeroExpected) {
      if (cells[c] > 0)
        throw NumericError(
            "expected count is zero where the observed count is positive");
      continue;
    }
    const double o = cells[c].convert_to<double>();
    s += (o - e) * (o - e) / e;
  }
  return s;
}

double chi_square(const Table& u, const FitResult& fit) {
  if (!fit.converged)
    throw NumericError("chi-square needs a converged fit");
  return chi_square_cells(u.cells, fit.fitted);
}

std::vector<HistogramBin> histogram(const std::vector<double>& values,
                                    std::size_t bin_count) {
  if (bin_count < 1) throw ConfigError("bin count must be at least 1");
  if (values.empty()) return {};
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  const double lo = *mn, hi = *mx;
  const double width = (hi - lo) / static_cast<double>(bin_count);
  std::vector<HistogramBin> bins(bin_count);
  for (std::size_t k = 0; k < bin_count; ++k) {
    bins[k].lo = lo + width * static_cast<double>(k);
    bins[k].hi = k + 1 == bin_count ? hi : lo + width * static_cast<double>(k + 1);
    bins[k].count = 0;
  }
  for (double v : values) {
    std::size_t idx = 0;
    if (width > 0.0)
      idx = std::min(bin_count - 1,
                     static_cast<std::size_t>((v - lo) / width));
    ++bins[idx].count;
  }
  return bins;
}

TestResult exact_pvalue_mc(const ModelSpec& spec, const Table& u,
                           const MarkovBasis& basis, const WalkConfig& cfg,
                           std::size_t chains, std::size_t bin_count) {
  if (chains < 1) throw ConfigError("need at least one chain");
  const FitResult fit = fit_mle(spec, u);
  if (!fit.converged) throw NumericError("fit did not converge");
  const double observed = chi_square(u, fit);

  std::vector<double> stats;
  std::size_t exceed = 0;
  for (std::size_t chain = 0; chain < chains; ++chain) {
    WalkConfig c = cfg;
    c.target = Target::hypergeometric;
    c.seed = chains == 1 ? cfg.seed : Rng::child_seed(cfg.seed, chain);
    walk_visit(spec, basis, u, c, [&](const IntVector& v) {
      const double s = chi_square_cells(v, fit.fitted);
      stats.push_back(s);
      if (s >= observed - kTieSlack) ++exceed;
    });
  }
  if (stats.empty())
    throw ConfigError("walk recorded no samples (steps == burn_in?)");

  TestResult res;
  res.observed_stat = observed;
  res.sample_size = stats.size();
  res.exceed_count = exceed;
  res.p_value =
      static_cast<double>(exceed) / static_cast<double>(stats.size());
  res.mc_std_error = std::sqrt(res.p_value * (1.0 - res.p_value) /
                               static_cast<double>(stats.size()));
  res.histogram = histogram(stats, bin_count);
  return res;
}

TestResult exact_pvalue_enumerated(const ModelSpec& spec, const Table& u,
                                   std::size_t cap, std::size_t bin_count) {
  const FitResult fit = fit_mle(spec, u);
  if (!fit.converged) throw NumericError("fit did not converge");
  const double observed = chi_square(u, fit);

  const auto fiber = enumerate_fiber_vectors(spec.design, u.cells, cap);
  std::vector<double> stats(fiber.size()), logw(fiber.size());
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    stats[i] = chi_square_cells(fiber[i], fit.fitted);
    logw[i] = conditional_log_weight_cells(fiber[i]);
  }
  const double wmax = *std::max_element(logw.begin(), logw.end());
  double z = 0.0;
  for (double w : logw) z += std::exp(w - wmax);
  double p = 0.0;
  std::size_t exceed = 0;
  for (std::size_t i = 0; i < fiber.size(); ++i)
    if (stats[i] >= observed - kTieSlack) {
      ++exceed;
      p += std::exp(logw[i] - wmax);
    }
  p /= z;

  TestResult res;
  res.observed_stat = observed;
  res.sample_size = fiber.size();
  res.exceed_count = exceed;
  res.p_value = std::clamp(p, 0.0, 1.0);
  res.mc_std_error = 0.0;
  res.histogram = histogram(stats, bin_count);
  return res;
}

}  // namespace fiberwalk
