#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fiberwalk/gof.hpp"

namespace fiberwalk {
namespace {

std::vector<double> to_doubles(const IntVector& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].convert_to<double>();
  return out;
}

double moment_gap(const IntMatrix& a, const std::vector<double>& e,
                  const std::vector<double>& t) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.cols(); ++c)
      s += a.at(i, c).convert_to<double>() * e[c];
    gap = std::max(gap, std::fabs(s - t[i]));
  }
  return gap;
}

double clamped_exp(double x) { return std::exp(std::clamp(x, -700.0, 700.0)); }

// Moment equation g(delta) = sum_c a_c e_c exp(a_c delta) - t for one row;
// strictly increasing in delta wherever some a_c != 0 has e_c > 0.
double row_moment(const std::vector<double>& coef,
                  const std::vector<std::size_t>& cells,
                  const std::vector<double>& e, double delta) {
  double s = 0.0;
  for (std::size_t k = 0; k < cells.size(); ++k)
    s += coef[k] * e[cells[k]] * clamped_exp(coef[k] * delta);
  return s;
}

}  // namespace

FitResult fit_mle_iterative(const ModelSpec& spec, const Table& u,
                            std::size_t max_sweeps) {
  const IntMatrix& a = spec.design;
  if (u.cells.size() != a.cols())
    throw DimensionError("table length does not match design columns");
  Int total = 0;
  for (const auto& x : u.cells) total += x;
  if (total <= 0) throw ModelError("fit needs a table with positive total");

  const std::vector<double> t = to_doubles(a.mul(u.cells));
  double tmax = 1.0;
  for (double x : t) tmax = std::max(tmax, std::fabs(x));
  const double tol = 1e-10 * tmax;

  // per-row support and coefficient cache
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<std::size_t>> support(m);
  std::vector<std::vector<double>> coef(m);
  std::vector<bool> binary(m, true);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < n; ++c) {
      if (a.at(i, c) == 0) continue;
      support[i].push_back(c);
      const double v = a.at(i, c).convert_to<double>();
      coef[i].push_back(v);
      if (v != 1.0) binary[i] = false;
    }

  FitResult fit;
  std::vector<double> e(n, 1.0);
  std::size_t sweep = 0;
  double gap = moment_gap(a, e, t);
  while (sweep < max_sweeps && gap > tol) {
    ++sweep;
    for (std::size_t i = 0; i < m; ++i) {
      if (support[i].empty()) continue;
      if (binary[i]) {
        double s = 0.0;
        for (auto c : support[i]) s += e[c];
        if (s <= 0.0) continue;  // boundary reached; gap check decides
        const double lambda = t[i] / s;
        for (auto c : support[i]) e[c] *= lambda;
        continue;
      }
      // one-dimensional moment solve by bisection with Newton refinement
      double mass = 0.0;
      for (std::size_t k = 0; k < support[i].size(); ++k)
        mass += std::fabs(coef[i][k]) * e[support[i][k]];
      if (mass <= 0.0) continue;
      auto g = [&](double d) {
        return row_moment(coef[i], support[i], e, d) - t[i];
      };
      double lo = -1.0, hi = 1.0;
      for (int it = 0; it < 200 && g(lo) > 0.0; ++it) lo *= 2.0;
      for (int it = 0; it < 200 && g(hi) < 0.0; ++it) hi *= 2.0;
      if (g(lo) > 0.0 || g(hi) < 0.0) continue;  // unreachable target; boundary
      double mid = 0.0;
      for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        const double val = g(mid);
        if (std::fabs(val) <= 1e-14 * std::max(1.0, std::fabs(t[i]))) break;
        (val < 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-15 * std::max(1.0, std::fabs(mid))) break;
      }
      for (std::size_t k = 0; k < support[i].size(); ++k)
        e[support[i][k]] *= clamped_exp(coef[i][k] * mid);
    }
    bool finite = true;
    for (double x : e)
      if (!std::isfinite(x)) finite = false;
    if (!finite) {
      fit.fitted = std::move(e);
      fit.iterations = sweep;
      fit.max_moment_gap = std::numeric_limits<double>::infinity();
      return fit;
    }
    gap = moment_gap(a, e, t);
  }
  fit.fitted = std::move(e);
  fit.converged = gap <= tol;
  fit.iterations = sweep;
  fit.max_moment_gap = gap;
  return fit;
}

FitResult fit_mle(const ModelSpec& spec, const Table& u) {
  if (spec.family != Family::independence) return fit_mle_iterative(spec, u);

  const std::size_t d1 = spec.d1, d2 = spec.d2;
  if (u.cells.size() != d1 * d2)
    throw DimensionError("table length does not match design columns");
  IntVector rows(d1, 0), cols(d2, 0);
  Int total = 0;
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j) {
      rows[i] += u.cells[i * d2 + j];
      cols[j] += u.cells[i * d2 + j];
      total += u.cells[i * d2 + j];
    }
  if (total <= 0) throw ModelError("fit needs a table with positive total");

  FitResult fit;
  fit.fitted.resize(d1 * d2);
  const double nn = total.convert_to<double>();
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      fit.fitted[i * d2 + j] =
          rows[i].convert_to<double>() * cols[j].convert_to<double>() / nn;

  const std::vector<double> t = to_doubles(spec.design.mul(u.cells));
  fit.max_moment_gap = moment_gap(spec.design, fit.fitted, t);
  fit.converged = true;

  FitResult iter = fit_mle_iterative(spec, u);
  fit.iterations = iter.iterations;
  if (!iter.converged)
    throw NumericError("iterative fit failed to confirm the closed form");
  for (std::size_t c = 0; c < fit.fitted.size(); ++c)
    if (std::fabs(fit.fitted[c] - iter.fitted[c]) > 1e-8)
      throw NumericError(
          "iterative fit disagrees with the closed-form independence fit");
  return fit;
}

}  // namespace fiberwalk
