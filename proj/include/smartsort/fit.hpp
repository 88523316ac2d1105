#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace smartsort {

class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Candidate growth terms, ordered slowest to fastest.
enum class GrowthModel { linear, n_log_n, n_log2_n, quadratic };

inline constexpr std::array kGrowthModels = {GrowthModel::linear, GrowthModel::n_log_n,
                                             GrowthModel::n_log2_n, GrowthModel::quadratic};

inline std::string_view model_name(GrowthModel m) {
  switch (m) {
    case GrowthModel::linear: return "n";
    case GrowthModel::n_log_n: return "n*log2(n)";
    case GrowthModel::n_log2_n: return "n*log2(n)^2";
    case GrowthModel::quadratic: return "n^2";
  }
  return "?";
}

inline double growth_term(GrowthModel m, double n) {
  switch (m) {
    case GrowthModel::linear: return n;
    case GrowthModel::n_log_n: return n * std::log2(n);
    case GrowthModel::n_log2_n: {
      const double l = std::log2(n);
      return n * l * l;
    }
    case GrowthModel::quadratic: return n * n;
  }
  return 0.0;
}

/// Least-squares fit of y = a + b * g(n) for one growth term g.
struct ModelFit {
  GrowthModel model = GrowthModel::linear;
  double a = 0.0;
  double b = 0.0;
  double se_b = 0.0;  // standard error of b
  double rss = 0.0;
  double aicc = 0.0;
  double r_squared = 0.0;

  double predict(double n) const { return a + b * growth_term(model, n); }
};

struct FitReport {
  std::vector<ModelFit> candidates;  // in kGrowthModels order
  GrowthModel selected = GrowthModel::linear;

  const ModelFit& fit_for(GrowthModel m) const {
    for (const auto& c : candidates) {
      if (c.model == m) return c;
    }
    throw std::out_of_range("FitReport: model not fitted");
  }
  const ModelFit& best() const { return fit_for(selected); }
};

namespace detail {

inline ModelFit fit_model(GrowthModel model, std::span<const double> xs,
                          std::span<const double> ys) {
  const auto count = static_cast<double>(xs.size());
  std::vector<double> g(xs.size());
  double g_mean = 0.0, y_mean = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    g[i] = growth_term(model, xs[i]);
    g_mean += g[i];
    y_mean += ys[i];
  }
  g_mean /= count;
  y_mean /= count;

  // Centred sums keep the normal equations well conditioned for n^2 terms.
  double sgg = 0.0, sgy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dg = g[i] - g_mean;
    const double dy = ys[i] - y_mean;
    sgg += dg * dg;
    sgy += dg * dy;
    syy += dy * dy;
  }

  ModelFit fit;
  fit.model = model;
  fit.b = sgy / sgg;
  fit.a = y_mean - fit.b * g_mean;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.a + fit.b * g[i]);
    fit.rss += r * r;
  }
  fit.se_b = std::sqrt(fit.rss / (count - 2.0) / sgg);
  fit.r_squared = syy > 0.0 ? 1.0 - fit.rss / syy : 1.0;
  return fit;
}

}  // namespace detail

/// Fits every candidate model a + b * g(n) by ordinary least squares and
/// selects the one with the lowest small-sample corrected AIC. Criterion
/// values within a relative 1e-9 of each other count as tied; ties go to
/// the slower-growing model.
///
/// Exact fits would send log(RSS) to -inf, so RSS is floored at
/// count * (1e-12 * max|y|)^2 before taking the log.
inline FitReport fit_empirical_o(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit_empirical_o: size mismatch");
  if (xs.size() < 4) {
    throw InsufficientDataError("fit_empirical_o: need at least 4 points, got " +
                                std::to_string(xs.size()));
  }
  double y_scale = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
      throw std::invalid_argument("fit_empirical_o: non-finite value at point " + std::to_string(i));
    }
    if (!(xs[i] > 0.0)) throw std::invalid_argument("fit_empirical_o: sizes must be positive");
    if (i > 0 && !(xs[i] > xs[i - 1])) {
      throw std::invalid_argument("fit_empirical_o: sizes must be strictly increasing");
    }
    if (ys[i] < 0.0) throw std::invalid_argument("fit_empirical_o: responses must be >= 0");
    y_scale = std::max(y_scale, std::abs(ys[i]));
  }

  const auto count = static_cast<double>(xs.size());
  constexpr double k = 2.0;  // a and b
  const double rss_floor = count * std::pow(1e-12 * std::max(y_scale, 1e-300), 2.0);

  FitReport report;
  for (const auto model : kGrowthModels) {
    ModelFit fit = detail::fit_model(model, xs, ys);
    const double rss = std::max(fit.rss, rss_floor);
    fit.aicc = count * std::log(rss / count) + 2.0 * k + 2.0 * k * (k + 1.0) / (count - k - 1.0);
    report.candidates.push_back(fit);
  }

  const ModelFit* best = &report.candidates.front();
  for (const auto& c : report.candidates) {
    const double tol = 1e-9 * std::max(1.0, std::abs(best->aicc));
    if (c.aicc < best->aicc - tol) best = &c;
  }
  report.selected = best->model;
  return report;
}

}  // namespace smartsort
