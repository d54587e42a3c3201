#include "paev/tail.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "paev/errors.hpp"

namespace paev {

double HillEstimate::index() const noexcept {
  return infinite ? std::numeric_limits<double>::infinity() : 1.0 / inverse_index;
}

std::vector<double> positive_order_statistics(std::span<const double> values) {
  std::vector<double> v;
  v.reserve(values.size());
  for (double x : values) {
    if (x > 0.0) v.push_back(x);
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

HillEstimate hill_estimate(std::span<const double> values, std::size_t k) {
  if (k < 1) throw InvalidArgument("Hill estimate needs k >= 1");
  std::vector<double> v;
  v.reserve(values.size());
  for (double x : values) {
    if (x > 0.0) v.push_back(x);
  }
  if (v.size() < k + 1) throw DataError("threshold not positive");
  // Only the top k+1 need ordering.
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end(),
                   std::greater<>());
  const double threshold = v[k];
  double sum = 0.0;
  bool all_tied = true;
  for (std::size_t j = 0; j < k; ++j) {
    sum += std::log(v[j] / threshold);
    if (v[j] != threshold) all_tied = false;
  }
  HillEstimate h;
  h.infinite = all_tied;
  h.inverse_index = all_tied ? 0.0 : sum / static_cast<double>(k);
  return h;
}

namespace {

// Runs of equal values in a decreasing sequence; `end` is the cumulative
// count through the run.
struct Run {
  double value;
  std::size_t begin;
  std::size_t end;
};

std::vector<Run> make_runs(std::span<const double> sorted_desc, std::size_t limit) {
  std::vector<Run> runs;
  std::size_t i = 0;
  while (i < limit) {
    std::size_t j = i + 1;
    while (j < limit && sorted_desc[j] == sorted_desc[i]) ++j;
    runs.push_back({sorted_desc[i], i, j});
    i = j;
  }
  return runs;
}

// Supremum over y >= 1 of |empirical tail - y^-index|.  Between jump points
// the empirical tail is flat and the Pareto tail decreasing, so the supremum
// is attained at a jump point using one of the two one-sided limits.
double ks_over_runs(const std::vector<Run>& runs, std::size_t k, double threshold,
                    double index) {
  const double kd = static_cast<double>(k);
  std::size_t above = 0;  // # of top-k values strictly above the threshold
  double d = 0.0;
  for (const Run& r : runs) {
    if (!(r.value > threshold)) break;
    above = r.end;
    const double fit = std::exp(-index * std::log(r.value / threshold));
    const double left = static_cast<double>(r.end) / kd;   // #{>= y} / k
    const double right = static_cast<double>(r.begin) / kd;  // #{> y} / k
    d = std::max({d, std::abs(left - fit), std::abs(right - fit)});
  }
  // y = 1: Pareto tail is 1, empirical tail counts strict exceedances.
  d = std::max(d, 1.0 - static_cast<double>(above) / kd);
  return d;
}

}  // namespace

double ks_distance(std::span<const double> sorted_desc, std::size_t k, double index) {
  if (k < 1 || sorted_desc.size() < k + 1) {
    throw InvalidArgument("ks_distance needs k+1 ordered values");
  }
  const auto runs = make_runs(sorted_desc, k);
  return ks_over_runs(runs, k, sorted_desc[k], index);
}

TailFit minimum_distance_fit(std::span<const double> values,
                             const MinimumDistanceOptions& options) {
  if (options.k_min < 1) throw InvalidArgument("k_min must be at least 1");
  if (options.stride < 1) throw InvalidArgument("stride must be at least 1");
  const std::vector<double> v = positive_order_statistics(values);
  const std::size_t positive = v.size();
  if (positive < options.k_min + 1) {
    throw DataError("insufficient tail data: " + std::to_string(positive) +
                    " positive values, need " + std::to_string(options.k_min + 1));
  }
  std::size_t k_max = positive - 1;
  if (options.cap_fraction < 1.0) {
    const auto cap = static_cast<std::size_t>(options.cap_fraction *
                                              static_cast<double>(positive));
    k_max = std::min(k_max, std::max(options.k_min, cap));
  }

  std::vector<double> log_prefix(k_max + 1, 0.0);
  for (std::size_t j = 0; j < k_max; ++j) log_prefix[j + 1] = log_prefix[j] + std::log(v[j]);
  const auto runs = make_runs(v, k_max);

  TailFit fit;
  fit.positive_count = positive;
  fit.ks_at_kstar = std::numeric_limits<double>::infinity();
  for (std::size_t k = options.k_min; k <= k_max; k += options.stride) {
    const double threshold = v[k];
    double index;
    double d;
    if (v[0] == threshold) {
      index = std::numeric_limits<double>::infinity();
      d = 1.0;
    } else {
      const double inverse = log_prefix[k] / static_cast<double>(k) - std::log(threshold);
      index = 1.0 / inverse;
      d = ks_over_runs(runs, k, threshold, index);
    }
    if (options.keep_curve) fit.ks_curve.push_back({k, index, d});
    if (d < fit.ks_at_kstar) {
      fit.ks_at_kstar = d;
      fit.k_star = k;
      fit.index_estimate = index;
    }
  }
  if (!std::isfinite(fit.index_estimate)) {
    throw DataError("insufficient tail data: every scanned threshold is tied");
  }
  return fit;
}

}  // namespace paev
