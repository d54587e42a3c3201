#pragma once

// Marginal tail-index estimation: the Hill estimator and the minimum-distance
// (Kolmogorov-Smirnov) threshold selector.

#include <cstddef>
#include <span>
#include <vector>

#include "paev/types.hpp"

namespace paev {

/// Hill estimate of the tail index.  When the top k values all equal the
/// (k+1)-th the inverse index is zero and the index is reported as infinite.
struct HillEstimate {
  double inverse_index = 0.0;  // (1/k) sum_j log(v_(j) / v_(k+1))
  bool infinite = false;
  double index() const noexcept;
};

/// Decreasing order statistics of the strictly positive values.
std::vector<double> positive_order_statistics(std::span<const double> values);

/// Requires k >= 1 and at least k+1 strictly positive values; zeros are
/// dropped before ordering.  Throws DataError("threshold not positive") when
/// there are not enough positive values.
HillEstimate hill_estimate(std::span<const double> values, std::size_t k);

struct MinimumDistanceOptions {
  std::size_t k_min = 10;
  // Largest scanned k is min(positive - 1, max(k_min, cap_fraction * positive)).
  // A cap_fraction >= 1 scans everything.
  double cap_fraction = 0.25;
  std::size_t stride = 1;
  bool keep_curve = false;
};

/// Scans k, computing D_k exactly at the jump points of the empirical tail,
/// and returns the Hill estimate at the smallest minimiser k*.
TailFit minimum_distance_fit(std::span<const double> values,
                             const MinimumDistanceOptions& options = {});

/// D_k for values already in decreasing order (all positive); `index` is the
/// Pareto index compared against.  Exposed for tests.
double ks_distance(std::span<const double> sorted_desc, std::size_t k, double index);

}  // namespace paev
