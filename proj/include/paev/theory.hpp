#pragma once

// Closed-form tail quantities of the linear PA and superstar models.

#include <cstddef>
#include <utility>

#include "paev/types.hpp"

namespace paev {

struct TailIndices {
  double iota_in = 0.0;
  double iota_out = 0.0;
};

/// iota_in = (1 + delta_in (alpha+gamma)) / (alpha+beta),
/// iota_out = (1 + delta_out (alpha+gamma)) / (beta+gamma).
TailIndices linear_pa_indices(const PaParams& params);

/// Indices of the non-superstar in- and out-degrees.
TailIndices superstar_indices(const SuperstarParams& params);

/// Inverts linear_pa_indices for the deltas given alpha and beta.  Throws
/// DataError when either delta would be nonpositive.
std::pair<double, double> delta_from_indices(double iota_in, double iota_out,
                                             double alpha, double beta);

/// Limit of N^in_i(n)/n over non-superstar nodes, i = 0..imax, from the
/// Gamma-ratio closed form.
LimitPmf superstar_indegree_pmf(const SuperstarParams& params, std::size_t imax);

/// Same quantity by forward iteration of the defining recursion.
LimitPmf superstar_indegree_pmf_recursive(const SuperstarParams& params,
                                          std::size_t imax);

}  // namespace paev
