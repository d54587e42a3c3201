#pragma once

// One-dimensional root finding and maximisation used by the estimators.

#include <cstddef>
#include <functional>
#include <string>

namespace paev {

struct RootOptions {
  double lo = 1e-6;
  double hi = 10.0;
  double hi_cap = 1e8;
  double abs_tol = 1e-10;
  std::size_t monotone_checks = 100;  // 0 disables the check
  std::string label = "score equation";
};

struct RootResult {
  double root = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::size_t evaluations = 0;
};

/// Bisection after doubling `hi` until the residual changes sign.  Before
/// bisecting, the residual is sampled at `monotone_checks` log-spaced points
/// of the bracket; it must change sign exactly once there and be strictly
/// monotone up to that sign change.  Throws NumericalError naming `label`
/// when no sign change exists up to hi_cap or either check fails.
RootResult solve_expanding_bisection(const std::function<double(double)>& residual,
                                     const RootOptions& options = {});

struct MaximizeOptions {
  std::size_t grid_points = 50;
  double tol = 1e-5;
};

struct MaximizeResult {
  double argmax = 0.0;
  double value = 0.0;
  double grid_min = 0.0;  // smallest objective value seen on the coarse grid
  std::size_t evaluations = 0;
};

/// Coarse grid on [lo, hi] followed by golden-section search inside the cell
/// pair around the best grid point.
MaximizeResult maximize_grid_golden(const std::function<double(double)>& objective,
                                    double lo, double hi,
                                    const MaximizeOptions& options = {});

}  // namespace paev
