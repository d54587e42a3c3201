#pragma once

// Joint-tail (EV) estimation: power standardisation of (in, out) degrees,
// polar coordinates, the limiting angular density and the profile
// likelihood for alpha.

#include <cstddef>
#include <string>
#include <vector>

#include "paev/errors.hpp"
#include "paev/tail.hpp"
#include "paev/types.hpp"

namespace paev {

/// Polar representation of standardised degrees (I^a, O).
struct AngularSample {
  double a_hat = 1.0;
  std::vector<double> radii;   // sqrt(I^{2a} + O^2), one per node
  std::vector<double> angles;  // atan(O / I^a) in [0, pi/2]
  double r_threshold = 0.0;    // (requested_n_tail+1)-th largest radius
  std::size_t n_tail = 0;      // #{radius > r_threshold}
  std::size_t requested_n_tail = 0;
  std::size_t zero_in_count = 0;       // nodes with I = 0, angle pi/2
  std::size_t zero_in_tail_count = 0;  // of those, radius > r_threshold

  std::vector<double> tail_angles() const;
};

/// Parameters of the limiting angular density.  `a` is iota_in/iota_out.
struct AngularDensityParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta_in = 1.0;
  double delta_out = 1.0;
  double a = 1.0;
  double iota_in = 1.0;

  void validate() const;  // throws InvalidArgument
};

/// Raised when an adaptive rule fails to reach its tolerance.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double x, const AngularDensityParams& params);
  double x() const noexcept { return x_; }
  const AngularDensityParams& params() const noexcept { return params_; }

 private:
  double x_;
  AngularDensityParams params_;
};

/// Integral over t in [0, inf) of t^c exp(-t cos(x)^{1/a} - t^a sin x),
/// to relative tolerance 1e-9.  x must lie in [0, pi/2].
double angular_inner_integral(double c, double x, double a);

/// Density in x on [0, pi/2] with its normaliser computed once and cached.
/// Endpoint values are one-sided limits and may be +inf.
class AngularDensity {
 public:
  explicit AngularDensity(const AngularDensityParams& params);

  double unnormalized(double x) const;
  double operator()(double x) const { return unnormalized(x) / normalizer(); }
  double normalizer() const;  // integral of `unnormalized` over [0, pi/2]
  const AngularDensityParams& params() const noexcept { return params_; }

 private:
  // Both trigonometric values are passed so callers near an endpoint can
  // supply them without cancellation.
  double interior(double x, double sin_x, double cos_x) const;
  double endpoint(bool at_zero) const;

  AngularDensityParams params_;
  double c1_;
  mutable double normalizer_ = -1.0;
};

double angular_density(double x, const AngularDensityParams& params);
double angular_density_unnormalized(double x, const AngularDensityParams& params);

/// Pre: iotas positive, n_tail >= 10 and at least n_tail+1 nodes.
AngularSample standardize_and_polarize(const DegreeSnapshot& snapshot, double iota_in_hat,
                                       double iota_out_hat, std::size_t n_tail);

struct AlphaProfileOptions {
  std::size_t grid_points = 50;
  double tol = 1e-5;
  double edge = 1e-4;         // alpha range is [edge, 1 - beta - edge]
  double min_delta = 0.05;   // further restricts alpha so both deltas exceed this
  double angle_clamp = 1e-8;  // observed angles are clamped into [c, pi/2 - c]
  bool exclude_axis = false;  // drop angles exactly 0 or pi/2 instead of clamping
  bool normalize = true;      // false only to exhibit the per-alpha normaliser
};

struct AlphaProfileResult {
  double alpha = 0.0;
  double gamma = 0.0;
  double delta_in = 0.0;
  double delta_out = 0.0;
  double log_likelihood = 0.0;
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  std::size_t axis_count = 0;  // angles exactly 0 or pi/2
  std::size_t used_count = 0;
  std::vector<std::string> warnings;
};

/// delta_in(alpha) = (iota_in (alpha+beta) - 1)/(1-beta),
/// delta_out(alpha) = (iota_out (1-alpha) - 1)/(1-beta).
AngularDensityParams profile_params(double alpha, double beta_hat, double iota_in_hat,
                                    double iota_out_hat);

/// Sum of log densities of the given angles at alpha.
double profile_log_likelihood(const std::vector<double>& angles, double alpha,
                              double beta_hat, double iota_in_hat, double iota_out_hat,
                              const AlphaProfileOptions& options = {});

AlphaProfileResult estimate_alpha_profile(const AngularSample& sample, double beta_hat,
                                          double iota_in_hat, double iota_out_hat,
                                          const AlphaProfileOptions& options = {});

/// Same maximisation over an explicit set of angles.
AlphaProfileResult estimate_alpha_from_angles(const std::vector<double>& angles,
                                              double beta_hat, double iota_in_hat,
                                              double iota_out_hat,
                                              const AlphaProfileOptions& options = {});

struct EvOptions {
  std::size_t n_tail = 200;
  bool ntail_auto = false;  // choose n_tail by a minimum-distance fit to the radii
  bool drop_max_indegree = false;
  MinimumDistanceOptions tail_fit;
  AlphaProfileOptions profile;
};

ThetaEstimate ev_full_pipeline(const DegreeSnapshot& snapshot, const EvOptions& options = {});

}  // namespace paev
