#include "paev/angular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "paev/roots.hpp"

namespace paev {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kInnerTol = 1e-9;
constexpr double kOuterTol = 1e-9;

std::string describe(const AngularDensityParams& p) {
  std::ostringstream os;
  os << "(alpha=" << p.alpha << ", beta=" << p.beta << ", gamma=" << p.gamma
     << ", delta_in=" << p.delta_in << ", delta_out=" << p.delta_out << ", a=" << p.a
     << ", iota_in=" << p.iota_in << ")";
  return os.str();
}

// The Boost integrate members are not const, so each thread owns its rules.
boost::math::quadrature::exp_sinh<double>& half_line_rule() {
  static thread_local boost::math::quadrature::exp_sinh<double> rule;
  return rule;
}

boost::math::quadrature::tanh_sinh<double>& interval_rule() {
  static thread_local boost::math::quadrature::tanh_sinh<double> rule;
  return rule;
}

// Integral of t^c exp(-t C - t^a S) over [0, inf), with C = cos(x)^{1/a} and
// S = sin x.  The variable is rescaled by a rough mode so the rule sees an
// integrand peaked near 1.
double inner(double c, double big_c, double s, double a, double x,
             const AngularDensityParams& params) {
  const double rate = big_c + a * s;
  const double scale = std::max(c, 1.0) / rate;
  const double log_scale = std::log(scale);
  auto f = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double t = scale * u;
    const double e = c * std::log(u) - t * big_c - std::exp(a * std::log(t)) * s;
    return std::exp(e);
  };
  double err = 0.0;
  double l1 = 0.0;
  double value = 0.0;
  try {
    value = half_line_rule().integrate(f, kInnerTol * 0.1, &err, &l1);
  } catch (const std::exception& e) {
    throw QuadratureError(std::string("inner integral failed: ") + e.what(), x, params);
  }
  if (!std::isfinite(value) || !(value > 0.0) || err > kInnerTol * value) {
    std::ostringstream os;
    os << "inner integral did not converge (c=" << c << ", estimate " << value
       << ", error " << err << ")";
    throw QuadratureError(os.str(), x, params);
  }
  return value * std::exp((c + 1.0) * log_scale);
}

// Limit of y^e as y -> 0+.
double power_at_zero(double e) {
  if (e > 0.0) return 0.0;
  if (e == 0.0) return 1.0;
  return std::numeric_limits<double>::infinity();
}

double weighted(double weight, double factor) { return weight == 0.0 ? 0.0 : weight * factor; }

}  // namespace

std::vector<double> AngularSample::tail_angles() const {
  std::vector<double> out;
  out.reserve(n_tail);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] > r_threshold) out.push_back(angles[i]);
  }
  return out;
}

void AngularDensityParams::validate() const {
  const double vals[] = {alpha, beta, gamma, delta_in, delta_out, a, iota_in};
  for (double v : vals) {
    if (!std::isfinite(v)) throw InvalidArgument("angular density parameters must be finite");
  }
  if (alpha < 0.0 || beta < 0.0 || gamma < 0.0 || alpha > 1.0 || beta >= 1.0 || gamma > 1.0) {
    throw InvalidArgument("angular density probabilities out of range " + describe(*this));
  }
  if (std::abs(alpha + beta + gamma - 1.0) > 1e-9) {
    throw InvalidArgument("angular density probabilities must sum to 1 " + describe(*this));
  }
  if (!(delta_in > 0.0) || !(delta_out > 0.0) || !(a > 0.0) || !(iota_in > 0.0)) {
    throw InvalidArgument("angular density needs positive deltas, a and iota_in " +
                          describe(*this));
  }
}

QuadratureError::QuadratureError(const std::string& what, double x,
                                 const AngularDensityParams& params)
    : NumericalError(what + " at x=" + std::to_string(x) + " " + describe(params)),
      x_(x),
      params_(params) {}

double angular_inner_integral(double c, double x, double a) {
  if (!(x >= 0.0 && x <= kHalfPi)) throw InvalidArgument("angle outside [0, pi/2]");
  if (!(a > 0.0) || !(c > -1.0)) throw InvalidArgument("inner integral needs a > 0, c > -1");
  AngularDensityParams tag;
  tag.a = a;
  if (x == 0.0) return std::tgamma(c + 1.0);
  if (x == kHalfPi) return std::tgamma((c + 1.0) / a) / a;
  return inner(c, std::pow(std::cos(x), 1.0 / a), std::sin(x), a, x, tag);
}

AngularDensity::AngularDensity(const AngularDensityParams& params) : params_(params) {
  params_.validate();
  c1_ = params_.iota_in + params_.delta_in + params_.a * params_.delta_out;
}

double AngularDensity::interior(double x, double sin_x, double cos_x) const {
  const AngularDensityParams& p = params_;
  const double log_cos = std::log(cos_x);
  const double log_sin = std::log(sin_x);
  const double big_c = std::exp(log_cos / p.a);
  double total = 0.0;
  if (p.gamma > 0.0) {
    const double pre = std::exp(((p.delta_in + 1.0) / p.a - 1.0) * log_cos +
                                (p.delta_out - 1.0) * log_sin);
    total += p.gamma / p.delta_in * pre * inner(c1_, big_c, sin_x, p.a, x, p);
  }
  if (p.alpha > 0.0) {
    const double pre = std::exp((p.delta_in / p.a - 1.0) * log_cos + p.delta_out * log_sin);
    total += p.alpha / p.delta_out * pre * inner(c1_ + p.a - 1.0, big_c, sin_x, p.a, x, p);
  }
  return total;
}

double AngularDensity::endpoint(bool at_zero) const {
  const AngularDensityParams& p = params_;
  if (at_zero) {
    // sin -> 0, cos -> 1; the alpha term carries sin^{delta_out} and vanishes.
    return weighted(p.gamma / p.delta_in,
                    power_at_zero(p.delta_out - 1.0) * std::tgamma(c1_ + 1.0));
  }
  const double j1 = std::tgamma((c1_ + 1.0) / p.a) / p.a;
  const double j2 = std::tgamma((c1_ + p.a) / p.a) / p.a;
  return weighted(p.gamma / p.delta_in, power_at_zero((p.delta_in + 1.0) / p.a - 1.0) * j1) +
         weighted(p.alpha / p.delta_out, power_at_zero(p.delta_in / p.a - 1.0) * j2);
}

double AngularDensity::unnormalized(double x) const {
  if (!(x >= 0.0 && x <= kHalfPi)) {
    throw InvalidArgument("angle outside [0, pi/2]: " + std::to_string(x));
  }
  if (x == 0.0) return endpoint(true);
  if (x == kHalfPi) return endpoint(false);
  return interior(x, std::sin(x), std::cos(x));
}

double AngularDensity::normalizer() const {
  if (normalizer_ > 0.0) return normalizer_;
  // Each half is integrated in the distance y to its endpoint so that the
  // small trigonometric value near a singular endpoint keeps full precision.
  auto left = [&](double y) { return interior(y, std::sin(y), std::cos(y)); };
  auto right = [&](double y) { return interior(kHalfPi - y, std::cos(y), std::sin(y)); };
  double err = 0.0;
  double l1 = 0.0;
  double z = 0.0;
  try {
    double err_r = 0.0;
    z = interval_rule().integrate(left, 0.0, kHalfPi / 2.0, kOuterTol, &err, &l1);
    z += interval_rule().integrate(right, 0.0, kHalfPi / 2.0, kOuterTol, &err_r, &l1);
    err += err_r;
  } catch (const QuadratureError&) {
    throw;
  } catch (const std::exception& e) {
    throw QuadratureError(std::string("normalising integral failed: ") + e.what(),
                          std::numeric_limits<double>::quiet_NaN(), params_);
  }
  if (!std::isfinite(z) || !(z > 0.0) || err > 1e3 * kOuterTol * z) {
    std::ostringstream os;
    os << "normalising integral did not converge (estimate " << z << ", error " << err << ")";
    throw QuadratureError(os.str(), std::numeric_limits<double>::quiet_NaN(), params_);
  }
  normalizer_ = z;
  return z;
}

double angular_density(double x, const AngularDensityParams& params) {
  return AngularDensity(params)(x);
}

double angular_density_unnormalized(double x, const AngularDensityParams& params) {
  return AngularDensity(params).unnormalized(x);
}

AngularSample standardize_and_polarize(const DegreeSnapshot& snapshot, double iota_in_hat,
                                       double iota_out_hat, std::size_t n_tail) {
  if (!(iota_in_hat > 0.0) || !(iota_out_hat > 0.0) || !std::isfinite(iota_in_hat) ||
      !std::isfinite(iota_out_hat)) {
    throw InvalidArgument("tail index estimates must be positive and finite");
  }
  if (n_tail < 10) throw InvalidArgument("n_tail must be at least 10");
  const std::size_t nodes = snapshot.node_count();
  if (nodes < n_tail + 1) {
    throw DataError("insufficient tail data: " + std::to_string(nodes) +
                    " nodes for n_tail " + std::to_string(n_tail));
  }
  AngularSample s;
  s.a_hat = iota_in_hat / iota_out_hat;
  s.requested_n_tail = n_tail;
  s.radii.resize(nodes);
  s.angles.resize(nodes);
  for (std::size_t v = 0; v < nodes; ++v) {
    const double in = snapshot.degrees[v].in;
    const double out = snapshot.degrees[v].out;
    const double in_a = in > 0.0 ? std::pow(in, s.a_hat) : 0.0;
    s.radii[v] = std::hypot(in_a, out);
    // atan2 maps I = 0 to pi/2 when O > 0.
    s.angles[v] = std::atan2(out, in_a);
    if (snapshot.degrees[v].in == 0) ++s.zero_in_count;
  }
  std::vector<double> order = s.radii;
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_tail),
                   order.end(), std::greater<>());
  s.r_threshold = order[n_tail];
  for (std::size_t v = 0; v < nodes; ++v) {
    if (s.radii[v] > s.r_threshold) {
      ++s.n_tail;
      if (snapshot.degrees[v].in == 0) ++s.zero_in_tail_count;
    }
  }
  return s;
}

AngularDensityParams profile_params(double alpha, double beta_hat, double iota_in_hat,
                                    double iota_out_hat) {
  AngularDensityParams p;
  p.alpha = alpha;
  p.beta = beta_hat;
  p.gamma = 1.0 - alpha - beta_hat;
  p.delta_in = (iota_in_hat * (alpha + beta_hat) - 1.0) / (1.0 - beta_hat);
  p.delta_out = (iota_out_hat * (1.0 - alpha) - 1.0) / (1.0 - beta_hat);
  p.a = iota_in_hat / iota_out_hat;
  p.iota_in = iota_in_hat;
  return p;
}

double profile_log_likelihood(const std::vector<double>& angles, double alpha,
                              double beta_hat, double iota_in_hat, double iota_out_hat,
                              const AlphaProfileOptions& options) {
  const AngularDensity density(profile_params(alpha, beta_hat, iota_in_hat, iota_out_hat));
  const double lo = options.angle_clamp;
  const double hi = kHalfPi - options.angle_clamp;
  double sum = 0.0;
  for (double x : angles) {
    const double f = density.unnormalized(std::clamp(x, lo, hi));
    if (!(f > 0.0)) return -std::numeric_limits<double>::infinity();
    sum += std::log(f);
  }
  if (options.normalize) sum -= static_cast<double>(angles.size()) * std::log(density.normalizer());
  return sum;
}

AlphaProfileResult estimate_alpha_from_angles(const std::vector<double>& angles,
                                              double beta_hat, double iota_in_hat,
                                              double iota_out_hat,
                                              const AlphaProfileOptions& options) {
  if (!(beta_hat > 0.0 && beta_hat < 1.0)) throw InvalidArgument("beta_hat must lie in (0, 1)");
  std::size_t axis = 0;
  std::vector<double> kept;
  kept.reserve(angles.size());
  for (double x : angles) {
    const bool on_axis = x == 0.0 || x == kHalfPi;
    axis += on_axis ? 1 : 0;
    if (!(on_axis && options.exclude_axis)) kept.push_back(x);
  }
  if (kept.size() < 10) throw InvalidArgument("profile likelihood needs at least 10 angles");
  if (!(iota_in_hat > 0.0) || !(iota_out_hat > 0.0)) {
    throw InvalidArgument("tail index estimates must be positive");
  }
  const double births = 1.0 - beta_hat;
  double lo = options.edge;
  double hi = 1.0 - beta_hat - options.edge;
  if (!(hi > lo)) throw DataError("beta_hat leaves no room for alpha");
  // delta_in(alpha) increases and delta_out(alpha) decreases in alpha.
  const double in_floor = (1.0 + options.min_delta * births) / iota_in_hat - beta_hat;
  const double out_ceiling = 1.0 - (1.0 + options.min_delta * births) / iota_out_hat;
  if (in_floor >= hi || out_ceiling <= lo) {
    throw DataError("tail indices inconsistent with simplex");
  }
  lo = std::max(lo, in_floor);
  hi = std::min(hi, out_ceiling);
  if (!(hi > lo)) throw DataError("tail indices inconsistent with simplex");

  AlphaProfileResult res;
  res.axis_count = axis;
  res.used_count = kept.size();
  res.alpha_lo = lo;
  res.alpha_hi = hi;
  auto objective = [&](double alpha) {
    return profile_log_likelihood(kept, alpha, beta_hat, iota_in_hat, iota_out_hat, options);
  };
  MaximizeOptions mo;
  mo.grid_points = options.grid_points;
  mo.tol = options.tol;
  const MaximizeResult best = maximize_grid_golden(objective, lo, hi, mo);
  if (!std::isfinite(best.value)) {
    throw NumericalError("profile likelihood is not finite anywhere on the alpha grid");
  }
  if (best.value - best.grid_min < 1e-10) {
    res.warnings.push_back("degenerate likelihood: flat profile, midpoint returned");
    res.alpha = 0.5 * (lo + hi);
    res.log_likelihood = objective(res.alpha);
  } else {
    res.alpha = best.argmax;
    res.log_likelihood = best.value;
  }
  const AngularDensityParams p = profile_params(res.alpha, beta_hat, iota_in_hat, iota_out_hat);
  res.gamma = p.gamma;
  res.delta_in = p.delta_in;
  res.delta_out = p.delta_out;
  return res;
}

AlphaProfileResult estimate_alpha_profile(const AngularSample& sample, double beta_hat,
                                          double iota_in_hat, double iota_out_hat,
                                          const AlphaProfileOptions& options) {
  if (sample.n_tail < 10) throw DataError("insufficient tail data: fewer than 10 exceedances");
  return estimate_alpha_from_angles(sample.tail_angles(), beta_hat, iota_in_hat, iota_out_hat,
                                    options);
}

ThetaEstimate ev_full_pipeline(const DegreeSnapshot& snapshot, const EvOptions& options) {
  if (snapshot.edge_count == 0 || snapshot.node_count() == 0) {
    throw DataError("empty snapshot");
  }
  ThetaEstimate est;
  est.method = Method::kEv;
  const double beta_hat = 1.0 - static_cast<double>(snapshot.node_count()) /
                                    static_cast<double>(snapshot.edge_count);
  if (!(beta_hat > 0.0 && beta_hat < 1.0)) {
    throw DataError("beta estimate 1 - N/n = " + std::to_string(beta_hat) +
                    " outside (0, 1)");
  }

  DegreeSnapshot work = snapshot;
  if (options.drop_max_indegree) {
    auto it = std::max_element(work.degrees.begin(), work.degrees.end(),
                               [](const NodeDegree& x, const NodeDegree& y) { return x.in < y.in; });
    est.diagnostics["dropped_in_degree"] = it->in;
    work.degrees.erase(it);
  }

  const std::vector<double> in = work.in_degrees();
  const std::vector<double> out = work.out_degrees();
  const TailFit fit_in = minimum_distance_fit(in, options.tail_fit);
  const TailFit fit_out = minimum_distance_fit(out, options.tail_fit);
  est.iota_in = fit_in.index_estimate;
  est.iota_out = fit_out.index_estimate;

  std::size_t n_tail = options.n_tail;
  AngularSample sample = standardize_and_polarize(work, est.iota_in, est.iota_out, n_tail);
  if (options.ntail_auto) {
    const TailFit fit_r = minimum_distance_fit(sample.radii, options.tail_fit);
    n_tail = std::max<std::size_t>(fit_r.k_star, 10);
    est.diagnostics["k_star_radius"] = static_cast<double>(fit_r.k_star);
    sample = standardize_and_polarize(work, est.iota_in, est.iota_out, n_tail);
  }
  if (sample.n_tail < n_tail) {
    est.warnings.push_back("radius ties at the threshold: " + std::to_string(sample.n_tail) +
                           " exceedances for n_tail " + std::to_string(n_tail));
  }

  AlphaProfileResult prof =
      estimate_alpha_profile(sample, beta_hat, est.iota_in, est.iota_out, options.profile);
  est.params.alpha = prof.alpha;
  est.params.beta = beta_hat;
  est.params.gamma = prof.gamma;
  est.params.delta_in = prof.delta_in;
  est.params.delta_out = prof.delta_out;
  for (auto& w : prof.warnings) est.warnings.push_back(std::move(w));

  est.diagnostics["k_star_in"] = static_cast<double>(fit_in.k_star);
  est.diagnostics["k_star_out"] = static_cast<double>(fit_out.k_star);
  est.diagnostics["ks_in"] = fit_in.ks_at_kstar;
  est.diagnostics["ks_out"] = fit_out.ks_at_kstar;
  est.diagnostics["n_tail"] = static_cast<double>(sample.n_tail);
  est.diagnostics["n_tail_requested"] = static_cast<double>(n_tail);
  est.diagnostics["r_threshold"] = sample.r_threshold;
  est.diagnostics["a_hat"] = sample.a_hat;
  est.diagnostics["zero_in_tail"] = static_cast<double>(sample.zero_in_tail_count);
  est.diagnostics["axis_in_tail"] = static_cast<double>(prof.axis_count);
  est.diagnostics["angles_used"] = static_cast<double>(prof.used_count);
  est.diagnostics["log_likelihood"] = prof.log_likelihood;
  return est;
}

}  // namespace paev
