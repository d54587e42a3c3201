#include "paev/theory.hpp"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "paev/errors.hpp"

namespace paev {

TailIndices linear_pa_indices(const PaParams& p) {
  const double in_rate = p.alpha + p.beta;
  const double out_rate = p.beta + p.gamma;
  if (!(in_rate > 0.0) || !(out_rate > 0.0)) throw InvalidArgument("degenerate scheme mix");
  const double births = p.alpha + p.gamma;
  return {(1.0 + p.delta_in * births) / in_rate, (1.0 + p.delta_out * births) / out_rate};
}

TailIndices superstar_indices(const SuperstarParams& s) {
  const PaParams& p = s.base;
  const double in_rate = (p.alpha + p.beta) * (1.0 - s.p);
  const double out_rate = p.beta + p.gamma;
  if (!(in_rate > 0.0) || !(out_rate > 0.0)) throw InvalidArgument("degenerate scheme mix");
  const double births = p.alpha + p.gamma;
  return {(1.0 - (p.alpha + p.beta) * s.p + p.delta_in * births) / in_rate,
          (1.0 + p.delta_out * births) / out_rate};
}

std::pair<double, double> delta_from_indices(double iota_in, double iota_out,
                                             double alpha, double beta) {
  const double births = 1.0 - beta;  // alpha + gamma
  if (!(births > 0.0)) throw InvalidArgument("alpha + gamma must be positive");
  const double gamma = 1.0 - alpha - beta;
  const double delta_in = (iota_in * (alpha + beta) - 1.0) / births;
  const double delta_out = (iota_out * (beta + gamma) - 1.0) / births;
  if (!(delta_in > 0.0) || !(delta_out > 0.0)) {
    throw DataError("indices inconsistent with simplex");
  }
  return {delta_in, delta_out};
}

namespace {

void check_pmf_args(const SuperstarParams& params, std::size_t imax) {
  params.validate();
  if (imax < 2) throw InvalidArgument("imax must be at least 2");
}

}  // namespace

LimitPmf superstar_indegree_pmf(const SuperstarParams& params, std::size_t imax) {
  check_pmf_args(params, imax);
  const PaParams& p = params.base;
  const double iota = superstar_indices(params).iota_in;
  const double d = p.delta_in;
  LimitPmf pmf;
  pmf.values.resize(imax + 1);
  const double q0 = p.alpha / (1.0 + d / iota);
  // The second term is gamma / iota^{-1}.
  const double q1 = (p.alpha * d / (1.0 + d / iota) + p.gamma * iota) / (1.0 + d + iota);
  pmf.values[0] = q0;
  pmf.values[1] = q1;
  // Gamma(i+d)/Gamma(i+d+iota+1) through the delta-ratio routine, which is
  // overflow-free and keeps full relative precision for large i.
  using boost::math::tgamma_delta_ratio;
  const double scale = q1 / tgamma_delta_ratio(1.0 + d, 1.0 + iota);
  for (std::size_t i = 2; i <= imax; ++i) {
    const double x = static_cast<double>(i);
    pmf.values[i] = tgamma_delta_ratio(x + d, iota + 1.0) * scale;
  }
  for (double q : pmf.values) pmf.total_mass += q;
  return pmf;
}

LimitPmf superstar_indegree_pmf_recursive(const SuperstarParams& params,
                                          std::size_t imax) {
  check_pmf_args(params, imax);
  const PaParams& p = params.base;
  const double c = (p.alpha + p.beta) * (1.0 - params.p) /
                   (1.0 - (p.alpha + p.beta) * params.p + p.delta_in * (p.alpha + p.gamma));
  const double d = p.delta_in;
  // q_i (1 + c (i + d)) = c (i - 1 + d) q_{i-1} + alpha 1{i=0} + gamma 1{i=1}
  LimitPmf pmf;
  pmf.values.resize(imax + 1);
  double prev = 0.0;
  for (std::size_t i = 0; i <= imax; ++i) {
    const double x = static_cast<double>(i);
    double rhs = i == 0 ? p.alpha : c * (x - 1.0 + d) * prev;
    if (i == 1) rhs += p.gamma;
    prev = rhs / (1.0 + c * (x + d));
    pmf.values[i] = prev;
    pmf.total_mass += prev;
  }
  return pmf;
}

}  // namespace paev
