#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "paev/angular.hpp"
#include "paev/errors.hpp"
#include "paev/simulate.hpp"
#include "paev/theory.hpp"

using namespace paev;
using namespace paev::oracle;
using paev::test::rel_close;
using std::numbers::pi;

TEST_CASE("inner integral reduces to a Gamma ratio at a = 1") {
  for (double c : {0.0, 0.5, 3.2857, 5.2857, 12.0}) {
    for (int i = 0; i < 50; ++i) {
      const double x = (pi / 2) * i / 49.0;
      const double expected =
          std::exp(std::lgamma(c + 1) - (c + 1) * std::log(std::cos(x) + std::sin(x)));
      REQUIRE(rel_close(angular_inner_integral(c, x, 1.0), expected, 1e-8));
    }
  }
}

TEST_CASE("inner integral for a != 1 matches Gauss-Kronrod") {
  using boost::math::quadrature::gauss_kronrod;
  for (double a : {0.6, 0.85, 1.3, 2.0}) {
    for (double x : {0.0, 0.2, pi / 4, 1.2, pi / 2}) {
      const double c = 4.5;
      // cos(pi/2) in double is 6e-17, whose 1/a power is not negligible.
      const double cs = x == pi / 2 ? 0.0 : std::pow(std::cos(x), 1.0 / a), s = std::sin(x);
      auto g = [&](double t) { return std::pow(t, c) * std::exp(-t * cs - std::pow(t, a) * s); };
      const double ref = gauss_kronrod<double, 61>::integrate(
          g, 0.0, std::numeric_limits<double>::infinity(), 20, 1e-13);
      CHECK(rel_close(angular_inner_integral(c, x, a), ref, 1e-8));
    }
  }
  CHECK(angular_inner_integral(2.0, 0.0, 1.7) == doctest::Approx(std::tgamma(3.0)).epsilon(1e-12));
  CHECK(angular_inner_integral(2.0, pi / 2, 1.7) ==
        doctest::Approx(std::tgamma(3.0 / 1.7) / 1.7).epsilon(1e-12));
}

TEST_CASE("density matches the a = 1 closed form on a 50-point grid") {
  const AngularDensityParams p = params_of(0.3, 0.4, 1.0, 1.0, 1.0, 16.0 / 7.0);
  const AngularDensity f(p);
  for (int i = 1; i < 51; ++i) {
    const double x = (pi / 2) * i / 51.0;
    REQUIRE(rel_close(f.unnormalized(x), closed_form_a1(x, p), 1e-8));
  }
  const AngularDensityParams q = params_of(0.2, 0.5, 0.7, 1.6, 1.0, 2.1);
  const AngularDensity g(q);
  for (int i = 1; i < 51; ++i) {
    const double x = (pi / 2) * i / 51.0;
    REQUIRE(rel_close(g.unnormalized(x), closed_form_a1(x, q), 1e-8));
  }
}

TEST_CASE("symmetric parameters give a symmetric density") {
  const AngularDensityParams p = params_of(0.3, 0.4, 1.0, 1.0, 1.0, 16.0 / 7.0);
  const AngularDensity f(p);
  const double endpoint = 0.3 * std::tgamma(16.0 / 7.0 + 3.0);
  CHECK(f.unnormalized(0.0) == doctest::Approx(endpoint).epsilon(1e-10));
  CHECK(f.unnormalized(pi / 2) == doctest::Approx(endpoint).epsilon(1e-10));
  CHECK(f.unnormalized(0.0) == doctest::Approx(11.1702).epsilon(1e-5));
  for (int i = 0; i <= 50; ++i) {
    const double x = (pi / 4) * i / 50.0;
    REQUIRE(rel_close(f(x), f(pi / 2 - x), 1e-8));
  }
  CHECK(f.normalizer() == doctest::Approx(7.0556).epsilon(1e-4));
}

TEST_CASE("unit mass for random parameter sets") {
  std::mt19937_64 gen(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double alpha = 0.05 + 0.4 * u(gen);
    const double beta = 0.05 + (0.9 - alpha) * u(gen);
    const double din = 0.3 + 2.5 * u(gen), dout = 0.3 + 2.5 * u(gen);
    const double a = 0.6 + 0.9 * u(gen);
    const double iota = 1.2 + 2.0 * u(gen);
    const AngularDensity f(params_of(alpha, beta, din, dout, a, iota));
    CHECK(std::abs(oracle_mass(f) - 1.0) < 1e-6);
    for (int k = 0; k <= 20; ++k) REQUIRE(f((pi / 2) * k / 20.0) >= 0.0);
  }
}

TEST_CASE("density argument and parameter checks") {
  AngularDensityParams bad = params_of(0.3, 0.4, 1.0, 1.0, 1.0, 2.0);
  bad.gamma = 0.5;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  const AngularDensity f(params_of(0.3, 0.4, 1.0, 1.0, 1.0, 2.0));
  CHECK_THROWS_AS(f(-0.1), InvalidArgument);
  CHECK_THROWS_AS(f(2.0), InvalidArgument);
}

TEST_CASE("quadrature failures carry their parameters") {
  const AngularDensityParams p = params_of(0.3, 0.4, 0.002, 1.0, 1.0, 2.0);
  const AngularDensity f(p);
  try {
    (void)f.normalizer();
    FAIL("expected the normaliser to fail for a near-zero delta");
  } catch (const QuadratureError& e) {
    CHECK(e.params().delta_in == p.delta_in);
    CHECK(e.kind() == ErrorKind::kNumerical);
  }
}

TEST_CASE("polar coordinates and threshold") {
  DegreeSnapshot s;
  s.degrees = {{0, 5}, {4, 4}};
  for (int i = 0; i < 20; ++i) s.degrees.push_back({1, 1});
  const AngularSample a = standardize_and_polarize(s, 2.0, 2.0, 10);
  CHECK(a.a_hat == 1.0);
  CHECK(a.angles[0] == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(a.radii[0] == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(a.angles[1] == doctest::Approx(pi / 4).epsilon(1e-15));
  CHECK(a.radii[1] == doctest::Approx(4 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(a.zero_in_count == 1);
  CHECK_THROWS_AS(standardize_and_polarize(s, 2.0, 2.0, 9), InvalidArgument);
  CHECK_THROWS_AS(standardize_and_polarize(s, 2.0, 2.0, 22), DataError);
  CHECK_THROWS_AS(standardize_and_polarize(s, -1.0, 2.0, 10), InvalidArgument);

  SimConfig cfg;
  cfg.target_edges = 20000;
  cfg.seed = 3;
  const SimResult sim = simulate_linear_pa(paev::test::reference_params(), cfg);
  for (std::size_t nt : {10u, 57u, 200u}) {
    const AngularSample b = standardize_and_polarize(sim.snapshot, 2.1, 1.9, nt);
    std::size_t above = 0;
    for (double r : b.radii) above += r > b.r_threshold;
    CHECK(above == b.n_tail);
    CHECK(b.tail_angles().size() == b.n_tail);
    CHECK(b.n_tail <= nt);
    for (double t : b.angles) REQUIRE((t >= 0.0 && t <= pi / 2));
    std::vector<double> sorted = b.radii;
    std::sort(sorted.rbegin(), sorted.rend());
    CHECK(b.r_threshold == sorted[nt]);
  }
  // With a = 1 the L2 radius is within sqrt(2) of the max-norm.
  const AngularSample c = standardize_and_polarize(sim.snapshot, 2.0, 2.0, 100);
  for (std::size_t v = 0; v < c.radii.size(); ++v) {
    const double mx = std::max(sim.snapshot.degrees[v].in, sim.snapshot.degrees[v].out);
    REQUIRE(c.radii[v] >= mx - 1e-12);
    REQUIRE(c.radii[v] <= std::sqrt(2.0) * mx + 1e-12);
  }
}

TEST_CASE("profile maximiser agrees with a 1e-4 grid oracle") {
  const double beta = 0.4, iota = 16.0 / 7.0;
  const AngularDensity truth(profile_params(0.3, beta, iota, iota));
  for (std::uint64_t seed : {1u, 2u}) {
    const std::vector<double> angles = sample_angles(truth, 40, seed);
    const AlphaProfileResult r = estimate_alpha_from_angles(angles, beta, iota, iota);
    double best = -INFINITY, arg = 0.0;
    for (double alpha = r.alpha_lo; alpha <= r.alpha_hi; alpha += 1e-4) {
      const double v = profile_log_likelihood(angles, alpha, beta, iota, iota);
      if (v > best) {
        best = v;
        arg = alpha;
      }
    }
    CHECK(std::abs(r.alpha - arg) < 1e-3);
    CHECK(r.log_likelihood >= best - 1e-6);
    CHECK(r.gamma == doctest::Approx(1.0 - r.alpha - beta).epsilon(1e-14));
    const AngularDensityParams at = profile_params(r.alpha, beta, iota, iota);
    CHECK(r.delta_in == doctest::Approx(at.delta_in).epsilon(1e-14));
    CHECK(r.delta_out == doctest::Approx(at.delta_out).epsilon(1e-14));
  }
}

TEST_CASE("profile inversion of the deltas") {
  const AngularDensityParams p = profile_params(0.3, 0.4, 16.0 / 7.0, 16.0 / 7.0);
  CHECK(p.delta_in == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.delta_out == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.a == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("skipping the per-alpha normaliser changes the estimate") {
  const double beta = 0.4, iota = 16.0 / 7.0;
  const AngularDensity truth(profile_params(0.3, beta, iota, iota));
  const std::vector<double> angles = sample_angles(truth, 300, 7);
  const AlphaProfileResult normed = estimate_alpha_from_angles(angles, beta, iota, iota);
  AlphaProfileOptions raw;
  raw.normalize = false;
  const AlphaProfileResult unnormed = estimate_alpha_from_angles(angles, beta, iota, iota, raw);
  CHECK(std::abs(normed.alpha - unnormed.alpha) > 0.01);
  CHECK(std::abs(normed.alpha - 0.3) < 0.1);
}

TEST_CASE("infeasible tail indices") {
  std::vector<double> angles(20, 0.7);
  try {
    estimate_alpha_from_angles(angles, 0.4, 1.0, 2.0);
    FAIL("expected a data error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("tail indices inconsistent with simplex") !=
          std::string::npos);
  }
  CHECK_THROWS_AS(estimate_alpha_from_angles(std::vector<double>(5, 0.7), 0.4, 2.3, 2.3),
                  InvalidArgument);
}

TEST_CASE("axis angles are clamped or excluded") {
  const double beta = 0.4, iota = 16.0 / 7.0;
  const AngularDensity truth(profile_params(0.3, beta, iota, iota));
  std::vector<double> angles = sample_angles(truth, 60, 3);
  angles.push_back(0.0);
  angles.push_back(pi / 2);
  const AlphaProfileResult kept = estimate_alpha_from_angles(angles, beta, iota, iota);
  CHECK(kept.axis_count == 2);
  CHECK(kept.used_count == 62);
  AlphaProfileOptions opt;
  opt.exclude_axis = true;
  const AlphaProfileResult dropped = estimate_alpha_from_angles(angles, beta, iota, iota, opt);
  CHECK(dropped.used_count == 60);
  angles.resize(60);
  const AlphaProfileResult clean = estimate_alpha_from_angles(angles, beta, iota, iota);
  CHECK(dropped.alpha == doctest::Approx(clean.alpha).epsilon(1e-12));
}

TEST_CASE("full EV pipeline on linear PA") {
  SimConfig cfg;
  cfg.target_edges = 100000;
  cfg.seed = 41;
  const SimResult sim = simulate_linear_pa(paev::test::reference_params(), cfg);
  const ThetaEstimate e = ev_full_pipeline(sim.snapshot);
  CHECK(e.method == Method::kEv);
  CHECK(std::abs(e.params.beta - 0.4) < 0.01);
  CHECK(std::abs(e.iota_in - 16.0 / 7.0) < 0.5);
  CHECK(std::abs(e.iota_out - 16.0 / 7.0) < 0.5);
  CHECK(e.params.alpha + e.params.beta + e.params.gamma == doctest::Approx(1.0).epsilon(1e-12));
  const auto [din, dout] = delta_from_indices(e.iota_in, e.iota_out, e.params.alpha, e.params.beta);
  CHECK(e.params.delta_in == doctest::Approx(din).epsilon(1e-9));
  CHECK(e.params.delta_out == doctest::Approx(dout).epsilon(1e-9));
  for (const char* key : {"k_star_in", "k_star_out", "n_tail", "r_threshold", "a_hat"}) {
    CHECK(e.diagnostics.count(key) == 1);
  }
  CHECK(e.diagnostics.at("n_tail") == 200);

  EvOptions drop;
  drop.drop_max_indegree = true;
  const ThetaEstimate d = ev_full_pipeline(sim.snapshot, drop);
  CHECK(d.diagnostics.count("dropped_in_degree") == 1);
  EvOptions autotail;
  autotail.ntail_auto = true;
  const ThetaEstimate t = ev_full_pipeline(sim.snapshot, autotail);
  CHECK(t.diagnostics.count("k_star_radius") == 1);
  CHECK(t.diagnostics.at("n_tail") >= 10);
}

TEST_CASE("EV rejects snapshots without beta room") {
  DegreeSnapshot s;
  for (int i = 0; i < 30; ++i) s.degrees.push_back({1, 1});
  s.edge_count = 30;
  CHECK_THROWS_AS(ev_full_pipeline(s), DataError);
}
