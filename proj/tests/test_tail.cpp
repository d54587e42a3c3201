#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "paev/errors.hpp"
#include "paev/simulate.hpp"
#include "paev/tail.hpp"

using namespace paev;
using namespace paev::oracle;

namespace {

std::vector<double> pareto_quantiles(std::size_t n, double index) {
  std::vector<double> v;
  for (std::size_t m = 1; m <= n; ++m) v.push_back(std::pow(double(n) / m, 1.0 / index));
  return v;
}

}  // namespace

TEST_CASE("Hill estimate by hand") {
  const std::vector<double> v = {8, 4, 2, 1};
  const HillEstimate h = hill_estimate(v, 3);
  CHECK(h.inverse_index == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
  CHECK(h.index() == doctest::Approx(0.72134752044).epsilon(1e-10));
  CHECK_FALSE(h.infinite);
  const std::vector<double> shuffled = {2, 8, 1, 0, 4, 0};
  CHECK(hill_estimate(shuffled, 3).index() == doctest::Approx(h.index()).epsilon(1e-14));
}

TEST_CASE("Hill ties and domain errors") {
  const std::vector<double> flat = {3, 3, 3, 3, 3};
  const HillEstimate h = hill_estimate(flat, 3);
  CHECK(h.infinite);
  CHECK(std::isinf(h.index()));
  const std::vector<double> zeros = {5, 3, 0, 0};
  try {
    hill_estimate(zeros, 2);
    FAIL("expected a data error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("threshold not positive") != std::string::npos);
  }
  CHECK_THROWS_AS(hill_estimate(zeros, 0), InvalidArgument);
}

TEST_CASE("Hill on iid Pareto draws") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int inside = 0;
  const int runs = 200;
  std::vector<double> v(100000);
  for (int r = 0; r < runs; ++r) {
    for (double& x : v) x = std::pow(1.0 - u(gen), -1.0 / 2.5);
    const double est = hill_estimate(v, 1000).index();
    inside += std::abs(est - 2.5) <= 0.25;
  }
  CHECK(inside >= 190);
}

TEST_CASE("minimum distance on exact Pareto quantiles") {
  const TailFit small = minimum_distance_fit(pareto_quantiles(1000, 2.0));
  CHECK(std::abs(small.index_estimate - 2.0) < 0.1);
  const TailFit large = minimum_distance_fit(pareto_quantiles(10000, 2.0));
  CHECK(std::abs(large.index_estimate - 2.0) < std::abs(small.index_estimate - 2.0));
  MinimumDistanceOptions opt;
  opt.keep_curve = true;
  const TailFit curve = minimum_distance_fit(pareto_quantiles(1000, 2.0), opt);
  // D_k falls from small k and stays small afterwards.
  CHECK(curve.ks_curve.front().distance > 5 * curve.ks_at_kstar);
  CHECK(curve.ks_curve.back().distance < 2 * curve.ks_curve[curve.ks_curve.size() / 2].distance);
}

TEST_CASE("minimum distance equals a brute-force scan on small inputs") {
  MinimumDistanceOptions all;
  all.k_min = 1;
  all.cap_fraction = 1.0;
  {
    const std::vector<double> v = {8, 4, 2, 1};
    const TailFit fit = minimum_distance_fit(v, all);
    const BruteFit bf = brute_force_fit(v, 1, 3);
    CHECK(fit.k_star == bf.k);
    CHECK(fit.ks_at_kstar == doctest::Approx(bf.d).epsilon(1e-12));
    CHECK(fit.index_estimate == doctest::Approx(bf.index).epsilon(1e-12));
  }
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + gen() % 46;
    std::vector<double> v(n);
    const bool integers = trial % 2 == 0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& x : v) {
      const double p = std::pow(1.0 - u(gen), -1.0 / 1.5);
      x = integers ? std::floor(p) - (gen() % 4 == 0 ? 1.0 : 0.0) : p;
    }
    const BruteFit bf = brute_force_fit(v, 1, n);
    std::size_t positive = 0;
    for (double x : v) positive += x > 0;
    if (positive < 2 || bf.k == 0) continue;
    const TailFit fit = minimum_distance_fit(v, all);
    REQUIRE(fit.k_star == bf.k);
    REQUIRE(fit.ks_at_kstar == doctest::Approx(bf.d).epsilon(1e-12));
    REQUIRE(fit.index_estimate == doctest::Approx(bf.index).epsilon(1e-12));
  }
}

TEST_CASE("jump-point supremum bounds a dense grid") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> v(300);
    for (double& x : v) x = std::floor(std::pow(1.0 - u(gen), -1.0 / 2.0) * 3.0);
    std::vector<double> desc = positive_order_statistics(v);
    const std::size_t k = 40;
    const double index = 2.0;
    const double exact = ks_distance(desc, k, index);
    const double top = desc[0] / desc[k];
    double grid = 0.0;
    const int points = 100000;
    for (int g = 0; g <= points; ++g) {
      const double y = 1.0 + (top * 1.01 - 1.0) * g / points;
      double c = 0.0;
      for (std::size_t j = 0; j < k; ++j) c += desc[j] / desc[k] > y;
      grid = std::max(grid, std::abs(c / k - std::pow(y, -index)));
    }
    CHECK(grid <= exact + 1e-12);
    // Grid spacing bounds the gap through the Pareto tail's Lipschitz constant.
    CHECK(exact - grid <= index * (top * 1.01 - 1.0) / points + 1e-12);
  }
}

TEST_CASE("scale invariance and determinism") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(5000);
  for (double& x : v) x = std::pow(1.0 - u(gen), -1.0 / 2.2);
  std::vector<double> scaled = v;
  for (double& x : scaled) x *= 7.25;
  const TailFit a = minimum_distance_fit(v);
  const TailFit b = minimum_distance_fit(scaled);
  CHECK(a.k_star == b.k_star);
  CHECK(a.index_estimate == doctest::Approx(b.index_estimate).epsilon(1e-10));
  for (std::size_t k : {10u, 100u, 1000u}) {
    CHECK(hill_estimate(v, k).index() ==
          doctest::Approx(hill_estimate(scaled, k).index()).epsilon(1e-10));
  }
  const TailFit c = minimum_distance_fit(v);
  CHECK(c.k_star == a.k_star);
  CHECK(c.index_estimate == a.index_estimate);
  CHECK(c.ks_at_kstar == a.ks_at_kstar);
}

TEST_CASE("fit invariants and insufficient data") {
  std::vector<double> few = {5, 4, 3, 2, 1, 1, 0, 0};
  CHECK_THROWS_AS(minimum_distance_fit(few), DataError);
  SimConfig cfg;
  cfg.target_edges = 20000;
  cfg.seed = 2;
  const SimResult sim = simulate_linear_pa(paev::test::reference_params(), cfg);
  MinimumDistanceOptions opt;
  opt.keep_curve = true;
  const TailFit fit = minimum_distance_fit(sim.snapshot.in_degrees(), opt);
  CHECK(fit.k_star >= opt.k_min);
  CHECK(fit.k_star < fit.positive_count);
  double min_d = 1.0;
  for (const KsPoint& p : fit.ks_curve) min_d = std::min(min_d, p.distance);
  CHECK(fit.ks_at_kstar == min_d);
  CHECK(fit.ks_at_kstar >= 0.0);
  CHECK(fit.ks_at_kstar <= 1.0);
  MinimumDistanceOptions strided = opt;
  strided.stride = 5;
  const TailFit s = minimum_distance_fit(sim.snapshot.in_degrees(), strided);
  CHECK((s.k_star - opt.k_min) % 5 == 0);
}
