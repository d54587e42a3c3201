#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "paev/errors.hpp"
#include "paev/experiment.hpp"
#include "paev/report.hpp"
#include "paev/simulate.hpp"
#include "paev/theory.hpp"

using namespace paev;
using paev::test::reference_params;

namespace {

std::size_t count_lines(const std::string& s, const std::string& prefix) {
  std::istringstream in(s);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

}  // namespace

TEST_CASE("linear experiment rows and MLE ordering") {
  ExperimentSpec spec;
  spec.n = 10000;
  spec.replications = 20;
  spec.seed_base = 42;
  std::ostringstream csv;
  const ExperimentResult r = run_experiment(spec, &csv);
  REQUIRE(r.rows.size() == 60);
  for (const ResultRow& row : r.rows) CHECK(row.status == 0);
  CHECK(count_lines(csv.str(), "experiment,") == 60 + 1);
  CHECK(csv.str().find("# summary") != std::string::npos);

  const double truth = 16.0 / 7.0;
  const auto bias = [&](Method m) {
    return std::hypot(r.mean(0.0, m, "iota_in") - truth, r.mean(0.0, m, "iota_out") - truth);
  };
  CHECK(bias(Method::kMle) < bias(Method::kEv));
  CHECK(bias(Method::kMle) < bias(Method::kSn));
  const auto spread = [&](Method m, const char* which) {
    const auto v = r.values(0.0, m, which);
    return nearest_rank_quantile(v, 0.975) - nearest_rank_quantile(v, 0.025);
  };
  for (const char* which : {"iota_in", "iota_out"}) {
    CHECK(spread(Method::kMle, which) < spread(Method::kSn, which));
    CHECK(spread(Method::kMle, which) < spread(Method::kEv, which));
  }

  std::ostringstream again;
  run_experiment(spec, &again);
  CHECK(again.str() == csv.str());
}

TEST_CASE("rows follow replication and method order across threads") {
  ExperimentSpec spec;
  spec.model = ExperimentModel::kAddCorrupt;
  spec.sweep = {0.05, 0.15};
  spec.n = 3000;
  spec.replications = 5;
  spec.methods = {Method::kMle, Method::kSn};
  spec.threads = 1;
  std::ostringstream one;
  const ExperimentResult a = run_experiment(spec, &one);
  spec.threads = 4;
  std::ostringstream four;
  run_experiment(spec, &four);
  CHECK(one.str() == four.str());
  REQUIRE(a.rows.size() == 20);
  CHECK(a.rows[0].setting == 0.05);
  CHECK(a.rows[0].method == Method::kMle);
  CHECK(a.rows[1].method == Method::kSn);
  CHECK(a.rows[2].replication == 1);
  CHECK(a.rows[10].setting == 0.15);
  CHECK(a.rows[10].seed == a.rows[0].seed);
}

TEST_CASE("estimator failures become rows") {
  ExperimentSpec spec;
  spec.n = 200;
  spec.replications = 3;
  spec.n_tail = 5000;
  spec.methods = {Method::kEv, Method::kMle};
  const ExperimentResult r = run_experiment(spec);
  REQUIRE(r.rows.size() == 6);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (r.rows[i].method == Method::kEv) {
      CHECK(r.rows[i].status == static_cast<int>(ErrorKind::kData));
      CHECK(r.rows[i].message.find("insufficient tail data") != std::string::npos);
    } else {
      CHECK(r.rows[i].status == 0);
    }
  }
  CHECK(std::isnan(r.mean(0.0, Method::kEv, "alpha")));
  CHECK(!std::isnan(r.mean(0.0, Method::kMle, "alpha")));
}

TEST_CASE("deletion experiment runs all methods") {
  ExperimentSpec spec;
  spec.model = ExperimentModel::kDeleteCorrupt;
  spec.sweep = {0.15};
  spec.n = 20000;
  spec.replications = 2;
  const ExperimentResult r = run_experiment(spec);
  REQUIRE(r.rows.size() == 6);
  for (const ResultRow& row : r.rows) CHECK(row.status == 0);
  CHECK(std::abs(r.mean(0.15, Method::kMle, "delta_in") - 1.0) < 0.2);
}

TEST_CASE("JSON configuration") {
  const auto j = nlohmann::json::parse(R"({
    "id": "add", "model": "ADD_CORRUPT", "params": [0.3, 0.4, 0.3, 1, 1],
    "sweep": [0.05, 0.15], "n": 5000, "replications": 3,
    "methods": ["EV", "mle"], "n_tail": 150, "seed_base": 9
  })");
  const ExperimentSpec s = experiment_spec_from_json(j);
  CHECK(s.id == "add");
  CHECK(s.model == ExperimentModel::kAddCorrupt);
  CHECK(s.sweep == std::vector<double>{0.05, 0.15});
  CHECK(s.methods == std::vector<Method>{Method::kEv, Method::kMle});
  CHECK(s.n_tail == 150);
  CHECK(s.seed_base == 9);

  auto bad = j;
  bad["nn"] = 3;
  CHECK_THROWS_AS(experiment_spec_from_json(bad), InvalidArgument);
  auto linear_sweep = nlohmann::json::parse(R"({"model": "LINEAR", "sweep": [0.1]})");
  CHECK_THROWS_AS(experiment_spec_from_json(linear_sweep).validate(), InvalidArgument);
  CHECK_THROWS_AS(experiment_model_from_string("CUBIC"), InvalidArgument);
  CHECK_THROWS_AS(method_from_string("bayes"), InvalidArgument);

  ExperimentSpec empty;
  empty.methods.clear();
  CHECK_THROWS_AS(empty.validate(), InvalidArgument);
  ExperimentSpec none;
  none.replications = 0;
  CHECK_THROWS_AS(none.validate(), InvalidArgument);
}

TEST_CASE("nearest-rank quantiles") {
  const std::vector<double> v{5, 1, 4, 2, 3};
  CHECK(nearest_rank_quantile(v, 0.025) == 1);
  CHECK(nearest_rank_quantile(v, 0.5) == 3);
  CHECK(nearest_rank_quantile(v, 0.975) == 5);
  CHECK(nearest_rank_quantile({7}, 0.975) == 7);
  std::vector<double> hundred(100);
  for (int i = 0; i < 100; ++i) hundred[i] = 100 - i;
  CHECK(nearest_rank_quantile(hundred, 0.025) == 3);
  CHECK(nearest_rank_quantile(hundred, 0.975) == 98);
}

TEST_CASE("replication seeds are distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t base : {0u, 1u, 2u}) {
    for (std::size_t r = 0; r < 1000; ++r) seen.insert(replication_seed(base, r));
  }
  CHECK(seen.size() == 3000);
  CHECK(replication_seed(5, 3) == replication_seed(5, 3));
}

TEST_CASE("thread count from the environment") {
  setenv("PAEV_THREADS", "3", 1);
  CHECK(default_thread_count() == 3);
  setenv("PAEV_THREADS", "0", 1);
  CHECK(default_thread_count() >= 1);
  unsetenv("PAEV_THREADS");
  CHECK(default_thread_count() >= 1);
}

TEST_CASE("degree distribution report") {
  DegreeSnapshot s;
  s.degrees = {{1, 0}, {1, 2}};
  s.edge_count = 2;
  const auto rows = degree_distribution_report(s);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].column == "in");
  CHECK(rows[0].degree == 1);
  CHECK(rows[0].count == 2);
  CHECK(rows[0].frequency == 1.0);
  CHECK(rows[1].column == "out");
  CHECK(rows[1].degree == 0);
  CHECK(rows[1].count == 1);
  CHECK(rows[2].degree == 2);
  CHECK(rows[2].count == 1);
  CHECK(rows[2].frequency == 0.5);
  std::ostringstream csv;
  write_degree_report_csv(csv, rows);
  CHECK(csv.str() == "column,degree,count,frequency\nin,1,2,1\nout,0,1,0.5\nout,2,1,0.5\n");
  CHECK_THROWS_AS(log_log_slope(rows, "in", 1, 10), DataError);

  std::vector<DegreeFrequencyRow> cubic;
  for (std::size_t d = 1; d <= 5000; ++d) cubic.push_back({"in", d, 1, std::pow(double(d), -3.0)});
  CHECK(std::abs(log_log_slope(cubic, "in", 10, 1000) + 3.0) < 0.02);
  CHECK_THROWS_AS(log_log_slope(cubic, "in", 0, 10), InvalidArgument);
}

TEST_CASE("degree frequencies follow the power law") {
  SimConfig cfg;
  cfg.target_edges = 100000;
  cfg.seed = 77;
  cfg.emit_history = false;
  const SimResult r = simulate_linear_pa(reference_params(), cfg);
  const auto rows = degree_distribution_report(r.snapshot);

  // Oracle: the same fit on the limiting pmf; with alpha = gamma and equal
  // deltas the in- and out-degree limits coincide.
  const LimitPmf pmf = superstar_indegree_pmf(SuperstarParams::make(0.0, reference_params()), 5000);
  std::vector<DegreeFrequencyRow> limit;
  for (std::size_t i = 1; i < pmf.values.size(); ++i) limit.push_back({"in", i, 0, pmf.values[i]});
  const double expected = log_log_slope(limit, "in", 10, 1000);
  CHECK(std::abs(log_log_slope(limit, "in", 300, 5000) + (1.0 + 16.0 / 7.0)) < 0.03);
  for (const char* col : {"in", "out"}) {
    CHECK(std::abs(log_log_slope(rows, col, 10, 1000) - expected) < 0.15);
  }
}

TEST_CASE("superstar stands out in the in-degree report") {
  SimConfig cfg;
  cfg.target_edges = 100000;
  cfg.seed = 5;
  cfg.emit_history = false;
  const SuperstarParams sp = SuperstarParams::make(0.2, reference_params());
  const SimResult r = simulate_superstar(sp, cfg);
  const auto rows = degree_distribution_report(r.snapshot);
  std::vector<DegreeFrequencyRow> in;
  for (const auto& row : rows) {
    if (row.column == "in") in.push_back(row);
  }
  REQUIRE(in.size() >= 2);
  const auto& top = in.back();
  CHECK(top.count == 1);
  const double mean = 100000 * 0.2 * 0.7;
  const double sd = std::sqrt(100000 * 0.14 * 0.86);
  CHECK(std::abs(double(top.degree) - mean) < 4 * sd);
  CHECK(double(in[in.size() - 2].degree) < 0.5 * top.degree);
}

TEST_CASE("superstar index table at small scale") {
  Table1Spec spec;
  spec.n = 20000;
  spec.replications = 2;
  spec.p_list = {0.1, 0.3};
  spec.k_list = {50, 100};
  const auto rows = table1_experiment(spec);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    const TailIndices t = superstar_indices(SuperstarParams::make(row.p, reference_params()));
    CHECK(row.true_in == doctest::Approx(t.iota_in));
    CHECK(row.true_out == doctest::Approx(t.iota_out));
    CHECK(row.failures == 0);
    CHECK(std::isfinite(row.mle_in));
    CHECK(std::isfinite(row.ev_in));
    CHECK(row.hill.size() == 2);
  }
  CHECK(rows[1].mle_in < rows[1].true_in);
  std::ostringstream csv;
  write_table1_csv(csv, rows, spec.k_list);
  CHECK(csv.str().rfind("p,true_in,true_out,mle_in,mle_out,ev_in,ev_out,failures,hill_in_k50,"
                        "hill_out_k50,hill_in_k100,hill_out_k100\n",
                        0) == 0);
  CHECK(count_lines(csv.str(), "0.") == 2);
}
