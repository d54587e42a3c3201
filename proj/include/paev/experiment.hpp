#pragma once

// Replicated simulation-and-estimation experiments with deterministic seeding
// and CSV output.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "paev/types.hpp"

namespace paev {

enum class ExperimentModel : std::uint8_t { kLinear, kSuperstar, kAddCorrupt, kDeleteCorrupt };

std::string to_string(ExperimentModel m);
ExperimentModel experiment_model_from_string(const std::string& s);  // throws InvalidArgument
Method method_from_string(const std::string& s);                     // throws InvalidArgument

struct ExperimentSpec {
  std::string id = "experiment";
  ExperimentModel model = ExperimentModel::kLinear;
  PaParams params{0.3, 0.4, 0.3, 1.0, 1.0};
  // Superstar p for kSuperstar, p_a or p_d for the corruption models; one
  // block of replications per value.
  std::vector<double> sweep{0.0};
  std::size_t n = 10000;
  std::size_t replications = 20;
  std::vector<Method> methods{Method::kEv, Method::kMle, Method::kSn};
  std::size_t n_tail = 200;
  bool ntail_auto = false;
  bool drop_max_indegree = false;
  bool exclude_axis = false;
  std::uint64_t seed_base = 1;
  std::string output_path;  // empty: no file
  std::size_t threads = 0;  // 0: default_thread_count()
  bool timing = false;      // adds a wall_ms column; output is then not reproducible

  void validate() const;  // throws InvalidArgument
};

/// Reads the JSON fields mirroring ExperimentSpec; unknown keys are rejected.
ExperimentSpec experiment_spec_from_json(const nlohmann::json& j);

struct ResultRow {
  std::string experiment;
  double setting = 0.0;
  std::size_t replication = 0;
  std::uint64_t seed = 0;
  Method method = Method::kEv;
  int status = 0;  // 0 ok, otherwise the error kind
  ThetaEstimate estimate;
  std::string message;
  double wall_ms = 0.0;
};

struct SummaryRow {
  double setting = 0.0;
  Method method = Method::kEv;
  std::string parameter;
  std::size_t count = 0;
  double mean = 0.0;
  double q025 = 0.0;
  double q975 = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<SummaryRow> summary;

  /// Mean of `parameter` over successful rows of (setting, method); NaN if none.
  double mean(double setting, Method method, const std::string& parameter) const;
  std::vector<double> values(double setting, Method method, const std::string& parameter) const;
};

/// Column order of the result CSV.
const std::vector<std::string>& result_columns(bool timing);
/// alpha, beta, gamma, delta_in, delta_out, iota_in, iota_out
const std::vector<std::string>& estimate_parameters();
double parameter_value(const ThetaEstimate& e, const std::string& parameter);

/// Nearest-rank quantile: the ceil(q * size)-th smallest value.
double nearest_rank_quantile(std::vector<double> values, double q);

/// PAEV_THREADS if set to a positive integer, else hardware concurrency.
std::size_t default_thread_count();

/// seed_r = mix64(seed_base, r); shared across sweep values.
std::uint64_t replication_seed(std::uint64_t seed_base, std::size_t replication);

/// Rows are streamed to `out` (when given) in (setting, replication, method)
/// order, followed by a "# summary" block.  Estimator failures become rows
/// with a nonzero status.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::ostream* out = nullptr);

struct Table1Spec {
  std::size_t n = 100000;
  std::size_t replications = 10;
  std::vector<double> p_list{0.1, 0.15, 0.2, 0.25, 0.3};
  std::vector<std::size_t> k_list;  // fixed-k Hill sweep; empty skips it
  std::uint64_t seed_base = 1;
  std::size_t threads = 0;
};

struct Table1Row {
  double p = 0.0;
  double true_in = 0.0;
  double true_out = 0.0;
  double mle_in = 0.0;
  double mle_out = 0.0;
  double ev_in = 0.0;
  double ev_out = 0.0;
  std::map<std::size_t, std::pair<double, double>> hill;  // k -> mean (in, out) index
  std::size_t failures = 0;
};

/// Superstar runs at base (0.3, 0.4, 0.3, 1, 1): mean MLE-implied and
/// minimum-distance indices per p, plus fixed-k Hill means.
std::vector<Table1Row> table1_experiment(const Table1Spec& spec);
Table1Spec table1_spec_from_json(const nlohmann::json& j);
void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows,
                      const std::vector<std::size_t>& k_list);

}  // namespace paev
