// paev: simulate, perturb and estimate directed preferential attachment
// networks from edge-list files.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "paev/angular.hpp"
#include "paev/edge_list.hpp"
#include "paev/errors.hpp"
#include "paev/experiment.hpp"
#include "paev/likelihood.hpp"
#include "paev/report.hpp"
#include "paev/simulate.hpp"
#include "paev/tail.hpp"
#include "paev/theory.hpp"

namespace {

using nlohmann::json;
using namespace paev;

struct ParamFlags {
  double alpha = 0.3;
  double beta = 0.4;
  double gamma = 0.3;
  double din = 1.0;
  double dout = 1.0;
  double p = 0.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "alpha-scheme probability")->capture_default_str();
    cmd->add_option("--beta", beta, "beta-scheme probability")->capture_default_str();
    cmd->add_option("--gamma", gamma, "gamma-scheme probability")->capture_default_str();
    cmd->add_option("--din", din, "in-degree offset delta_in")->capture_default_str();
    cmd->add_option("--dout", dout, "out-degree offset delta_out")->capture_default_str();
    cmd->add_option("--p", p, "superstar attachment probability")->capture_default_str();
  }
  PaParams base() const { return PaParams::make(alpha, beta, gamma, din, dout); }
};

// Output stream that is stdout unless a path is given.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DataError("cannot write " + path);
    }
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }
  void close() {
    if (!file_) {
      std::cout.flush();
      return;
    }
    file_->close();
    if (!*file_) throw DataError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

IngestResult load(const std::string& path) {
  IngestResult r = read_edge_list_file(path);
  for (const std::string& w : r.warnings) std::cerr << "warning: " << w << '\n';
  return r;
}

json estimate_json(const ThetaEstimate& e) {
  json j;
  j["method"] = to_string(e.method);
  j["alpha"] = e.params.alpha;
  j["beta"] = e.params.beta;
  j["gamma"] = e.params.gamma;
  j["delta_in"] = e.params.delta_in;
  j["delta_out"] = e.params.delta_out;
  j["iota_in"] = e.iota_in;
  j["iota_out"] = e.iota_out;
  j["diagnostics"] = json::object();
  for (const auto& [k, v] : e.diagnostics) j["diagnostics"][k] = v;
  j["warnings"] = e.warnings;
  return j;
}

void print_table(std::ostream& out, const ThetaEstimate& e) {
  char buf[128];
  out << "method      " << to_string(e.method) << '\n';
  const std::pair<const char*, double> rows[] = {
      {"alpha", e.params.alpha},       {"beta", e.params.beta},
      {"gamma", e.params.gamma},       {"delta_in", e.params.delta_in},
      {"delta_out", e.params.delta_out}, {"iota_in", e.iota_in},
      {"iota_out", e.iota_out}};
  for (const auto& [name, v] : rows) {
    std::snprintf(buf, sizeof buf, "%-11s %.6f\n", name, v);
    out << buf;
  }
  for (const std::string& w : e.warnings) out << "warning     " << w << '\n';
}

struct SimulateCmd {
  std::string model = "linear";
  ParamFlags params;
  std::size_t n = 10000;
  std::uint64_t seed = 1;
  std::string out;
  bool history = false;

  void run() {
    SimConfig cfg;
    cfg.target_edges = n;
    cfg.seed = seed;
    cfg.emit_history = true;
    SimResult sim;
    if (model == "linear") {
      sim = simulate_linear_pa(params.base(), cfg);
    } else if (model == "superstar") {
      sim = simulate_superstar(SuperstarParams::make(params.p, params.base()), cfg);
    } else {
      throw InvalidArgument("unknown model: " + model);
    }
    Sink sink(out);
    if (history) {
      write_history(sink.get(), sim.history);
    } else {
      write_edge_list(sink.get(), edges_of(sim.history));
    }
    sink.close();
  }
};

struct PerturbCmd {
  std::string mode;
  double prob = 0.0;
  std::uint64_t seed = 1;
  std::string in;
  std::string out;

  void run() {
    if (mode != "add" && mode != "delete") throw InvalidArgument("unknown mode: " + mode);
    const CorruptionSpec spec{mode == "add" ? CorruptionSpec::Mode::kAdd
                                            : CorruptionSpec::Mode::kDelete,
                              prob};
    spec.validate();
    const IngestResult data = load(in);
    Sink sink(out);
    if (spec.mode == CorruptionSpec::Mode::kAdd) {
      if (!data.history) {
        throw DataError("random additions need a valid 4-column growth history");
      }
      write_history(sink.get(), interleave_random_additions(*data.history, prob, seed));
    } else {
      const DeletionResult del = delete_random_edges(data.edges, prob, seed);
      if (data.history) {
        write_history(sink.get(), *data.history, &del.removed);
      } else {
        EdgeList kept;
        kept.node_count = data.edges.node_count;
        for (std::size_t i = 0; i < data.edges.edges.size(); ++i) {
          if (!del.removed[i]) kept.edges.push_back(data.edges.edges[i]);
        }
        write_edge_list(sink.get(), kept);
      }
    }
    sink.close();
  }
};

struct EstimateCmd {
  std::string method = "ev";
  std::string in;
  std::string column = "in";
  std::string dump_curve;
  std::size_t ntail = 200;
  bool ntail_auto = false;
  bool drop_max_indegree = false;
  bool exclude_axis = false;
  bool quiet = false;

  void run_tail(const IngestResult& data) {
    if (column != "in" && column != "out") throw InvalidArgument("--column must be in or out");
    const std::vector<double> values =
        column == "in" ? data.snapshot.in_degrees() : data.snapshot.out_degrees();
    MinimumDistanceOptions opt;
    opt.keep_curve = !dump_curve.empty();
    const TailFit fit = minimum_distance_fit(values, opt);
    json j;
    j["column"] = column;
    j["iota"] = fit.index_estimate;
    j["k_star"] = fit.k_star;
    j["ks_distance"] = fit.ks_at_kstar;
    j["positive_count"] = fit.positive_count;
    std::cout << j.dump() << '\n';
    if (!dump_curve.empty()) {
      Sink sink(dump_curve);
      sink.get() << "k,iota,ks_distance\n";
      char buf[96];
      for (const KsPoint& p : fit.ks_curve) {
        std::snprintf(buf, sizeof buf, "%zu,%.10g,%.10g\n", p.k, p.index, p.distance);
        sink.get() << buf;
      }
      sink.close();
    }
  }

  void run() {
    const IngestResult data = load(in);
    if (method == "ev-tail") {
      run_tail(data);
      return;
    }
    ThetaEstimate e;
    if (method == "ev") {
      EvOptions opt;
      opt.n_tail = ntail;
      opt.ntail_auto = ntail_auto;
      opt.drop_max_indegree = drop_max_indegree;
      opt.profile.exclude_axis = exclude_axis;
      e = ev_full_pipeline(data.snapshot, opt);
    } else if (method == "mle") {
      if (!data.history) {
        throw DataError(data.history_unavailable
                            ? "MLE needs a consistent growth history; this file's history "
                              "could not be replayed"
                            : "MLE needs a 4-column growth history with scheme labels");
      }
      e = mle_estimate(*data.history);
    } else if (method == "sn") {
      e = snapshot_estimate(data.snapshot);
    } else {
      throw InvalidArgument("unknown method: " + method);
    }
    std::cout << estimate_json(e).dump() << '\n';
    if (!quiet) print_table(std::cerr, e);
  }
};

struct TheoryCmd {
  std::string model = "linear";
  ParamFlags params;
  std::optional<std::size_t> pmf;
  std::string out;

  void run() {
    json j;
    j["model"] = model;
    if (model == "linear") {
      const TailIndices t = linear_pa_indices(params.base());
      j["iota_in"] = t.iota_in;
      j["iota_out"] = t.iota_out;
      if (pmf) throw InvalidArgument("--pmf requires the superstar model");
    } else if (model == "superstar") {
      const SuperstarParams sp = SuperstarParams::make(params.p, params.base());
      const TailIndices t = superstar_indices(sp);
      j["p"] = params.p;
      j["iota_in"] = t.iota_in;
      j["iota_out"] = t.iota_out;
      std::cout << j.dump() << '\n';
      if (pmf) {
        const LimitPmf q = superstar_indegree_pmf(sp, *pmf);
        Sink sink(out);
        sink.get() << "i,q\n";
        char buf[64];
        for (std::size_t i = 0; i < q.values.size(); ++i) {
          std::snprintf(buf, sizeof buf, "%zu,%.15g\n", i, q.values[i]);
          sink.get() << buf;
        }
        sink.close();
      }
      return;
    } else {
      throw InvalidArgument("unknown model: " + model);
    }
    std::cout << j.dump() << '\n';
  }
};

struct ExperimentCmd {
  std::string config;
  std::optional<std::size_t> reps;
  std::optional<std::size_t> threads;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed_base;
  std::string out;
  bool timing = false;

  void run() {
    std::ifstream f(config);
    if (!f) throw DataError("cannot open " + config);
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw DataError(std::string("config is not valid JSON: ") + e.what());
    }
    const std::string kind = j.is_object() ? j.value("kind", std::string("experiment")) : "";
    if (kind == "table1") {
      Table1Spec spec = table1_spec_from_json(j);
      if (reps) spec.replications = *reps;
      if (threads) spec.threads = *threads;
      if (n) spec.n = *n;
      if (seed_base) spec.seed_base = *seed_base;
      const std::string path = !out.empty() ? out : j.value("output", std::string());
      const std::vector<Table1Row> rows = table1_experiment(spec);
      Sink sink(path);
      write_table1_csv(sink.get(), rows, spec.k_list);
      sink.close();
      return;
    }
    if (kind != "experiment") throw InvalidArgument("unknown config kind: " + kind);
    ExperimentSpec spec = experiment_spec_from_json(j);
    if (reps) spec.replications = *reps;
    if (threads) spec.threads = *threads;
    if (n) spec.n = *n;
    if (seed_base) spec.seed_base = *seed_base;
    if (!out.empty()) spec.output_path = out;
    if (timing) spec.timing = true;
    spec.validate();
    Sink sink(spec.output_path);
    run_experiment(spec, &sink.get());
    sink.close();
  }
};

struct ReportCmd {
  std::string in;
  std::string out;

  void run() {
    const IngestResult data = load(in);
    Sink sink(out);
    write_degree_report_csv(sink.get(), degree_distribution_report(data.snapshot));
    sink.close();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and estimation for directed preferential attachment networks"};
  app.require_subcommand(1);

  SimulateCmd sim;
  auto* s = app.add_subcommand("simulate", "Grow a network and write its edge list");
  s->add_option("--model", sim.model, "linear | superstar")->capture_default_str();
  sim.params.add_to(s);
  s->add_option("--n", sim.n, "number of edges")->capture_default_str();
  s->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
  s->add_option("--out", sim.out, "output file (default stdout)");
  s->add_flag("--history", sim.history, "write the 4-column growth history");

  PerturbCmd per;
  auto* p = app.add_subcommand("perturb", "Corrupt an edge list by random additions or deletions");
  p->add_option("--mode", per.mode, "add | delete")->required();
  p->add_option("--prob", per.prob, "corruption probability")->required();
  p->add_option("--seed", per.seed, "RNG seed")->capture_default_str();
  p->add_option("--in", per.in, "input edge list")->required();
  p->add_option("--out", per.out, "output file (default stdout)");

  EstimateCmd est;
  auto* e = app.add_subcommand("estimate", "Estimate model parameters from an edge list");
  e->add_option("--method", est.method, "ev | ev-tail | mle | sn")->capture_default_str();
  e->add_option("--in", est.in, "input edge list")->required();
  e->add_option("--column", est.column, "in | out (ev-tail)")->capture_default_str();
  e->add_option("--dump-curve", est.dump_curve, "write (k, iota(k), D_k) CSV (ev-tail)");
  e->add_option("--ntail", est.ntail, "number of tail points (ev)")->capture_default_str();
  e->add_flag("--ntail-auto", est.ntail_auto, "choose ntail from the radii (ev)");
  e->add_flag("--drop-max-indegree", est.drop_max_indegree, "drop the largest in-degree node (ev)");
  e->add_flag("--exclude-axis", est.exclude_axis, "drop tail angles on the axes (ev)");
  e->add_flag("--quiet", est.quiet, "omit the table on stderr");

  TheoryCmd th;
  auto* t = app.add_subcommand("theory", "Closed-form tail indices and limiting pmf");
  t->add_option("--model", th.model, "linear | superstar")->capture_default_str();
  th.params.add_to(t);
  t->add_option("--pmf", th.pmf, "print q_0..q_imax as CSV (superstar)");
  t->add_option("--out", th.out, "pmf output file (default stdout)");

  ExperimentCmd ex;
  auto* x = app.add_subcommand("experiment", "Run a replicated experiment from a JSON config");
  x->add_option("--config", ex.config, "JSON config file")->required();
  x->add_option("--reps", ex.reps, "override replications");
  x->add_option("--threads", ex.threads, "worker threads (default PAEV_THREADS or all cores)");
  x->add_option("--n", ex.n, "override edge count");
  x->add_option("--seed-base", ex.seed_base, "override seed base");
  x->add_option("--out", ex.out, "output CSV (default config output or stdout)");
  x->add_flag("--timing", ex.timing, "add a wall_ms column");

  ReportCmd rep;
  auto* r = app.add_subcommand("report", "Empirical in- and out-degree frequencies as CSV");
  r->add_option("--in", rep.in, "input edge list")->required();
  r->add_option("--out", rep.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (s->parsed()) sim.run();
    if (p->parsed()) per.run();
    if (e->parsed()) est.run();
    if (t->parsed()) th.run();
    if (x->parsed()) ex.run();
    if (r->parsed()) rep.run();
  } catch (const paev::Error& err) {
    std::cerr << "error: " << err.what() << '\n';
    return paev::exit_code(err);
  } catch (const nlohmann::json::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 3;
  }
  return 0;
}
