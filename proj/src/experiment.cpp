#include "paev/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <thread>

#include "paev/angular.hpp"
#include "paev/errors.hpp"
#include "paev/likelihood.hpp"
#include "paev/random.hpp"
#include "paev/simulate.hpp"
#include "paev/tail.hpp"
#include "paev/theory.hpp"

namespace paev {

namespace {

// Runs work(i) for i in [0, count) on `threads` workers and hands results to
// sink(i, value) on the calling thread in index order.
template <class T, class Work, class Sink>
void ordered_parallel(std::size_t count, std::size_t threads, Work work, Sink sink) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      T v = work(i);
      sink(i, v);
    }
    return;
  }
  std::vector<std::optional<T>> slots(count);
  std::exception_ptr failure;
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      std::optional<T> v;
      std::exception_ptr err;
      try {
        v.emplace(work(i));
      } catch (...) {
        err = std::current_exception();
      }
      {
        std::lock_guard<std::mutex> lock(mu);
        if (err && !failure) failure = err;
        slots[i] = std::move(v);
        if (!slots[i]) slots[i].emplace();  // unblock the writer
      }
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::size_t i = 0; i < count; ++i) {
    T v;
    {
      std::unique_lock<std::mutex> lock(mu);
      cv.wait(lock, [&] { return slots[i].has_value(); });
      if (failure) break;
      v = std::move(*slots[i]);
      slots[i].reset();
    }
    sink(i, v);
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  out += '"';
  return out;
}

std::string diagnostics_field(const ThetaEstimate& e) {
  std::string out;
  for (const auto& [k, v] : e.diagnostics) {
    if (!out.empty()) out += ';';
    out += k + "=" + fmt(v);
  }
  return out;
}

void write_row(std::ostream& out, const ResultRow& r, bool timing) {
  const ThetaEstimate& e = r.estimate;
  out << csv_quote(r.experiment) << ',' << fmt(r.setting) << ',' << r.replication << ','
      << r.seed << ',' << to_string(r.method) << ',' << (r.status == 0 ? "ok" : "error")
      << ',' << r.status;
  for (const std::string& p : estimate_parameters()) {
    out << ',' << (r.status == 0 ? fmt(parameter_value(e, p)) : "");
  }
  out << ',' << csv_quote(diagnostics_field(e)) << ',' << csv_quote(r.message);
  if (timing) out << ',' << fmt(r.wall_ms);
  out << '\n';
}

void write_header(std::ostream& out, bool timing) {
  const auto& cols = result_columns(timing);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

struct Realisation {
  DegreeSnapshot snapshot;
  GrowthHistory history;
  EventMask removed;  // deletion runs only
  bool has_mask = false;
};

Realisation realise(const ExperimentSpec& spec, double setting, std::uint64_t seed) {
  SimConfig cfg;
  cfg.target_edges = spec.n;
  cfg.seed = seed;
  const bool wants_mle =
      std::find(spec.methods.begin(), spec.methods.end(), Method::kMle) != spec.methods.end();
  cfg.emit_history = wants_mle || spec.model == ExperimentModel::kDeleteCorrupt;
  Realisation out;
  SimResult sim;
  switch (spec.model) {
    case ExperimentModel::kLinear:
      sim = simulate_linear_pa(spec.params, cfg);
      break;
    case ExperimentModel::kSuperstar:
      sim = simulate_superstar(SuperstarParams::make(setting, spec.params), cfg);
      break;
    case ExperimentModel::kAddCorrupt:
      sim = simulate_with_random_additions(spec.params, setting, cfg);
      break;
    case ExperimentModel::kDeleteCorrupt: {
      sim = simulate_linear_pa(spec.params, cfg);
      const EdgeList edges = edges_of(sim.history);
      DeletionResult del = delete_random_edges(edges, setting, mix64(seed, 1));
      sim.snapshot = std::move(del.snapshot);
      const std::size_t n0 = sim.history.initial_edge_count();
      out.removed.assign(del.removed.begin() + static_cast<std::ptrdiff_t>(n0), del.removed.end());
      out.has_mask = true;
      break;
    }
  }
  out.snapshot = std::move(sim.snapshot);
  out.history = std::move(sim.history);
  return out;
}

std::vector<ResultRow> run_replication(const ExperimentSpec& spec, double setting,
                                       std::size_t r) {
  const std::uint64_t seed = replication_seed(spec.seed_base, r);
  const Realisation real = realise(spec, setting, seed);
  std::vector<ResultRow> rows;
  for (Method m : spec.methods) {
    ResultRow row;
    row.experiment = spec.id;
    row.setting = setting;
    row.replication = r;
    row.seed = seed;
    row.method = m;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      switch (m) {
        case Method::kEv: {
          EvOptions opt;
          opt.n_tail = spec.n_tail;
          opt.ntail_auto = spec.ntail_auto;
          opt.drop_max_indegree = spec.drop_max_indegree;
          opt.profile.exclude_axis = spec.exclude_axis;
          row.estimate = ev_full_pipeline(real.snapshot, opt);
          break;
        }
        case Method::kMle:
          row.estimate = mle_estimate(real.history, real.has_mask ? &real.removed : nullptr);
          break;
        case Method::kSn:
          row.estimate = snapshot_estimate(real.snapshot);
          break;
      }
      row.estimate.method = m;
      for (const std::string& w : row.estimate.warnings) {
        row.message += (row.message.empty() ? "" : " | ") + w;
      }
    } catch (const Error& e) {
      row.status = static_cast<int>(e.kind());
      row.message = e.what();
    } catch (const std::exception& e) {
      row.status = static_cast<int>(ErrorKind::kNumerical);
      row.message = e.what();
    }
    row.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SummaryRow> summarise(const ExperimentSpec& spec, const ExperimentResult& res) {
  std::vector<SummaryRow> out;
  for (double setting : spec.sweep) {
    for (Method m : spec.methods) {
      for (const std::string& p : estimate_parameters()) {
        std::vector<double> v = res.values(setting, m, p);
        SummaryRow s;
        s.setting = setting;
        s.method = m;
        s.parameter = p;
        s.count = v.size();
        if (v.empty()) {
          s.mean = s.q025 = s.q975 = std::nan("");
        } else {
          double sum = 0.0;
          for (double x : v) sum += x;
          s.mean = sum / static_cast<double>(v.size());
          s.q025 = nearest_rank_quantile(v, 0.025);
          s.q975 = nearest_rank_quantile(v, 0.975);
        }
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw InvalidArgument("experiment config must be a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      throw InvalidArgument("unknown experiment config key: " + item.key());
    }
  }
}

PaParams params_from_json(const nlohmann::json& j) {
  if (j.is_array()) {
    if (j.size() != 5) throw InvalidArgument("params array needs 5 entries");
    return PaParams::make(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
                          j[3].get<double>(), j[4].get<double>());
  }
  reject_unknown(j, {"alpha", "beta", "gamma", "delta_in", "delta_out"});
  return PaParams::make(j.at("alpha").get<double>(), j.at("beta").get<double>(),
                        j.at("gamma").get<double>(), j.at("delta_in").get<double>(),
                        j.at("delta_out").get<double>());
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::string to_string(ExperimentModel m) {
  switch (m) {
    case ExperimentModel::kLinear: return "LINEAR";
    case ExperimentModel::kSuperstar: return "SUPERSTAR";
    case ExperimentModel::kAddCorrupt: return "ADD_CORRUPT";
    case ExperimentModel::kDeleteCorrupt: return "DELETE_CORRUPT";
  }
  return "?";
}

ExperimentModel experiment_model_from_string(const std::string& s) {
  const std::string u = upper(s);
  if (u == "LINEAR") return ExperimentModel::kLinear;
  if (u == "SUPERSTAR") return ExperimentModel::kSuperstar;
  if (u == "ADD_CORRUPT" || u == "ADD") return ExperimentModel::kAddCorrupt;
  if (u == "DELETE_CORRUPT" || u == "DELETE") return ExperimentModel::kDeleteCorrupt;
  throw InvalidArgument("unknown experiment model: " + s);
}

Method method_from_string(const std::string& s) {
  const std::string u = upper(s);
  if (u == "EV") return Method::kEv;
  if (u == "MLE") return Method::kMle;
  if (u == "SN") return Method::kSn;
  throw InvalidArgument("unknown method: " + s);
}

void ExperimentSpec::validate() const {
  params.validate();
  if (n < 10) throw InvalidArgument("experiment n must be at least 10");
  if (replications < 1) throw InvalidArgument("replications must be at least 1");
  if (methods.empty()) throw InvalidArgument("at least one method is required");
  if (sweep.empty()) throw InvalidArgument("sweep must hold at least one value");
  if (n_tail < 10) throw InvalidArgument("n_tail must be at least 10");
  for (double v : sweep) {
    if (!(v >= 0.0 && v < 1.0)) throw InvalidArgument("sweep values must lie in [0, 1)");
  }
  if (model == ExperimentModel::kLinear && (sweep.size() != 1 || sweep[0] != 0.0)) {
    throw InvalidArgument("the linear model takes no sweep");
  }
}

ExperimentSpec experiment_spec_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"kind", "id", "model", "params", "sweep", "p", "probability", "n",
                     "replications", "methods", "n_tail", "ntail_auto", "drop_max_indegree",
                     "exclude_axis", "seed_base", "output", "threads", "timing"});
  ExperimentSpec s;
  try {
    s.id = get_or<std::string>(j, "id", s.id);
    if (j.contains("model")) s.model = experiment_model_from_string(j.at("model").get<std::string>());
    if (j.contains("params")) s.params = params_from_json(j.at("params"));
    if (j.contains("sweep")) {
      s.sweep = j.at("sweep").get<std::vector<double>>();
    } else if (j.contains("p")) {
      s.sweep = {j.at("p").get<double>()};
    } else if (j.contains("probability")) {
      s.sweep = {j.at("probability").get<double>()};
    }
    s.n = get_or<std::size_t>(j, "n", s.n);
    s.replications = get_or<std::size_t>(j, "replications", s.replications);
    if (j.contains("methods")) {
      s.methods.clear();
      for (const auto& m : j.at("methods")) s.methods.push_back(method_from_string(m.get<std::string>()));
    }
    s.n_tail = get_or<std::size_t>(j, "n_tail", s.n_tail);
    s.ntail_auto = get_or<bool>(j, "ntail_auto", s.ntail_auto);
    s.drop_max_indegree = get_or<bool>(j, "drop_max_indegree", s.drop_max_indegree);
    s.exclude_axis = get_or<bool>(j, "exclude_axis", s.exclude_axis);
    s.seed_base = get_or<std::uint64_t>(j, "seed_base", s.seed_base);
    s.output_path = get_or<std::string>(j, "output", s.output_path);
    s.threads = get_or<std::size_t>(j, "threads", s.threads);
    s.timing = get_or<bool>(j, "timing", s.timing);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad experiment config: ") + e.what());
  }
  s.validate();
  return s;
}

double ExperimentResult::mean(double setting, Method method, const std::string& parameter) const {
  const std::vector<double> v = values(setting, method, parameter);
  if (v.empty()) return std::nan("");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::vector<double> ExperimentResult::values(double setting, Method method,
                                             const std::string& parameter) const {
  std::vector<double> v;
  for (const ResultRow& r : rows) {
    if (r.status != 0 || r.method != method || r.setting != setting) continue;
    const double x = parameter_value(r.estimate, parameter);
    if (std::isfinite(x)) v.push_back(x);
  }
  return v;
}

const std::vector<std::string>& result_columns(bool timing) {
  static const std::vector<std::string> base = {
      "experiment", "setting",   "replication", "seed",    "method",      "status",
      "error_kind", "alpha",     "beta",        "gamma",   "delta_in",    "delta_out",
      "iota_in",    "iota_out",  "diagnostics", "message"};
  static const std::vector<std::string> timed = [] {
    auto v = base;
    v.push_back("wall_ms");
    return v;
  }();
  return timing ? timed : base;
}

const std::vector<std::string>& estimate_parameters() {
  static const std::vector<std::string> p = {"alpha",     "beta",    "gamma",   "delta_in",
                                             "delta_out", "iota_in", "iota_out"};
  return p;
}

double parameter_value(const ThetaEstimate& e, const std::string& parameter) {
  if (parameter == "alpha") return e.params.alpha;
  if (parameter == "beta") return e.params.beta;
  if (parameter == "gamma") return e.params.gamma;
  if (parameter == "delta_in") return e.params.delta_in;
  if (parameter == "delta_out") return e.params.delta_out;
  if (parameter == "iota_in") return e.iota_in;
  if (parameter == "iota_out") return e.iota_out;
  throw InvalidArgument("unknown parameter: " + parameter);
}

double nearest_rank_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("PAEV_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t replication_seed(std::uint64_t seed_base, std::size_t replication) {
  return mix64(seed_base, replication);
}

ExperimentResult run_experiment(const ExperimentSpec& spec, std::ostream* out) {
  spec.validate();
  const std::size_t threads = spec.threads ? spec.threads : default_thread_count();
  const std::size_t reps = spec.replications;
  const std::size_t jobs = spec.sweep.size() * reps;
  ExperimentResult res;
  if (out) write_header(*out, spec.timing);
  ordered_parallel<std::vector<ResultRow>>(
      jobs, threads,
      [&](std::size_t i) { return run_replication(spec, spec.sweep[i / reps], i % reps); },
      [&](std::size_t, std::vector<ResultRow>& rows) {
        for (ResultRow& r : rows) {
          if (out) write_row(*out, r, spec.timing);
          res.rows.push_back(std::move(r));
        }
        if (out) out->flush();
      });
  res.summary = summarise(spec, res);
  if (out) {
    *out << "# summary\nsetting,method,parameter,count,mean,q025,q975\n";
    for (const SummaryRow& s : res.summary) {
      *out << fmt(s.setting) << ',' << to_string(s.method) << ',' << s.parameter << ','
           << s.count << ',' << fmt(s.mean) << ',' << fmt(s.q025) << ',' << fmt(s.q975) << '\n';
    }
    out->flush();
  }
  return res;
}

namespace {

struct Table1Cell {
  bool ok = true;
  double mle_in = 0.0;
  double mle_out = 0.0;
  double ev_in = 0.0;
  double ev_out = 0.0;
  std::vector<std::pair<double, double>> hill;
};

Table1Cell table1_cell(const Table1Spec& spec, double p, std::size_t r) {
  SimConfig cfg;
  cfg.target_edges = spec.n;
  cfg.seed = replication_seed(spec.seed_base, r);
  const SuperstarParams params = SuperstarParams::make(p, PaParams::make(0.3, 0.4, 0.3, 1.0, 1.0));
  Table1Cell c;
  try {
    const SimResult sim = simulate_superstar(params, cfg);
    const ThetaEstimate mle = mle_estimate(sim.history);
    c.mle_in = mle.iota_in;
    c.mle_out = mle.iota_out;
    const std::vector<double> in = sim.snapshot.in_degrees();
    const std::vector<double> out = sim.snapshot.out_degrees();
    c.ev_in = minimum_distance_fit(in).index_estimate;
    c.ev_out = minimum_distance_fit(out).index_estimate;
    for (std::size_t k : spec.k_list) {
      c.hill.emplace_back(hill_estimate(in, k).index(), hill_estimate(out, k).index());
    }
  } catch (const Error&) {
    c.ok = false;
  }
  return c;
}

}  // namespace

std::vector<Table1Row> table1_experiment(const Table1Spec& spec) {
  if (spec.replications < 1) throw InvalidArgument("replications must be at least 1");
  if (spec.p_list.empty()) throw InvalidArgument("p_list must not be empty");
  for (double p : spec.p_list) {
    if (!(p >= 0.0 && p < 1.0)) throw InvalidArgument("p values must lie in [0, 1)");
  }
  const std::size_t threads = spec.threads ? spec.threads : default_thread_count();
  const std::size_t reps = spec.replications;
  std::vector<Table1Row> rows(spec.p_list.size());
  std::vector<std::size_t> ok(spec.p_list.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].p = spec.p_list[i];
    const TailIndices t =
        superstar_indices(SuperstarParams::make(rows[i].p, PaParams::make(0.3, 0.4, 0.3, 1.0, 1.0)));
    rows[i].true_in = t.iota_in;
    rows[i].true_out = t.iota_out;
    for (std::size_t k : spec.k_list) rows[i].hill[k] = {0.0, 0.0};
  }
  ordered_parallel<Table1Cell>(
      rows.size() * reps, threads,
      [&](std::size_t i) { return table1_cell(spec, spec.p_list[i / reps], i % reps); },
      [&](std::size_t i, Table1Cell& c) {
        Table1Row& row = rows[i / reps];
        if (!c.ok) {
          ++row.failures;
          return;
        }
        ++ok[i / reps];
        row.mle_in += c.mle_in;
        row.mle_out += c.mle_out;
        row.ev_in += c.ev_in;
        row.ev_out += c.ev_out;
        for (std::size_t k = 0; k < spec.k_list.size(); ++k) {
          row.hill[spec.k_list[k]].first += c.hill[k].first;
          row.hill[spec.k_list[k]].second += c.hill[k].second;
        }
      });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double m = ok[i] ? static_cast<double>(ok[i]) : std::nan("");
    rows[i].mle_in /= m;
    rows[i].mle_out /= m;
    rows[i].ev_in /= m;
    rows[i].ev_out /= m;
    for (auto& [k, v] : rows[i].hill) {
      v.first /= m;
      v.second /= m;
    }
  }
  return rows;
}

Table1Spec table1_spec_from_json(const nlohmann::json& j) {
  reject_unknown(j, {"kind", "n", "replications", "p_list", "k_list", "seed_base", "threads",
                     "output"});
  Table1Spec s;
  try {
    s.n = get_or<std::size_t>(j, "n", s.n);
    s.replications = get_or<std::size_t>(j, "replications", s.replications);
    s.p_list = get_or<std::vector<double>>(j, "p_list", s.p_list);
    s.k_list = get_or<std::vector<std::size_t>>(j, "k_list", s.k_list);
    s.seed_base = get_or<std::uint64_t>(j, "seed_base", s.seed_base);
    s.threads = get_or<std::size_t>(j, "threads", s.threads);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad table1 config: ") + e.what());
  }
  return s;
}

void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows,
                      const std::vector<std::size_t>& k_list) {
  out << "p,true_in,true_out,mle_in,mle_out,ev_in,ev_out,failures";
  for (std::size_t k : k_list) out << ",hill_in_k" << k << ",hill_out_k" << k;
  out << '\n';
  for (const Table1Row& r : rows) {
    out << fmt(r.p) << ',' << fmt(r.true_in) << ',' << fmt(r.true_out) << ',' << fmt(r.mle_in)
        << ',' << fmt(r.mle_out) << ',' << fmt(r.ev_in) << ',' << fmt(r.ev_out) << ','
        << r.failures;
    for (std::size_t k : k_list) {
      const auto it = r.hill.find(k);
      out << ',' << fmt(it->second.first) << ',' << fmt(it->second.second);
    }
    out << '\n';
  }
}

}  // namespace paev
