#include "paev/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "paev/degrees.hpp"
#include "paev/errors.hpp"
#include "paev/theory.hpp"

namespace paev {

namespace {

constexpr double kClampFloor = 1e-8;

// Graph state seen by each PA step: N(t-1) and t-1.
struct StepState {
  double nodes;
  double edges;
};

struct Replay {
  std::size_t alpha = 0;
  std::size_t beta = 0;
  std::size_t gamma = 0;
  std::vector<StepState> in_steps;   // used events with J in {1, 2}
  std::vector<StepState> out_steps;  // used events with J in {2, 3}
  std::vector<double> in_hits;       // per in-step: I_{t-1}(target)
  std::vector<double> out_hits;      // per out-step: O_{t-1}(source)
  std::vector<double> in_counts;     // in_counts[i] = # in-steps hitting in-degree i
  std::vector<double> out_counts;
};

void bump(std::vector<double>& v, std::size_t i) {
  if (v.size() <= i) v.resize(i + 1, 0.0);
  v[i] += 1.0;
}

Replay replay(const GrowthHistory& history, const EventMask* removed) {
  validate_history(history);
  if (removed != nullptr && removed->size() != history.events.size()) {
    throw InvalidArgument("event mask length differs from the number of events");
  }
  std::size_t nodes = history.initial_node_count;
  std::vector<NodeDegree> deg(nodes + history.events.size() + 1);
  for (const Edge& e : history.initial_edges) {
    ++deg[e.source].out;
    ++deg[e.target].in;
  }
  Replay r;
  double edges = static_cast<double>(history.initial_edge_count());
  for (std::size_t k = 0; k < history.events.size(); ++k) {
    const GrowthEvent& ev = history.events[k];
    const bool used = removed == nullptr || !(*removed)[k];
    const StepState state{static_cast<double>(nodes), edges};
    if (used) {
      if (ev.scheme != Scheme::kGamma) {
        r.in_steps.push_back(state);
        r.in_hits.push_back(deg[ev.target].in);
        bump(r.in_counts, deg[ev.target].in);
      }
      if (ev.scheme != Scheme::kAlpha) {
        r.out_steps.push_back(state);
        r.out_hits.push_back(deg[ev.source].out);
        bump(r.out_counts, deg[ev.source].out);
      }
      switch (ev.scheme) {
        case Scheme::kAlpha: ++r.alpha; break;
        case Scheme::kBeta: ++r.beta; break;
        case Scheme::kGamma: ++r.gamma; break;
      }
    }
    if (ev.scheme != Scheme::kBeta) ++nodes;
    ++deg[ev.source].out;
    ++deg[ev.target].in;
    edges += 1.0;
  }
  return r;
}

double denominator_sum(const std::vector<StepState>& steps, double delta) {
  double s = 0.0;
  for (const StepState& st : steps) s += st.nodes / (st.edges + delta * st.nodes);
  return s;
}

std::shared_ptr<const std::vector<StepState>> share(std::vector<StepState> v) {
  return std::make_shared<const std::vector<StepState>>(std::move(v));
}

// sum_i numer[i]/(i+delta) - sum_t N/(t-1+delta N)
ScoreEquation grouped_equation(std::vector<double> numer, std::vector<StepState> steps,
                               std::string label) {
  auto num = std::make_shared<const std::vector<double>>(std::move(numer));
  auto st = share(std::move(steps));
  ScoreEquation eq;
  eq.label = std::move(label);
  eq.evaluate = [num, st](double delta) {
    double s = 0.0;
    for (std::size_t i = 0; i < num->size(); ++i) {
      if ((*num)[i] != 0.0) s += (*num)[i] / (static_cast<double>(i) + delta);
    }
    return s - denominator_sum(*st, delta);
  };
  return eq;
}

void fill_probabilities(MleEquations& m, const Replay& r) {
  m.used_events = r.alpha + r.beta + r.gamma;
  if (m.used_events == 0) throw DataError("history required: no growth events to estimate from");
  const double total = static_cast<double>(m.used_events);
  m.alpha = static_cast<double>(r.alpha) / total;
  m.beta = static_cast<double>(r.beta) / total;
  m.gamma = 1.0 - m.alpha - m.beta;
}

std::vector<double> tail_numerators(const std::vector<std::size_t>& final_tail,
                                    const std::vector<std::size_t>& initial_tail,
                                    std::size_t births_at_one) {
  std::vector<double> out(final_tail.size(), 0.0);
  for (std::size_t i = 0; i < final_tail.size(); ++i) {
    const double init = i < initial_tail.size() ? static_cast<double>(initial_tail[i]) : 0.0;
    out[i] = static_cast<double>(final_tail[i]) - init;
  }
  // Nodes born with degree 1 pass 0 -> 1 without a PA step.
  if (!out.empty()) out[0] -= static_cast<double>(births_at_one);
  return out;
}

DegreeSnapshot initial_snapshot(const GrowthHistory& history) {
  EdgeList list;
  list.node_count = history.initial_node_count;
  list.edges = history.initial_edges;
  return snapshot_from_edges(list);
}

}  // namespace

RootResult solve_score(const ScoreEquation& eq) {
  RootOptions opt;
  opt.lo = eq.lo;
  opt.hi = eq.hi;
  opt.label = eq.label;
  return solve_expanding_bisection(eq.evaluate, opt);
}

MleEquations mle_equations(const GrowthHistory& history, const EventMask* removed) {
  Replay r = replay(history, removed);
  MleEquations m;
  fill_probabilities(m, r);
  if (removed == nullptr) {
    // Tail-sum form: N_{>i}(n) - N_{>i}(n0), less the unit-degree births at i = 0.
    const JointCounts fin = joint_counts(snapshot_from_history(history));
    const JointCounts ini = joint_counts(initial_snapshot(history));
    r.in_counts.clear();
    r.out_counts.clear();
    std::vector<double> in_num = tail_numerators(fin.in_tail, ini.in_tail, r.gamma);
    std::vector<double> out_num = tail_numerators(fin.out_tail, ini.out_tail, r.alpha);
    m.in = grouped_equation(std::move(in_num), std::move(r.in_steps), "MLE delta_in");
    m.out = grouped_equation(std::move(out_num), std::move(r.out_steps), "MLE delta_out");
  } else {
    m.in = grouped_equation(std::move(r.in_counts), std::move(r.in_steps), "MLE delta_in");
    m.out = grouped_equation(std::move(r.out_counts), std::move(r.out_steps),
                             "MLE delta_out");
  }
  return m;
}

MleEquations mle_equations_per_event(const GrowthHistory& history, const EventMask* removed) {
  Replay r = replay(history, removed);
  MleEquations m;
  fill_probabilities(m, r);
  auto make = [](std::vector<double> hits, std::vector<StepState> steps, std::string label) {
    auto h = std::make_shared<const std::vector<double>>(std::move(hits));
    auto st = share(std::move(steps));
    ScoreEquation eq;
    eq.label = std::move(label);
    eq.evaluate = [h, st](double delta) {
      double s = 0.0;
      for (std::size_t k = 0; k < h->size(); ++k) {
        const StepState& x = (*st)[k];
        s += 1.0 / ((*h)[k] + delta) - x.nodes / (x.edges + delta * x.nodes);
      }
      return s;
    };
    return eq;
  };
  m.in = make(std::move(r.in_hits), std::move(r.in_steps), "MLE delta_in");
  m.out = make(std::move(r.out_hits), std::move(r.out_steps), "MLE delta_out");
  return m;
}

ThetaEstimate mle_estimate(const GrowthHistory& history, const EventMask* removed) {
  const MleEquations m = mle_equations(history, removed);
  ThetaEstimate est;
  est.method = Method::kMle;
  est.params.alpha = m.alpha;
  est.params.beta = m.beta;
  est.params.gamma = m.gamma;
  const RootResult rin = solve_score(m.in);
  const RootResult rout = solve_score(m.out);
  est.params.delta_in = rin.root;
  est.params.delta_out = rout.root;
  // Indices are undefined when a scheme mix vanishes; report NaN then.
  try {
    const TailIndices t = linear_pa_indices(est.params);
    est.iota_in = t.iota_in;
    est.iota_out = t.iota_out;
  } catch (const InvalidArgument& e) {
    est.iota_in = est.iota_out = std::nan("");
    est.warnings.emplace_back(e.what());
  }
  est.diagnostics["events_used"] = static_cast<double>(m.used_events);
  est.diagnostics["residual_in"] = m.in(rin.root);
  est.diagnostics["residual_out"] = m.out(rout.root);
  if (removed != nullptr) {
    est.diagnostics["events_removed"] =
        static_cast<double>(history.events.size() - m.used_events);
  }
  return est;
}

ScoreEquation sn_final_equation(const std::vector<double>& tail, double same_side,
                                double beta, const std::string& label) {
  auto t = std::make_shared<const std::vector<double>>(tail);
  const double births = 1.0 - same_side - beta;
  const double rate = (same_side + beta) * (1.0 - beta);
  ScoreEquation eq;
  eq.label = label;
  eq.evaluate = [t, births, rate, beta](double delta) {
    double s = 0.0;
    for (std::size_t i = 0; i < t->size(); ++i) {
      if ((*t)[i] != 0.0) s += (*t)[i] / (static_cast<double>(i) + delta);
    }
    return s - births / delta - rate / (1.0 + (1.0 - beta) * delta);
  };
  return eq;
}

namespace {

// Steps 2 and 4: sum_{i>=1} T_i i/(i+d) (1 + d(1-b)) - (z + b)/(1 - z d/(1+(1-b)d)).
// Both sides equal z + b at d = 0 because the degrees sum to n, so the
// residual is divided by d to leave only the nontrivial root.
ScoreEquation sn_initial_equation(const std::vector<double>& tail, double zero, double beta,
                                  const std::string& label) {
  auto t = std::make_shared<const std::vector<double>>(tail);
  ScoreEquation eq;
  eq.label = label;
  // sum_{i>=1} T_i = zero + beta exactly, so the residual over delta is
  // evaluated without the cancellation of the raw difference.
  eq.evaluate = [t, zero, beta](double delta) {
    double s = 0.0;
    for (std::size_t i = 1; i < t->size(); ++i) {
      if ((*t)[i] != 0.0) s += (*t)[i] / (static_cast<double>(i) + delta);
    }
    const double births = 1.0 - beta;
    const double rest = births - zero;
    return (1.0 + births * delta) * ((zero + beta) * rest / (1.0 + rest * delta) - s);
  };
  return eq;
}

double sn_probability(double zero, double beta, double delta) {
  return (zero + beta) / (1.0 - zero * delta / (1.0 + (1.0 - beta) * delta)) - beta;
}

RootResult solve_step(const ScoreEquation& eq) {
  try {
    return solve_score(eq);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("snapshot estimate failed at ") + e.what());
  }
}

std::vector<double> normalise_tail(const std::vector<std::size_t>& tail, double n) {
  std::vector<double> out(tail.size());
  for (std::size_t i = 0; i < tail.size(); ++i) out[i] = static_cast<double>(tail[i]) / n;
  return out;
}

}  // namespace

SnEquations sn_equations(const DegreeSnapshot& snapshot) {
  if (snapshot.edge_count == 0) throw DataError("empty snapshot");
  const JointCounts jc = joint_counts(snapshot);
  SnEquations s;
  s.n = static_cast<double>(snapshot.edge_count);
  s.beta = 1.0 - static_cast<double>(snapshot.node_count()) / s.n;  // step 1
  s.in_zero = static_cast<double>(jc.in_count(0)) / s.n;
  s.out_zero = static_cast<double>(jc.out_count(0)) / s.n;
  s.in_tail = normalise_tail(jc.in_tail, s.n);
  s.out_tail = normalise_tail(jc.out_tail, s.n);
  s.step2 = sn_initial_equation(s.in_tail, s.in_zero, s.beta, "SN step 2 (delta_in^0)");
  s.step4 = sn_initial_equation(s.out_tail, s.out_zero, s.beta, "SN step 4 (delta_out^0)");
  return s;
}

ThetaEstimate snapshot_estimate(const DegreeSnapshot& snapshot) {
  const SnEquations s = sn_equations(snapshot);
  ThetaEstimate est;
  est.method = Method::kSn;
  if (!(s.beta >= 0.0 && s.beta < 1.0)) {
    throw DataError("snapshot has more nodes than edges: beta estimate out of range");
  }
  if (s.in_zero == 0.0) est.warnings.emplace_back("step 3 degenerate: no node has in-degree 0");
  if (s.out_zero == 0.0) est.warnings.emplace_back("step 5 degenerate: no node has out-degree 0");

  const RootResult d_in0 = solve_step(s.step2);
  double alpha0 = sn_probability(s.in_zero, s.beta, d_in0.root);  // step 3
  const RootResult d_out0 = solve_step(s.step4);
  double gamma0 = sn_probability(s.out_zero, s.beta, d_out0.root);  // step 5
  est.diagnostics["alpha0"] = alpha0;
  est.diagnostics["gamma0"] = gamma0;
  est.diagnostics["delta_in0"] = d_in0.root;
  est.diagnostics["delta_out0"] = d_out0.root;
  if (!(alpha0 > 0.0)) {
    est.warnings.emplace_back("alpha^0 = " + std::to_string(alpha0) + " clamped to 1e-8");
    alpha0 = kClampFloor;
  }
  if (!(gamma0 > 0.0)) {
    est.warnings.emplace_back("gamma^0 = " + std::to_string(gamma0) + " clamped to 1e-8");
    gamma0 = kClampFloor;
  }
  // Step 6.
  const double births = 1.0 - s.beta;
  est.params.beta = s.beta;
  est.params.alpha = alpha0 * births / (alpha0 + gamma0);
  est.params.gamma = gamma0 * births / (alpha0 + gamma0);

  // Step 7.
  const ScoreEquation fin_in =
      sn_final_equation(s.in_tail, est.params.alpha, s.beta, "SN step 7 (delta_in)");
  const ScoreEquation fin_out =
      sn_final_equation(s.out_tail, est.params.gamma, s.beta, "SN step 7 (delta_out)");
  est.params.delta_in = solve_step(fin_in).root;
  est.params.delta_out = solve_step(fin_out).root;
  try {
    const TailIndices t = linear_pa_indices(est.params);
    est.iota_in = t.iota_in;
    est.iota_out = t.iota_out;
  } catch (const InvalidArgument& e) {
    est.iota_in = est.iota_out = std::nan("");
    est.warnings.emplace_back(e.what());
  }
  return est;
}

}  // namespace paev
