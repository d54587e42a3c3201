#include "paev/simulate.hpp"

#include <cmath>
#include <numeric>

#include "paev/errors.hpp"

namespace paev {

void SimConfig::validate() const {
  if (target_edges < 1) throw InvalidArgument("target_edges must be at least 1");
}

void CorruptionSpec::validate() const {
  if (!(probability >= 0.0 && probability < 1.0)) {
    throw InvalidArgument("corruption probability must lie in [0, 1)");
  }
}

namespace {

Scheme draw_scheme(Rng& rng, const PaParams& p) {
  const double u = rng.uniform();
  if (u < p.alpha) return Scheme::kAlpha;
  if (u < p.alpha + p.beta) return Scheme::kBeta;
  return Scheme::kGamma;
}

// Degree table plus the optional event log, shared by all generators.
class GrowthState {
 public:
  GrowthState(const SimConfig& config, ModelTag tag) : emit_(config.emit_history) {
    result_.history.model_tag = tag;
    result_.snapshot.degrees.reserve(config.target_edges + 2);
    if (emit_) result_.history.events.reserve(config.target_edges);
  }

  void add_initial_node() { result_.snapshot.degrees.push_back({}); }

  void add_initial_edge(Edge e) {
    result_.history.initial_edges.push_back(e);
    bump(e);
  }

  void finish_initial() {
    result_.history.initial_node_count = result_.snapshot.degrees.size();
  }

  NodeId new_node() {
    result_.snapshot.degrees.push_back({});
    return static_cast<NodeId>(result_.snapshot.degrees.size() - 1);
  }

  std::size_t nodes() const noexcept { return result_.snapshot.degrees.size(); }
  std::size_t edges() const noexcept { return result_.snapshot.edge_count; }

  void add_event(Scheme scheme, Edge e, bool to_superstar, bool random) {
    bump(e);
    if (emit_) {
      result_.history.events.push_back(
          {result_.snapshot.edge_count, scheme, e.source, e.target, to_superstar, random});
    }
    if (random) ++result_.random_edges;
  }

  SimResult take() && { return std::move(result_); }

 private:
  void bump(Edge e) {
    ++result_.snapshot.degrees[e.source].out;
    ++result_.snapshot.degrees[e.target].in;
    ++result_.snapshot.edge_count;
  }

  bool emit_;
  SimResult result_;
};

// One linear PA step on the graph whose PA endpoints are in `in_ends` and
// `out_ends`; nodes are 0 .. state.nodes()-1.
void linear_pa_step(Rng& rng, const PaParams& params, GrowthState& state,
                    AttachmentSampler& in_ends, AttachmentSampler& out_ends) {
  const Scheme scheme = draw_scheme(rng, params);
  const std::size_t nodes = state.nodes();
  Edge e;
  switch (scheme) {
    case Scheme::kAlpha:
      e.target = in_ends.draw(rng, params.delta_in, 0, nodes);
      e.source = state.new_node();
      break;
    case Scheme::kBeta:
      e.source = out_ends.draw(rng, params.delta_out, 0, nodes);
      e.target = in_ends.draw(rng, params.delta_in, 0, nodes);
      break;
    case Scheme::kGamma:
      e.source = out_ends.draw(rng, params.delta_out, 0, nodes);
      e.target = state.new_node();
      break;
  }
  in_ends.push(e.target);
  out_ends.push(e.source);
  state.add_event(scheme, e, false, false);
}

}  // namespace

SimResult simulate_linear_pa(const PaParams& params, const SimConfig& config) {
  params.validate();
  config.validate();
  Rng rng(config.seed);
  GrowthState state(config, ModelTag::kLinearPa);
  AttachmentSampler in_ends;
  AttachmentSampler out_ends;
  in_ends.reserve(config.target_edges);
  out_ends.reserve(config.target_edges);

  state.add_initial_node();
  state.add_initial_edge({0, 0});
  state.finish_initial();
  in_ends.push(0);
  out_ends.push(0);

  while (state.edges() < config.target_edges) {
    linear_pa_step(rng, params, state, in_ends, out_ends);
  }
  return std::move(state).take();
}

SimResult simulate_with_random_additions(const PaParams& params, double p_a,
                                         const SimConfig& config) {
  params.validate();
  config.validate();
  CorruptionSpec{CorruptionSpec::Mode::kAdd, p_a}.validate();
  Rng rng(config.seed);
  GrowthState state(config,
                    p_a > 0.0 ? ModelTag::kCorrupted : ModelTag::kLinearPa);
  AttachmentSampler in_ends;  // E^PA only
  AttachmentSampler out_ends;
  in_ends.reserve(config.target_edges);
  out_ends.reserve(config.target_edges);

  state.add_initial_node();
  state.add_initial_edge({0, 0});
  state.finish_initial();
  in_ends.push(0);
  out_ends.push(0);

  while (state.edges() < config.target_edges) {
    // The coin is skipped entirely at p_a = 0 so the stream matches
    // simulate_linear_pa draw for draw.
    if (p_a > 0.0 && rng.uniform() < p_a) {
      const std::size_t nodes = state.nodes();
      Edge e;
      e.source = static_cast<NodeId>(rng.below(nodes));
      e.target = static_cast<NodeId>(rng.below(nodes));
      state.add_event(Scheme::kBeta, e, false, true);
    } else {
      linear_pa_step(rng, params, state, in_ends, out_ends);
    }
  }
  return std::move(state).take();
}

SimResult simulate_superstar(const SuperstarParams& params, const SimConfig& config) {
  params.validate();
  config.validate();
  const PaParams& base = params.base;
  Rng rng(config.seed);
  GrowthState state(config, ModelTag::kSuperstar);
  // In-degree endpoints are the targets of E^0; out-degree endpoints are all
  // sources, node 0 never being one.
  AttachmentSampler in_ends;
  AttachmentSampler out_ends;
  in_ends.reserve(config.target_edges);
  out_ends.reserve(config.target_edges);

  state.add_initial_node();
  state.add_initial_node();
  state.add_initial_edge({1, 0});
  state.finish_initial();
  out_ends.push(1);

  constexpr NodeId kSuperstar = 0;
  while (state.edges() < config.target_edges) {
    const Scheme scheme = draw_scheme(rng, base);
    const bool star = scheme != Scheme::kGamma && rng.bernoulli(params.p);
    const std::size_t ordinary = state.nodes() - 1;
    Edge e;
    switch (scheme) {
      case Scheme::kAlpha:
        e.target = star ? kSuperstar : in_ends.draw(rng, base.delta_in, 1, ordinary);
        e.source = state.new_node();
        break;
      case Scheme::kBeta:
        e.source = out_ends.draw(rng, base.delta_out, 1, ordinary);
        e.target = star ? kSuperstar : in_ends.draw(rng, base.delta_in, 1, ordinary);
        break;
      case Scheme::kGamma:
        e.source = out_ends.draw(rng, base.delta_out, 1, ordinary);
        e.target = state.new_node();
        break;
    }
    if (e.target != kSuperstar) in_ends.push(e.target);
    if (e.source != kSuperstar) out_ends.push(e.source);
    state.add_event(scheme, e, e.target == kSuperstar, false);
  }
  return std::move(state).take();
}

std::size_t deletion_count(std::size_t n, double p_d) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * p_d + 1e-9));
}

DeletionResult delete_random_edges(const EdgeList& edges, double p_d,
                                   std::uint64_t seed) {
  CorruptionSpec{CorruptionSpec::Mode::kDelete, p_d}.validate();
  const std::size_t n = edges.edges.size();
  const std::size_t m = deletion_count(n, p_d);
  Rng rng(seed);
  // Partial Fisher-Yates: the first m slots end up a uniform m-subset.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(order[i], order[j]);
  }
  DeletionResult result;
  result.removed.assign(n, false);
  for (std::size_t i = 0; i < m; ++i) result.removed[order[i]] = true;
  result.removed_count = m;

  EdgeList kept;
  kept.node_count = edges.node_count;
  kept.edges.reserve(n - m);
  for (std::size_t i = 0; i < n; ++i) {
    if (!result.removed[i]) kept.edges.push_back(edges.edges[i]);
  }
  result.snapshot = snapshot_from_edges(kept);
  return result;
}

GrowthHistory interleave_random_additions(const GrowthHistory& history,
                                          double p_a, std::uint64_t seed) {
  CorruptionSpec{CorruptionSpec::Mode::kAdd, p_a}.validate();
  Rng rng(seed);
  GrowthHistory out;
  out.initial_edges = history.initial_edges;
  out.initial_node_count = history.initial_node_count;
  out.model_tag = p_a > 0.0 ? ModelTag::kCorrupted : history.model_tag;
  out.events.reserve(history.events.size());

  std::size_t nodes = history.initial_node_count;
  std::size_t next = 0;
  const std::size_t n0 = history.initial_edge_count();
  while (out.events.size() < history.events.size()) {
    const std::size_t step = n0 + out.events.size() + 1;
    if (p_a > 0.0 && nodes > 0 && rng.uniform() < p_a) {
      GrowthEvent ev;
      ev.step = step;
      ev.scheme = Scheme::kBeta;
      ev.source = static_cast<NodeId>(rng.below(nodes));
      ev.target = static_cast<NodeId>(rng.below(nodes));
      ev.random_attachment = true;
      out.events.push_back(ev);
      continue;
    }
    GrowthEvent ev = history.events[next++];
    ev.step = step;
    if (ev.scheme != Scheme::kBeta) ++nodes;
    out.events.push_back(ev);
  }
  return out;
}

}  // namespace paev
