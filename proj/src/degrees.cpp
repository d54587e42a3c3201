#include "paev/degrees.hpp"

#include <algorithm>
#include <string>

#include "paev/errors.hpp"

namespace paev {

namespace {

// Shared by validation and replay; `on_edge` sees each event after its
// node-creation rules have been checked.
template <typename OnEdge>
void replay(const GrowthHistory& history, OnEdge&& on_edge) {
  std::size_t nodes = history.initial_node_count;
  for (const auto& e : history.initial_edges) {
    if (e.source >= nodes || e.target >= nodes) {
      throw ReplayError(0, "initial edge references unknown node");
    }
  }
  std::size_t expected_step = history.initial_edge_count() + 1;
  for (const auto& ev : history.events) {
    if (ev.step != expected_step) {
      throw ReplayError(ev.step, "expected step " + std::to_string(expected_step));
    }
    switch (ev.scheme) {
      case Scheme::kAlpha:
        if (ev.source != nodes) {
          throw ReplayError(ev.step, "alpha event source is not a new node");
        }
        if (ev.target >= nodes) {
          throw ReplayError(ev.step, "alpha event targets unknown node");
        }
        ++nodes;
        break;
      case Scheme::kBeta:
        if (ev.source >= nodes || ev.target >= nodes) {
          throw ReplayError(ev.step, "beta event references unknown node");
        }
        break;
      case Scheme::kGamma:
        if (ev.target != nodes) {
          throw ReplayError(ev.step, "gamma event target is not a new node");
        }
        if (ev.source >= nodes) {
          throw ReplayError(ev.step, "gamma event source is unknown node");
        }
        ++nodes;
        break;
    }
    if (ev.to_superstar &&
        (history.model_tag != ModelTag::kSuperstar || ev.target != 0)) {
      throw ReplayError(ev.step, "superstar flag on an edge not pointing to node 0");
    }
    on_edge(ev, nodes);
    ++expected_step;
  }
}

}  // namespace

void validate_history(const GrowthHistory& history) {
  replay(history, [](const GrowthEvent&, std::size_t) {});
}

DegreeSnapshot snapshot_from_history(const GrowthHistory& history) {
  DegreeSnapshot snap;
  snap.degrees.reserve(history.initial_node_count + history.events.size());
  snap.degrees.assign(history.initial_node_count, NodeDegree{});
  for (const auto& e : history.initial_edges) {
    if (e.source < snap.degrees.size() && e.target < snap.degrees.size()) {
      ++snap.degrees[e.source].out;
      ++snap.degrees[e.target].in;
    }
  }
  replay(history, [&](const GrowthEvent& ev, std::size_t nodes) {
    if (snap.degrees.size() < nodes) snap.degrees.resize(nodes);
    ++snap.degrees[ev.source].out;
    ++snap.degrees[ev.target].in;
  });
  snap.edge_count = history.edge_count();
  return snap;
}

std::vector<std::size_t> tail_counts(const std::vector<std::size_t>& marginal) {
  std::vector<std::size_t> tail(marginal.size(), 0);
  std::size_t above = 0;
  for (std::size_t i = marginal.size(); i-- > 0;) {
    tail[i] = above;
    above += marginal[i];
  }
  return tail;
}

JointCounts joint_counts(const DegreeSnapshot& snapshot) {
  JointCounts jc;
  jc.node_count = snapshot.node_count();
  jc.edge_count = snapshot.edge_count;
  std::uint32_t max_in = 0;
  std::uint32_t max_out = 0;
  for (const auto& d : snapshot.degrees) {
    max_in = std::max(max_in, d.in);
    max_out = std::max(max_out, d.out);
  }
  jc.in_marginal.assign(std::size_t{max_in} + 1, 0);
  jc.out_marginal.assign(std::size_t{max_out} + 1, 0);
  for (const auto& d : snapshot.degrees) {
    ++jc.joint[JointCounts::key(d.in, d.out)];
    ++jc.in_marginal[d.in];
    ++jc.out_marginal[d.out];
  }
  if (snapshot.degrees.empty()) {
    jc.in_marginal.clear();
    jc.out_marginal.clear();
  }
  jc.in_tail = tail_counts(jc.in_marginal);
  jc.out_tail = tail_counts(jc.out_marginal);
  return jc;
}

std::size_t JointCounts::at(std::uint32_t i, std::uint32_t j) const {
  auto it = joint.find(key(i, j));
  return it == joint.end() ? 0 : it->second;
}

std::size_t JointCounts::in_count(std::size_t i) const noexcept {
  return i < in_marginal.size() ? in_marginal[i] : 0;
}
std::size_t JointCounts::out_count(std::size_t j) const noexcept {
  return j < out_marginal.size() ? out_marginal[j] : 0;
}
std::size_t JointCounts::in_tail_at(std::size_t i) const noexcept {
  return i < in_tail.size() ? in_tail[i] : 0;
}
std::size_t JointCounts::out_tail_at(std::size_t j) const noexcept {
  return j < out_tail.size() ? out_tail[j] : 0;
}

}  // namespace paev
