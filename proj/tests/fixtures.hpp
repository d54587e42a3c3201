#pragma once

#include <algorithm>
#include <cmath>

#include "paev/types.hpp"

namespace paev::test {

// One node carrying a self-loop, the simulators' linear PA seed graph.
inline GrowthHistory self_loop_history() {
  GrowthHistory h;
  h.initial_edges = {{0, 0}};
  h.initial_node_count = 1;
  return h;
}

inline void push_event(GrowthHistory& h, Scheme s, NodeId src, NodeId dst) {
  GrowthEvent ev;
  ev.step = h.edge_count() + 1;
  ev.scheme = s;
  ev.source = src;
  ev.target = dst;
  h.events.push_back(ev);
}

// |a - b| <= tol * max(|a|, |b|); doctest's Approx adds an absolute floor.
inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

inline PaParams reference_params() { return PaParams::make(0.3, 0.4, 0.3, 1.0, 1.0); }

}  // namespace paev::test
