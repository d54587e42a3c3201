#pragma once

// Generators for the directed linear preferential attachment model, the
// superstar variant and the two corruption mechanisms.
//
// Draw order per step (frozen; examples and tests depend on it):
//   1. corruption coin            (random-addition runs with p_a > 0 only)
//   2. scheme draw J_n            (one uniform)
//   3. superstar draw B_n         (superstar runs, alpha/beta steps only)
//   4. node draws, source before target; each degree-proportional draw is
//      one uniform for the mixture coin followed by one bounded integer.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "paev/random.hpp"
#include "paev/types.hpp"

namespace paev {

struct SimConfig {
  std::size_t target_edges = 1;
  std::uint64_t seed = 0;
  bool emit_history = true;

  void validate() const;
};

struct SimResult {
  GrowthHistory history;    // events empty when emit_history is false
  DegreeSnapshot snapshot;  // maintained incrementally during growth
  std::size_t random_edges = 0;
};

/// Samples node w with probability (d(w) + delta) / (m + delta * count) among
/// the `count` nodes first, first+1, ..., where m is the number of stored
/// endpoints and d(w) is how often w occurs among them.  An endpoint is drawn
/// with probability m / (m + delta * count), otherwise a uniform node.
class AttachmentSampler {
 public:
  void reserve(std::size_t n) { endpoints_.reserve(n); }
  void push(NodeId node) { endpoints_.push_back(node); }
  std::size_t size() const noexcept { return endpoints_.size(); }

  NodeId draw(Rng& rng, double delta, NodeId first, std::size_t count) const {
    const double m = static_cast<double>(endpoints_.size());
    const double endpoint_mass = m / (m + delta * static_cast<double>(count));
    if (rng.uniform() < endpoint_mass) {
      return endpoints_[rng.below(endpoints_.size())];
    }
    return first + static_cast<NodeId>(rng.below(count));
  }

 private:
  std::vector<NodeId> endpoints_;
};

/// Starts from one node carrying a self-loop (n0 = 1).
SimResult simulate_linear_pa(const PaParams& params, const SimConfig& config);

/// Starts from nodes {0, 1} and the edge 1 -> 0; node 0 is the superstar.
SimResult simulate_superstar(const SuperstarParams& params, const SimConfig& config);

/// Linear PA where each step is, with probability p_a, an edge between two
/// uniformly chosen existing nodes.  PA steps only see PA edges.
SimResult simulate_with_random_additions(const PaParams& params, double p_a,
                                         const SimConfig& config);

struct CorruptionSpec {
  enum class Mode { kAdd, kDelete };
  Mode mode = Mode::kAdd;
  double probability = 0.0;

  void validate() const;
};

struct DeletionResult {
  DegreeSnapshot snapshot;
  std::vector<bool> removed;  // per edge of the input list
  std::size_t removed_count = 0;
};

/// floor(n * p_d), guarded against representation error in the product.
std::size_t deletion_count(std::size_t n, double p_d);

/// Removes floor(n * p_d) edges chosen uniformly without replacement.  The
/// node set is unchanged.
DeletionResult delete_random_edges(const EdgeList& edges, double p_d,
                                   std::uint64_t seed);

/// Interleaves random edges into an observed growth order: before each output
/// edge, with probability p_a, an edge between two uniform nodes seen so far
/// is emitted instead of the next input edge.  The output has as many edges
/// as the input; trailing input edges are dropped.  Input edges keep their
/// scheme labels, injected edges are labelled beta.
GrowthHistory interleave_random_additions(const GrowthHistory& history,
                                          double p_a, std::uint64_t seed);

}  // namespace paev
