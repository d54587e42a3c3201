#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "paev/types.hpp"

namespace paev {

/// Replays every event on top of the initial graph.  Throws ReplayError when
/// an event references a node that does not exist yet or violates its scheme.
DegreeSnapshot snapshot_from_history(const GrowthHistory& history);

/// Checks the node-creation rules of each event without building degrees.
void validate_history(const GrowthHistory& history);

/// Sparse joint table N_n(i,j) with marginals and tail sums.
struct JointCounts {
  std::unordered_map<std::uint64_t, std::size_t> joint;  // key: (i << 32) | j
  std::vector<std::size_t> in_marginal;    // N^in_i
  std::vector<std::size_t> out_marginal;   // N^out_j
  std::vector<std::size_t> in_tail;        // N^in_{>i}
  std::vector<std::size_t> out_tail;       // N^out_{>j}
  std::size_t node_count = 0;
  std::size_t edge_count = 0;

  static std::uint64_t key(std::uint32_t i, std::uint32_t j) noexcept {
    return (static_cast<std::uint64_t>(i) << 32) | j;
  }
  std::size_t at(std::uint32_t i, std::uint32_t j) const;
  // Zero outside the stored range.
  std::size_t in_count(std::size_t i) const noexcept;
  std::size_t out_count(std::size_t j) const noexcept;
  std::size_t in_tail_at(std::size_t i) const noexcept;
  std::size_t out_tail_at(std::size_t j) const noexcept;
};

JointCounts joint_counts(const DegreeSnapshot& snapshot);

/// Tail sums N_{>i} of a degree sequence, truncated at the maximum degree.
std::vector<std::size_t> tail_counts(const std::vector<std::size_t>& marginal);

}  // namespace paev
