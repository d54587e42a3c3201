#pragma once

// Domain types shared by the simulators and the estimators.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace paev {

using NodeId = std::uint32_t;

/// Edge-creation scenario: new source node, edge between existing nodes,
/// or new target node.
enum class Scheme : std::uint8_t { kAlpha, kBeta, kGamma };

char scheme_letter(Scheme s) noexcept;
Scheme scheme_from_letter(char c);  // throws DataError

/// Linear preferential attachment parameters (alpha, beta, gamma, delta_in,
/// delta_out).  Construct through `make` to get invariants checked.
struct PaParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta_in = 1.0;
  double delta_out = 1.0;

  static PaParams make(double alpha, double beta, double gamma, double delta_in,
                       double delta_out);
  void validate() const;  // throws InvalidArgument
};

struct SuperstarParams {
  double p = 0.0;  // probability an alpha/beta in-edge goes to node 0
  PaParams base;

  static SuperstarParams make(double p, const PaParams& base);
  void validate() const;
};

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct GrowthEvent {
  std::size_t step = 0;  // edge index n, so G(step) contains this edge
  Scheme scheme = Scheme::kBeta;
  NodeId source = 0;
  NodeId target = 0;
  bool to_superstar = false;
  // Set for uniformly random edges injected by the addition corruption; such
  // edges are labelled kBeta since they join two existing nodes.
  bool random_attachment = false;

  Edge edge() const noexcept { return {source, target}; }
};

enum class ModelTag : std::uint8_t { kLinearPa, kSuperstar, kCorrupted };

std::string to_string(ModelTag tag);

/// Time-ordered edge-creation log over a fixed initial graph.
struct GrowthHistory {
  std::vector<Edge> initial_edges;
  std::size_t initial_node_count = 0;
  std::vector<GrowthEvent> events;
  ModelTag model_tag = ModelTag::kLinearPa;

  std::size_t initial_edge_count() const noexcept { return initial_edges.size(); }
  std::size_t edge_count() const noexcept {
    return initial_edges.size() + events.size();
  }
};

struct NodeDegree {
  std::uint32_t in = 0;
  std::uint32_t out = 0;
  friend bool operator==(const NodeDegree&, const NodeDegree&) = default;
};

/// Final (in, out) degree of every node, indexed by node id.
struct DegreeSnapshot {
  std::vector<NodeDegree> degrees;
  std::size_t edge_count = 0;

  std::size_t node_count() const noexcept { return degrees.size(); }
  std::vector<double> in_degrees() const;
  std::vector<double> out_degrees() const;
  void validate() const;  // degree sums must equal edge_count

  friend bool operator==(const DegreeSnapshot&, const DegreeSnapshot&) = default;
};

/// Edge multiset with an explicit node set (isolated nodes allowed).
struct EdgeList {
  std::size_t node_count = 0;
  std::vector<Edge> edges;
};

EdgeList edges_of(const GrowthHistory& history);
DegreeSnapshot snapshot_from_edges(const EdgeList& edges);

struct KsPoint {
  std::size_t k = 0;
  double index = 0.0;     // Hill estimate of the tail index at k
  double distance = 0.0;  // KS distance D_k
};

struct TailFit {
  double index_estimate = 0.0;
  std::size_t k_star = 0;
  double ks_at_kstar = 1.0;
  std::size_t positive_count = 0;
  std::vector<KsPoint> ks_curve;  // empty unless requested
};

enum class Method : std::uint8_t { kEv, kMle, kSn };

std::string to_string(Method m);

struct ThetaEstimate {
  Method method = Method::kEv;
  PaParams params;
  double iota_in = 0.0;
  double iota_out = 0.0;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> warnings;
};

/// Limiting pmf q_0..q_imax of a degree count normalised by edge count.
struct LimitPmf {
  std::vector<double> values;
  double total_mass = 0.0;
};

}  // namespace paev
