#include "paev/types.hpp"

#include <cmath>
#include <sstream>

#include "paev/errors.hpp"

namespace paev {

char scheme_letter(Scheme s) noexcept {
  switch (s) {
    case Scheme::kAlpha:
      return 'A';
    case Scheme::kBeta:
      return 'B';
    case Scheme::kGamma:
      return 'G';
  }
  return '?';
}

Scheme scheme_from_letter(char c) {
  switch (c) {
    case 'A':
      return Scheme::kAlpha;
    case 'B':
      return Scheme::kBeta;
    case 'G':
      return Scheme::kGamma;
    default:
      throw DataError(std::string("unknown scheme label '") + c + "'");
  }
}

PaParams PaParams::make(double alpha, double beta, double gamma,
                        double delta_in, double delta_out) {
  PaParams p{alpha, beta, gamma, delta_in, delta_out};
  p.validate();
  return p;
}

void PaParams::validate() const {
  auto bad = [](const std::string& msg) { throw InvalidArgument(msg); };
  for (double v : {alpha, beta, gamma}) {
    if (!(v >= 0.0 && v < 1.0)) bad("scheme probabilities must lie in [0, 1)");
  }
  if (std::abs(alpha + beta + gamma - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "alpha + beta + gamma = " << alpha + beta + gamma << ", expected 1";
    bad(os.str());
  }
  if (!(delta_in > 0.0) || !(delta_out > 0.0) || !std::isfinite(delta_in) ||
      !std::isfinite(delta_out)) {
    bad("delta_in and delta_out must be positive and finite");
  }
}

SuperstarParams SuperstarParams::make(double p, const PaParams& base) {
  SuperstarParams s{p, base};
  s.validate();
  return s;
}

void SuperstarParams::validate() const {
  if (!(p >= 0.0 && p < 1.0)) {
    throw InvalidArgument("superstar probability must lie in [0, 1)");
  }
  base.validate();
}

std::string to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::kLinearPa:
      return "linear";
    case ModelTag::kSuperstar:
      return "superstar";
    case ModelTag::kCorrupted:
      return "corrupted";
  }
  return "unknown";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::kEv:
      return "EV";
    case Method::kMle:
      return "MLE";
    case Method::kSn:
      return "SN";
  }
  return "unknown";
}

std::vector<double> DegreeSnapshot::in_degrees() const {
  std::vector<double> v;
  v.reserve(degrees.size());
  for (const auto& d : degrees) v.push_back(d.in);
  return v;
}

std::vector<double> DegreeSnapshot::out_degrees() const {
  std::vector<double> v;
  v.reserve(degrees.size());
  for (const auto& d : degrees) v.push_back(d.out);
  return v;
}

void DegreeSnapshot::validate() const {
  std::size_t in = 0;
  std::size_t out = 0;
  for (const auto& d : degrees) {
    in += d.in;
    out += d.out;
  }
  if (in != edge_count || out != edge_count) {
    std::ostringstream os;
    os << "degree sums (" << in << ", " << out << ") differ from edge count "
       << edge_count;
    throw DataError(os.str());
  }
}

EdgeList edges_of(const GrowthHistory& history) {
  EdgeList list;
  list.edges.reserve(history.edge_count());
  list.edges = history.initial_edges;
  std::size_t nodes = history.initial_node_count;
  for (const auto& e : history.events) {
    list.edges.push_back(e.edge());
    if (e.scheme != Scheme::kBeta) ++nodes;
  }
  list.node_count = nodes;
  return list;
}

DegreeSnapshot snapshot_from_edges(const EdgeList& list) {
  DegreeSnapshot snap;
  snap.degrees.assign(list.node_count, NodeDegree{});
  for (const auto& e : list.edges) {
    if (e.source >= list.node_count || e.target >= list.node_count) {
      throw DataError("edge references node outside the node set");
    }
    ++snap.degrees[e.source].out;
    ++snap.degrees[e.target].in;
  }
  snap.edge_count = list.edges.size();
  return snap;
}

}  // namespace paev
