#pragma once

// Tab-separated edge lists, KONECT style.
//
//   % comment lines start with '%'
//   src<TAB>dst                      plain edge list
//   step<TAB>src<TAB>dst<TAB>scheme  growth history, scheme in {A, B, G}
//
// Three comment directives are understood and written by this library:
//   % nodes: N          node ids are used verbatim and lie in [0, N)
//   % initial-edges: K  the first K lines form the initial graph
//   % model: NAME       linear | superstar | corrupted
// Without `nodes`, ids are compacted to ranks of the distinct ids.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "paev/types.hpp"

namespace paev {

struct IngestResult {
  EdgeList edges;
  DegreeSnapshot snapshot;
  std::optional<GrowthHistory> history;  // only for valid 4-column input
  std::vector<std::string> warnings;
  bool history_unavailable = false;  // 4-column input that failed to replay
};

IngestResult ingest_edge_list(std::istream& in);
IngestResult read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const EdgeList& edges);
// `removed`, when given, is indexed by edge (initial edges first) and drops
// those rows; the surviving rows keep their original step labels.
void write_history(std::ostream& out, const GrowthHistory& history,
                   const std::vector<bool>* removed = nullptr);
void write_edge_list_file(const std::string& path, const EdgeList& edges);
void write_history_file(const std::string& path, const GrowthHistory& history,
                        const std::vector<bool>* removed = nullptr);

}  // namespace paev
