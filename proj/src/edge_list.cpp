#include "paev/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include "paev/degrees.hpp"
#include "paev/errors.hpp"

namespace paev {

namespace {

struct RawRow {
  std::size_t line = 0;
  std::uint64_t step = 0;
  std::uint64_t source = 0;
  std::uint64_t target = 0;
  char scheme = 0;
};

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == '\t' || line[i] == ' ' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != '\t' && line[j] != ' ' && line[j] != '\r') ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::uint64_t parse_uint(std::string_view field, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, "expected a nonnegative integer, got '" +
                               std::string(field) + "'");
  }
  return value;
}

// "% key: value" directives; anything else is an ordinary comment.
bool parse_directive(std::string_view line, std::string_view key,
                     std::string& value) {
  line.remove_prefix(1);
  while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
  if (line.substr(0, key.size()) != key) return false;
  line.remove_prefix(key.size());
  if (line.empty() || line.front() != ':') return false;
  line.remove_prefix(1);
  while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.remove_suffix(1);
  value.assign(line);
  return true;
}

ModelTag model_from_name(const std::string& name, std::size_t line) {
  if (name == "linear") return ModelTag::kLinearPa;
  if (name == "superstar") return ModelTag::kSuperstar;
  if (name == "corrupted") return ModelTag::kCorrupted;
  throw ParseError(line, "unknown model '" + name + "'");
}

}  // namespace

IngestResult ingest_edge_list(std::istream& in) {
  std::vector<RawRow> rows;
  std::optional<std::uint64_t> declared_nodes;
  std::optional<std::uint64_t> initial_edges;
  ModelTag model = ModelTag::kLinearPa;
  int columns = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (view.empty()) continue;
    if (view.front() == '%') {
      std::string value;
      if (parse_directive(view, "nodes", value)) {
        declared_nodes = parse_uint(value, line_no);
      } else if (parse_directive(view, "initial-edges", value)) {
        initial_edges = parse_uint(value, line_no);
      } else if (parse_directive(view, "model", value)) {
        model = model_from_name(value, line_no);
      }
      continue;
    }
    auto fields = split_fields(view);
    if (fields.empty()) continue;
    if (fields.size() != 2 && fields.size() != 4) {
      throw ParseError(line_no, "expected 2 or 4 fields, got " +
                                    std::to_string(fields.size()));
    }
    const int cols = static_cast<int>(fields.size());
    if (columns == 0) columns = cols;
    if (cols != columns) throw ParseError(line_no, "mixed 2- and 4-column rows");
    RawRow row;
    row.line = line_no;
    if (cols == 2) {
      row.source = parse_uint(fields[0], line_no);
      row.target = parse_uint(fields[1], line_no);
    } else {
      row.step = parse_uint(fields[0], line_no);
      row.source = parse_uint(fields[1], line_no);
      row.target = parse_uint(fields[2], line_no);
      if (fields[3].size() != 1) throw ParseError(line_no, "scheme must be A, B or G");
      row.scheme = fields[3][0];
      try {
        scheme_from_letter(row.scheme);
      } catch (const DataError& e) {
        throw ParseError(line_no, e.what());
      }
    }
    rows.push_back(row);
  }

  IngestResult result;
  EdgeList& list = result.edges;
  list.edges.reserve(rows.size());
  if (declared_nodes) {
    list.node_count = *declared_nodes;
    for (const auto& r : rows) {
      if (r.source >= *declared_nodes || r.target >= *declared_nodes) {
        throw ParseError(r.line, "node id outside declared node range");
      }
      list.edges.push_back({static_cast<NodeId>(r.source), static_cast<NodeId>(r.target)});
    }
  } else {
    std::vector<std::uint64_t> ids;
    ids.reserve(rows.size() * 2);
    for (const auto& r : rows) {
      ids.push_back(r.source);
      ids.push_back(r.target);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto rank = [&](std::uint64_t id) {
      return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    list.node_count = ids.size();
    for (const auto& r : rows) list.edges.push_back({rank(r.source), rank(r.target)});
  }
  result.snapshot = snapshot_from_edges(list);

  if (columns != 4) return result;

  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].step != i + 1) {
      result.warnings.push_back("steps are not contiguous at line " +
                                std::to_string(rows[i].line) +
                                "; growth history unavailable");
      result.history_unavailable = true;
      return result;
    }
  }
  const std::size_t n0 = initial_edges.value_or(0);
  if (!initial_edges) {
    result.warnings.push_back("no initial-edges directive; assuming an empty initial graph");
  }
  if (n0 > rows.size()) throw ParseError(line_no, "initial-edges exceeds row count");
  GrowthHistory history;
  history.model_tag = model;
  history.initial_edges.assign(list.edges.begin(), list.edges.begin() + n0);
  NodeId max_id = 0;
  for (const auto& e : history.initial_edges) max_id = std::max({max_id, e.source, e.target});
  history.initial_node_count = n0 == 0 ? 0 : std::size_t{max_id} + 1;
  history.events.reserve(rows.size() - n0);
  for (std::size_t i = n0; i < rows.size(); ++i) {
    GrowthEvent ev;
    ev.step = rows[i].step;
    ev.scheme = scheme_from_letter(rows[i].scheme);
    ev.source = list.edges[i].source;
    ev.target = list.edges[i].target;
    ev.to_superstar = model == ModelTag::kSuperstar && ev.target == 0;
    history.events.push_back(ev);
  }
  try {
    validate_history(history);
  } catch (const ReplayError& e) {
    result.warnings.push_back(std::string(e.what()) + "; growth history unavailable");
    result.history_unavailable = true;
    return result;
  }
  result.history = std::move(history);
  return result;
}

IngestResult read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return ingest_edge_list(in);
}

void write_edge_list(std::ostream& out, const EdgeList& edges) {
  out << "% paev edge list\n% nodes: " << edges.node_count << '\n';
  for (const auto& e : edges.edges) out << e.source << '\t' << e.target << '\n';
}

void write_history(std::ostream& out, const GrowthHistory& history,
                   const std::vector<bool>* removed) {
  const EdgeList list = edges_of(history);
  out << "% paev growth history\n% nodes: " << list.node_count << '\n'
      << "% initial-edges: " << history.initial_edge_count() << '\n'
      << "% model: " << to_string(history.model_tag) << '\n';
  auto keep = [&](std::size_t idx) {
    return removed == nullptr || idx >= removed->size() || !(*removed)[idx];
  };
  std::size_t idx = 0;
  for (const auto& e : history.initial_edges) {
    if (keep(idx)) out << idx + 1 << '\t' << e.source << '\t' << e.target << "\tB\n";
    ++idx;
  }
  for (const auto& ev : history.events) {
    if (keep(idx)) {
      out << ev.step << '\t' << ev.source << '\t' << ev.target << '\t'
          << scheme_letter(ev.scheme) << '\n';
    }
    ++idx;
  }
}

void write_edge_list_file(const std::string& path, const EdgeList& edges) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  write_edge_list(out, edges);
}

void write_history_file(const std::string& path, const GrowthHistory& history,
                        const std::vector<bool>* removed) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  write_history(out, history, removed);
}

}  // namespace paev
