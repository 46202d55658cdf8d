#include "gsbm/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "gsbm/errors.hpp"

namespace gsbm {

namespace {

// Shortest round-trip decimal form, so written files are stable and re-parse
// to identical doubles.
std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

bool is_blank_or_comment(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r\n");
  return pos == std::string::npos || line[pos] == '#';
}

// Splits a data line into tokens, checking count in [min_tokens, max_tokens].
std::vector<std::string> tokenize(const std::string& line, std::size_t line_no,
                                  std::size_t min_tokens, std::size_t max_tokens) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  if (tokens.size() < min_tokens || tokens.size() > max_tokens) {
    throw ParseError("expected " + std::to_string(min_tokens) +
                         (max_tokens > min_tokens ? "-" + std::to_string(max_tokens) : "") +
                         " fields, got " + std::to_string(tokens.size()),
                     line_no);
  }
  return tokens;
}

int parse_int(const std::string& tok, std::size_t line_no, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("invalid ") + what + " '" + tok + "'", line_no);
  }
  return value;
}

double parse_double(const std::string& tok, std::size_t line_no, const char* what) {
  try {
    std::size_t consumed = 0;
    double value = std::stod(tok, &consumed);
    if (consumed != tok.size()) throw std::invalid_argument(tok);
    return value;
  } catch (const std::exception&) {
    throw ParseError(std::string("invalid ") + what + " '" + tok + "'", line_no);
  }
}

}  // namespace

WeightedGraph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  int max_vertex = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    auto tokens = tokenize(line, line_no, 2, 3);
    int u = parse_int(tokens[0], line_no, "vertex index");
    int v = parse_int(tokens[1], line_no, "vertex index");
    if (u < 0 || v < 0) throw ParseError("negative vertex index", line_no);
    double w = tokens.size() == 3 ? parse_double(tokens[2], line_no, "weight") : 1.0;
    edges.push_back({u, v, w});
    max_vertex = std::max({max_vertex, u, v});
  }
  return WeightedGraph::from_edges(max_vertex + 1, std::move(edges));
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_double(e.weight) << '\n';
  }
}

Partition parse_partition(std::istream& in) {
  std::map<int, int> assignment;
  int max_vertex = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    auto tokens = tokenize(line, line_no, 2, 2);
    int v = parse_int(tokens[0], line_no, "vertex index");
    int label = parse_int(tokens[1], line_no, "label");
    if (v < 0) throw ParseError("negative vertex index", line_no);
    if (label < 0) throw ParseError("negative label", line_no);
    if (!assignment.emplace(v, label).second) {
      throw DuplicateAssignmentError("vertex " + std::to_string(v) + " assigned twice", line_no);
    }
    max_vertex = std::max(max_vertex, v);
  }
  std::vector<int> labels(static_cast<std::size_t>(max_vertex + 1));
  for (int v = 0; v <= max_vertex; ++v) {
    auto it = assignment.find(v);
    if (it == assignment.end()) {
      throw IncompletePartitionError("vertex " + std::to_string(v) + " has no label");
    }
    labels[v] = it->second;
  }
  return Partition(std::move(labels));
}

void write_partition(std::ostream& out, const Partition& p) {
  for (int v = 0; v < p.size(); ++v) {
    out << v << ' ' << p.labels()[v] << '\n';
  }
}

std::pair<WeightedGraph, Partition> parse_lfr(std::istream& network, std::istream& community) {
  // Directed records keyed (src, dst), kept to verify both directions agree.
  std::map<std::pair<int, int>, double> directed;
  int max_vertex = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(network, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    auto tokens = tokenize(line, line_no, 2, 3);
    int src = parse_int(tokens[0], line_no, "vertex index") - 1;
    int dst = parse_int(tokens[1], line_no, "vertex index") - 1;
    if (src < 0 || dst < 0) throw ParseError("vertex index below 1", line_no);
    if (src == dst) throw SelfLoopError("self-loop on vertex " + std::to_string(src + 1), line_no);
    double w = tokens.size() == 3 ? parse_double(tokens[2], line_no, "weight") : 1.0;
    if (!directed.emplace(std::pair(src, dst), w).second) {
      throw DuplicateEdgeError("directed edge (" + std::to_string(src + 1) + ", " +
                                   std::to_string(dst + 1) + ") listed twice",
                               line_no);
    }
    max_vertex = std::max({max_vertex, src, dst});
  }
  std::vector<Edge> edges;
  edges.reserve(directed.size() / 2);
  for (const auto& [key, w] : directed) {
    auto [src, dst] = key;
    auto rev = directed.find(std::pair(dst, src));
    if (rev == directed.end()) {
      throw AsymmetricEdgeError("edge (" + std::to_string(src + 1) + ", " +
                                std::to_string(dst + 1) + ") missing its reverse direction");
    }
    if (rev->second != w) {
      throw WeightMismatchError("edge (" + std::to_string(src + 1) + ", " +
                                std::to_string(dst + 1) + ") weights disagree: " +
                                format_double(w) + " vs " + format_double(rev->second));
    }
    if (src < dst) edges.push_back({src, dst, w});
  }

  std::map<int, int> assignment;
  line_no = 0;
  while (std::getline(community, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    auto tokens = tokenize(line, line_no, 2, 2);
    int v = parse_int(tokens[0], line_no, "vertex index") - 1;
    int label = parse_int(tokens[1], line_no, "label");
    if (v < 0) throw ParseError("vertex index below 1", line_no);
    if (label < 0) throw ParseError("negative label", line_no);
    if (!assignment.emplace(v, label).second) {
      throw DuplicateAssignmentError("vertex " + std::to_string(v + 1) + " assigned twice",
                                     line_no);
    }
    max_vertex = std::max(max_vertex, v);
  }
  int n = max_vertex + 1;
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto it = assignment.find(v);
    if (it == assignment.end()) {
      throw IncompletePartitionError("vertex " + std::to_string(v + 1) + " has no label");
    }
    labels[v] = it->second;
  }
  return {WeightedGraph::from_edges(n, std::move(edges)), Partition(std::move(labels))};
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

WeightedGraph load_edge_list(const std::string& path) {
  auto in = open_input(path);
  return parse_edge_list(in);
}

Partition load_partition(const std::string& path) {
  auto in = open_input(path);
  return parse_partition(in);
}

std::pair<WeightedGraph, Partition> load_lfr(const std::string& network_path,
                                             const std::string& community_path) {
  auto net = open_input(network_path);
  auto comm = open_input(community_path);
  return parse_lfr(net, comm);
}

void save_edge_list(const std::string& path, const WeightedGraph& g) {
  auto out = open_output(path);
  write_edge_list(out, g);
}

void save_partition(const std::string& path, const Partition& p) {
  auto out = open_output(path);
  write_partition(out, p);
}

}  // namespace gsbm
