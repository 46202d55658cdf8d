#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "gsbm/graph.hpp"
#include "gsbm/partition.hpp"

namespace gsbm {

/**
 * Parses whitespace-separated edge-list text: one "u v [weight]" triple per
 * line, 0-indexed vertices, weight defaulting to 1.0. Blank lines and lines
 * starting with '#' are ignored. The vertex count is 1 + the largest index
 * seen. Throws ParseError (or a subclass) with the offending line number.
 */
WeightedGraph parse_edge_list(std::istream& in);

/** Writes "u v weight" lines in canonical (sorted, u < v) order. */
void write_edge_list(std::ostream& out, const WeightedGraph& g);

/**
 * Parses partition text: one "vertex label" pair per line, '#' comments
 * allowed. Every vertex 0..max must appear exactly once
 * (IncompletePartitionError / DuplicateAssignmentError otherwise).
 */
Partition parse_partition(std::istream& in);

/** Writes "vertex label" lines sorted by vertex. */
void write_partition(std::ostream& out, const Partition& p);

/**
 * Parses the LFR benchmark pair: network lines "src dst [weight]" with
 * 1-indexed vertices and every edge listed in both directions, plus a
 * community file "vertex label". Vertices are shifted to 0-indexed; labels
 * are kept as-is. Throws AsymmetricEdgeError if an edge appears in only one
 * direction and WeightMismatchError if the two directions disagree.
 */
std::pair<WeightedGraph, Partition> parse_lfr(std::istream& network, std::istream& community);

/** File-path convenience wrappers; nonexistent paths raise ParseError. */
WeightedGraph load_edge_list(const std::string& path);
Partition load_partition(const std::string& path);
std::pair<WeightedGraph, Partition> load_lfr(const std::string& network_path,
                                             const std::string& community_path);
void save_edge_list(const std::string& path, const WeightedGraph& g);
void save_partition(const std::string& path, const Partition& p);

}  // namespace gsbm
