#include "gsbm/partition.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>

#include "gsbm/errors.hpp"

namespace gsbm {

Partition::Partition(std::vector<int> labels) : labels_(std::move(labels)) {
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] < 0) {
      throw OutOfRangeError("vertex " + std::to_string(v) + " has negative label " +
                            std::to_string(labels_[v]));
    }
    ++sizes_[labels_[v]];
  }
}

Partition Partition::singletons(int n) {
  std::vector<int> labels(static_cast<std::size_t>(std::max(n, 0)));
  for (int v = 0; v < n; ++v) labels[v] = v;
  return Partition(std::move(labels));
}

int Partition::label_of(int v) const {
  if (v < 0 || v >= size()) {
    throw OutOfRangeError("vertex " + std::to_string(v) + " outside [0, " +
                          std::to_string(size()) + ")");
  }
  return labels_[v];
}

void Partition::move(int v, int new_label) {
  if (v < 0 || v >= size()) {
    throw OutOfRangeError("vertex " + std::to_string(v) + " outside [0, " +
                          std::to_string(size()) + ")");
  }
  if (new_label < 0) {
    throw OutOfRangeError("negative label " + std::to_string(new_label));
  }
  int old = labels_[v];
  if (old == new_label) return;
  auto it = sizes_.find(old);
  if (--it->second == 0) sizes_.erase(it);
  ++sizes_[new_label];
  labels_[v] = new_label;
}

std::map<int, std::vector<int>> Partition::communities() const {
  std::map<int, std::vector<int>> out;
  for (int v = 0; v < size(); ++v) out[labels_[v]].push_back(v);
  return out;
}

std::vector<int> Partition::members_of(int label) const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v) {
    if (labels_[v] == label) out.push_back(v);
  }
  return out;
}

std::vector<int> Partition::canonical_labels() const {
  std::vector<int> out(labels_.size());
  std::unordered_map<int, int> rename;
  rename.reserve(sizes_.size());
  int next = 0;
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    auto [it, inserted] = rename.try_emplace(labels_[v], next);
    if (inserted) ++next;
    out[v] = it->second;
  }
  return out;
}

bool Partition::same_clustering(const Partition& other) const {
  return size() == other.size() && canonical_labels() == other.canonical_labels();
}

double intra_strength(const WeightedGraph& g, const Partition& p, int v, int label) {
  if (g.vertex_count() != p.size()) {
    throw SizeMismatchError("graph has " + std::to_string(g.vertex_count()) +
                            " vertices but partition covers " + std::to_string(p.size()));
  }
  double s = 0.0;
  for (const auto& nb : g.neighbors(v)) {
    if (p.label_of(nb.vertex) == label) s += nb.weight;
  }
  return s;
}

}  // namespace gsbm
