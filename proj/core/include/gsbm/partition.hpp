#pragma once

#include <map>
#include <vector>

#include "gsbm/graph.hpp"

namespace gsbm {

/**
 * Assignment of each vertex 0..n-1 to an integer community label.
 *
 * Labels are arbitrary nonnegative integers; community identity is the
 * induced grouping, not the label values. Size counts per label are kept
 * incrementally so move() is O(log C).
 */
class Partition {
 public:
  Partition() = default;

  /** Takes ownership of per-vertex labels; labels must be >= 0. */
  explicit Partition(std::vector<int> labels);

  /** The all-singleton partition: vertex i gets label i. */
  static Partition singletons(int n);

  int size() const noexcept { return static_cast<int>(labels_.size()); }

  int label_of(int v) const;

  const std::vector<int>& labels() const noexcept { return labels_; }

  /** label -> community size, ordered by label. Empty labels are absent. */
  const std::map<int, int>& sizes() const noexcept { return sizes_; }

  int community_count() const noexcept { return static_cast<int>(sizes_.size()); }

  /** Reassigns v to new_label, updating size counts. */
  void move(int v, int new_label);

  /** label -> sorted member list, ordered by label. */
  std::map<int, std::vector<int>> communities() const;

  /** Sorted members of one community; empty vector if the label is unused. */
  std::vector<int> members_of(int label) const;

  /**
   * Labels renamed to 0..C-1 in order of first appearance, so two
   * partitions describe the same clustering iff their canonical label
   * vectors are equal.
   */
  std::vector<int> canonical_labels() const;

  /** True iff the two partitions induce the same grouping of vertices. */
  bool same_clustering(const Partition& other) const;

 private:
  std::vector<int> labels_;
  std::map<int, int> sizes_;
};

/**
 * intra_strength(g, p, v, label) = sum of W(v, j) over neighbors j of v
 * with p.label_of(j) == label. v itself never contributes.
 */
double intra_strength(const WeightedGraph& g, const Partition& p, int v, int label);

}  // namespace gsbm
