#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bsfs/rng.hpp"

// Random recursive trees with exponential edge clocks, and the cutting-merge
// dynamics that turn them into the Bolthausen-Sznitman n-coalescent.

namespace bsfs::sim {

/// Node i (0-based) carries label i+1. parent[0] = -1 and edge_time[0] = 0 for
/// the root; for i >= 1, parent[i] < i and edge_time[i] > 0.
struct RecursiveTreeSample {
  std::vector<int> parent;
  std::vector<double> edge_time;

  long long size() const { return static_cast<long long>(parent.size()); }
  void validate() const;
};

RecursiveTreeSample sample_tree(long long n, Rng& rng);
RecursiveTreeSample sample_tree(long long n, std::uint64_t seed);

/// One merger: the sizes of the blocks that merged (descending) at `time`.
struct MergeEvent {
  double time = 0.0;
  std::vector<long long> merged;
  long long result() const;
};

/// State between consecutive events: interval [start, end) and its block-size
/// counts as sparse (size, count) pairs in increasing size. The last interval
/// holds the single block of size n and has end = +infinity.
struct TrajectoryInterval {
  double start = 0.0;
  double end = 0.0;
  std::vector<std::pair<long long, long long>> counts;
};

struct BlockTrajectory {
  long long n = 0;
  std::vector<MergeEvent> events;
  std::vector<TrajectoryInterval> intervals;

  double absorption_time() const;
  /// Block sizes (descending) of the state at time t >= 0.
  std::vector<long long> block_sizes_at(double t) const;
};

BlockTrajectory trajectory(const RecursiveTreeSample& tree);

/// lengths[b] for b = 0..n (entries 0 and n are zero): total time during which
/// blocks of size b exist, weighted by their number.
struct LengthVector {
  std::vector<double> lengths;
  double absorption_time = 0.0;
};

/// Same lengths as trajectory(tree) integrates, without storing the intervals.
LengthVector tree_lengths(const RecursiveTreeSample& tree);

/// lengths from a stored trajectory (sum over intervals of duration x count).
LengthVector trajectory_lengths(const BlockTrajectory& traj);

/// A tree whose nodes carry arbitrary label sets, for applying single
/// cutting-merge steps by hand. parent[root] = -1.
struct LabelledTree {
  std::vector<std::vector<int>> labels;
  std::vector<int> parent;
  std::vector<bool> alive;

  int add_node(std::vector<int> node_labels, int parent_index);
  /// Cut the edge above `node` and merge the labels of its whole current
  /// subtree into its parent.
  void cutting_merge(int node);
  /// Sorted label sets of the alive nodes, sorted by smallest label.
  std::vector<std::vector<int>> partition() const;
};

LabelledTree labelled_from(const RecursiveTreeSample& tree);

}  // namespace bsfs::sim
