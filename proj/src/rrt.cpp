#include "bsfs/rrt.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace bsfs::sim {

namespace {

// Fires the live edges of `tree` in increasing time and reports each merger
// as (time, sizes of the merged blocks, parent block first).
template <class OnEvent>
void run_cutting_merge(const RecursiveTreeSample& tree, OnEvent&& on_event) {
  const int n = static_cast<int>(tree.size());
  std::vector<int> first_child(n + 1, 0);
  for (int i = 1; i < n; ++i) ++first_child[tree.parent[i] + 1];
  std::partial_sum(first_child.begin(), first_child.end(), first_child.begin());
  std::vector<int> children(n > 0 ? n - 1 : 0);
  {
    std::vector<int> fill(first_child.begin(), first_child.end() - 1);
    for (int i = 1; i < n; ++i) children[fill[tree.parent[i]]++] = i;
  }
  std::vector<int> order(n > 0 ? n - 1 : 0);
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return tree.edge_time[a] < tree.edge_time[b] || (tree.edge_time[a] == tree.edge_time[b] && a < b);
  });

  std::vector<char> alive(n, 1);
  std::vector<long long> size(n, 1);
  std::vector<int> stack;
  std::vector<long long> merged;
  for (int v : order) {
    if (!alive[v]) continue;
    const int p = tree.parent[v];
    merged.clear();
    merged.push_back(size[p]);
    long long gained = 0;
    stack.assign(1, v);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      alive[u] = 0;
      merged.push_back(size[u]);
      gained += size[u];
      for (int k = first_child[u]; k < first_child[u + 1]; ++k) {
        if (alive[children[k]]) stack.push_back(children[k]);
      }
    }
    size[p] += gained;
    on_event(tree.edge_time[v], merged);
  }
}

}  // namespace

void RecursiveTreeSample::validate() const {
  if (parent.size() < 2 || parent.size() != edge_time.size()) {
    throw std::invalid_argument("RecursiveTreeSample: need n >= 2 nodes with matching edge times");
  }
  if (parent[0] != -1) throw std::invalid_argument("RecursiveTreeSample: node 0 must be the root");
  for (std::size_t i = 1; i < parent.size(); ++i) {
    if (parent[i] < 0 || parent[i] >= static_cast<int>(i)) {
      throw std::invalid_argument("RecursiveTreeSample: parent[i] must be < i");
    }
    if (!(edge_time[i] > 0.0)) throw std::invalid_argument("RecursiveTreeSample: edge times must be > 0");
  }
}

RecursiveTreeSample sample_tree(long long n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("sample_tree: n must be >= 2");
  if (n > std::numeric_limits<int>::max()) throw std::invalid_argument("sample_tree: n too large");
  RecursiveTreeSample t;
  t.parent.resize(n);
  t.edge_time.resize(n);
  t.parent[0] = -1;
  t.edge_time[0] = 0.0;
  for (long long i = 1; i < n; ++i) {
    t.parent[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
    t.edge_time[i] = rng.exponential();
  }
  return t;
}

RecursiveTreeSample sample_tree(long long n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_tree(n, rng);
}

long long MergeEvent::result() const { return std::accumulate(merged.begin(), merged.end(), 0LL); }

double BlockTrajectory::absorption_time() const { return events.empty() ? 0.0 : events.back().time; }

std::vector<long long> BlockTrajectory::block_sizes_at(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("block_sizes_at: t must be >= 0");
  auto it = std::upper_bound(intervals.begin(), intervals.end(), t,
                             [](double x, const TrajectoryInterval& iv) { return x < iv.start; });
  const TrajectoryInterval& iv = *std::prev(it);
  std::vector<long long> out;
  for (auto it2 = iv.counts.rbegin(); it2 != iv.counts.rend(); ++it2) {
    out.insert(out.end(), static_cast<std::size_t>(it2->second), it2->first);
  }
  return out;
}

BlockTrajectory trajectory(const RecursiveTreeSample& tree) {
  tree.validate();
  BlockTrajectory traj;
  traj.n = tree.size();
  std::map<long long, long long> counts{{1, traj.n}};
  double start = 0.0;
  auto bump = [&](long long b, long long delta) {
    auto& c = counts[b];
    c += delta;
    if (c == 0) counts.erase(b);
  };
  run_cutting_merge(tree, [&](double time, const std::vector<long long>& merged) {
    TrajectoryInterval iv;
    iv.start = start;
    iv.end = time;
    iv.counts.assign(counts.begin(), counts.end());
    traj.intervals.push_back(std::move(iv));
    MergeEvent ev;
    ev.time = time;
    ev.merged = merged;
    std::sort(ev.merged.begin(), ev.merged.end(), std::greater<>());
    for (long long s : merged) bump(s, -1);
    bump(ev.result(), 1);
    traj.events.push_back(std::move(ev));
    start = time;
  });
  TrajectoryInterval last;
  last.start = start;
  last.end = std::numeric_limits<double>::infinity();
  last.counts.assign(counts.begin(), counts.end());
  traj.intervals.push_back(std::move(last));
  return traj;
}

LengthVector tree_lengths(const RecursiveTreeSample& tree) {
  const long long n = tree.size();
  LengthVector out;
  out.lengths.assign(n + 1, 0.0);
  std::vector<long long> count(n + 1, 0);
  std::vector<double> since(n + 1, 0.0);
  count[1] = n;
  auto bump = [&](long long b, long long delta, double t) {
    out.lengths[b] += static_cast<double>(count[b]) * (t - since[b]);
    since[b] = t;
    count[b] += delta;
  };
  run_cutting_merge(tree, [&](double time, const std::vector<long long>& merged) {
    long long total = 0;
    for (long long s : merged) {
      bump(s, -1, time);
      total += s;
    }
    bump(total, 1, time);
    out.absorption_time = time;
  });
  out.lengths[n] = 0.0;
  return out;
}

LengthVector trajectory_lengths(const BlockTrajectory& traj) {
  LengthVector out;
  out.lengths.assign(traj.n + 1, 0.0);
  for (const auto& iv : traj.intervals) {
    for (const auto& [b, c] : iv.counts) {
      if (b < traj.n) out.lengths[b] += static_cast<double>(c) * (iv.end - iv.start);
    }
  }
  out.absorption_time = traj.absorption_time();
  return out;
}

int LabelledTree::add_node(std::vector<int> node_labels, int parent_index) {
  if (parent_index >= static_cast<int>(labels.size())) throw std::invalid_argument("add_node: unknown parent");
  labels.push_back(std::move(node_labels));
  parent.push_back(parent_index);
  alive.push_back(true);
  return static_cast<int>(labels.size()) - 1;
}

void LabelledTree::cutting_merge(int node) {
  if (node < 0 || node >= static_cast<int>(labels.size()) || !alive[node] || parent[node] < 0) {
    throw std::invalid_argument("cutting_merge: node must be an alive non-root node");
  }
  const int p = parent[node];
  for (std::size_t u = 0; u < labels.size(); ++u) {
    if (!alive[u]) continue;
    int a = static_cast<int>(u);
    while (a >= 0 && a != node) a = parent[a];
    if (a != node) continue;
    labels[p].insert(labels[p].end(), labels[u].begin(), labels[u].end());
    labels[u].clear();
    alive[u] = false;
  }
}

std::vector<std::vector<int>> LabelledTree::partition() const {
  std::vector<std::vector<int>> out;
  for (std::size_t u = 0; u < labels.size(); ++u) {
    if (!alive[u]) continue;
    std::vector<int> s = labels[u];
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

LabelledTree labelled_from(const RecursiveTreeSample& tree) {
  LabelledTree t;
  for (long long i = 0; i < tree.size(); ++i) t.add_node({static_cast<int>(i + 1)}, tree.parent[i]);
  return t;
}

}  // namespace bsfs::sim
