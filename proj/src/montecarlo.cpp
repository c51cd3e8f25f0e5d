#include "bsfs/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "bsfs/rrt.hpp"

namespace bsfs::sim {

namespace {

constexpr long long kChunk = 1024;

// Runs body(chunk_index) for every chunk on `threads` workers.
void for_chunks(long long chunks, int threads, const std::function<void(long long)>& body) {
  if (threads <= 0) threads = default_threads();
  threads = static_cast<int>(std::min<long long>(threads, chunks));
  if (threads <= 1) {
    for (long long c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<long long> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const long long c = next.fetch_add(1);
        if (c >= chunks || failed.load()) return;
        try {
          body(c);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

int default_threads() {
  if (const char* env = std::getenv("BSFS_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void MomentAccumulator::add(const std::vector<double>& x) {
  ++count_;
  const double k = static_cast<double>(count_);
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    const double d = x[i] - mean_[i];
    mean_[i] += d / k;
    m2_[i] += d * (x[i] - mean_[i]);
  }
}

void MomentAccumulator::merge(const MomentAccumulator& o) {
  if (o.count_ == 0) return;
  if (count_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(o.count_);
  const double nt = na + nb;
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    const double d = o.mean_[i] - mean_[i];
    mean_[i] += d * nb / nt;
    m2_[i] += o.m2_[i] + d * d * na * nb / nt;
  }
  count_ += o.count_;
}

double MomentAccumulator::variance(std::size_t i) const {
  return count_ > 1 ? m2_[i] / static_cast<double>(count_ - 1) : 0.0;
}

double MomentAccumulator::se(std::size_t i) const {
  return count_ > 0 ? std::sqrt(variance(i) / static_cast<double>(count_)) : 0.0;
}

MomentAccumulator run_reps(long long reps, std::uint64_t seed, std::size_t dim,
                           const std::function<void(long long, Rng&, std::vector<double>&)>& f,
                           int threads) {
  if (reps < 1) throw std::invalid_argument("run_reps: reps must be >= 1");
  const long long chunks = (reps + kChunk - 1) / kChunk;
  std::vector<MomentAccumulator> parts(chunks, MomentAccumulator(dim));
  for_chunks(chunks, threads, [&](long long c) {
    std::vector<double> out(dim);
    const long long end = std::min(reps, (c + 1) * kChunk);
    for (long long rep = c * kChunk; rep < end; ++rep) {
      Rng rng = Rng::for_rep(seed, static_cast<std::uint64_t>(rep));
      std::fill(out.begin(), out.end(), 0.0);
      f(rep, rng, out);
      parts[c].add(out);
    }
  });
  MomentAccumulator total(dim);
  for (const auto& p : parts) total.merge(p);
  return total;
}

namespace {

RepSample rep_from_rng(long long n, double theta, Rng& rng) {
  const RecursiveTreeSample tree = sample_tree(n, rng);
  const LengthVector lv = tree_lengths(tree);
  RepSample r;
  r.lengths = lv.lengths;
  r.absorption_time = lv.absorption_time;
  r.sfs.assign(n + 1, 0);
  for (long long b = 1; b < n; ++b) r.sfs[b] = rng.poisson(theta * r.lengths[b]);
  return r;
}

void check_args(long long n, double theta, long long reps) {
  if (n < 2) throw std::invalid_argument("simulate: n must be >= 2");
  if (!(theta > 0.0)) throw std::invalid_argument("simulate: theta must be > 0");
  if (reps < 1) throw std::invalid_argument("simulate: reps must be >= 1");
}

}  // namespace

RepSample simulate_rep(long long n, double theta, std::uint64_t seed, long long rep) {
  check_args(n, theta, 1);
  Rng rng = Rng::for_rep(seed, static_cast<std::uint64_t>(rep));
  return rep_from_rng(n, theta, rng);
}

std::vector<RepSample> simulate_lengths_and_sfs(long long n, double theta, long long reps,
                                                std::uint64_t seed, int threads) {
  check_args(n, theta, reps);
  std::vector<RepSample> out(reps);
  const long long chunks = (reps + kChunk - 1) / kChunk;
  for_chunks(chunks, threads, [&](long long c) {
    const long long end = std::min(reps, (c + 1) * kChunk);
    for (long long rep = c * kChunk; rep < end; ++rep) out[rep] = simulate_rep(n, theta, seed, rep);
  });
  return out;
}

LengthSfsSummary summarize_lengths_and_sfs(long long n, double theta, long long reps,
                                           std::uint64_t seed, int threads) {
  check_args(n, theta, reps);
  const std::size_t dim = 2 * static_cast<std::size_t>(n + 1);
  MomentAccumulator acc = run_reps(
      reps, seed, dim,
      [n, theta](long long, Rng& rng, std::vector<double>& out) {
        const RepSample r = rep_from_rng(n, theta, rng);
        for (long long b = 1; b < n; ++b) {
          out[b] = r.lengths[b];
          out[n + 1 + b] = static_cast<double>(r.sfs[b]);
        }
      },
      threads);
  LengthSfsSummary s;
  s.n = n;
  s.reps = reps;
  s.mean_length.assign(n + 1, 0.0);
  s.se_length.assign(n + 1, 0.0);
  s.mean_sfs.assign(n + 1, 0.0);
  s.se_sfs.assign(n + 1, 0.0);
  for (long long b = 1; b < n; ++b) {
    s.mean_length[b] = acc.mean(b);
    s.se_length[b] = acc.se(b);
    s.mean_sfs[b] = acc.mean(n + 1 + b);
    s.se_sfs[b] = acc.se(n + 1 + b);
  }
  return s;
}

SurvivalEstimate estimate_length_survival(long long n, long long b, const std::vector<double>& s_grid,
                                          long long reps, std::uint64_t seed, int threads) {
  check_args(n, 1.0, reps);
  if (b < 1 || b >= n) throw std::invalid_argument("estimate_length_survival: need 1 <= b < n");
  MomentAccumulator acc = run_reps(
      reps, seed, s_grid.size(),
      [&](long long, Rng& rng, std::vector<double>& out) {
        const LengthVector lv = tree_lengths(sample_tree(n, rng));
        for (std::size_t i = 0; i < s_grid.size(); ++i) out[i] = lv.lengths[b] > s_grid[i] ? 1.0 : 0.0;
      },
      threads);
  SurvivalEstimate e;
  e.s = s_grid;
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    const double p = acc.mean(i);
    e.prob.push_back(p);
    e.se.push_back(std::sqrt(p * (1.0 - p) / static_cast<double>(reps)));
  }
  return e;
}

std::vector<double> sample_absorption_times(long long n, long long reps, std::uint64_t seed, int threads) {
  check_args(n, 1.0, reps);
  std::vector<double> out(reps);
  const long long chunks = (reps + kChunk - 1) / kChunk;
  for_chunks(chunks, threads, [&](long long c) {
    const long long end = std::min(reps, (c + 1) * kChunk);
    for (long long rep = c * kChunk; rep < end; ++rep) {
      Rng rng = Rng::for_rep(seed, static_cast<std::uint64_t>(rep));
      out[rep] = tree_lengths(sample_tree(n, rng)).absorption_time;
    }
  });
  return out;
}

}  // namespace bsfs::sim
