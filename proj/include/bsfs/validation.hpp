#pragma once

#include <cstdint>
#include <string>
#include <vector>

// The acceptance checks (shared by the acceptance test and `bsfs validate`)
// and the datasets behind the two figure subcommands.

namespace bsfs::validation {

struct Config {
  int max_n = 7;               // oracle comparisons for n = 2..max_n (at most 9)
  long long reps = 100000;     // Monte-Carlo replicates per sample size
  long long absorption_reps = 4000;
  std::uint64_t seed = 0;
  int threads = 0;             // 0: default_threads()
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, const Config& cfg);
std::vector<CriterionResult> run_all(const Config& cfg);

/// One-line report "PASS criterion 3 (title): detail".
std::string format_result(const CriterionResult& r);

struct Figure1Row {
  long long n = 0;
  long long b = 0;
  double exact = 0.0;
  double refined = 0.0;
  double rel_err = 0.0;
};
/// exact and refined E[SFS_{n,b}] for 2 <= b <= n-1 and each n.
std::vector<Figure1Row> figure1_dataset(const std::vector<long long>& ns, double theta);

/// Regime curves are NaN where the regime's formula is undefined.
struct Figure3Row {
  long long b = 0;
  double exact = 0.0;
  double small_b = 0.0;
  double proportional = 0.0;
  double large_b = 0.0;
};
std::vector<Figure3Row> figure3_dataset(long long n, double theta);

}  // namespace bsfs::validation
