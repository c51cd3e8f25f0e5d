#pragma once

#include <vector>

#include <Eigen/Dense>

// Exact moments for small n from the block-size-configuration Markov chain.

namespace bsfs::sim {

/// States are the integer partitions of n (block sizes, descending). A merger
/// of k given blocks out of m happens at rate (k-2)!(m-k)!/(m-1)!.
struct OracleModel {
  int n = 0;
  std::vector<std::vector<int>> states;
  Eigen::MatrixXd generator;  // full generator, rows sum to zero
  int start = 0;              // all singletons
  int absorbing = 0;          // the single block of size n
  /// count of blocks of size b in each state, rewards[b][state]
  std::vector<Eigen::VectorXd> rewards;
};

OracleModel build_oracle_model(int n);

/// The model plus its phase-type moments. Construction checks the absorption
/// CDF against the closed-form root-edge law and throws std::runtime_error
/// if they differ by more than gate_tol anywhere on a grid of times.
class ExactOracle {
 public:
  static constexpr int kMaxN = 9;
  explicit ExactOracle(int n, double gate_tol = 1e-9);

  const OracleModel& model() const { return model_; }
  /// largest |oracle - closed form| seen by the gate
  double gate_error() const { return gate_error_; }

  /// E[l_{n,b}], 1 <= b <= n-1.
  double mean_length(int b) const;
  /// E[l_{n,b1} l_{n,b2}].
  double second_moment(int b1, int b2) const;
  /// P(A_n <= s).
  double absorption_cdf(double s) const;
  /// P(l_{n,b} > s) for n/2 < b < n, from the occupation time of the states
  /// holding a block of size b (never re-entered once left).
  double large_family_survival(int b, double s) const;
  /// Probability of each state at time t (indexed like model().states).
  Eigen::VectorXd state_distribution(double t) const;

 private:
  OracleModel model_;
  std::vector<int> transient_;       // state indices excluding the absorbing one
  Eigen::MatrixXd fundamental_;      // (-Q_T)^{-1}
  Eigen::RowVectorXd start_row_;     // e_start^T (-Q_T)^{-1}
  double gate_error_ = 0.0;

  Eigen::VectorXd transient_reward(int b) const;
};

}  // namespace bsfs::sim
