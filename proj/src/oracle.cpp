#include "bsfs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "bsfs/dist.hpp"

namespace bsfs::sim {

namespace {

void partitions(int rest, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(rest, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(rest - p, p, cur, out);
    cur.pop_back();
  }
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

OracleModel build_oracle_model(int n) {
  if (n < 2 || n > ExactOracle::kMaxN) {
    throw std::domain_error("oracle: n must lie in [2, " + std::to_string(ExactOracle::kMaxN) + "]");
  }
  OracleModel m;
  m.n = n;
  std::vector<int> cur;
  partitions(n, n, cur, m.states);
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < m.states.size(); ++i) index[m.states[i]] = static_cast<int>(i);
  const int ns = static_cast<int>(m.states.size());
  m.start = index.at(std::vector<int>(n, 1));
  m.absorbing = index.at(std::vector<int>{n});
  m.generator = Eigen::MatrixXd::Zero(ns, ns);
  for (int i = 0; i < ns; ++i) {
    const auto& st = m.states[i];
    const int blocks = static_cast<int>(st.size());
    if (blocks == 1) continue;
    // every subset of at least two blocks merges at rate (k-2)!(m-k)!/(m-1)!
    for (unsigned mask = 0; mask < (1u << blocks); ++mask) {
      const int k = __builtin_popcount(mask);
      if (k < 2) continue;
      std::vector<int> next;
      int merged = 0;
      for (int j = 0; j < blocks; ++j) {
        if (mask & (1u << j)) {
          merged += st[j];
        } else {
          next.push_back(st[j]);
        }
      }
      next.push_back(merged);
      std::sort(next.begin(), next.end(), std::greater<>());
      const double rate = factorial(k - 2) * factorial(blocks - k) / factorial(blocks - 1);
      const int j = index.at(next);
      m.generator(i, j) += rate;
      m.generator(i, i) -= rate;
    }
  }
  m.rewards.assign(n + 1, Eigen::VectorXd::Zero(ns));
  for (int i = 0; i < ns; ++i) {
    for (int s : m.states[i]) m.rewards[s](i) += 1.0;
  }
  return m;
}

ExactOracle::ExactOracle(int n, double gate_tol) : model_(build_oracle_model(n)) {
  const int ns = static_cast<int>(model_.states.size());
  for (int i = 0; i < ns; ++i) {
    if (i != model_.absorbing) transient_.push_back(i);
  }
  const int nt = static_cast<int>(transient_.size());
  Eigen::MatrixXd qt(nt, nt);
  for (int a = 0; a < nt; ++a) {
    for (int b = 0; b < nt; ++b) qt(a, b) = model_.generator(transient_[a], transient_[b]);
  }
  fundamental_ = (-qt).partialPivLu().inverse();
  const int start_pos =
      static_cast<int>(std::find(transient_.begin(), transient_.end(), model_.start) - transient_.begin());
  start_row_ = fundamental_.row(start_pos);

  for (int i = 0; i <= 200; ++i) {
    const double s = 0.05 * i;
    gate_error_ = std::max(gate_error_, std::fabs(absorption_cdf(s) - dist::absorption_cdf(n, s)));
  }
  if (!(gate_error_ <= gate_tol)) {
    throw std::runtime_error("oracle: absorption CDF disagrees with the root-edge law (max error " +
                             std::to_string(gate_error_) + ")");
  }
}

Eigen::VectorXd ExactOracle::transient_reward(int b) const {
  if (b < 1 || b >= model_.n) throw std::domain_error("oracle: b must lie in [1, n-1]");
  Eigen::VectorXd r(transient_.size());
  for (std::size_t a = 0; a < transient_.size(); ++a) r(a) = model_.rewards[b](transient_[a]);
  return r;
}

double ExactOracle::mean_length(int b) const { return start_row_.dot(transient_reward(b)); }

double ExactOracle::second_moment(int b1, int b2) const {
  const Eigen::VectorXd r1 = transient_reward(b1);
  const Eigen::VectorXd r2 = transient_reward(b2);
  const Eigen::VectorXd u1 = fundamental_ * r1;
  const Eigen::VectorXd u2 = fundamental_ * r2;
  return start_row_.dot(r1.cwiseProduct(u2)) + start_row_.dot(r2.cwiseProduct(u1));
}

Eigen::VectorXd ExactOracle::state_distribution(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("oracle: t must be >= 0");
  const Eigen::MatrixXd p = (model_.generator * t).exp();
  return p.row(model_.start).transpose();
}

double ExactOracle::large_family_survival(int b, double s) const {
  const int n = model_.n;
  if (2 * b <= n || b >= n) throw std::domain_error("oracle: need n/2 < b < n");
  if (!(s >= 0.0)) throw std::domain_error("oracle: s must be >= 0");
  std::vector<int> in_h, out_h;
  for (int i : transient_) (model_.rewards[b](i) > 0.0 ? in_h : out_h).push_back(i);
  const Eigen::Index nh = static_cast<Eigen::Index>(in_h.size());
  const Eigen::Index no = static_cast<Eigen::Index>(out_h.size());
  Eigen::MatrixXd q_oo(no, no), q_oh(no, nh), q_hh(nh, nh);
  for (Eigen::Index a = 0; a < no; ++a) {
    for (Eigen::Index c = 0; c < no; ++c) q_oo(a, c) = model_.generator(out_h[a], out_h[c]);
    for (Eigen::Index c = 0; c < nh; ++c) q_oh(a, c) = model_.generator(out_h[a], in_h[c]);
  }
  for (Eigen::Index a = 0; a < nh; ++a) {
    for (Eigen::Index c = 0; c < nh; ++c) q_hh(a, c) = model_.generator(in_h[a], in_h[c]);
  }
  const Eigen::Index start =
      std::find(out_h.begin(), out_h.end(), model_.start) - out_h.begin();
  Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(no);
  e(start) = 1.0;
  // distribution of the first state entered in H
  const Eigen::RowVectorXd entry = (-q_oo).transpose().partialPivLu().solve(e.transpose()).transpose() * q_oh;
  const Eigen::MatrixXd stay = (q_hh * s).exp();
  return entry * stay * Eigen::VectorXd::Ones(nh);
}

double ExactOracle::absorption_cdf(double s) const { return state_distribution(s)(model_.absorbing); }

}  // namespace bsfs::sim
