#include "qahm/ising.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qahm {

IsingModel::IsingModel(int n) : n_(n), h_(static_cast<std::size_t>(n), 0.0) {
  if (n < 0) throw std::invalid_argument("IsingModel: negative node count");
}

double IsingModel::bias(int i) const {
  return h_.at(static_cast<std::size_t>(i));
}

void IsingModel::set_bias(int i, double value) {
  h_.at(static_cast<std::size_t>(i)) = value;
}

int IsingModel::edge_index(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(i, j),
                             [](const Edge& e, const std::pair<int, int>& key) {
                               return std::make_pair(e.i, e.j) < key;
                             });
  if (it == edges_.end() || it->i != i || it->j != j) return -1;
  return static_cast<int>(it - edges_.begin());
}

void IsingModel::set_coupling(int i, int j, double value) {
  if (i == j) throw std::invalid_argument("IsingModel: self-coupling");
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw std::invalid_argument("IsingModel: edge endpoint out of range");
  if (i > j) std::swap(i, j);
  const int idx = edge_index(i, j);
  if (idx >= 0) {
    edges_[static_cast<std::size_t>(idx)].coupling = value;
    return;
  }
  Edge e{i, j, value};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e,
                             [](const Edge& a, const Edge& b) {
                               return std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j);
                             });
  edges_.insert(it, e);
}

void IsingModel::add_coupling(int i, int j, double value) {
  if (i > j) std::swap(i, j);
  const int idx = edge_index(i, j);
  if (idx >= 0)
    edges_[static_cast<std::size_t>(idx)].coupling += value;
  else
    set_coupling(i, j, value);
}

double IsingModel::coupling(int i, int j) const {
  const int idx = edge_index(i, j);
  return idx < 0 ? 0.0 : edges_[static_cast<std::size_t>(idx)].coupling;
}

bool IsingModel::has_edge(int i, int j) const { return edge_index(i, j) >= 0; }

std::vector<std::pair<int, int>> IsingModel::edge_pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.emplace_back(e.i, e.j);
  return out;
}

IsingModel IsingModel::scaled(double factor) const {
  IsingModel out(*this);
  for (double& v : out.h_) v *= factor;
  for (Edge& e : out.edges_) e.coupling *= factor;
  return out;
}

void IsingModel::check_finite() const {
  for (double v : h_)
    if (!std::isfinite(v)) throw std::invalid_argument("IsingModel: non-finite bias");
  for (const Edge& e : edges_)
    if (!std::isfinite(e.coupling))
      throw std::invalid_argument("IsingModel: non-finite coupling");
}

std::vector<std::vector<Neighbor>> adjacency(const IsingModel& model) {
  std::vector<std::vector<Neighbor>> adj(static_cast<std::size_t>(model.num_nodes()));
  for (const Edge& e : model.edges()) {
    adj[static_cast<std::size_t>(e.i)].push_back({e.j, e.coupling});
    adj[static_cast<std::size_t>(e.j)].push_back({e.i, e.coupling});
  }
  return adj;
}

void check_spins(const SpinConfig& s) {
  for (Spin v : s)
    if (v != 1 && v != -1)
      throw std::invalid_argument("SpinConfig: entry not in {-1,+1}");
}

double inf_norm_diff(const MomentVector& a, const MomentVector& b) {
  if (a.means.size() != b.means.size() || a.edges != b.edges)
    throw std::invalid_argument("inf_norm_diff: moment shapes differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.means.size(); ++i)
    worst = std::max(worst, std::abs(a.means[i] - b.means[i]));
  for (std::size_t k = 0; k < a.correlations.size(); ++k)
    worst = std::max(worst, std::abs(a.correlations[k] - b.correlations[k]));
  return worst;
}

double energy(const IsingModel& model, const SpinConfig& s) {
  if (static_cast<int>(s.size()) != model.num_nodes())
    throw std::invalid_argument("energy: configuration length != node count");
  double e = 0.0;
  const std::vector<double>& h = model.biases();
  for (int i = 0; i < model.num_nodes(); ++i)
    e -= h[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
  for (const Edge& edge : model.edges())
    e -= edge.coupling * s[static_cast<std::size_t>(edge.i)] *
         s[static_cast<std::size_t>(edge.j)];
  return e;
}

std::uint64_t pack_config(const SpinConfig& s) {
  if (s.size() > 64) throw std::invalid_argument("pack_config: more than 64 spins");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] > 0) bits |= (std::uint64_t{1} << i);
  return bits;
}

SpinConfig unpack_config(std::uint64_t bits, int n) {
  SpinConfig s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    s[static_cast<std::size_t>(i)] = (bits >> i) & 1 ? Spin{1} : Spin{-1};
  return s;
}

ExactDistribution enumerate_distribution(const IsingModel& model, double beta,
                                         int max_nodes) {
  const int n = model.num_nodes();
  if (n > max_nodes)
    throw std::invalid_argument("enumerate_distribution: " + std::to_string(n) +
                                " nodes exceeds cap " + std::to_string(max_nodes));
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("enumerate_distribution: beta must be positive");
  model.check_finite();

  const std::size_t count = std::size_t{1} << n;
  std::vector<double> log_weight(count);
  double max_lw = -std::numeric_limits<double>::infinity();
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const SpinConfig s = unpack_config(idx, n);
    const double lw = -beta * energy(model, s);
    log_weight[idx] = lw;
    if (lw > max_lw) max_lw = lw;
  }
  double sum = 0.0;
  for (double lw : log_weight) sum += std::exp(lw - max_lw);
  const double log_z = max_lw + std::log(sum);

  ExactDistribution dist;
  dist.n = n;
  dist.beta = beta;
  dist.log_z = log_z;
  dist.probabilities.resize(count);
  for (std::size_t idx = 0; idx < count; ++idx)
    dist.probabilities[idx] = std::exp(log_weight[idx] - log_z);
  return dist;
}

MomentVector exact_moments(const ExactDistribution& dist, const IsingModel& model) {
  if (dist.n != model.num_nodes())
    throw std::invalid_argument("exact_moments: distribution/model mismatch");
  const int n = dist.n;
  MomentVector mv;
  mv.means.assign(static_cast<std::size_t>(n), 0.0);
  mv.edges = model.edge_pairs();
  mv.correlations.assign(mv.edges.size(), 0.0);

  const std::size_t count = std::size_t{1} << n;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const double p = dist.probabilities[idx];
    if (p == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const double si = (idx >> i) & 1 ? 1.0 : -1.0;
      mv.means[static_cast<std::size_t>(i)] += p * si;
    }
    for (std::size_t k = 0; k < mv.edges.size(); ++k) {
      const auto [i, j] = mv.edges[k];
      const double si = (idx >> i) & 1 ? 1.0 : -1.0;
      const double sj = (idx >> j) & 1 ? 1.0 : -1.0;
      mv.correlations[k] += p * si * sj;
    }
  }
  return mv;
}

double binary_energy(const BinaryModel& model, const std::vector<int>& u) {
  if (static_cast<int>(u.size()) != model.n)
    throw std::invalid_argument("binary_energy: configuration length != unit count");
  double e = 0.0;
  for (int i = 0; i < model.n; ++i)
    e -= model.a[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
  for (const Edge& edge : model.edges)
    e -= edge.coupling * u[static_cast<std::size_t>(edge.i)] *
         u[static_cast<std::size_t>(edge.j)];
  return e;
}

// With u = (s+1)/2:
//   -a_i u_i        = -(a_i/2) s_i - a_i/2
//   -W_ij u_i u_j   = -(W_ij/4)(s_i s_j + s_i + s_j + 1)
// so h_i = a_i/2 + (1/4) sum_{j~i} W_ij, J_ij = W_ij/4, and the constant
// terms fold into the offset.
SpinConversion to_spin(const BinaryModel& binary) {
  SpinConversion out;
  out.model = IsingModel(binary.n);
  double offset = 0.0;
  for (int i = 0; i < binary.n; ++i) {
    out.model.set_bias(i, binary.a[static_cast<std::size_t>(i)] / 2.0);
    offset -= binary.a[static_cast<std::size_t>(i)] / 2.0;
  }
  for (const Edge& e : binary.edges) {
    out.model.set_coupling(e.i, e.j, e.coupling / 4.0);
    out.model.set_bias(e.i, out.model.bias(e.i) + e.coupling / 4.0);
    out.model.set_bias(e.j, out.model.bias(e.j) + e.coupling / 4.0);
    offset -= e.coupling / 4.0;
  }
  out.energy_offset = offset;
  return out;
}

BinaryModel to_binary(const IsingModel& spin) {
  BinaryModel out;
  out.n = spin.num_nodes();
  out.a.assign(static_cast<std::size_t>(out.n), 0.0);
  for (const Edge& e : spin.edges())
    out.edges.push_back({e.i, e.j, 4.0 * e.coupling});
  for (int i = 0; i < out.n; ++i) {
    double coupling_sum = 0.0;
    for (const Edge& e : spin.edges())
      if (e.i == i || e.j == i) coupling_sum += e.coupling;
    out.a[static_cast<std::size_t>(i)] = 2.0 * spin.bias(i) - 2.0 * coupling_sum;
  }
  return out;
}

SpinConfig binary_to_spin_config(const std::vector<int>& u) {
  SpinConfig s(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != 0 && u[i] != 1)
      throw std::invalid_argument("binary_to_spin_config: entry not in {0,1}");
    s[i] = u[i] == 1 ? Spin{1} : Spin{-1};
  }
  return s;
}

std::vector<int> spin_to_binary_config(const SpinConfig& s) {
  check_spins(s);
  std::vector<int> u(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) u[i] = s[i] > 0 ? 1 : 0;
  return u;
}

}  // namespace qahm
