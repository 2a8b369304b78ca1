#include "qahm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "qahm/rng.hpp"

namespace qahm {

void SampleRequest::check() const {
  if (num_reads < 1) throw std::invalid_argument("SampleRequest: num_reads < 1");
  if (!(beta > 0.0)) throw std::invalid_argument("SampleRequest: beta must be positive");
  model.check_finite();
  for (const auto& [node, spin] : clamps) {
    if (node < 0 || node >= model.num_nodes())
      throw std::invalid_argument("SampleRequest: clamp target out of range");
    if (spin != 1 && spin != -1)
      throw std::invalid_argument("SampleRequest: clamp value not in {-1,+1}");
  }
}

long SampleSet::total_reads() const {
  long total = 0;
  for (long c : counts) total += c;
  return total;
}

namespace {

SampleSet finalize(std::map<SpinConfig, long>&& tally, std::string backend,
                   std::map<std::string, double> disclosed) {
  SampleSet set;
  set.backend = std::move(backend);
  set.disclosed = std::move(disclosed);
  set.configs.reserve(tally.size());
  set.counts.reserve(tally.size());
  for (auto& [config, count] : tally) {
    set.configs.push_back(config);
    set.counts.push_back(count);
  }
  return set;
}

// Model over the unclamped nodes with clamped neighbors absorbed into biases.
struct ReducedModel {
  IsingModel model;
  std::vector<int> free_nodes;  // reduced index -> original node
};

ReducedModel reduce_by_clamps(const IsingModel& model,
                              const std::map<int, Spin>& clamps) {
  ReducedModel red;
  std::vector<int> to_reduced(static_cast<std::size_t>(model.num_nodes()), -1);
  for (int i = 0; i < model.num_nodes(); ++i)
    if (!clamps.count(i)) {
      to_reduced[static_cast<std::size_t>(i)] = static_cast<int>(red.free_nodes.size());
      red.free_nodes.push_back(i);
    }
  red.model = IsingModel(static_cast<int>(red.free_nodes.size()));
  for (std::size_t k = 0; k < red.free_nodes.size(); ++k)
    red.model.set_bias(static_cast<int>(k), model.bias(red.free_nodes[k]));
  for (const Edge& e : model.edges()) {
    const int ri = to_reduced[static_cast<std::size_t>(e.i)];
    const int rj = to_reduced[static_cast<std::size_t>(e.j)];
    if (ri >= 0 && rj >= 0) {
      red.model.set_coupling(ri, rj, e.coupling);
    } else if (ri >= 0) {
      red.model.set_bias(ri, red.model.bias(ri) + e.coupling * clamps.at(e.j));
    } else if (rj >= 0) {
      red.model.set_bias(rj, red.model.bias(rj) + e.coupling * clamps.at(e.i));
    }
  }
  return red;
}

SpinConfig expand_with_clamps(const SpinConfig& reduced, const std::vector<int>& free_nodes,
                              const std::map<int, Spin>& clamps, int n) {
  SpinConfig full(static_cast<std::size_t>(n));
  for (const auto& [node, spin] : clamps) full[static_cast<std::size_t>(node)] = spin;
  for (std::size_t k = 0; k < free_nodes.size(); ++k)
    full[static_cast<std::size_t>(free_nodes[k])] = reduced[k];
  return full;
}

}  // namespace

SampleSet sample_exact(const SampleRequest& request, int max_nodes) {
  request.check();
  const ReducedModel red = reduce_by_clamps(request.model, request.clamps);
  if (red.model.num_nodes() > max_nodes)
    throw std::invalid_argument("sample_exact: free node count exceeds enumeration cap");

  const ExactDistribution dist = enumerate_distribution(red.model, request.beta, max_nodes);
  std::vector<double> cdf(dist.probabilities.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.probabilities.size(); ++i) {
    acc += dist.probabilities[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;

  Rng rng(request.seed);
  std::map<SpinConfig, long> tally;
  for (long r = 0; r < request.num_reads; ++r) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::uint64_t idx = static_cast<std::uint64_t>(it - cdf.begin());
    const SpinConfig reduced = unpack_config(idx, red.model.num_nodes());
    ++tally[expand_with_clamps(reduced, red.free_nodes, request.clamps,
                               request.model.num_nodes())];
  }
  return finalize(std::move(tally), "exact", {{"beta", request.beta}});
}

double heat_bath_up_probability(const IsingModel& model, const SpinConfig& s,
                                int site, double beta) {
  double field = model.bias(site);
  for (const Edge& e : model.edges()) {
    if (e.i == site) field += e.coupling * s[static_cast<std::size_t>(e.j)];
    if (e.j == site) field += e.coupling * s[static_cast<std::size_t>(e.i)];
  }
  return 1.0 / (1.0 + std::exp(-2.0 * beta * field));
}

namespace {

struct GibbsChainPlan {
  long reads = 0;
};

// One heat-bath chain: returns its reads in draw order.
void run_chain(const IsingModel& model, double beta,
               const std::vector<std::vector<Neighbor>>& adj,
               const std::map<int, Spin>& clamps, long reads, int burn_in, int thin,
               Rng& rng, std::map<SpinConfig, long>& tally) {
  const int n = model.num_nodes();
  SpinConfig s(static_cast<std::size_t>(n));
  std::vector<char> frozen(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    s[static_cast<std::size_t>(i)] = rng.bernoulli(0.5) ? Spin{1} : Spin{-1};
  for (const auto& [node, spin] : clamps) {
    s[static_cast<std::size_t>(node)] = spin;
    frozen[static_cast<std::size_t>(node)] = 1;
  }
  const std::vector<double>& h = model.biases();
  auto sweep = [&] {
    for (int i = 0; i < n; ++i) {
      if (frozen[static_cast<std::size_t>(i)]) continue;
      double field = h[static_cast<std::size_t>(i)];
      for (const Neighbor& nb : adj[static_cast<std::size_t>(i)])
        field += nb.coupling * s[static_cast<std::size_t>(nb.node)];
      const double p_up = 1.0 / (1.0 + std::exp(-2.0 * beta * field));
      s[static_cast<std::size_t>(i)] = rng.uniform() < p_up ? Spin{1} : Spin{-1};
    }
  };
  for (int t = 0; t < burn_in; ++t) sweep();
  for (long r = 0; r < reads; ++r) {
    for (int t = 0; t < thin; ++t) sweep();
    ++tally[s];
  }
}

}  // namespace

SampleSet sample_gibbs(const SampleRequest& request, int chains, int burn_in, int thin) {
  request.check();
  if (chains < 1 || burn_in < 0 || thin < 1)
    throw std::invalid_argument("sample_gibbs: bad chain parameters");

  const auto adj = adjacency(request.model);
  std::map<SpinConfig, long> tally;
  const long base = request.num_reads / chains;
  const long remainder = request.num_reads % chains;
  for (int c = 0; c < chains; ++c) {
    const long reads = base + (c < remainder ? 1 : 0);
    if (reads == 0) continue;
    Rng rng(mix_seed(request.seed, static_cast<std::uint64_t>(c)));
    run_chain(request.model, request.beta, adj, request.clamps, reads, burn_in, thin,
              rng, tally);
  }
  return finalize(std::move(tally), "gibbs",
                  {{"beta", request.beta},
                   {"chains", static_cast<double>(chains)},
                   {"burn_in", static_cast<double>(burn_in)},
                   {"thin", static_cast<double>(thin)}});
}

void DeviceProfile::check() const {
  topology.check();
  if (!(beta_eff > 0.0)) throw std::invalid_argument("DeviceProfile: beta_eff <= 0");
  if (!(range_h > 0.0) || !(range_j > 0.0))
    throw std::invalid_argument("DeviceProfile: ranges must be positive");
  if (sigma_h < 0.0 || sigma_j < 0.0)
    throw std::invalid_argument("DeviceProfile: noise scales must be >= 0");
  if (chains < 1 || burn_in < 0 || thin < 1)
    throw std::invalid_argument("DeviceProfile: bad MCMC knobs");
}

SampleSet sample_device(const SampleRequest& request, const DeviceProfile& profile) {
  request.check();
  profile.check();
  const IsingModel& model = request.model;
  if (model.num_nodes() > profile.topology.num_nodes)
    throw std::invalid_argument("sample_device: model larger than device topology");
  for (const Edge& e : model.edges())
    if (!profile.topology.has_edge(e.i, e.j))
      throw std::invalid_argument("sample_device: unsupported coupling (" +
                                  std::to_string(e.i) + "," + std::to_string(e.j) +
                                  ") not in device topology");

  // Per-program parameter noise, drawn in fixed topology order so the
  // realized offsets are a pure function of (profile, request).
  const std::uint64_t noise_stream = profile.refresh_noise_each_call
                                         ? mix_seed(profile.noise_seed, request.seed)
                                         : profile.noise_seed;
  Rng noise(noise_stream);
  std::vector<double> dh(static_cast<std::size_t>(profile.topology.num_nodes));
  for (double& v : dh) v = noise.normal();
  std::map<std::pair<int, int>, double> dj;
  for (const auto& e : profile.topology.edges) dj[e] = noise.normal();

  const auto clip = [](double v, double range) {
    return std::max(-range, std::min(range, v));
  };
  IsingModel realized(model.num_nodes());
  for (int i = 0; i < model.num_nodes(); ++i)
    realized.set_bias(
        i, clip(model.bias(i) + profile.sigma_h * dh[static_cast<std::size_t>(i)],
                profile.range_h));
  for (const Edge& e : model.edges())
    realized.set_coupling(
        e.i, e.j,
        clip(e.coupling + profile.sigma_j * dj.at({e.i, e.j}), profile.range_j));

  SampleRequest internal = request;
  internal.model = realized;
  internal.beta = profile.beta_eff;  // hidden from the caller
  internal.seed = mix_seed(request.seed, 0x9d5ULL);
  SampleSet set =
      sample_gibbs(internal, profile.chains, profile.burn_in, profile.thin);
  set.backend = "device";
  set.disclosed.clear();  // gray box: no effective-parameter disclosure
  return set;
}

MomentVector empirical_moments(const SampleSet& set,
                               const std::vector<std::pair<int, int>>& edges) {
  const long total = set.total_reads();
  if (total <= 0) throw std::invalid_argument("empirical_moments: empty sample set");
  const std::size_t n = set.configs.front().size();
  MomentVector mv;
  mv.means.assign(n, 0.0);
  mv.edges = edges;
  mv.correlations.assign(edges.size(), 0.0);
  for (std::size_t k = 0; k < set.configs.size(); ++k) {
    const SpinConfig& s = set.configs[k];
    const double w = static_cast<double>(set.counts[k]) / static_cast<double>(total);
    for (std::size_t i = 0; i < n; ++i) mv.means[i] += w * s[i];
    for (std::size_t e = 0; e < edges.size(); ++e)
      mv.correlations[e] += w * s[static_cast<std::size_t>(edges[e].first)] *
                            s[static_cast<std::size_t>(edges[e].second)];
  }
  return mv;
}

double tv_distance(const SampleSet& set, const ExactDistribution& dist) {
  const long total = set.total_reads();
  if (total <= 0) throw std::invalid_argument("tv_distance: empty sample set");
  for (const SpinConfig& s : set.configs)
    if (static_cast<int>(s.size()) != dist.n)
      throw std::invalid_argument("tv_distance: config length != distribution size");
  std::vector<double> empirical(dist.probabilities.size(), 0.0);
  for (std::size_t k = 0; k < set.configs.size(); ++k)
    empirical[pack_config(set.configs[k])] +=
        static_cast<double>(set.counts[k]) / static_cast<double>(total);
  double dist_l1 = 0.0;
  for (std::size_t i = 0; i < empirical.size(); ++i)
    dist_l1 += std::abs(empirical[i] - dist.probabilities[i]);
  return 0.5 * dist_l1;
}

void write_sample_lines(std::ostream& out, const SampleSet& set) {
  for (std::size_t k = 0; k < set.configs.size(); ++k) {
    out << set.counts[k] << " ";
    for (Spin s : set.configs[k]) out << (s > 0 ? "+1" : "-1");
    out << "\n";
  }
}

}  // namespace qahm
