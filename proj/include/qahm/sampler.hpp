#ifndef QAHM_SAMPLER_HPP
#define QAHM_SAMPLER_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qahm/hardware.hpp"
#include "qahm/ising.hpp"

namespace qahm {

// Control parameters sent to a backend. Exact and Gibbs backends honor beta;
// the device backend samples at its own hidden effective temperature and
// ignores it.
struct SampleRequest {
  IsingModel model;
  double beta = 1.0;
  long num_reads = 1;
  std::map<int, Spin> clamps;  // node -> pinned spin
  std::uint64_t seed = 0;

  void check() const;  // num_reads >= 1, clamp targets valid, spins in {-1,+1}
};

// Weighted spin configurations. Configurations are unique and sorted
// lexicographically; counts hold multiplicities and sum to num_reads.
struct SampleSet {
  std::vector<SpinConfig> configs;
  std::vector<long> counts;
  std::string backend;
  // Effective parameters the backend chooses to disclose. Deliberately empty
  // for the device backend: that is the gray-box boundary.
  std::map<std::string, double> disclosed;

  long total_reads() const;
};

class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual std::string name() const = 0;
  virtual SampleSet sample(const SampleRequest& request) const = 0;
};

// --- exact backend ----------------------------------------------------------

// I.i.d. multinomial draws from enumerate_distribution(model, beta)
// conditioned on the clamps (free-subgraph enumeration).
SampleSet sample_exact(const SampleRequest& request, int max_nodes = kEnumerationCap);

class ExactSampler final : public Sampler {
 public:
  explicit ExactSampler(int max_nodes = kEnumerationCap) : max_nodes_(max_nodes) {}
  std::string name() const override { return "exact"; }
  SampleSet sample(const SampleRequest& request) const override {
    return sample_exact(request, max_nodes_);
  }

 private:
  int max_nodes_;
};

// --- Gibbs (heat-bath MCMC) backend ------------------------------------------

// p(s_i = +1 | rest) for the heat-bath kernel at inverse temperature beta.
double heat_bath_up_probability(const IsingModel& model, const SpinConfig& s,
                                int site, double beta);

// Heat-bath single-site sweeps in fixed node order; chains run on RNG streams
// derived from (seed, chain index) and merge in chain-index order, so results
// do not depend on physical parallelism. Reads are split across chains as
// evenly as possible (earlier chains take the remainder).
SampleSet sample_gibbs(const SampleRequest& request, int chains = 8,
                       int burn_in = 1000, int thin = 10);

class GibbsSampler final : public Sampler {
 public:
  GibbsSampler(int chains = 8, int burn_in = 1000, int thin = 10)
      : chains_(chains), burn_in_(burn_in), thin_(thin) {}
  std::string name() const override { return "gibbs"; }
  SampleSet sample(const SampleRequest& request) const override {
    return sample_gibbs(request, chains_, burn_in_, thin_);
  }

 private:
  int chains_, burn_in_, thin_;
};

// --- noisy-device emulator ----------------------------------------------------

// Stand-in for a quantum annealer: restricted topology, Gaussian noise on the
// programmed parameters, dynamic-range clipping, and sampling at a hidden
// effective inverse temperature. The spec's minimal falsifiable emulation of
// a physical sampling device.
struct DeviceProfile {
  Topology topology;
  double beta_eff = 1.0;  // hidden; never disclosed in SampleSet metadata
  double sigma_h = 0.0;
  double sigma_j = 0.0;
  double range_h = 2.0;
  double range_j = 1.0;
  // true: noise redrawn per call from mix(noise_seed, request.seed);
  // false: frozen, drawn from noise_seed alone.
  bool refresh_noise_each_call = true;
  std::uint64_t noise_seed = 0;
  // Internal MCMC engine knobs.
  int chains = 32;
  int burn_in = 1000;
  int thin = 10;

  void check() const;
};

// Perturbs each programmed parameter with Gaussian noise, clips to the dynamic
// range, then samples via internal heat-bath MCMC at the hidden beta_eff.
// Clamps pin spins. Throws when the model requests a coupling outside the
// device topology.
SampleSet sample_device(const SampleRequest& request, const DeviceProfile& profile);

class DeviceSampler final : public Sampler {
 public:
  explicit DeviceSampler(DeviceProfile profile) : profile_(std::move(profile)) {
    profile_.check();
  }
  std::string name() const override { return "device"; }
  SampleSet sample(const SampleRequest& request) const override {
    return sample_device(request, profile_);
  }
  const DeviceProfile& profile() const { return profile_; }

 private:
  DeviceProfile profile_;
};

// --- statistics ----------------------------------------------------------------

// Count-weighted means and pair correlations over the given edge list.
MomentVector empirical_moments(const SampleSet& set,
                               const std::vector<std::pair<int, int>>& edges);

// (1/2) sum_s |empirical_frequency(s) - P(s)|.
double tv_distance(const SampleSet& set, const ExactDistribution& dist);

// Debug export: one line per distinct configuration, "count +1-1+1...".
void write_sample_lines(std::ostream& out, const SampleSet& set);

}  // namespace qahm

#endif  // QAHM_SAMPLER_HPP
