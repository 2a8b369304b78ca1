#ifndef QAHM_ISING_HPP
#define QAHM_ISING_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace qahm {

using Spin = std::int8_t;  // exactly -1 or +1
using SpinConfig = std::vector<Spin>;

// Hard cap for exact enumeration; 2^24 probabilities is the largest table we
// are willing to materialize.
inline constexpr int kEnumerationCap = 24;

struct Edge {
  int i = 0;  // i < j, no self-edges
  int j = 0;
  double coupling = 0.0;
};

// Pairwise model over {-1,+1} spins with an explicit edge set.
//
//   E(s) = -sum_i h_i s_i - sum_{(i,j)} J_ij s_i s_j
//
// Absent edges carry coupling 0. Immutable in spirit: setters exist for model
// construction; every algorithm in this library takes models by const
// reference and never mutates shared state.
class IsingModel {
 public:
  IsingModel() = default;
  explicit IsingModel(int n);

  int num_nodes() const { return n_; }
  const std::vector<double>& biases() const { return h_; }
  const std::vector<Edge>& edges() const { return edges_; }

  double bias(int i) const;
  void set_bias(int i, double value);
  void set_coupling(int i, int j, double value);  // insert or overwrite
  void add_coupling(int i, int j, double value);  // accumulate (inserting if absent)
  double coupling(int i, int j) const;            // 0 when the edge is absent
  bool has_edge(int i, int j) const;

  std::vector<std::pair<int, int>> edge_pairs() const;

  // Returns the model with every parameter multiplied by factor.
  IsingModel scaled(double factor) const;

  // Throws std::invalid_argument if any parameter is non-finite.
  void check_finite() const;

 private:
  int edge_index(int i, int j) const;  // -1 when absent

  int n_ = 0;
  std::vector<double> h_;
  std::vector<Edge> edges_;  // sorted by (i, j), unique, i < j
};

// Flattened adjacency for sampler inner loops.
struct Neighbor {
  int node;
  double coupling;
};
std::vector<std::vector<Neighbor>> adjacency(const IsingModel& model);

struct ExactDistribution {
  int n = 0;
  double beta = 1.0;
  double log_z = 0.0;
  // Size 2^n. Bit i of the index is spin i; bit value 1 means +1.
  std::vector<double> probabilities;
};

struct MomentVector {
  std::vector<double> means;               // <s_i>, per node
  std::vector<std::pair<int, int>> edges;  // (i, j) with i < j
  std::vector<double> correlations;        // <s_i s_j>, aligned with edges
};

// Max absolute componentwise difference; throws on shape mismatch.
double inf_norm_diff(const MomentVector& a, const MomentVector& b);

// Throws if any entry is not exactly -1 or +1.
void check_spins(const SpinConfig& s);

double energy(const IsingModel& model, const SpinConfig& s);

std::uint64_t pack_config(const SpinConfig& s);          // n <= 64
SpinConfig unpack_config(std::uint64_t bits, int n);

// Exact Gibbs distribution P(s) = exp(-beta E(s)) / Z with log_z computed by
// log-sum-exp.
ExactDistribution enumerate_distribution(const IsingModel& model, double beta,
                                         int max_nodes = kEnumerationCap);

// First and second moments under an exact distribution; correlations are
// reported for the model's edge set.
MomentVector exact_moments(const ExactDistribution& dist, const IsingModel& model);

// Same model family over {0,1} units: E(u) = -sum a_i u_i - sum W_ij u_i u_j.
struct BinaryModel {
  int n = 0;
  std::vector<double> a;
  std::vector<Edge> edges;  // weights W
};

struct SpinConversion {
  IsingModel model;
  // E_binary(u(s)) = E_spin(s) + energy_offset, with u_i = (s_i + 1) / 2.
  double energy_offset = 0.0;
};

double binary_energy(const BinaryModel& model, const std::vector<int>& u);

SpinConversion to_spin(const BinaryModel& binary);
BinaryModel to_binary(const IsingModel& spin);

SpinConfig binary_to_spin_config(const std::vector<int>& u);
std::vector<int> spin_to_binary_config(const SpinConfig& s);

}  // namespace qahm

#endif  // QAHM_ISING_HPP
