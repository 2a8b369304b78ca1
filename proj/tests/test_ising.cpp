#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "qahm/ising.hpp"
#include "qahm/rng.hpp"

using namespace qahm;

namespace {

// Independent brute-force oracle, written before the implementation under
// test. Evaluates the energy convention directly from a dense J matrix and
// normalizes with naive summation. Kept free of any call into the library's
// enumeration path.
struct DenseModel {
  int n;
  std::vector<double> h;
  std::vector<std::vector<double>> J;  // symmetric, zero diagonal
};

double oracle_energy(const DenseModel& m, const std::vector<int>& spins) {
  double e = 0.0;
  for (int i = 0; i < m.n; ++i) e -= m.h[i] * spins[i];
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j) e -= m.J[i][j] * spins[i] * spins[j];
  return e;
}

std::vector<double> oracle_probabilities(const DenseModel& m, double beta) {
  const std::size_t count = std::size_t{1} << m.n;
  std::vector<double> w(count);
  double z = 0.0;
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::vector<int> spins(m.n);
    for (int i = 0; i < m.n; ++i) spins[i] = (idx >> i) & 1 ? 1 : -1;
    w[idx] = std::exp(-beta * oracle_energy(m, spins));
    z += w[idx];
  }
  for (double& v : w) v /= z;
  return w;
}

DenseModel random_dense(int n, Rng& rng) {
  DenseModel m{n, std::vector<double>(n), std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))};
  for (int i = 0; i < n; ++i) m.h[i] = rng.uniform(-1.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.J[i][j] = m.J[j][i] = rng.uniform(-1.0, 1.0);
  return m;
}

IsingModel to_model(const DenseModel& m) {
  IsingModel model(m.n);
  for (int i = 0; i < m.n; ++i) model.set_bias(i, m.h[i]);
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j)
      if (m.J[i][j] != 0.0) model.set_coupling(i, j, m.J[i][j]);
  return model;
}

}  // namespace

TEST_CASE("energy: zero model gives zero for any configuration") {
  IsingModel model(5);
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    SpinConfig s(5);
    for (auto& v : s) v = rng.bernoulli(0.5) ? 1 : -1;
    CHECK(energy(model, s) == 0.0);
  }
}

TEST_CASE("energy: single coupling term") {
  IsingModel model(2);
  model.set_coupling(0, 1, 1.0);
  CHECK(energy(model, {1, 1}) == -1.0);
}

TEST_CASE("energy: matches brute-force oracle on all configs of a random 3-spin model") {
  Rng rng(42);
  const DenseModel dense = random_dense(3, rng);
  const IsingModel model = to_model(dense);
  for (std::uint64_t idx = 0; idx < 8; ++idx) {
    std::vector<int> spins(3);
    for (int i = 0; i < 3; ++i) spins[i] = (idx >> i) & 1 ? 1 : -1;
    const SpinConfig s = unpack_config(idx, 3);
    CHECK(energy(model, s) == doctest::Approx(oracle_energy(dense, spins)).epsilon(1e-14));
  }
}

TEST_CASE("energy: length mismatch throws") {
  IsingModel model(3);
  CHECK_THROWS_AS(energy(model, {1, 1}), std::invalid_argument);
}

TEST_CASE("energy: exactly linear in each parameter") {
  Rng rng(7);
  const DenseModel dense = random_dense(4, rng);
  IsingModel model = to_model(dense);
  const SpinConfig s = unpack_config(0b0110, 4);
  // finite-difference slope is identical across two different step sizes
  for (int i = 0; i < 4; ++i) {
    const double base = model.bias(i);
    auto slope = [&](double step) {
      IsingModel up = model, dn = model;
      up.set_bias(i, base + step);
      dn.set_bias(i, base - step);
      return (energy(up, s) - energy(dn, s)) / (2 * step);
    };
    CHECK(slope(0.5) == doctest::Approx(slope(0.125)).epsilon(1e-12));
  }
  auto j_slope = [&](int i, int j, double step) {
    IsingModel up = model, dn = model;
    up.set_coupling(i, j, model.coupling(i, j) + step);
    dn.set_coupling(i, j, model.coupling(i, j) - step);
    return (energy(up, s) - energy(dn, s)) / (2 * step);
  };
  CHECK(j_slope(0, 2, 1.0) == doctest::Approx(j_slope(0, 2, 0.25)).epsilon(1e-12));
}

TEST_CASE("enumerate: single spin closed form") {
  IsingModel model(1);
  model.set_bias(0, 1.0);
  const ExactDistribution dist = enumerate_distribution(model, 1.0);
  const double expected = std::exp(1.0) / (std::exp(1.0) + std::exp(-1.0));
  CHECK(dist.probabilities[1] == doctest::Approx(expected).epsilon(1e-12));
  CHECK(dist.probabilities[0] == doctest::Approx(1.0 - expected).epsilon(1e-12));
}

TEST_CASE("enumerate: zero 3-spin model is uniform with log_z = 3 ln 2") {
  IsingModel model(3);
  const ExactDistribution dist = enumerate_distribution(model, 1.0);
  for (double p : dist.probabilities) CHECK(p == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(dist.log_z == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("enumerate: probabilities sum to 1 and match oracle on random models") {
  Rng rng(314);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_int(0, 4));
    const DenseModel dense = random_dense(n, rng);
    const double beta = rng.uniform(0.2, 3.0);
    const ExactDistribution dist = enumerate_distribution(to_model(dense), beta);
    const std::vector<double> expected = oracle_probabilities(dense, beta);
    double sum = 0.0;
    for (std::size_t idx = 0; idx < expected.size(); ++idx) {
      CHECK(dist.probabilities[idx] == doctest::Approx(expected[idx]).epsilon(1e-11));
      sum += dist.probabilities[idx];
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("enumerate: temperature-scaling identity") {
  Rng rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const DenseModel dense = random_dense(5, rng);
    const IsingModel model = to_model(dense);
    const double beta = rng.uniform(0.1, 4.0);
    const ExactDistribution a = enumerate_distribution(model, beta);
    const ExactDistribution b = enumerate_distribution(model.scaled(beta), 1.0);
    for (std::size_t idx = 0; idx < a.probabilities.size(); ++idx)
      CHECK(std::abs(a.probabilities[idx] - b.probabilities[idx]) < 1e-12);
  }
}

TEST_CASE("enumerate: node cap enforced") {
  IsingModel model(6);
  CHECK_THROWS_AS(enumerate_distribution(model, 1.0, 5), std::invalid_argument);
}

TEST_CASE("enumerate: large beta stays finite via log-sum-exp") {
  IsingModel model(12);
  for (int i = 0; i < 12; ++i) model.set_bias(i, 50.0);
  const ExactDistribution dist = enumerate_distribution(model, 10.0);
  CHECK(std::isfinite(dist.log_z));
  CHECK(dist.probabilities[(1u << 12) - 1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact_moments: uniform model has zero means and correlations") {
  IsingModel model(4);
  model.set_coupling(0, 1, 0.0);
  model.set_coupling(2, 3, 0.0);
  const auto dist = enumerate_distribution(model, 1.0);
  const auto mv = exact_moments(dist, model);
  for (double m : mv.means) CHECK(std::abs(m) < 1e-14);
  for (double c : mv.correlations) CHECK(std::abs(c) < 1e-14);
}

TEST_CASE("exact_moments: strong coupling saturates the pair correlation") {
  IsingModel model(2);
  model.set_coupling(0, 1, 10.0);
  const auto mv = exact_moments(enumerate_distribution(model, 1.0), model);
  CHECK(mv.correlations[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("exact_moments: single spin mean is tanh(beta h)") {
  IsingModel model(1);
  model.set_bias(0, 1.0);
  const auto mv = exact_moments(enumerate_distribution(model, 1.0), model);
  CHECK(mv.means[0] == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
}

TEST_CASE("exact_moments: distribution/model mismatch throws") {
  IsingModel a(2), b(3);
  const auto dist = enumerate_distribution(a, 1.0);
  CHECK_THROWS_AS(exact_moments(dist, b), std::invalid_argument);
}

TEST_CASE("convert: zero binary model maps to zero spin model with offset 0") {
  BinaryModel bin;
  bin.n = 3;
  bin.a.assign(3, 0.0);
  const SpinConversion conv = to_spin(bin);
  CHECK(conv.energy_offset == 0.0);
  for (int i = 0; i < 3; ++i) CHECK(conv.model.bias(i) == 0.0);
  CHECK(conv.model.edges().empty());
}

TEST_CASE("convert: spin model reproduces the binary distribution exactly") {
  BinaryModel bin;
  bin.n = 2;
  bin.a = {0.0, 0.0};
  bin.edges.push_back({0, 1, 4.0});
  const SpinConversion conv = to_spin(bin);

  // binary-side distribution by direct summation
  double z = 0.0;
  std::vector<double> w(4);
  for (int idx = 0; idx < 4; ++idx) {
    std::vector<int> u = {idx & 1, (idx >> 1) & 1};
    w[idx] = std::exp(-binary_energy(bin, u));
    z += w[idx];
  }
  const ExactDistribution dist = enumerate_distribution(conv.model, 1.0);
  for (int idx = 0; idx < 4; ++idx) {
    // bit k of the spin index corresponds to u_k = 1
    CHECK(dist.probabilities[idx] == doctest::Approx(w[idx] / z).epsilon(1e-12));
  }
}

TEST_CASE("convert: offset identity and round trip") {
  Rng rng(5);
  const DenseModel dense = random_dense(4, rng);
  const IsingModel spin = to_model(dense);
  const BinaryModel bin = to_binary(spin);
  const SpinConversion back = to_spin(bin);

  for (int i = 0; i < 4; ++i)
    CHECK(back.model.bias(i) == doctest::Approx(spin.bias(i)).epsilon(1e-12));
  for (const Edge& e : spin.edges())
    CHECK(back.model.coupling(e.i, e.j) == doctest::Approx(e.coupling).epsilon(1e-12));

  // E_binary(u(s)) = E_spin(s) + offset on every configuration
  for (std::uint64_t idx = 0; idx < 16; ++idx) {
    const SpinConfig s = unpack_config(idx, 4);
    const std::vector<int> u = spin_to_binary_config(s);
    CHECK(binary_energy(bin, u) ==
          doctest::Approx(energy(back.model, s) + back.energy_offset).epsilon(1e-11));
  }
}

TEST_CASE("pack/unpack round trip and indexing convention") {
  // bit i of the index is spin i, bit value 1 <=> +1
  const SpinConfig s = {1, -1, -1, 1};
  CHECK(pack_config(s) == 0b1001);
  CHECK(unpack_config(0b1001, 4) == s);
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const std::uint64_t bits = rng.next_u64() & ((1u << 20) - 1);
    CHECK(pack_config(unpack_config(bits, 20)) == bits);
  }
}

TEST_CASE("model invariants: malformed construction throws") {
  IsingModel model(3);
  CHECK_THROWS_AS(model.set_coupling(1, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(model.set_coupling(0, 3, 0.5), std::invalid_argument);
  model.set_bias(0, std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(model.check_finite(), std::invalid_argument);
  CHECK_THROWS_AS(check_spins({1, 0, -1}), std::invalid_argument);
}

TEST_CASE("adjacency is symmetric and complete") {
  IsingModel model(4);
  model.set_coupling(0, 1, 0.5);
  model.set_coupling(1, 3, -0.25);
  const auto adj = adjacency(model);
  CHECK(adj[0].size() == 1);
  CHECK(adj[1].size() == 2);
  CHECK(adj[2].empty());
  CHECK(adj[3].size() == 1);
  CHECK(adj[3][0].node == 1);
  CHECK(adj[3][0].coupling == -0.25);
}
