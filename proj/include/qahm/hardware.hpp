#ifndef QAHM_HARDWARE_HPP
#define QAHM_HARDWARE_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qahm/ising.hpp"
#include "qahm/rng.hpp"

namespace qahm {

// Undirected device graph. Edges are stored (i, j) with i < j, sorted, unique.
struct Topology {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;

  bool has_edge(int i, int j) const;
  void check() const;  // no self-edges, endpoints in range, sorted unique
};

Topology complete_topology(int n);

// Grid of K_{shore,shore} cells. Within a cell, shore-0 ("vertical") nodes
// connect to all shore-1 ("horizontal") nodes. Shore-0 node k of a cell
// couples to shore-0 node k of the cell below; shore-1 node k couples to
// shore-1 node k of the cell to the right.
Topology chimera_topology(int rows, int cols, int shore = 4);

// Linear index of cell (r, c), shore u in {0,1}, in-shore position k.
int chimera_node(int rows, int cols, int shore, int r, int c, int u, int k);

// One chain of physical nodes per logical variable, plus the ferromagnetic
// coupling laid on every intra-chain edge (positive under this repo's energy
// convention).
struct EmbeddingMap {
  std::vector<std::vector<int>> chains;
  double chain_coupling = 1.0;

  int num_logical() const { return static_cast<int>(chains.size()); }
  int num_physical(const Topology& t) const { return t.num_nodes; }
};

// Checks the three embedding invariants against a topology and the logical
// model's edge set. Returns every violation found; empty means valid.
std::vector<std::string> validate_embedding(const EmbeddingMap& map,
                                            const Topology& topology,
                                            const IsingModel& logical);

// Splits each logical bias equally over its chain, each logical coupling
// equally over the available inter-chain edges, and adds chain_coupling on
// every intra-chain edge. The result is a model over topology.num_nodes
// physical variables. Throws if validate_embedding reports errors.
IsingModel embed_model(const IsingModel& logical, const EmbeddingMap& map,
                       const Topology& topology);

// Replicates each logical spin across its chain. Physical nodes not covered
// by any chain are set to +1 (they carry no parameters after embedding).
SpinConfig encode_config(const SpinConfig& logical, const EmbeddingMap& map,
                         int num_physical);

// Majority vote per chain; exact ties are resolved by a fair coin from rng.
SpinConfig decode_config(const SpinConfig& physical, const EmbeddingMap& map,
                         Rng& rng);

// Trivial layout helper for <= 8 logical variables on one Chimera cell
// (shore 4): n <= 4 uses chains {vertical_i, horizontal_i} (supports any
// pairwise model), 5 <= n <= 8 uses single-node chains across both shores
// (supports bipartite edge sets only; validate_embedding reports anything
// unsupported).
EmbeddingMap one_cell_layout(int num_logical, double chain_coupling);

void write_embedding(std::ostream& out, const EmbeddingMap& map);
EmbeddingMap read_embedding(std::istream& in);

}  // namespace qahm

#endif  // QAHM_HARDWARE_HPP
