#include "qahm/hardware.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <stdexcept>

#include "qahm/serialize.hpp"

namespace qahm {

bool Topology::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

void Topology::check() const {
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [i, j] = edges[k];
    if (i >= j) throw std::invalid_argument("Topology: edges must have i < j");
    if (i < 0 || j >= num_nodes)
      throw std::invalid_argument("Topology: edge endpoint out of range");
    if (k > 0 && !(edges[k - 1] < edges[k]))
      throw std::invalid_argument("Topology: edges must be sorted and unique");
  }
}

Topology complete_topology(int n) {
  Topology t;
  t.num_nodes = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) t.edges.emplace_back(i, j);
  return t;
}

int chimera_node(int rows, int cols, int shore, int r, int c, int u, int k) {
  if (r < 0 || r >= rows || c < 0 || c >= cols || u < 0 || u > 1 || k < 0 || k >= shore)
    throw std::invalid_argument("chimera_node: index out of range");
  return ((r * cols + c) * 2 + u) * shore + k;
}

Topology chimera_topology(int rows, int cols, int shore) {
  if (rows < 1 || cols < 1 || shore < 1)
    throw std::invalid_argument("chimera_topology: dimensions must be positive");
  Topology t;
  t.num_nodes = rows * cols * 2 * shore;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      for (int a = 0; a < shore; ++a) {
        for (int b = 0; b < shore; ++b)
          t.edges.emplace_back(chimera_node(rows, cols, shore, r, c, 0, a),
                               chimera_node(rows, cols, shore, r, c, 1, b));
        if (r + 1 < rows)
          t.edges.emplace_back(chimera_node(rows, cols, shore, r, c, 0, a),
                               chimera_node(rows, cols, shore, r + 1, c, 0, a));
        if (c + 1 < cols)
          t.edges.emplace_back(chimera_node(rows, cols, shore, r, c, 1, a),
                               chimera_node(rows, cols, shore, r, c + 1, 1, a));
      }
    }
  }
  for (auto& e : t.edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(t.edges.begin(), t.edges.end());
  t.edges.erase(std::unique(t.edges.begin(), t.edges.end()), t.edges.end());
  t.check();
  return t;
}

namespace {

bool chain_connected(const std::vector<int>& chain, const Topology& topology) {
  if (chain.empty()) return false;
  if (chain.size() == 1) return true;
  std::vector<char> reached(chain.size(), 0);
  std::vector<std::size_t> frontier = {0};
  reached[0] = 1;
  while (!frontier.empty()) {
    const std::size_t cur = frontier.back();
    frontier.pop_back();
    for (std::size_t k = 0; k < chain.size(); ++k)
      if (!reached[k] && topology.has_edge(chain[cur], chain[k])) {
        reached[k] = 1;
        frontier.push_back(k);
      }
  }
  return std::all_of(reached.begin(), reached.end(), [](char c) { return c != 0; });
}

std::vector<std::pair<int, int>> inter_chain_edges(const std::vector<int>& a,
                                                   const std::vector<int>& b,
                                                   const Topology& topology) {
  std::vector<std::pair<int, int>> out;
  for (int p : a)
    for (int q : b)
      if (topology.has_edge(p, q)) out.emplace_back(std::min(p, q), std::max(p, q));
  return out;
}

}  // namespace

std::vector<std::string> validate_embedding(const EmbeddingMap& map,
                                            const Topology& topology,
                                            const IsingModel& logical) {
  std::vector<std::string> errors;
  if (logical.num_nodes() != map.num_logical())
    errors.push_back("logical variable count " + std::to_string(logical.num_nodes()) +
                     " != chain count " + std::to_string(map.num_logical()));
  if (!(map.chain_coupling >= 0.0))
    errors.push_back("chain_coupling must be non-negative");

  std::set<int> used;
  for (int v = 0; v < map.num_logical(); ++v) {
    const auto& chain = map.chains[static_cast<std::size_t>(v)];
    if (chain.empty()) {
      errors.push_back("chain " + std::to_string(v) + " is empty");
      continue;
    }
    for (int node : chain) {
      if (node < 0 || node >= topology.num_nodes) {
        errors.push_back("chain " + std::to_string(v) + " references node " +
                         std::to_string(node) + " outside the topology");
      } else if (!used.insert(node).second) {
        errors.push_back("chains overlap at node " + std::to_string(node));
      }
    }
    if (!chain_connected(chain, topology))
      errors.push_back("chain " + std::to_string(v) + " is not connected");
  }
  for (const Edge& e : logical.edges()) {
    if (e.i >= map.num_logical() || e.j >= map.num_logical()) continue;
    if (inter_chain_edges(map.chains[static_cast<std::size_t>(e.i)],
                          map.chains[static_cast<std::size_t>(e.j)], topology)
            .empty())
      errors.push_back("no physical edge between chains " + std::to_string(e.i) +
                       " and " + std::to_string(e.j) + " for a logical coupling");
  }
  return errors;
}

IsingModel embed_model(const IsingModel& logical, const EmbeddingMap& map,
                       const Topology& topology) {
  const std::vector<std::string> errors = validate_embedding(map, topology, logical);
  if (!errors.empty())
    throw std::invalid_argument("embed_model: invalid embedding: " + errors.front());

  IsingModel physical(topology.num_nodes);
  for (int v = 0; v < map.num_logical(); ++v) {
    const auto& chain = map.chains[static_cast<std::size_t>(v)];
    const double share = logical.bias(v) / static_cast<double>(chain.size());
    for (int node : chain) physical.set_bias(node, share);
    for (std::size_t a = 0; a < chain.size(); ++a)
      for (std::size_t b = a + 1; b < chain.size(); ++b)
        if (topology.has_edge(chain[a], chain[b]))
          physical.add_coupling(chain[a], chain[b], map.chain_coupling);
  }
  for (const Edge& e : logical.edges()) {
    const auto available = inter_chain_edges(map.chains[static_cast<std::size_t>(e.i)],
                                             map.chains[static_cast<std::size_t>(e.j)],
                                             topology);
    const double share = e.coupling / static_cast<double>(available.size());
    for (const auto& [p, q] : available) physical.add_coupling(p, q, share);
  }
  return physical;
}

SpinConfig encode_config(const SpinConfig& logical, const EmbeddingMap& map,
                         int num_physical) {
  if (static_cast<int>(logical.size()) != map.num_logical())
    throw std::invalid_argument("encode_config: logical length != chain count");
  check_spins(logical);
  SpinConfig physical(static_cast<std::size_t>(num_physical), Spin{1});
  for (int v = 0; v < map.num_logical(); ++v)
    for (int node : map.chains[static_cast<std::size_t>(v)]) {
      if (node < 0 || node >= num_physical)
        throw std::invalid_argument("encode_config: chain node out of range");
      physical[static_cast<std::size_t>(node)] = logical[static_cast<std::size_t>(v)];
    }
  return physical;
}

SpinConfig decode_config(const SpinConfig& physical, const EmbeddingMap& map,
                         Rng& rng) {
  check_spins(physical);
  SpinConfig logical(static_cast<std::size_t>(map.num_logical()));
  for (int v = 0; v < map.num_logical(); ++v) {
    int sum = 0;
    for (int node : map.chains[static_cast<std::size_t>(v)]) {
      if (node < 0 || node >= static_cast<int>(physical.size()))
        throw std::invalid_argument("decode_config: chain node out of range");
      sum += physical[static_cast<std::size_t>(node)];
    }
    if (sum > 0)
      logical[static_cast<std::size_t>(v)] = 1;
    else if (sum < 0)
      logical[static_cast<std::size_t>(v)] = -1;
    else
      logical[static_cast<std::size_t>(v)] = rng.bernoulli(0.5) ? Spin{1} : Spin{-1};
  }
  return logical;
}

EmbeddingMap one_cell_layout(int num_logical, double chain_coupling) {
  if (num_logical < 1 || num_logical > 8)
    throw std::invalid_argument("one_cell_layout: supports 1..8 logical variables");
  EmbeddingMap map;
  map.chain_coupling = chain_coupling;
  if (num_logical <= 4) {
    for (int v = 0; v < num_logical; ++v)
      map.chains.push_back({v, 4 + v});  // one vertical + one horizontal node
  } else {
    for (int v = 0; v < num_logical; ++v) map.chains.push_back({v});
  }
  return map;
}

void write_embedding(std::ostream& out, const EmbeddingMap& map) {
  textio::write_header(out, "embedding");
  out << "logical " << map.num_logical() << "\n";
  out << "chain_coupling " << textio::format_double(map.chain_coupling) << "\n";
  for (int v = 0; v < map.num_logical(); ++v) {
    out << "chain " << v;
    for (int node : map.chains[static_cast<std::size_t>(v)]) out << " " << node;
    out << "\n";
  }
  out << "end\n";
}

EmbeddingMap read_embedding(std::istream& in) {
  textio::LineParser parser(in);
  textio::expect_header(parser, "embedding");
  std::vector<std::string> tok;
  parser.require(tok, "logical");
  if (tok.size() != 2 || tok[0] != "logical") parser.fail("expected 'logical <n>'");
  EmbeddingMap map;
  map.chains.resize(static_cast<std::size_t>(textio::parse_integer(tok[1])));
  std::vector<char> seen(map.chains.size(), 0);
  while (true) {
    parser.require(tok, "embedding body");
    if (tok[0] == "end") break;
    if (tok[0] == "chain_coupling") {
      if (tok.size() != 2) parser.fail("expected 'chain_coupling <value>'");
      map.chain_coupling = textio::parse_double(tok[1]);
    } else if (tok[0] == "chain") {
      if (tok.size() < 3) parser.fail("expected 'chain <logical> <node>...'");
      const auto v = static_cast<std::size_t>(textio::parse_integer(tok[1]));
      if (v >= map.chains.size()) parser.fail("chain index out of range");
      if (seen[v]) parser.fail("duplicate chain " + tok[1]);
      seen[v] = 1;
      for (std::size_t k = 2; k < tok.size(); ++k)
        map.chains[v].push_back(static_cast<int>(textio::parse_integer(tok[k])));
    } else {
      parser.fail("unknown key '" + tok[0] + "' in embedding block");
    }
  }
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v])
      throw std::runtime_error("embedding: missing chain " + std::to_string(v));
  return map;
}

}  // namespace qahm
