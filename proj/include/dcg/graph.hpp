#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace dcg {

// Undirected connected communication topology. Agents are 0-based contiguous
// ids; edges are stored as (i, j) with i < j, sorted lexicographically.
// Immutable after construction.
class Graph {
 public:
  Graph(int n_agents, std::vector<std::pair<int, int>> edges);

  int n_agents() const { return n_agents_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // Neighbor ids of agent i, ascending.
  const std::vector<int>& neighbors(int i) const { return neighbors_[i]; }
  int degree(int i) const { return static_cast<int>(neighbors_[i].size()); }
  int max_degree() const;
  bool has_edge(int i, int j) const;

  Eigen::MatrixXd adjacency() const;
  Eigen::MatrixXd laplacian() const;

  bool is_connected() const;

  void save(std::ostream& os) const;
  static Graph load(std::istream& is);

 private:
  int n_agents_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> neighbors_;
};

// kappa = 2|E| / (N(N-1)).
double connectivity_ratio(const Graph& g);

// Spanning-tree floor for the connectivity ratio at a given N.
double min_connectivity_ratio(int n_agents);

// Uniform random spanning tree plus uniformly sampled extra edges until the
// edge count round(kappa_target * N(N-1)/2) is reached. Deterministic per seed.
Graph generate_random_connected(int n_agents, double kappa_target, std::uint64_t seed);

}  // namespace dcg
