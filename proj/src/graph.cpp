#include "dcg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace dcg {

Graph::Graph(int n_agents, std::vector<std::pair<int, int>> edges)
    : n_agents_(n_agents), edges_(std::move(edges)) {
  if (n_agents_ < 1) throw std::invalid_argument("graph: n_agents must be positive");
  for (auto& e : edges_) {
    if (e.first > e.second) std::swap(e.first, e.second);
    if (e.first == e.second) throw std::invalid_argument("graph: self-loop");
    if (e.first < 0 || e.second >= n_agents_)
      throw std::invalid_argument("graph: edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw std::invalid_argument("graph: duplicate edge");

  neighbors_.assign(n_agents_, {});
  for (const auto& [i, j] : edges_) {
    neighbors_[i].push_back(j);
    neighbors_[j].push_back(i);
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());

  if (!is_connected()) throw std::invalid_argument("graph: not connected");
}

int Graph::max_degree() const {
  int d = 0;
  for (int i = 0; i < n_agents_; ++i) d = std::max(d, degree(i));
  return d;
}

bool Graph::has_edge(int i, int j) const {
  const auto& nb = neighbors_[i];
  return std::binary_search(nb.begin(), nb.end(), j);
}

Eigen::MatrixXd Graph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_agents_, n_agents_);
  for (const auto& [i, j] : edges_) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return a;
}

Eigen::MatrixXd Graph::laplacian() const {
  Eigen::MatrixXd l = -adjacency();
  for (int i = 0; i < n_agents_; ++i) l(i, i) = static_cast<double>(degree(i));
  return l;
}

bool Graph::is_connected() const {
  std::vector<bool> seen(n_agents_, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : neighbors_[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == n_agents_;
}

void Graph::save(std::ostream& os) const {
  os << n_agents_ << "\n";
  for (const auto& [i, j] : edges_) os << i << " " << j << "\n";
}

Graph Graph::load(std::istream& is) {
  int n = 0;
  if (!(is >> n)) throw std::invalid_argument("graph load: missing agent count");
  std::vector<std::pair<int, int>> edges;
  int i, j;
  while (is >> i >> j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

double connectivity_ratio(const Graph& g) {
  const int n = g.n_agents();
  if (n < 2) return 0.0;
  return 2.0 * static_cast<double>(g.edges().size()) / (static_cast<double>(n) * (n - 1));
}

double min_connectivity_ratio(int n_agents) {
  if (n_agents < 2) return 0.0;
  return 2.0 / static_cast<double>(n_agents);
}

Graph generate_random_connected(int n_agents, double kappa_target, std::uint64_t seed) {
  if (n_agents < 1) throw std::invalid_argument("generate_random_connected: n_agents must be positive");
  if (n_agents == 1) return Graph(1, {});
  if (kappa_target <= 0.0 || kappa_target > 1.0)
    throw std::invalid_argument("generate_random_connected: kappa_target must be in (0, 1]");
  const double max_edges = static_cast<double>(n_agents) * (n_agents - 1) / 2.0;
  long target = std::lround(kappa_target * max_edges);
  if (target < n_agents - 1)
    throw std::invalid_argument("generate_random_connected: kappa_target below spanning-tree floor");

  std::mt19937_64 rng(seed);

  // Uniform spanning tree of the complete graph via first-entry random walk.
  std::uniform_int_distribution<int> pick(0, n_agents - 1);
  std::vector<bool> visited(n_agents, false);
  std::set<std::pair<int, int>> edge_set;
  int current = pick(rng);
  visited[current] = true;
  int visited_count = 1;
  while (visited_count < n_agents) {
    int next = pick(rng);
    if (next == current) continue;
    if (!visited[next]) {
      visited[next] = true;
      ++visited_count;
      edge_set.insert({std::min(current, next), std::max(current, next)});
    }
    current = next;
  }

  // Extra edges sampled uniformly without replacement from the non-edges.
  std::vector<std::pair<int, int>> non_edges;
  for (int i = 0; i < n_agents; ++i)
    for (int j = i + 1; j < n_agents; ++j)
      if (!edge_set.count({i, j})) non_edges.emplace_back(i, j);
  std::shuffle(non_edges.begin(), non_edges.end(), rng);
  for (std::size_t k = 0; edge_set.size() < static_cast<std::size_t>(target); ++k)
    edge_set.insert(non_edges[k]);

  return Graph(n_agents, {edge_set.begin(), edge_set.end()});
}

}  // namespace dcg
