#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "gadkit/decomposer.hpp"

namespace gadkit {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  int size_of(std::size_t x) { return size_[find(x)]; }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> size_;
};

struct Edge {
  double dist;
  std::size_t i;
  std::size_t j;
};

}  // namespace

std::vector<int> cluster_eigs(const std::vector<cplx>& values, std::optional<int> forced_clusters,
                              double cluster_tol) {
  const std::size_t n = values.size();
  if (n == 0) throw ContractError("cluster_eigs: empty value list");
  if (forced_clusters && (*forced_clusters < 1 || static_cast<std::size_t>(*forced_clusters) > n))
    throw ContractError("cluster_eigs: forced cluster count " + std::to_string(*forced_clusters) +
                        " outside [1, " + std::to_string(n) + "]");

  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  double spread = 0.0;
  double modulus = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    modulus = std::max(modulus, std::abs(values[i]));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = std::abs(values[i] - values[j]);
      spread = std::max(spread, dist);
      edges.push_back({dist, i, j});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.dist, a.i, a.j) < std::tie(b.dist, b.i, b.j);
  });

  // the dendrogram as the sequence of merging edges
  std::vector<Edge> merges;
  {
    DisjointSets sets(n);
    for (const Edge& e : edges) {
      if (sets.find(e.i) == sets.find(e.j)) continue;
      sets.unite(e.i, e.j);
      merges.push_back(e);
    }
  }

  std::size_t keep = 0;
  if (forced_clusters) {
    keep = n - static_cast<std::size_t>(*forced_clusters);
  } else {
    const double s = std::max(modulus, spread);
    if (s == 0.0) {
      keep = merges.size();
    } else {
      // coarsest cut at which every cluster is tight enough for its size
      auto tight = [&](double height, int size) {
        return size == 1 || height <= s * std::pow(cluster_tol, 2.0 / size);
      };
      DisjointSets sets(n);
      std::vector<double> height(n, 0.0);
      int loose = 0;
      for (std::size_t m = 0; m < merges.size(); ++m) {
        const std::size_t a = sets.find(merges[m].i);
        const std::size_t b = sets.find(merges[m].j);
        loose -= !tight(height[a], sets.size_of(a)) + !tight(height[b], sets.size_of(b));
        sets.unite(a, b);
        const std::size_t r = sets.find(a);
        height[r] = merges[m].dist;
        loose += !tight(height[r], sets.size_of(r));
        if (loose == 0) keep = m + 1;
      }
    }
  }

  DisjointSets sets(n);
  for (std::size_t m = 0; m < keep; ++m) sets.unite(merges[m].i, merges[m].j);

  std::vector<int> labels(n, -1);
  std::vector<int> root_label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = sets.find(i);
    if (root_label[r] < 0) root_label[r] = next++;
    labels[i] = root_label[r];
  }
  return labels;
}

std::vector<int> cluster_sizes(const std::vector<int>& labels) {
  int count = 0;
  for (int l : labels) count = std::max(count, l + 1);
  std::vector<int> sizes(static_cast<std::size_t>(count), 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

}  // namespace gadkit
