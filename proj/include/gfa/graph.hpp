#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace gfa {

/// Single edge toggle touching vertices u and v: sign +1 inserts the edge,
/// sign -1 deletes it.
struct Flip {
  int u = 0;
  int v = 0;
  int sign = 0;
};

inline Flip reverse(const Flip& f) { return {f.u, f.v, -f.sign}; }

/// Undirected simple graph with optional real-valued vertex features and
/// integer class labels. Adjacency is kept as sorted neighbor lists plus an
/// edge-membership set; dense matrices are materialized only by callers that
/// need them. Instances are immutable once built and shared freely across
/// threads; edits go through apply_flip, which returns a fresh graph.
class Graph {
 public:
  Graph() = default;
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return n_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edge_set_.size()); }
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  /// All edges as (min, max) pairs in lexicographic order.
  std::vector<std::pair<int, int>> edge_list() const;

  bool has_features() const { return features_.size() > 0; }
  const Eigen::MatrixXd& features() const { return features_; }
  void set_features(Eigen::MatrixXd x);

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<int>& labels() const { return labels_; }
  int class_count() const { return class_count_; }
  void set_labels(std::vector<int> labels);

  bool operator==(const Graph& other) const;

 private:
  static std::uint64_t edge_key(int u, int v);

  int n_ = 0;
  std::vector<std::vector<int>> adj_;
  std::unordered_set<std::uint64_t> edge_set_;
  Eigen::MatrixXd features_;
  std::vector<int> labels_;
  int class_count_ = 0;
};

/// Per-vertex degrees plus the aggregates the attack losses need.
struct DegreeProfile {
  std::vector<int> degrees;
  std::int64_t volume = 0;  // sum of degrees = 2|E|
  int d_min = 0;
};

/// Largest connected component with the vertex relabeling that produced it:
/// original_ids[new_id] gives the vertex id in the input graph.
struct LccGraph {
  Graph graph;
  std::vector<int> original_ids;
};

/// Reads a whitespace-delimited "u v" edge list, 0-based ids, one pair per
/// line. Duplicate and reversed pairs collapse to one undirected edge; the
/// vertex count is 1 + the largest id seen. Malformed or self-loop lines
/// raise with the offending line number.
Graph load_edge_list(const std::string& path);

/// Attaches a CSV feature table (row i = vertex i) to the graph.
Graph load_features(const std::string& path, Graph graph);

/// Attaches one integer class label per line to the graph.
Graph load_labels(const std::string& path, Graph graph);

LccGraph largest_connected_component(const Graph& graph);

DegreeProfile degree_profile(const Graph& graph);

/// Dense normalized adjacency D^{-1/2} A D^{-1/2}; requires min degree >= 1.
Eigen::MatrixXd normalized_adjacency(const Graph& graph);

/// Toggles one edge; the flip sign must match current edge presence.
Graph apply_flip(const Graph& graph, const Flip& flip);

}  // namespace gfa
