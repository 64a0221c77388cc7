#include "gfa/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gfa {

namespace {

std::string location(const std::string& path, int line_no) {
  return path + ":" + std::to_string(line_no);
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

std::uint64_t Graph::edge_key(int u, int v) {
  const std::uint64_t lo = static_cast<std::uint64_t>(std::min(u, v));
  const std::uint64_t hi = static_cast<std::uint64_t>(std::max(u, v));
  return (lo << 32) | hi;
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n), adj_(n) {
  if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
  for (const auto& [u, v] : edges) {
    if (u == v) {
      throw std::runtime_error("self-loop on vertex " + std::to_string(u));
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::runtime_error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                               ") references a vertex id >= " + std::to_string(n));
    }
    if (edge_set_.insert(edge_key(u, v)).second) {
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u == v) return false;
  return edge_set_.count(edge_key(u, v)) > 0;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_set_.size());
  for (int u = 0; u < n_; ++u) {
    for (int v : adj_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Graph::set_features(Eigen::MatrixXd x) {
  if (x.rows() != n_) {
    throw std::runtime_error("feature matrix has " + std::to_string(x.rows()) +
                             " rows for a graph with " + std::to_string(n_) + " vertices");
  }
  features_ = std::move(x);
}

void Graph::set_labels(std::vector<int> labels) {
  if (static_cast<int>(labels.size()) != n_) {
    throw std::runtime_error("label count " + std::to_string(labels.size()) +
                             " does not match vertex count " + std::to_string(n_));
  }
  int max_label = -1;
  for (int y : labels) {
    if (y < 0) throw std::runtime_error("negative class label " + std::to_string(y));
    max_label = std::max(max_label, y);
  }
  labels_ = std::move(labels);
  class_count_ = max_label + 1;
}

bool Graph::operator==(const Graph& other) const {
  if (n_ != other.n_ || edge_set_ != other.edge_set_) return false;
  if (has_features() != other.has_features() || has_labels() != other.has_labels()) return false;
  if (has_features()) {
    if (features_.rows() != other.features_.rows() || features_.cols() != other.features_.cols())
      return false;
    if (features_.size() > 0 && !(features_.array() == other.features_.array()).all()) return false;
  }
  if (has_labels() && labels_ != other.labels_) return false;
  return true;
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);

  std::vector<std::pair<int, int>> edges;
  int max_id = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    std::istringstream ls(line);
    long long u, v;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) {
      throw std::runtime_error("malformed edge line at " + location(path, line_no) + ": '" + line + "'");
    }
    if (u < 0 || v < 0) {
      throw std::runtime_error("negative vertex id at " + location(path, line_no));
    }
    if (u == v) {
      throw std::runtime_error("self-loop at " + location(path, line_no) + ": vertex " + std::to_string(u));
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
  }
  return Graph(max_id + 1, edges);
}

Graph load_features(const std::string& path, Graph graph) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open feature file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw std::runtime_error("non-numeric cell at " + location(path, line_no) + ": '" + cell + "'");
      }
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size()) {
        throw std::runtime_error("non-numeric cell at " + location(path, line_no) + ": '" + cell + "'");
      }
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error("ragged feature row at " + location(path, line_no));
    }
    rows.push_back(std::move(row));
  }
  const int n = graph.vertex_count();
  if (static_cast<int>(rows.size()) != n) {
    throw std::runtime_error("feature file " + path + " has " + std::to_string(rows.size()) +
                             " rows, expected " + std::to_string(n));
  }
  const int l = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  Eigen::MatrixXd x(n, l);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < l; ++j) x(i, j) = rows[i][j];
  }
  graph.set_features(std::move(x));
  return graph;
}

Graph load_labels(const std::string& path, Graph graph) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open label file: " + path);

  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    std::istringstream ls(line);
    long long y;
    std::string extra;
    if (!(ls >> y) || (ls >> extra)) {
      throw std::runtime_error("malformed label line at " + location(path, line_no) + ": '" + line + "'");
    }
    if (y < 0) {
      throw std::runtime_error("negative label at " + location(path, line_no));
    }
    labels.push_back(static_cast<int>(y));
  }
  if (static_cast<int>(labels.size()) != graph.vertex_count()) {
    throw std::runtime_error("label file " + path + " has " + std::to_string(labels.size()) +
                             " entries, expected " + std::to_string(graph.vertex_count()));
  }
  graph.set_labels(std::move(labels));
  return graph;
}

LccGraph largest_connected_component(const Graph& graph) {
  const int n = graph.vertex_count();
  if (n == 0) throw std::runtime_error("largest_connected_component: graph has no vertices");

  std::vector<int> component(n, -1);
  std::vector<int> component_size;
  std::vector<int> stack;
  for (int start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    const int c = static_cast<int>(component_size.size());
    component_size.push_back(0);
    stack.push_back(start);
    component[start] = c;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      ++component_size[c];
      for (int w : graph.neighbors(v)) {
        if (component[w] < 0) {
          component[w] = c;
          stack.push_back(w);
        }
      }
    }
  }

  const int best = static_cast<int>(
      std::max_element(component_size.begin(), component_size.end()) - component_size.begin());

  // Keep vertices in their original order so the relabeling is monotone.
  std::vector<int> original_ids;
  std::vector<int> new_id(n, -1);
  for (int v = 0; v < n; ++v) {
    if (component[v] == best) {
      new_id[v] = static_cast<int>(original_ids.size());
      original_ids.push_back(v);
    }
  }

  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : graph.edge_list()) {
    if (new_id[u] >= 0 && new_id[v] >= 0) edges.emplace_back(new_id[u], new_id[v]);
  }
  Graph sub(static_cast<int>(original_ids.size()), edges);

  if (graph.has_features()) {
    Eigen::MatrixXd x(original_ids.size(), graph.features().cols());
    for (std::size_t i = 0; i < original_ids.size(); ++i) {
      x.row(static_cast<Eigen::Index>(i)) = graph.features().row(original_ids[i]);
    }
    sub.set_features(std::move(x));
  }
  if (graph.has_labels()) {
    std::vector<int> y(original_ids.size());
    for (std::size_t i = 0; i < original_ids.size(); ++i) y[i] = graph.labels()[original_ids[i]];
    sub.set_labels(std::move(y));
  }
  return {std::move(sub), std::move(original_ids)};
}

DegreeProfile degree_profile(const Graph& graph) {
  DegreeProfile profile;
  const int n = graph.vertex_count();
  profile.degrees.resize(n);
  for (int v = 0; v < n; ++v) {
    profile.degrees[v] = graph.degree(v);
    profile.volume += profile.degrees[v];
  }
  profile.d_min = n == 0 ? 0 : *std::min_element(profile.degrees.begin(), profile.degrees.end());
  return profile;
}

Eigen::MatrixXd normalized_adjacency(const Graph& graph) {
  const int n = graph.vertex_count();
  Eigen::VectorXd inv_sqrt_deg(n);
  for (int v = 0; v < n; ++v) {
    const int d = graph.degree(v);
    if (d == 0) {
      throw std::runtime_error("normalized_adjacency: vertex " + std::to_string(v) + " has degree 0");
    }
    inv_sqrt_deg(v) = 1.0 / std::sqrt(static_cast<double>(d));
  }
  Eigen::MatrixXd a_hat = Eigen::MatrixXd::Zero(n, n);
  for (int u = 0; u < n; ++u) {
    for (int v : graph.neighbors(u)) {
      a_hat(u, v) = inv_sqrt_deg(u) * inv_sqrt_deg(v);
    }
  }
  return a_hat;
}

Graph apply_flip(const Graph& graph, const Flip& flip) {
  if (flip.u == flip.v) throw std::invalid_argument("flip endpoints must be distinct");
  const bool present = graph.has_edge(flip.u, flip.v);
  if (flip.sign == 1 && present) {
    throw std::runtime_error("flip inserts edge (" + std::to_string(flip.u) + "," +
                             std::to_string(flip.v) + ") which already exists");
  }
  if (flip.sign == -1 && !present) {
    throw std::runtime_error("flip deletes edge (" + std::to_string(flip.u) + "," +
                             std::to_string(flip.v) + ") which is absent");
  }
  if (flip.sign != 1 && flip.sign != -1) {
    throw std::invalid_argument("flip sign must be +1 or -1");
  }

  auto edges = graph.edge_list();
  if (flip.sign == 1) {
    edges.emplace_back(std::min(flip.u, flip.v), std::max(flip.u, flip.v));
  } else {
    const std::pair<int, int> key{std::min(flip.u, flip.v), std::max(flip.u, flip.v)};
    edges.erase(std::remove(edges.begin(), edges.end(), key), edges.end());
  }
  Graph out(graph.vertex_count(), edges);
  if (graph.has_features()) out.set_features(graph.features());
  if (graph.has_labels()) out.set_labels(graph.labels());
  return out;
}

}  // namespace gfa
