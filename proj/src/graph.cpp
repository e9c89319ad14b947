#include "atn/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace atn {

long ExponentVector::total() const noexcept {
  return std::accumulate(entries_.begin(), entries_.end(), 0L);
}

int ExponentVector::max() const noexcept {
  return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end());
}

ExponentVector operator+(const ExponentVector& lhs, const ExponentVector& rhs) {
  if (lhs.size() != rhs.size()) throw std::invalid_argument("exponent length mismatch");
  ExponentVector out(lhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) out[i] = lhs[i] + rhs[i];
  return out;
}

ExponentVector operator-(const ExponentVector& lhs, const ExponentVector& rhs) {
  if (lhs.size() != rhs.size()) throw std::invalid_argument("exponent length mismatch");
  ExponentVector out(lhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) out[i] = lhs[i] - rhs[i];
  return out;
}

SignedMultigraph::SignedMultigraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  for (const Edge& e : edges_) {
    if (e.u < 1 || e.v > n || e.u >= e.v) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                  ") is not canonical 1 <= u < v <= " + std::to_string(n));
    }
  }
}

ExponentVector SignedMultigraph::degree_vector() const {
  ExponentVector deg(static_cast<std::size_t>(n_));
  for (const Edge& e : edges_) {
    ++deg[e.u - 1];
    ++deg[e.v - 1];
  }
  return deg;
}

int SignedMultigraph::max_degree() const { return degree_vector().max(); }

bool SignedMultigraph::all_degrees_even() const {
  const auto deg = degree_vector();
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d % 2 == 0; });
}

bool SignedMultigraph::has_sum_edges() const noexcept {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.tag == EdgeTag::Sum; });
}

std::size_t SignedMultigraph::diff_edge_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return e.tag == EdgeTag::Diff; }));
}

bool SignedMultigraph::is_simple() const {
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges_) {
    if (!seen.emplace(e.u, e.v).second) return false;
  }
  return true;
}

std::vector<std::vector<int>> SignedMultigraph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
  for (const Edge& e : edges_) {
    adj[e.u - 1].push_back(e.v - 1);
    adj[e.v - 1].push_back(e.u - 1);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

SignedMultigraph build_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices, got " + std::to_string(n));
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({1, n});
  return {n, std::move(edges)};
}

SignedMultigraph build_path(int k) {
  if (k < 1) throw std::invalid_argument("path needs at least 1 vertex, got " + std::to_string(k));
  std::vector<Edge> edges;
  for (int i = 1; i < k; ++i) edges.push_back({i, i + 1});
  return {k, std::move(edges)};
}

SignedMultigraph build_complete(int n) {
  if (n < 1) throw std::invalid_argument("complete graph needs at least 1 vertex");
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) edges.push_back({i, j});
  return {n, std::move(edges)};
}

SignedMultigraph build_cycle_power(int n, int p) {
  if (p < 1) throw std::invalid_argument("cycle power needs p >= 1");
  if (n <= 2 * p) {
    throw std::invalid_argument("cycle power C_n^p needs n >= 2p+1 (n=" + std::to_string(n) +
                                ", p=" + std::to_string(p) + ")");
  }
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int s = 1; s <= p; ++s) {
      int a = i + 1;
      int b = (i + s) % n + 1;
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(edges.begin(), edges.end());
  return {n, std::move(edges)};
}

SignedMultigraph build_petersen() {
  std::vector<Edge> edges;
  for (int i = 1; i <= 5; ++i) {
    int next = i % 5 + 1;
    edges.push_back({std::min(i, next), std::max(i, next)});  // outer 5-cycle
    edges.push_back({i, i + 5});                               // spokes
    int a = i + 5;
    int b = (i + 1) % 5 + 6;  // inner pentagram: 6-8, 7-9, 8-10, 9-6, 10-7
    edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(edges.begin(), edges.end());
  return {10, std::move(edges)};
}

SignedMultigraph build_edgeless(int n) { return {n, {}}; }

SignedMultigraph cartesian_product(const SignedMultigraph& g, const SignedMultigraph& h) {
  if (g.has_sum_edges() || h.has_sum_edges()) {
    throw std::invalid_argument("cartesian product is defined for plain (difference-tagged) graphs only");
  }
  const int ng = g.vertex_count();
  const int nh = h.vertex_count();
  auto label = [nh](int gv, int hv) { return (gv - 1) * nh + hv; };
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(ng) * h.edge_count() + static_cast<std::size_t>(nh) * g.edge_count());
  for (int gv = 1; gv <= ng; ++gv)
    for (const Edge& e : h.edges()) edges.push_back({label(gv, e.u), label(gv, e.v)});
  for (int hv = 1; hv <= nh; ++hv)
    for (const Edge& e : g.edges()) edges.push_back({label(e.u, hv), label(e.v, hv)});
  std::sort(edges.begin(), edges.end());
  return {ng * nh, std::move(edges)};
}

SignedMultigraph double_edges(const SignedMultigraph& g, std::span<const std::size_t> edge_indices) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (std::size_t idx : edge_indices) {
    if (idx >= g.edge_count()) {
      throw std::out_of_range("edge index " + std::to_string(idx) + " out of range");
    }
    edges.push_back(g.edge(idx));
  }
  return {g.vertex_count(), std::move(edges)};
}

int coloring_number(const SignedMultigraph& g) {
  const int n = g.vertex_count();
  if (n == 0) return 0;
  auto adj = g.adjacency();
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) deg[i] = static_cast<int>(adj[i].size());
  std::vector<bool> removed(static_cast<std::size_t>(n), false);
  int degeneracy = 0;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (!removed[i] && (best < 0 || deg[i] < deg[best])) best = i;
    }
    degeneracy = std::max(degeneracy, deg[best]);
    removed[best] = true;
    for (int w : adj[best])
      if (!removed[w]) --deg[w];
  }
  return degeneracy + 1;
}

bool is_bipartite(const SignedMultigraph& g) {
  const auto adj = g.adjacency();
  std::vector<int> side(adj.size(), -1);
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    std::vector<int> stack{static_cast<int>(s)};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x]) {
        if (side[y] < 0) {
          side[y] = 1 - side[x];
          stack.push_back(y);
        } else if (side[y] == side[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::optional<std::vector<Cycle>> find_cycle_cover(const SignedMultigraph& g, std::span<const int> targets) {
  if (!g.is_simple()) throw std::invalid_argument("cycle cover search expects a simple graph");
  const int n = g.vertex_count();
  if (n > 64) throw std::invalid_argument("cycle cover search is limited to 64 vertices");
  for (int t : targets) {
    if (t < 1 || t > n) throw std::out_of_range("target vertex " + std::to_string(t) + " out of range");
  }
  auto adj = g.adjacency();
  for (auto& list : adj) list.erase(std::unique(list.begin(), list.end()), list.end());

  std::vector<int> sorted_targets(targets.begin(), targets.end());
  std::sort(sorted_targets.begin(), sorted_targets.end());
  sorted_targets.erase(std::unique(sorted_targets.begin(), sorted_targets.end()), sorted_targets.end());

  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<Cycle> chosen;
  std::vector<int> path;

  std::function<bool()> cover;
  // Extends the open path; on closing a cycle through path.front() recurse
  // into cover() for the remaining targets.
  std::function<bool()> extend = [&]() -> bool {
    const int start = path.front();
    const int last = path.back();
    for (int w : adj[last]) {
      if (w == start && path.size() >= 3 && path[1] < last) {
        Cycle c;
        for (int x : path) c.push_back(x + 1);
        chosen.push_back(std::move(c));
        if (cover()) return true;
        chosen.pop_back();
      } else if (!used[w]) {
        used[w] = true;
        path.push_back(w);
        if (extend()) return true;
        path.pop_back();
        used[w] = false;
      }
    }
    return false;
  };
  cover = [&]() -> bool {
    auto it = std::find_if(sorted_targets.begin(), sorted_targets.end(), [&](int t) { return !used[t - 1]; });
    if (it == sorted_targets.end()) return true;
    const int t = *it - 1;
    std::vector<int> saved_path = std::move(path);
    path = {t};
    used[t] = true;
    bool ok = extend();
    if (!ok) used[t] = false;
    path = std::move(saved_path);
    return ok;
  };
  if (cover()) return chosen;
  return std::nullopt;
}

std::vector<std::size_t> cycle_edge_indices(const SignedMultigraph& g, std::span<const Cycle> cycles) {
  std::vector<bool> taken(g.edge_count(), false);
  std::vector<std::size_t> out;
  for (const Cycle& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      int a = c[i];
      int b = c[(i + 1) % c.size()];
      int lo = std::min(a, b);
      int hi = std::max(a, b);
      bool found = false;
      for (std::size_t j = 0; j < g.edge_count(); ++j) {
        if (!taken[j] && g.edge(j).u == lo && g.edge(j).v == hi) {
          taken[j] = true;
          out.push_back(j);
          found = true;
          break;
        }
      }
      if (!found) {
        throw std::invalid_argument("cycle step " + std::to_string(a) + "-" + std::to_string(b) +
                                    " is not an edge of the graph");
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace atn
