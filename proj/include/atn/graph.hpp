#ifndef ATN_GRAPH_HPP
#define ATN_GRAPH_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace atn {

/// Multi-index over the vertices of a graph: monomial exponents, degree
/// vectors, outdegree targets. Entry i belongs to vertex i+1.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t n, int fill = 0) : entries_(n, fill) {}
  ExponentVector(std::initializer_list<int> values) : entries_(values) {}
  explicit ExponentVector(std::vector<int> values) : entries_(std::move(values)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  int& operator[](std::size_t i) { return entries_[i]; }
  int operator[](std::size_t i) const { return entries_[i]; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }
  auto begin() noexcept { return entries_.begin(); }
  auto end() noexcept { return entries_.end(); }

  const std::vector<int>& values() const noexcept { return entries_; }

  /// |xi| = sum of entries.
  long total() const noexcept;
  int max() const noexcept;

  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::vector<int> entries_;
};

ExponentVector operator+(const ExponentVector& lhs, const ExponentVector& rhs);
ExponentVector operator-(const ExponentVector& lhs, const ExponentVector& rhs);

enum class EdgeTag : std::uint8_t {
  Diff,  // factor (x_v - x_u)
  Sum,   // factor (x_v + x_u)
};

/// Edge in canonical form u < v (1-based labels).
struct Edge {
  int u;
  int v;
  EdgeTag tag = EdgeTag::Diff;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Vertex-labelled multigraph whose edges are linear factors of a
/// (generalized) graph polynomial. Immutable after construction.
class SignedMultigraph {
 public:
  SignedMultigraph() = default;
  /// Throws std::invalid_argument unless every edge satisfies 1 <= u < v <= n.
  SignedMultigraph(int n, std::vector<Edge> edges);

  int vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  ExponentVector degree_vector() const;
  int max_degree() const;
  bool all_degrees_even() const;
  bool has_sum_edges() const noexcept;
  std::size_t diff_edge_count() const noexcept;
  /// True when there are no parallel edges.
  bool is_simple() const;

  /// Neighbour lists with multiplicity, sorted ascending, 0-based.
  std::vector<std::vector<int>> adjacency() const;

  friend bool operator==(const SignedMultigraph&, const SignedMultigraph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

SignedMultigraph build_cycle(int n);
SignedMultigraph build_path(int k);
SignedMultigraph build_complete(int n);
SignedMultigraph build_cycle_power(int n, int p);
SignedMultigraph build_petersen();
SignedMultigraph build_edgeless(int n);

/// Vertex (g, h) of the product gets label (g-1)*|V_H| + h. Edges are sorted.
SignedMultigraph cartesian_product(const SignedMultigraph& g, const SignedMultigraph& h);

/// Appends a copy (same tag) of each selected edge. Indices may repeat.
SignedMultigraph double_edges(const SignedMultigraph& g, std::span<const std::size_t> edge_indices);

/// Degeneracy + 1; parallel edges count with multiplicity.
int coloring_number(const SignedMultigraph& g);

/// Proper 2-colouring of the underlying simple graph exists.
bool is_bipartite(const SignedMultigraph& g);

/// A cycle as a closed vertex sequence (1-based, first vertex not repeated).
using Cycle = std::vector<int>;

/// Exact backtracking search for vertex-disjoint cycles of a simple graph
/// covering every target vertex. Cycles are explored from the smallest
/// uncovered target, neighbours in ascending order; the first cover found is
/// returned. std::nullopt means the exhaustive search proved no cover exists.
std::optional<std::vector<Cycle>> find_cycle_cover(const SignedMultigraph& g,
                                                   std::span<const int> targets);

/// Indices of edges of g lying on the given cycles (each cycle edge matched to
/// one distinct edge index).
std::vector<std::size_t> cycle_edge_indices(const SignedMultigraph& g,
                                            std::span<const Cycle> cycles);

}  // namespace atn

#endif  // ATN_GRAPH_HPP
