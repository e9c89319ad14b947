#ifndef ATN_ORIENTATION_HPP
#define ATN_ORIENTATION_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "atn/certificate.hpp"
#include "atn/coefficient.hpp"
#include "atn/graph.hpp"

namespace atn {

enum class Direction : std::uint8_t {
  Forward,   // u -> v for the canonical edge u < v
  Backward,  // v -> u
};

class Orientation {
 public:
  Orientation(SignedMultigraph graph, std::vector<Direction> directions);

  /// '0' = Forward, '1' = Backward, one character per edge.
  static Orientation from_bitstring(SignedMultigraph graph, std::string_view bits);

  const SignedMultigraph& graph() const noexcept { return graph_; }
  std::span<const Direction> directions() const noexcept { return directions_; }
  int tail(std::size_t edge) const;
  int head(std::size_t edge) const;

  ExponentVector outdegree_vector() const;
  /// Parity of Backward edges, i.e. of reversals against u -> v.
  int reversal_parity() const;
  std::string bitstring() const;
  Orientation reversed() const;

 private:
  SignedMultigraph graph_;
  std::vector<Direction> directions_;
};

/// Orientation with lower_v <= outdeg(v) <= upper_v, found by a circulation
/// with lower bounds (deterministic Dinic). std::nullopt when infeasible.
std::optional<Orientation> orient_with_bounds(const SignedMultigraph& g, const ExponentVector& lower,
                                              const ExponentVector& upper);

struct FrankViolation {
  std::vector<int> subset;  // 1-based labels
  int condition = 0;        // 1: |E(W)| <= sum u,  2: |Ebar(W)| >= sum l
  long lhs = 0;
  long rhs = 0;
};

struct FrankReport {
  bool all_pass = true;
  std::optional<FrankViolation> violation;  // first violating W in mask order
};

/// Exhaustive check of both counting conditions over all W subset of V.
FrankReport check_frank_conditions(const SignedMultigraph& g, const ExponentVector& lower,
                                   const ExponentVector& upper, int max_vertices = 20);

/// 1/k_1 + ... + 1/k_n <= 1, in exact integer arithmetic.
bool reciprocal_sum_at_most_one(std::span<const int> k);

/// (n-1) prod k_i <= sum_i (k_i - 1) prod_{j != i} k_j.
bool edge_count_condition(std::span<const int> k);

/// P_{k_1} box ... box P_{k_n}, k_i vertices per path.
SignedMultigraph box_graph(std::span<const int> k);

/// Orientation of the box with every outdegree in {n-1, n}, or std::nullopt.
std::optional<Orientation> box_orientation(std::span<const int> k, long max_vertices = 200'000);

/// C_{2k_1+1} box ... box C_{2k_n+1}, row-major labels; coordinate c of a
/// factor is cycle vertex c+1.
SignedMultigraph odd_cycle_product(std::span<const int> k);

/// Chess-board construction: boxes split each coordinate into 0..k and
/// k+1..2k, a box is black iff its index has odd popcount, white boxes carry
/// the box orientation, black boxes its reversal, and edges between boxes
/// leave black boxes. Requires sum 1/k_i <= 1.
Orientation odd_cycle_product_orientation(std::span<const int> k);

/// SCC decomposition, then bipartiteness of the arcs inside each component.
bool has_odd_directed_cycle(const Orientation& d);

/// Throws std::invalid_argument when d has an odd directed cycle. The
/// coefficient is verified directly when it fits the budget in opts.
OrientationCertificate at_certificate_from_orientation(const Orientation& d, const EngineOptions& opts = {});

/// Some orientation without odd directed cycles and small maximum outdegree:
/// tries bounded orientations from ceil(|E|/n) upward, falling back to the
/// acyclic degeneracy orientation (max outdegree col(G) - 1).
Orientation low_outdegree_orientation(const SignedMultigraph& g);

/// Edges point from the vertex removed earlier in the min-degree peeling order.
Orientation degeneracy_orientation(const SignedMultigraph& g);

struct MixedOptions {
  EngineOptions engine{2'000'000, 1};  // for the base coefficient check
  int phi_max_vertices = 10;
};

/// Certificate chain for C_{2k_1+1} box ... box C_{2k_m+1} box C_{2h_1} box ...
/// box C_{2h_r}, sum 1/k_i <= 1: AT = m + r + 1 when r >= 1. With r = 0 only
/// the chess orientation bound (max outdegree + 1) is certified.
MixedCertificate mixed_cycle_pipeline(std::span<const int> odd_k, std::span<const int> even_half,
                                      const MixedOptions& opts = {});

/// The graph the mixed certificate's base orientation lives on.
SignedMultigraph mixed_base_graph(std::span<const int> odd_k, std::span<const int> even_half);

}  // namespace atn

#endif  // ATN_ORIENTATION_HPP
