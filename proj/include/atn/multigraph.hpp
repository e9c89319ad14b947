#ifndef ATN_MULTIGRAPH_HPP
#define ATN_MULTIGRAPH_HPP

#include <string>

#include "atn/certificate.hpp"
#include "atn/coefficient.hpp"
#include "atn/graph.hpp"
#include "atn/phi.hpp"
#include "atn/plan.hpp"

namespace atn {

struct SquaredCentral {
  BigInt direct;          // central coefficient of the graph with every edge doubled
  BigInt sum_of_squares;  // sum of c^2 over the full support of the polynomial
  int sign = 1;           // mirror sign s; expected direct = s * sum_of_squares
  bool agree() const { return direct == sign * sum_of_squares; }
};

/// Both sides of the sum-of-squares law for Q^2, computed independently.
SquaredCentral squared_central_check(const SignedMultigraph& g, const EngineOptions& opts = {});

/// Covers the maximum-degree vertices by disjoint cycles, doubles every other
/// edge and certifies the doubled multigraph with a trace certificate.
/// Throws NoCertificate without a cycle cover and InvariantViolation when the
/// doubled graph has an empty almost-central window.
CycleCoverCertificate cycle_cover_pipeline(const SignedMultigraph& g, int cycle_length = 4, const PhiOptions& opts = {});

/// Plan of the f-choosability construction from a nonzero [x^tau] F_G.
/// Promoted subsets take the smallest labels. Throws std::invalid_argument
/// when the coefficient is zero.
FChoosabilityPlan build_plan(const SignedMultigraph& g, const ExponentVector& tau, const EngineOptions& opts = {});

/// F_G times the paired factors: '+' gives (x_a + x_b), '-' gives (x_a - x_b).
/// Returns the multigraph and the sign s with Q_eps = s * (its polynomial).
std::pair<SignedMultigraph, int> q_epsilon_graph(const FChoosabilityPlan& plan, const std::string& epsilon);

/// tau plus one per occurrence in the multiset A.
ExponentVector plan_target(const FChoosabilityPlan& plan);

/// Lexicographically smallest epsilon ('+' < '-') whose Q_eps has a nonzero
/// target coefficient, with a trace certificate for Q_eps. No such epsilon
/// contradicts the construction and throws InvariantViolation.
FPlanCertificate epsilon_search(const FChoosabilityPlan& plan, int cycle_length = 4, const PhiOptions& opts = {});

}  // namespace atn

#endif  // ATN_MULTIGRAPH_HPP
