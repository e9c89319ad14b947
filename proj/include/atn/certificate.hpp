#ifndef ATN_CERTIFICATE_HPP
#define ATN_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "atn/bigint.hpp"
#include "atn/graph.hpp"
#include "atn/plan.hpp"

namespace atn {

// Every certificate embeds the graph(s) it talks about, so it can be
// re-verified without the original inputs. Coefficient signs follow the
// canonical convention: a difference edge u < v contributes (x_v - x_u).

/// AT(G) = at exactly: a nonzero coefficient with max exponent at-1 and an
/// empty support below it.
struct ExactAtCertificate {
  SignedMultigraph graph;
  int at = 0;
  ExponentVector witness;
  BigInt coefficient;
};

/// Combinatorial Nullstellensatz: [x^witness] F_G != 0 with witness_i <= f_i - 1,
/// so G is f-choosable.
struct CnCertificate {
  SignedMultigraph graph;
  ExponentVector f;
  ExponentVector witness;
  BigInt coefficient;
};

/// Nonzero almost-central coefficient of Q plus tr(Phi^k) != 0 for the
/// product with the k-cycle; at_bound = Delta(Q)/2 + 2.
struct TraceCertificate {
  SignedMultigraph graph;
  int cycle_length = 0;
  ExponentVector witness;
  BigInt witness_coefficient;
  BigInt trace;
  int at_bound = 0;
};

/// An orientation with no odd directed cycle; its outdegree vector carries a
/// nonzero coefficient, so AT(G) <= max outdegree + 1. The coefficient is
/// recorded when it was within budget.
struct OrientationCertificate {
  SignedMultigraph graph;
  std::string directions;  // per edge: '0' = u->v, '1' = v->u
  ExponentVector outdegrees;
  std::optional<BigInt> coefficient;
  int at_bound = 0;
};

struct MixedStep {
  int cycle_length = 0;  // even cycle boxed on in this step
  int vertex_count = 0;  // of the graph before the step
  std::optional<BigInt> trace;  // tr(Phi^k) when Phi was within size limits
};

/// Product of odd cycles C_{2k+1} (sum 1/k <= 1) and even cycles C_{2h}:
/// AT = number of factors + 1.
struct MixedCertificate {
  std::vector<int> odd_k;
  std::vector<int> even_half;
  OrientationCertificate base;
  std::vector<MixedStep> steps;
  int at_bound = 0;
  int at_lower = 0;   // every monomial has an exponent >= number of factors
  int chi_lower = 0;  // 3 when an odd cycle factor is present, else 2
};

/// Cycle cover of the maximum-degree vertices, the other edges doubled, and a
/// trace certificate for the doubled multigraph: AT(G box C_2k) <= Delta(G)+1.
struct CycleCoverCertificate {
  SignedMultigraph graph;
  std::vector<Cycle> cycles;
  std::vector<std::size_t> doubled_edges;
  TraceCertificate trace;
  int at_bound = 0;
};

/// G box C_2k is f-choosable: F_G times the paired sum/difference factors
/// selected by epsilon has a nonzero almost-central coefficient.
struct FPlanCertificate {
  FChoosabilityPlan plan;
  std::string epsilon;  // '+' or '-' per pair
  SignedMultigraph q_graph;
  int q_sign = 1;  // Q_epsilon = q_sign * (generalized polynomial of q_graph)
  ExponentVector target;
  BigInt target_coefficient;  // of Q_epsilon
  TraceCertificate trace;     // for q_graph
};

using Certificate = std::variant<ExactAtCertificate, CnCertificate, TraceCertificate, OrientationCertificate,
                                 MixedCertificate, CycleCoverCertificate, FPlanCertificate>;

std::string certificate_kind(const Certificate& c);

nlohmann::json to_json(const Certificate& c);
/// Throws std::invalid_argument on malformed JSON or a graph digest mismatch.
Certificate certificate_from_json(const nlohmann::json& j);

struct CheckOptions {
  std::uint64_t budget = 100'000'000;
  int phi_max_vertices = 20;
};

struct CheckReport {
  bool ok = true;
  std::vector<std::string> failures;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      failures.push_back(what);
    }
  }
};

/// Recomputes everything the certificate claims.
CheckReport check_certificate(const Certificate& c, const CheckOptions& opts = {});

/// Parses, checks, and additionally requires that the JSON is exactly the
/// canonical serialization of what was parsed (no stray or altered fields).
CheckReport check_certificate_json(const nlohmann::json& j, const CheckOptions& opts = {});

}  // namespace atn

#endif  // ATN_CERTIFICATE_HPP
