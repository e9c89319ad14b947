#ifndef ATN_CHOOSABILITY_HPP
#define ATN_CHOOSABILITY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "atn/certificate.hpp"
#include "atn/coefficient.hpp"
#include "atn/graph.hpp"

namespace atn {

/// One colour list per vertex (entry i belongs to vertex i+1).
using ListAssignment = std::vector<std::vector<int>>;

/// A proper colouring from the lists, or std::nullopt. Backtracking picks the
/// vertex with the fewest remaining colours, lowest label on ties, and tries
/// colours in increasing order.
std::optional<std::vector<int>> find_list_coloring(const SignedMultigraph& g, const ListAssignment& lists);
bool list_coloring_exists(const SignedMultigraph& g, const ListAssignment& lists);

struct ExhaustiveResult {
  bool choosable = true;
  std::optional<ListAssignment> counterexample;  // first failing assignment
  std::uint64_t assignments = 0;                 // assignments examined
  int universe = 0;
};

/// min(sum f, 2 max f). Only sum f is a proven-sufficient universe in general:
/// the union of the lists of a bad assignment has at most sum f colours.
int default_universe(const ExponentVector& f);

/// Every assignment of lists with |A_v| = f_v drawn from {1..universe} is
/// colourable. Vertex 1's list is fixed to {1..f_1}, which loses nothing by
/// colour symmetry. universe <= 0 selects default_universe(f). Throws
/// BudgetExceeded when the number of assignments exceeds budget.
ExhaustiveResult f_choosable_exhaustive(const SignedMultigraph& g, const ExponentVector& f, int universe = 0,
                                        std::uint64_t budget = 50'000'000);

/// Smallest m with g m-choosable, by exhaustion with the sufficient universe
/// m * n. Tiny graphs only.
int choice_number_exhaustive(const SignedMultigraph& g, std::uint64_t budget = 50'000'000);

/// A nonzero coefficient with witness_i <= f_i - 1 (the lexicographically
/// largest one), or std::nullopt when none exists.
std::optional<CnCertificate> cn_choosability_certificate(const SignedMultigraph& g, const ExponentVector& f,
                                                         const EngineOptions& opts = {});

/// min(ch(G) + col(H), col(G) + ch(H)) - 1.
int colbound(int ch_g, int col_g, int ch_h, int col_h);

struct StressReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  int universe = 0;
  std::vector<ListAssignment> failures;
};

nlohmann::json to_json(const StressReport& r);

/// Random list assignments (lists of size f_v from {1..universe}, mt19937_64
/// seeded with seed). universe <= 0 selects max f + 1, which makes clashes
/// likely. If held is given, a failure contradicts it and throws
/// InvariantViolation.
StressReport random_list_stress(const SignedMultigraph& g, const ExponentVector& f, std::uint64_t trials,
                                std::uint64_t seed, int universe = 0,
                                const std::optional<CnCertificate>& held = std::nullopt);

}  // namespace atn

#endif  // ATN_CHOOSABILITY_HPP
