#ifndef ATN_COEFFICIENT_HPP
#define ATN_COEFFICIENT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "atn/bigint.hpp"
#include "atn/graph.hpp"

namespace atn {

/// Thrown when a search would exceed its configured state/node budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t budget)
      : std::runtime_error(what + " (budget " + std::to_string(budget) + ")"), budget_(budget) {}
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t budget_;
};

/// Thrown when a proven mathematical invariant fails; always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A pipeline found no certificate. This is a valid answer, not a disproof.
class NoCertificate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EngineOptions {
  std::uint64_t budget = 100'000'000;  // DP states / enumeration nodes
  unsigned threads = 1;                 // enumeration workers
};

/// Nonzero coefficients keyed by exponent, in lexicographic order.
struct SupportMap {
  std::map<ExponentVector, BigInt> entries;
  ExponentVector lower;  // per-variable window the map was computed over
  ExponentVector upper;

  bool empty() const noexcept { return entries.empty(); }
  std::size_t size() const noexcept { return entries.size(); }
  BigInt at(const ExponentVector& xi) const;
};

struct CoefficientResult {
  BigInt value;
  // Set when |xi| != |E|: the value is zero by homogeneity.
  std::optional<std::string> advisory;
};

/// Coefficient of x^xi in the (generalized) graph polynomial, computed by the
/// edge-by-edge DP over truncated exponent states.
CoefficientResult coefficient(const SignedMultigraph& g, const ExponentVector& xi,
                              const EngineOptions& opts = {});

/// Same coefficient by enumerating per-edge term choices (orientations) with
/// pruning; independent of the DP path.
CoefficientResult coefficient_by_enumeration(const SignedMultigraph& g, const ExponentVector& xi,
                                             const EngineOptions& opts = {});

/// Runs both algorithms and throws InvariantViolation when they disagree.
CoefficientResult coefficient_cross_checked(const SignedMultigraph& g, const ExponentVector& xi,
                                            const EngineOptions& opts = {});

/// All nonzero coefficients with lower_i <= xi_i <= upper_i.
SupportMap window_support(const SignedMultigraph& g, const ExponentVector& lower,
                          const ExponentVector& upper, const EngineOptions& opts = {});

/// Enumeration counterpart of window_support.
SupportMap window_support_by_enumeration(const SignedMultigraph& g, const ExponentVector& lower,
                                         const ExponentVector& upper, const EngineOptions& opts = {});

/// All nonzero coefficients with xi_i <= cap_i.
SupportMap support(const SignedMultigraph& g, const ExponentVector& cap, const EngineOptions& opts = {});

struct AlonTarsiResult {
  int at = 0;
  ExponentVector witness;  // lexicographically largest nonzero exponent with max = at-1
  BigInt coefficient;
};

/// Exact AT(G) by scanning caps upward from ceil(|E|/n).
AlonTarsiResult alon_tarsi_number_exact(const SignedMultigraph& g, const EngineOptions& opts = {});

/// Trivial AT lower bound: some exponent is at least ceil(|E|/n).
int alon_tarsi_lower_bound(const SignedMultigraph& g);

/// deg/2 per vertex; throws std::invalid_argument on an odd degree.
ExponentVector half_degrees(const SignedMultigraph& g);

/// Nonzero coefficients with |xi_i - deg_i/2| <= 1. Requires even degrees.
SupportMap almost_central_scan(const SignedMultigraph& g, const EngineOptions& opts = {});

/// The sign s with [x^xi]Q = s * [x^(deg - xi)]Q for every xi:
/// (-1)^(number of difference edges).
int mirror_sign(const SignedMultigraph& g);

/// Verifies [x^xi]Q = mirror_sign * [x^(deg - xi)]Q by two coefficient queries.
bool mirror_coefficient_check(const SignedMultigraph& g, const ExponentVector& xi,
                              const EngineOptions& opts = {});

}  // namespace atn

#endif  // ATN_COEFFICIENT_HPP
