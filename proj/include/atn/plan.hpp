#ifndef ATN_PLAN_HPP
#define ATN_PLAN_HPP

#include <utility>
#include <vector>

#include "atn/bigint.hpp"
#include "atn/graph.hpp"

namespace atn {

/// Data of the general f-choosability construction for G boxed with an even
/// cycle, built from one nonzero coefficient [x^tau] F_G. Vertex sets hold
/// 1-based labels in ascending order. Half-integers are avoided by comparing
/// 2*tau_i with deg_i.
struct FChoosabilityPlan {
  SignedMultigraph graph;
  ExponentVector tau;
  BigInt tau_coefficient;

  std::vector<int> central;      // 2 tau_i = deg_i
  std::vector<int> low_far;      // 2 tau_i <= deg_i - 2
  std::vector<int> low_half;     // 2 tau_i = deg_i - 1
  std::vector<int> high_far;     // 2 tau_i >= deg_i + 2
  std::vector<int> high_half;    // 2 tau_i = deg_i + 1
  std::vector<int> low_promoted;   // first max(0, |low_far| - |high_far|) of low_far
  std::vector<int> high_promoted;  // first max(0, |high_far| - |low_far|) of high_far

  std::vector<int> multiset_a;  // sorted, with multiplicity
  std::vector<int> multiset_b;
  std::vector<std::pair<int, int>> pairing;  // (a_j, b_j), index-wise on the sorted multisets

  ExponentVector f;  // target list sizes

  std::size_t m() const noexcept { return pairing.size(); }

  friend bool operator==(const FChoosabilityPlan&, const FChoosabilityPlan&) = default;
};

}  // namespace atn

#endif  // ATN_PLAN_HPP
