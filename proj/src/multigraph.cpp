#include "atn/multigraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace atn {

SquaredCentral squared_central_check(const SignedMultigraph& g, const EngineOptions& opts) {
  std::vector<std::size_t> all(g.edge_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto doubled = double_edges(g, all);

  SquaredCentral out;
  out.sign = mirror_sign(g);
  out.direct = coefficient(doubled, g.degree_vector(), opts).value;
  const SupportMap full = support(g, g.degree_vector(), opts);
  for (const auto& [xi, c] : full.entries) out.sum_of_squares += c * c;
  return out;
}

CycleCoverCertificate cycle_cover_pipeline(const SignedMultigraph& g, int cycle_length, const PhiOptions& opts) {
  const int delta = g.max_degree();
  const auto deg = g.degree_vector();
  std::vector<int> targets;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (delta > 0 && deg[v] == delta) targets.push_back(v + 1);

  auto cover = find_cycle_cover(g, targets);
  if (!cover) throw NoCertificate("the maximum-degree vertices admit no cover by disjoint cycles");

  CycleCoverCertificate cert;
  cert.graph = g;
  cert.cycles = std::move(*cover);
  const auto on_cycles = cycle_edge_indices(g, cert.cycles);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!std::binary_search(on_cycles.begin(), on_cycles.end(), e)) cert.doubled_edges.push_back(e);
  }
  const auto doubled = double_edges(g, cert.doubled_edges);
  auto trace = trace_certificate(doubled, cycle_length, opts);
  if (!trace) throw InvariantViolation("doubled multigraph has an empty almost-central window");
  cert.trace = std::move(*trace);
  cert.at_bound = cert.trace.at_bound;
  return cert;
}

FChoosabilityPlan build_plan(const SignedMultigraph& g, const ExponentVector& tau, const EngineOptions& opts) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (tau.size() != n) throw std::invalid_argument("tau needs one entry per vertex");
  FChoosabilityPlan plan;
  plan.graph = g;
  plan.tau = tau;
  plan.tau_coefficient = coefficient(g, tau, opts).value;
  if (plan.tau_coefficient == 0) {
    throw std::invalid_argument("[x^tau] F_G is zero; the plan needs a nonzero coefficient");
  }

  // Doubled distance L_i = |2 tau_i - deg_i| = 2 l(tau, i).
  const auto deg = g.degree_vector();
  std::vector<int> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int d = 2 * tau[i] - deg[i];
    const int label = static_cast<int>(i) + 1;
    dist[i] = std::abs(d);
    if (d == 0) plan.central.push_back(label);
    else if (d == -1) plan.low_half.push_back(label);
    else if (d == 1) plan.high_half.push_back(label);
    else if (d < 0) plan.low_far.push_back(label);
    else plan.high_far.push_back(label);
  }
  const std::size_t a1 = plan.low_far.size();
  const std::size_t b1 = plan.high_far.size();
  plan.low_promoted.assign(plan.low_far.begin(), plan.low_far.begin() + (a1 > b1 ? a1 - b1 : 0));
  plan.high_promoted.assign(plan.high_far.begin(), plan.high_far.begin() + (b1 > a1 ? b1 - a1 : 0));

  auto contains = [](const std::vector<int>& set, int x) { return std::binary_search(set.begin(), set.end(), x); };
  plan.f = ExponentVector(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i) + 1;
    const bool far = contains(plan.low_far, label) || contains(plan.high_far, label);
    const bool promoted = contains(plan.low_promoted, label) || contains(plan.high_promoted, label);
    int twice_f = 0;
    int copies = 0;
    if (dist[i] == 0) {
      twice_f = deg[i] + 4;
    } else if (far && !promoted) {
      twice_f = deg[i] + dist[i] + 2;
      copies = dist[i] - 2;
    } else {
      twice_f = deg[i] + dist[i] + 4;
      copies = dist[i];
    }
    plan.f[i] = twice_f / 2;
    auto& target = 2 * tau[i] < deg[i] ? plan.multiset_a : plan.multiset_b;
    target.insert(target.end(), static_cast<std::size_t>(copies), label);
  }
  if (plan.multiset_a.size() != plan.multiset_b.size()) {
    throw InvariantViolation("multisets A and B differ in size");
  }
  for (std::size_t j = 0; j < plan.multiset_a.size(); ++j) {
    plan.pairing.emplace_back(plan.multiset_a[j], plan.multiset_b[j]);
  }
  return plan;
}

std::pair<SignedMultigraph, int> q_epsilon_graph(const FChoosabilityPlan& plan, const std::string& epsilon) {
  if (epsilon.size() != plan.m()) {
    throw std::invalid_argument("epsilon needs one sign per pair (" + std::to_string(plan.m()) + ")");
  }
  std::vector<Edge> edges(plan.graph.edges().begin(), plan.graph.edges().end());
  int sign = 1;
  for (std::size_t j = 0; j < plan.m(); ++j) {
    const auto [a, b] = plan.pairing[j];
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    if (epsilon[j] == '+') {
      edges.push_back({lo, hi, EdgeTag::Sum});
    } else if (epsilon[j] == '-') {
      // (x_a - x_b) is the canonical (x_hi - x_lo) up to the sign of a - b.
      edges.push_back({lo, hi, EdgeTag::Diff});
      if (a < b) sign = -sign;
    } else {
      throw std::invalid_argument("epsilon may only contain '+' and '-'");
    }
  }
  std::sort(edges.begin(), edges.end());
  return {SignedMultigraph(plan.graph.vertex_count(), std::move(edges)), sign};
}

ExponentVector plan_target(const FChoosabilityPlan& plan) {
  ExponentVector target = plan.tau;
  for (int a : plan.multiset_a) ++target[a - 1];
  return target;
}

FPlanCertificate epsilon_search(const FChoosabilityPlan& plan, int cycle_length, const PhiOptions& opts) {
  const std::size_t m = plan.m();
  if (m >= 63) throw BudgetExceeded("epsilon search over 2^" + std::to_string(m) + " sign vectors", 62);
  const ExponentVector target = plan_target(plan);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << m); ++code) {
    std::string eps(m, '+');
    for (std::size_t j = 0; j < m; ++j)
      if ((code >> (m - 1 - j)) & 1U) eps[j] = '-';
    auto [q, sign] = q_epsilon_graph(plan, eps);
    const BigInt value = sign * coefficient(q, target, opts.engine).value;
    if (value == 0) continue;

    FPlanCertificate cert;
    cert.plan = plan;
    cert.epsilon = eps;
    cert.q_graph = q;
    cert.q_sign = sign;
    cert.target = target;
    cert.target_coefficient = value;
    auto trace = trace_certificate(q, cycle_length, opts);
    if (!trace) throw InvariantViolation("Q_eps has a nonzero almost-central coefficient but an empty window");
    cert.trace = std::move(*trace);
    return cert;
  }
  throw InvariantViolation("no sign vector epsilon gives a nonzero target coefficient");
}

}  // namespace atn
