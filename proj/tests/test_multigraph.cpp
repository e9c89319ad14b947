#include "doctest.h"

#include "atn/multigraph.hpp"
#include "oracle.hpp"

using namespace atn;

namespace {

std::vector<SignedMultigraph> zoo_up_to_8_edges() {
  return {build_path(2),     build_path(4),    build_cycle(3),  build_cycle(4),
          build_cycle(5),    build_cycle(8),   build_complete(4), build_edgeless(3),
          SignedMultigraph(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {3, 4}}),
          SignedMultigraph(3, {{1, 2}, {1, 2}, {2, 3, EdgeTag::Sum}}),
          cartesian_product(build_path(2), build_path(3))};
}

}  // namespace

TEST_CASE("squared central coefficient") {
  const auto e = squared_central_check(build_path(2));
  CHECK(e.direct == -2);
  CHECK(e.sum_of_squares == 2);
  CHECK(e.agree());
  CHECK(abs(squared_central_check(build_cycle(3)).direct) == 6);
  for (const auto& g : zoo_up_to_8_edges()) {
    const auto r = squared_central_check(g);
    CHECK(r.agree());
    // Independent check of the sum of squares from the naive expansion.
    BigInt squares(0);
    for (const auto& [m, c] : oracle::expand(g)) squares += c * c;
    CHECK(r.sum_of_squares == squares);
  }
  const auto c4 = squared_central_check(build_cycle(4));
  CHECK(c4.direct > 4);
}

TEST_CASE("cycle cover and doubling pipeline") {
  const auto k3 = cycle_cover_pipeline(build_complete(3));
  CHECK(k3.doubled_edges.empty());
  CHECK(k3.trace.graph == build_complete(3));
  CHECK(k3.at_bound == 3);

  const auto k4 = cycle_cover_pipeline(build_complete(4));
  CHECK(k4.cycles.size() == 1);
  CHECK(k4.doubled_edges.size() == 2);
  CHECK(k4.trace.graph.degree_vector() == ExponentVector(4, 4));
  CHECK(k4.at_bound == 4);

  const auto pet = cycle_cover_pipeline(build_petersen());
  CHECK(pet.cycles.size() == 2);
  CHECK(pet.at_bound == 4);
  CHECK(pet.trace.witness_coefficient != 0);

  CHECK_THROWS_AS(cycle_cover_pipeline(build_path(3)), NoCertificate);
}

TEST_CASE("plans") {
  const auto c3 = build_plan(build_cycle(3), {2, 1, 0});
  CHECK(c3.central == std::vector<int>{2});
  CHECK(c3.high_far == std::vector<int>{1});
  CHECK(c3.low_far == std::vector<int>{3});
  CHECK(c3.low_promoted.empty());
  CHECK(c3.high_promoted.empty());
  CHECK(c3.m() == 0);
  CHECK(c3.f == ExponentVector{3, 3, 3});

  // (2,2,1,1) has max exponent 2 < AT(K_4) - 1, so its coefficient vanishes.
  CHECK_THROWS_AS(build_plan(build_complete(4), {2, 2, 1, 1}), std::invalid_argument);
  const auto k4 = build_plan(build_complete(4), {3, 2, 1, 0});
  CHECK(k4.high_far == std::vector<int>{1});
  CHECK(k4.high_half == std::vector<int>{2});
  CHECK(k4.low_half == std::vector<int>{3});
  CHECK(k4.low_far == std::vector<int>{4});
  CHECK(k4.multiset_a == std::vector<int>{3, 4});
  CHECK(k4.multiset_b == std::vector<int>{1, 2});
  CHECK(k4.m() == 2);
  CHECK(k4.f == ExponentVector(4, 4));

  const auto e = build_plan(build_path(2), {1, 0});
  CHECK(e.high_half == std::vector<int>{1});
  CHECK(e.low_half == std::vector<int>{2});
  CHECK(e.m() == 1);
  CHECK(e.f == ExponentVector{3, 3});

  CHECK_THROWS_AS(build_plan(build_cycle(3), {1, 1, 1}), std::invalid_argument);
}

TEST_CASE("plans with promoted vertices") {
  // Path 1-2-3-4-5 with tau = (0,0,1,2,1): vertex 2 sits 1 below, vertex 4 sits 1 above.
  const auto g = build_path(5);
  const auto s = support(g, g.degree_vector());
  for (const auto& [tau, c] : s.entries) {
    const auto plan = build_plan(g, tau);
    CHECK(plan.multiset_a.size() == plan.multiset_b.size());
    const auto [q, sign] = q_epsilon_graph(plan, std::string(plan.m(), '+'));
    const auto deg = q.degree_vector();
    for (std::size_t i = 0; i < deg.size(); ++i) CHECK(deg[i] == 2 * plan.f[i] - 4);
    CHECK(plan.low_promoted.size() ==
          (plan.low_far.size() > plan.high_far.size() ? plan.low_far.size() - plan.high_far.size() : 0));
    CHECK(plan.high_promoted.size() ==
          (plan.high_far.size() > plan.low_far.size() ? plan.high_far.size() - plan.low_far.size() : 0));
  }
}

TEST_CASE("epsilon search") {
  const auto c3 = epsilon_search(build_plan(build_cycle(3), {2, 1, 0}));
  CHECK(c3.epsilon.empty());
  CHECK(c3.target_coefficient == -1);
  CHECK(c3.q_graph.edge_count() == 3);
  CHECK(c3.q_graph.degree_vector() == ExponentVector(3, 2));

  const auto e = epsilon_search(build_plan(build_path(2), {1, 0}));
  CHECK(e.epsilon == "-");
  CHECK(e.target == ExponentVector{1, 1});
  CHECK(e.target_coefficient == -2);

  const auto k4 = epsilon_search(build_plan(build_complete(4), {3, 2, 1, 0}));
  CHECK(k4.target == ExponentVector{3, 2, 2, 1});
  CHECK(k4.target_coefficient != 0);
  CHECK(k4.plan.f == ExponentVector(4, 4));
  CHECK(k4.q_graph.degree_vector() == ExponentVector(4, 4));
  CHECK(k4.trace.trace != 0);

  // The sign bookkeeping of Q_eps matches a naive product.
  for (const std::string eps : {"++", "+-", "-+", "--"}) {
    const auto plan = build_plan(build_complete(4), {3, 2, 1, 0});
    const auto [q, sign] = q_epsilon_graph(plan, eps);
    oracle::Poly base = oracle::expand(plan.graph);
    for (std::size_t j = 0; j < plan.m(); ++j) {
      const auto [a, b] = plan.pairing[j];
      oracle::Poly next;
      for (const auto& [mono, c] : base) {
        auto ma = mono;
        ++ma[a - 1];
        next[ma] += c;
        auto mb = mono;
        ++mb[b - 1];
        next[mb] += eps[j] == '+' ? c : BigInt(-c);
      }
      base = next;
    }
    CHECK(sign * coefficient(q, plan_target(plan)).value == oracle::coeff(base, plan_target(plan).values()));
  }
}

TEST_CASE("epsilon search succeeds on every plan of small graphs") {
  for (const auto& g : {build_cycle(3), build_cycle(4), build_path(3), build_complete(4)}) {
    for (const auto& [tau, c] : support(g, g.degree_vector()).entries) {
      const auto plan = build_plan(g, tau);
      const auto cert = epsilon_search(plan);
      CHECK(cert.target_coefficient != 0);
    }
  }
}
