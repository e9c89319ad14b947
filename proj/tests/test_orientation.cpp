#include "doctest.h"

#include <numeric>
#include <random>

#include "atn/orientation.hpp"
#include "oracle.hpp"

using namespace atn;

namespace {

Orientation cyclic(const SignedMultigraph& c) {
  std::vector<Direction> dirs(c.edge_count(), Direction::Forward);
  for (std::size_t e = 0; e < c.edge_count(); ++e)
    if (c.edge(e).u == 1 && c.edge(e).v == c.vertex_count()) dirs[e] = Direction::Backward;
  return {c, dirs};
}

Orientation from_code(const SignedMultigraph& g, std::uint64_t code) {
  std::vector<Direction> dirs(g.edge_count());
  for (std::size_t e = 0; e < dirs.size(); ++e) dirs[e] = ((code >> e) & 1U) ? Direction::Backward : Direction::Forward;
  return {g, dirs};
}

bool within(const ExponentVector& d, const ExponentVector& lo, const ExponentVector& hi) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] < lo[i] || d[i] > hi[i]) return false;
  return true;
}

SignedMultigraph random_simple(std::mt19937_64& rng, int n, int m) {
  std::vector<std::pair<int, int>> all;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) all.emplace_back(a, b);
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<Edge> edges;
  for (int i = 0; i < m && i < static_cast<int>(all.size()); ++i) edges.push_back({all[i].first, all[i].second});
  return {n, edges};
}

}  // namespace

TEST_CASE("orientation basics") {
  const auto d = cyclic(build_cycle(4));
  CHECK(d.outdegree_vector() == ExponentVector{1, 1, 1, 1});
  CHECK(d.reversal_parity() == 1);
  CHECK(d.bitstring() == "0001");
  CHECK(Orientation::from_bitstring(build_cycle(4), d.bitstring()).bitstring() == d.bitstring());
  CHECK(d.reversed().outdegree_vector() == ExponentVector{1, 1, 1, 1});
  CHECK_THROWS_AS(Orientation::from_bitstring(build_cycle(4), "01"), std::invalid_argument);
  CHECK_THROWS_AS(Orientation::from_bitstring(build_cycle(4), "01x0"), std::invalid_argument);
}

TEST_CASE("bounded orientations") {
  const auto c4 = orient_with_bounds(build_cycle(4), ExponentVector(4, 1), ExponentVector(4, 1));
  REQUIRE(c4);
  CHECK(c4->outdegree_vector() == ExponentVector(4, 1));
  CHECK_FALSE(orient_with_bounds(build_path(2), {1, 1}, {2, 2}).has_value());
  const auto box = orient_with_bounds(cartesian_product(build_path(2), build_path(2)), ExponentVector(4, 1),
                                      ExponentVector(4, 2));
  CHECK(box.has_value());
  CHECK_THROWS_AS(orient_with_bounds(build_path(2), {2, 0}, {1, 1}), std::invalid_argument);
}

TEST_CASE("Frank conditions") {
  CHECK(check_frank_conditions(build_cycle(4), ExponentVector(4, 1), ExponentVector(4, 2)).all_pass);
  const auto r = check_frank_conditions(build_path(2), {1, 1}, {2, 2});
  CHECK_FALSE(r.all_pass);
  REQUIRE(r.violation);
  CHECK(r.violation->subset == std::vector<int>{1, 2});
  CHECK(r.violation->condition == 2);
  CHECK(r.violation->lhs == 1);
  CHECK(r.violation->rhs == 2);
  for (const auto& g : {build_cycle(5), build_complete(4), build_petersen()}) {
    const auto deg = g.degree_vector();
    const auto rep = check_frank_conditions(g, ExponentVector(deg.size(), 0), deg);
    CHECK(rep.all_pass);
  }
  CHECK_THROWS_AS(check_frank_conditions(build_cycle(21), ExponentVector(21, 0), ExponentVector(21, 2)),
                  BudgetExceeded);
}

TEST_CASE("flow solver agrees with Frank conditions") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const int m = static_cast<int>(rng() % (n * (n - 1) / 2 + 1));
    const auto g = random_simple(rng, n, m);
    ExponentVector lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      lo[v] = static_cast<int>(rng() % 3);
      hi[v] = lo[v] + static_cast<int>(rng() % 3);
    }
    const auto d = orient_with_bounds(g, lo, hi);
    const auto rep = check_frank_conditions(g, lo, hi);
    CHECK(d.has_value() == rep.all_pass);
    if (d) CHECK(within(d->outdegree_vector(), lo, hi));
  }
}

TEST_CASE("box orientations") {
  const std::vector<int> k22{2, 2}, k12{1, 2}, k333{3, 3, 3};
  const auto b22 = box_orientation(k22);
  REQUIRE(b22);
  for (int d : b22->outdegree_vector()) CHECK((d == 1 || d == 2));
  CHECK_FALSE(box_orientation(k12).has_value());
  CHECK(box_orientation(k333).has_value());
  CHECK(reciprocal_sum_at_most_one(k22));
  CHECK_FALSE(reciprocal_sum_at_most_one(k12));
  CHECK(box_graph(k22).edge_count() == 4);
}

TEST_CASE("chess construction") {
  const std::vector<int> k1{1};
  const auto c3 = odd_cycle_product_orientation(k1);
  CHECK(c3.graph() == build_cycle(3));
  for (int d : c3.outdegree_vector()) CHECK((d >= 0 && d <= 2));
  CHECK_FALSE(has_odd_directed_cycle(c3));

  const std::vector<int> k22{2, 2};
  const auto c55 = odd_cycle_product_orientation(k22);
  CHECK(c55.graph() == cartesian_product(build_cycle(5), build_cycle(5)));
  for (int d : c55.outdegree_vector()) CHECK((d >= 1 && d <= 3));
  CHECK_FALSE(has_odd_directed_cycle(c55));

  for (const auto& k : std::vector<std::vector<int>>{{2, 3}, {3, 3}, {2, 4}, {3, 3, 3}, {2, 2, 3}}) {
    if (!reciprocal_sum_at_most_one(k)) continue;
    const auto d = odd_cycle_product_orientation(k);
    const int n = static_cast<int>(k.size());
    for (int x : d.outdegree_vector()) CHECK((x >= n - 1 && x <= n + 1));
    CHECK_FALSE(has_odd_directed_cycle(d));
  }
  const std::vector<int> bad{1, 2};
  CHECK_THROWS_AS(odd_cycle_product_orientation(bad), std::invalid_argument);
}

TEST_CASE("odd directed cycle detector") {
  CHECK(has_odd_directed_cycle(cyclic(build_cycle(3))));
  CHECK_FALSE(has_odd_directed_cycle(cyclic(build_cycle(4))));
  CHECK_FALSE(has_odd_directed_cycle(from_code(build_complete(5), 0)));  // all u -> v: acyclic
  // A digon plus a triangle sharing a vertex.
  const SignedMultigraph g(4, {{1, 2}, {1, 2}, {2, 3}, {3, 4}, {2, 4}});
  CHECK(has_odd_directed_cycle(Orientation::from_bitstring(g, "01001")));
}

TEST_CASE("detector matches explicit cycle enumeration") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 400; ++t) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const auto g = random_simple(rng, n, std::min<int>(12, 2 + static_cast<int>(rng() % 10)));
    const auto d = from_code(g, rng());
    CHECK(has_odd_directed_cycle(d) == oracle::has_odd_directed_cycle(d));
  }
}

TEST_CASE("orientation certificates") {
  const auto c4 = at_certificate_from_orientation(cyclic(build_cycle(4)));
  CHECK(c4.at_bound == 2);
  REQUIRE(c4.coefficient);
  CHECK(abs(*c4.coefficient) == 2);

  const auto c3 = at_certificate_from_orientation(Orientation::from_bitstring(build_cycle(3), "000"));
  CHECK(c3.outdegrees == ExponentVector{2, 1, 0});
  CHECK(c3.at_bound == 3);
  REQUIRE(c3.coefficient);
  CHECK(abs(*c3.coefficient) == 1);

  CHECK_THROWS_AS(at_certificate_from_orientation(cyclic(build_cycle(3))), std::invalid_argument);

  const std::vector<int> k22{2, 2};
  EngineOptions small{10, 1};
  const auto c55 = at_certificate_from_orientation(odd_cycle_product_orientation(k22), small);
  CHECK_FALSE(c55.coefficient.has_value());
  CHECK(c55.at_bound == 4);
}

TEST_CASE("Alon-Tarsi soundness on all orientations of small graphs") {
  for (const auto& g : {build_cycle(3), build_cycle(4), build_cycle(5), build_path(4), build_complete(4)}) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << g.edge_count()); ++code) {
      const auto d = from_code(g, code);
      if (!has_odd_directed_cycle(d)) CHECK(coefficient(g, d.outdegree_vector()).value != 0);
    }
  }
}

TEST_CASE("low outdegree orientations") {
  for (const auto& g : {build_cycle(4), build_complete(4), build_petersen(), build_cycle_power(7, 2)}) {
    const auto d = low_outdegree_orientation(g);
    CHECK_FALSE(has_odd_directed_cycle(d));
    CHECK(d.outdegree_vector().max() <= coloring_number(g) - 1);
  }
  const auto acyclic = degeneracy_orientation(build_complete(5));
  CHECK(acyclic.outdegree_vector().max() == 4);
  CHECK_FALSE(has_odd_directed_cycle(acyclic));
}

TEST_CASE("mixed cycle products") {
  const std::vector<int> odd1{1}, none{}, even2{2}, even22{2, 2}, odd22{2, 2};
  const auto c3c4 = mixed_cycle_pipeline(odd1, even2);
  CHECK(c3c4.at_bound == 3);
  CHECK(c3c4.at_lower == 3);
  CHECK(c3c4.chi_lower == 3);
  REQUIRE(c3c4.steps.size() == 1);
  REQUIRE(c3c4.steps[0].trace);
  CHECK(*c3c4.steps[0].trace != 0);

  const auto c4c4 = mixed_cycle_pipeline(none, even22);
  CHECK(c4c4.at_bound == 3);
  CHECK(c4c4.chi_lower == 2);
  CHECK(c4c4.base.outdegrees == ExponentVector(4, 1));
  REQUIRE(c4c4.steps.size() == 1);

  // Without an even factor only max outdegree + 1 = 4 is certified; the
  // central coefficient of C_5 box C_5 is zero, so 3 is out of reach.
  const auto c5c5 = mixed_cycle_pipeline(odd22, none);
  CHECK(c5c5.at_lower == 3);
  CHECK(c5c5.at_bound == 4);
  CHECK(c5c5.steps.empty());

  CHECK_THROWS_AS(mixed_cycle_pipeline(none, none), std::invalid_argument);
}
