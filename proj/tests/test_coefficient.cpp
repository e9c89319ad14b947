#include "doctest.h"

#include <random>

#include "atn/coefficient.hpp"
#include "oracle.hpp"

using namespace atn;

namespace {

SignedMultigraph edge12() { return build_path(2); }

SignedMultigraph random_graph(std::mt19937_64& rng, int n, int m, bool sums) {
  std::uniform_int_distribution<int> pick(1, n);
  std::vector<Edge> edges;
  while (static_cast<int>(edges.size()) < m) {
    int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    edges.push_back({a, b, sums && rng() % 3 == 0 ? EdgeTag::Sum : EdgeTag::Diff});
  }
  return {n, std::move(edges)};
}

std::vector<SignedMultigraph> small_zoo() {
  std::vector<SignedMultigraph> out = {edge12(),        build_cycle(3),  build_cycle(4),  build_cycle(5),
                                       build_cycle(6),  build_path(4),   build_path(6),   build_complete(4),
                                       build_edgeless(2), build_cycle_power(5, 2)};
  std::mt19937_64 rng(7);
  for (int i = 0; i < 12; ++i) out.push_back(random_graph(rng, 3 + i % 4, 4 + i % 7, i % 2 == 1));
  return out;
}

}  // namespace

TEST_CASE("single edge coefficients") {
  CHECK(coefficient(edge12(), {0, 1}).value == 1);
  CHECK(coefficient(edge12(), {1, 0}).value == -1);
}

TEST_CASE("triangle coefficients") {
  const auto c3 = build_cycle(3);
  CHECK(coefficient(c3, {1, 1, 1}).value == 0);
  // (x2 - x1)(x3 - x2)(x3 - x1): x1^2 x2 only from (-x1)(-x2)(-x1).
  CHECK(coefficient(c3, {2, 1, 0}).value == -1);
  CHECK(coefficient(c3, {0, 1, 2}).value == 1);
  CHECK(abs(coefficient(build_cycle(4), {1, 1, 1, 1}).value) == 2);
}

TEST_CASE("homogeneity: wrong total gives zero with an advisory") {
  const auto r = coefficient(build_cycle(3), {1, 1, 0});
  CHECK(r.value == 0);
  CHECK(r.advisory.has_value());
  CHECK_FALSE(coefficient(build_cycle(3), {2, 1, 0}).advisory.has_value());
  CHECK(coefficient_by_enumeration(build_cycle(3), {3, 1, 0}).value == 0);
}

TEST_CASE("DP, enumeration and naive expansion agree on full supports") {
  for (const auto& g : small_zoo()) {
    const auto poly = oracle::expand(g);
    const auto deg = g.degree_vector();
    const auto dp = support(g, deg);
    const auto en = window_support_by_enumeration(g, ExponentVector(deg.size(), 0), deg);
    CHECK(dp.size() == poly.size());
    CHECK(en.size() == poly.size());
    for (const auto& [mono, c] : poly) {
      CHECK(dp.at(ExponentVector(mono)) == c);
      CHECK(en.at(ExponentVector(mono)) == c);
      CHECK(coefficient(g, ExponentVector(mono)).value == c);
      CHECK(coefficient_cross_checked(g, ExponentVector(mono)).value == c);
    }
  }
}

TEST_CASE("enumeration is independent of the thread count") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5; ++i) {
    const auto g = random_graph(rng, 6, 12, i % 2 == 0);
    const auto deg = g.degree_vector();
    EngineOptions one{100'000'000, 1};
    EngineOptions four{100'000'000, 4};
    const auto a = window_support_by_enumeration(g, ExponentVector(deg.size(), 0), deg, one);
    const auto b = window_support_by_enumeration(g, ExponentVector(deg.size(), 0), deg, four);
    CHECK(a.entries == b.entries);
  }
}

TEST_CASE("supports under caps") {
  CHECK(support(build_cycle(3), {1, 1, 1}).empty());
  const auto s = support(build_cycle(3), {2, 2, 2});
  CHECK(s.size() == 6);
  for (const auto& [xi, c] : s.entries) CHECK(abs(c) == 1);
  const auto e = support(edge12(), {1, 1});
  CHECK(e.size() == 2);
  CHECK(e.at({0, 1}) == 1);
  CHECK(e.at({1, 0}) == -1);
}

TEST_CASE("exact Alon-Tarsi numbers") {
  const auto c4 = alon_tarsi_number_exact(build_cycle(4));
  CHECK(c4.at == 2);
  CHECK(c4.witness == ExponentVector{1, 1, 1, 1});
  const auto c3 = alon_tarsi_number_exact(build_cycle(3));
  CHECK(c3.at == 3);
  CHECK(c3.witness == ExponentVector{2, 1, 0});
  CHECK(alon_tarsi_number_exact(edge12()).at == 2);
  for (int n = 3; n <= 8; ++n) CHECK(alon_tarsi_number_exact(build_cycle(n)).at == (n % 2 == 0 ? 2 : 3));
  for (const auto& g : small_zoo()) {
    if (g.edge_count() > 0) CHECK(alon_tarsi_number_exact(g).at >= 2);
  }
  CHECK(alon_tarsi_number_exact(build_complete(4)).at == 4);
}

TEST_CASE("almost-central scans") {
  const auto c3 = almost_central_scan(build_cycle(3));
  CHECK(c3.size() == 6);
  CHECK(c3.at({2, 1, 0}) == -1);
  const auto c4 = almost_central_scan(build_cycle(4));
  CHECK(abs(c4.at({1, 1, 1, 1})) == 2);
  const auto c62 = almost_central_scan(build_cycle_power(6, 2));
  CHECK(c62.at(ExponentVector(6, 2)) != 0);
  CHECK_THROWS_AS(almost_central_scan(build_path(3)), std::invalid_argument);
}

TEST_CASE("mirror symmetry") {
  CHECK(mirror_coefficient_check(build_cycle(3), {2, 1, 0}));
  CHECK(mirror_coefficient_check(build_cycle(4), {1, 1, 1, 1}));
  CHECK(mirror_coefficient_check(edge12(), {1, 0}));
  for (const auto& g : small_zoo()) {
    const auto deg = g.degree_vector();
    const auto s = support(g, deg);
    for (const auto& [xi, c] : s.entries) {
      CHECK(c == mirror_sign(g) * s.at(deg - xi));
      CHECK(mirror_coefficient_check(g, xi));
    }
  }
}

TEST_CASE("the full support of C_n has as many entries as sign-consistent monomials") {
  for (int n = 3; n <= 7; ++n) {
    const auto g = build_cycle(n);
    const auto poly = oracle::expand(g);
    BigInt total(0);
    for (const auto& [xi, c] : support(g, g.degree_vector()).entries) total += abs(c);
    BigInt expected(0);
    for (const auto& [m, c] : poly) expected += abs(c);
    CHECK(total == expected);
  }
}

TEST_CASE("budget guard") {
  const auto g = cartesian_product(build_cycle(4), build_cycle(4));
  EngineOptions tiny{10, 1};
  CHECK_THROWS_AS(coefficient(g, ExponentVector(16, 2), tiny), BudgetExceeded);
  CHECK_THROWS_AS(coefficient_by_enumeration(g, ExponentVector(16, 2), tiny), BudgetExceeded);
}

TEST_CASE("lower bound") {
  CHECK(alon_tarsi_lower_bound(build_cycle(5)) == 2);
  CHECK(alon_tarsi_lower_bound(build_complete(4)) == 3);
  CHECK(alon_tarsi_lower_bound(cartesian_product(build_cycle(4), build_cycle(4))) == 3);
}
