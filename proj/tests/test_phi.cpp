#include "doctest.h"

#include <random>

#include "atn/coefficient.hpp"
#include "atn/phi.hpp"

using namespace atn;

namespace {

using Mask = PhiMatrix<BigInt>::Mask;

// G box C_2: G box P_2 with every rung doubled.
SignedMultigraph digon_product(const SignedMultigraph& g) {
  const auto p = cartesian_product(g, build_path(2));
  std::vector<std::size_t> rungs;
  for (std::size_t e = 0; e < p.edge_count(); ++e)
    if (p.edge(e).v == p.edge(e).u + 1 && p.edge(e).u % 2 == 1) rungs.push_back(e);
  return double_edges(p, rungs);
}

SignedMultigraph doubled(const SignedMultigraph& g) {
  std::vector<std::size_t> all(g.edge_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return double_edges(g, all);
}

// Even-degree multigraphs with at most 12 edges.
std::vector<SignedMultigraph> even_zoo() {
  std::vector<SignedMultigraph> out;
  for (int n = 3; n <= 12; ++n) out.push_back(build_cycle(n));
  out.push_back(build_complete(5));
  out.push_back(build_cycle_power(6, 2));
  out.push_back(doubled(build_complete(3)));
  out.push_back(doubled(build_path(4)));
  out.push_back(doubled(build_cycle(5)));
  out.push_back(build_edgeless(4));
  out.push_back(SignedMultigraph(5, {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}}));  // bowtie
  out.push_back(SignedMultigraph(4, {{1, 2}, {1, 2}, {3, 4}, {3, 4, EdgeTag::Sum}}));
  out.push_back(SignedMultigraph(3, {{1, 2, EdgeTag::Sum}, {2, 3, EdgeTag::Sum}, {1, 3}}));
  // Unions of random cycles.
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const int n = 4 + t % 4;
    std::vector<Edge> edges;
    while (edges.size() + 3 <= 12) {
      std::vector<int> perm(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) perm[i] = i + 1;
      std::shuffle(perm.begin(), perm.end(), rng);
      const int len = 3 + static_cast<int>(rng() % 2);
      if (edges.size() + len > 12) break;
      for (int i = 0; i < len; ++i) {
        int a = perm[i], b = perm[(i + 1) % len];
        if (a > b) std::swap(a, b);
        edges.push_back({a, b, rng() % 4 == 0 ? EdgeTag::Sum : EdgeTag::Diff});
      }
      if (rng() % 2) break;
    }
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

}  // namespace

TEST_CASE("Phi of the triangle") {
  const auto phi = build_phi(build_cycle(3));
  CHECK(phi.entry(0, 0) == 0);
  CHECK(phi.entry(0b001, 0b010) == 1);  // -[x^(0,2,1)] F
  CHECK(phi.entry(0b010, 0b001) == -1);
  CHECK(phi.nonzero_count() == 12);
  int size1 = 0, size2 = 0;
  for (int s = 0; s <= 3; ++s)
    for (auto a : phi.subsets(s))
      for (auto b : phi.subsets(s)) {
        const auto v = phi.entry(a, b);
        if (v == 0) continue;
        CHECK(abs(v) == 1);
        if (s == 1) ++size1;
        if (s == 2) ++size2;
      }
  CHECK(size1 == 6);
  CHECK(size2 == 6);
  CHECK(phi.symmetry_sign() == -1);
  CHECK(trace_power(phi, 2) == -12);
}

TEST_CASE("trace_power rejects odd k and handles zero") {
  const auto phi = build_phi(build_cycle(3));
  CHECK_THROWS_AS(trace_power(phi, 3), std::invalid_argument);
  CHECK_THROWS_AS(trace_power(phi, 0), std::invalid_argument);
  PhiMatrix<BigInt> zero(3, ExponentVector(3, 1), 1, 0);
  CHECK(trace_power(zero, 4) == 0);
  CHECK(zero.is_zero());
}

TEST_CASE("trace_of_power matches naive powers") {
  Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic> m(3, 3);
  m << 1, 2, 0, -1, 3, 1, 4, 0, -2;
  Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic> p = m;
  for (int k = 2; k <= 7; ++k) {
    p = (p * m).eval();
    CHECK(trace_of_power(m, k) == p.trace());
  }
}

TEST_CASE("Phi invariants over the even-degree zoo") {
  for (const auto& q : even_zoo()) {
    CAPTURE(q.vertex_count());
    CAPTURE(q.edge_count());
    const auto phi = build_phi(q);
    const int sigma = phi.symmetry_sign();
    CHECK(sigma == mirror_sign(q));
    const auto a = half_degrees(q);
    const int n = q.vertex_count();
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      for (Mask t = 0; t < (Mask{1} << n); ++t) {
        const auto v = phi.entry(s, t);
        CHECK(phi.entry(t, s) == sigma * v);
        if (std::popcount(s) != std::popcount(t)) CHECK(v == 0);
        bool negative = false;
        for (int i = 0; i < n; ++i) negative |= a[i] + int((t >> i) & 1U) - int((s >> i) & 1U) < 0;
        if (negative) CHECK(v == 0);
      }
    }
    for (int k : {2, 4, 6}) {
      const auto tr = trace_power(phi, k);
      CHECK((tr != 0) == !phi.is_zero());
      if (phi.is_zero()) continue;
      if (sigma == 1) CHECK(tr > 0);
      else CHECK(sign_of(tr) == ((k / 2) % 2 == 0 ? 1 : -1));
    }
  }
}

TEST_CASE("Phi entries agree with independent coefficient queries") {
  for (const auto& q : {build_cycle(4), build_complete(5), doubled(build_complete(3))}) {
    const auto phi = build_phi(q);
    const auto a = half_degrees(q);
    const int n = q.vertex_count();
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      for (Mask t = 0; t < (Mask{1} << n); ++t) {
        if (std::popcount(s) != std::popcount(t)) continue;
        ExponentVector xi(a);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
          xi[i] += int((t >> i) & 1U) - int((s >> i) & 1U);
          ok &= xi[i] >= 0;
        }
        if (!ok) continue;
        const int sign = std::popcount(s) % 2 == 0 ? 1 : -1;
        CHECK(phi.entry(s, t) == sign * coefficient_by_enumeration(q, xi).value);
      }
    }
  }
}

TEST_CASE("trace equals the direct central coefficient of the product in absolute value") {
  for (const auto& g : {build_cycle(3), build_cycle(4), build_cycle(5), doubled(build_complete(3))}) {
    CAPTURE(g.edge_count());
    const auto four = cartesian_product(g, build_cycle(4));
    const auto direct4 = coefficient(four, half_degrees(four)).value;
    CHECK(abs(product_central_via_trace(g, 4)) == abs(direct4));

    const auto two = digon_product(g);
    const auto direct2 = coefficient(two, half_degrees(two)).value;
    CHECK(abs(product_central_via_trace(g, 2)) == abs(direct2));
  }
  CHECK(abs(product_central_via_trace(build_cycle(3), 4)) == 36);
}

TEST_CASE("trace certificates for even cycle products") {
  const auto c5 = trace_certificate(build_cycle(5), 4);
  REQUIRE(c5);
  CHECK(c5->at_bound == 3);
  CHECK(c5->trace != 0);
  CHECK(c5->witness_coefficient != 0);

  const auto c62 = trace_certificate(build_cycle_power(6, 2), 4);
  REQUIRE(c62);
  CHECK(c62->at_bound == 4);
  CHECK(c62->witness == ExponentVector(6, 2));

  const auto empty = trace_certificate(build_edgeless(3), 2);
  REQUIRE(empty);
  CHECK(empty->witness == ExponentVector(3, 0));
  CHECK(empty->at_bound == 2);

  CHECK_THROWS_AS(trace_certificate(build_path(3), 4), std::invalid_argument);
  CHECK_THROWS_AS(trace_certificate(build_cycle(3), 3), std::invalid_argument);
}

TEST_CASE("Phi size guards") {
  PhiOptions small;
  small.max_vertices = 4;
  CHECK_THROWS_AS(build_phi(build_cycle(5), small), BudgetExceeded);
  CHECK_THROWS_AS(build_phi(build_path(3)), std::invalid_argument);
}
