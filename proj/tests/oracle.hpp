// Brute-force reference implementations used only by the tests. None of them
// shares code with the library's algorithms.
#ifndef ATN_TESTS_ORACLE_HPP
#define ATN_TESTS_ORACLE_HPP

#include <functional>
#include <map>
#include <vector>

#include "atn/bigint.hpp"
#include "atn/graph.hpp"
#include "atn/orientation.hpp"

namespace oracle {

using Poly = std::map<std::vector<int>, atn::BigInt>;

// Multiplies the linear factors out one at a time.
inline Poly expand(const atn::SignedMultigraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  Poly p{{std::vector<int>(n, 0), atn::BigInt(1)}};
  for (const auto& e : g.edges()) {
    Poly next;
    for (const auto& [mono, c] : p) {
      auto hi = mono;
      ++hi[e.v - 1];
      next[hi] += c;
      auto lo = mono;
      ++lo[e.u - 1];
      next[lo] += e.tag == atn::EdgeTag::Diff ? atn::BigInt(-c) : c;
    }
    p.clear();
    for (auto& [mono, c] : next)
      if (c != 0) p.emplace(mono, c);
  }
  return p;
}

inline atn::BigInt coeff(const Poly& p, const std::vector<int>& xi) {
  auto it = p.find(xi);
  return it == p.end() ? atn::BigInt(0) : it->second;
}

// Enumerates simple directed cycles explicitly.
inline bool has_odd_directed_cycle(const atn::Orientation& d) {
  const int n = d.graph().vertex_count();
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < d.graph().edge_count(); ++e) out[d.tail(e) - 1].push_back(d.head(e) - 1);
  std::vector<bool> on(static_cast<std::size_t>(n), false);
  bool found = false;
  std::function<void(int, int, int)> walk = [&](int start, int x, int len) {
    for (int y : out[x]) {
      if (found) return;
      if (y == start && len % 2 == 1) {
        found = true;
        return;
      }
      if (y > start && !on[y]) {
        on[y] = true;
        walk(start, y, len + 1);
        on[y] = false;
      }
    }
  };
  for (int s = 0; s < n && !found; ++s) {
    on[s] = true;
    walk(s, s, 1);
    on[s] = false;
  }
  return found;
}

// Tries every colouring from the lists.
inline bool colourable(const atn::SignedMultigraph& g, const std::vector<std::vector<int>>& lists) {
  const auto n = lists.size();
  std::vector<int> pick(n, 0);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    bool ok = true;
    for (const auto& e : g.edges())
      if (lists[e.u - 1][idx[e.u - 1]] == lists[e.v - 1][idx[e.v - 1]]) ok = false;
    if (ok) return true;
    std::size_t v = 0;
    while (v < n && ++idx[v] == lists[v].size()) idx[v++] = 0;
    if (v == n) return false;
  }
}

}  // namespace oracle

#endif
