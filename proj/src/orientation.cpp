#include "atn/orientation.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "atn/phi.hpp"

namespace atn {

Orientation::Orientation(SignedMultigraph graph, std::vector<Direction> directions)
    : graph_(std::move(graph)), directions_(std::move(directions)) {
  if (directions_.size() != graph_.edge_count()) {
    throw std::invalid_argument("orientation needs one direction per edge");
  }
}

Orientation Orientation::from_bitstring(SignedMultigraph graph, std::string_view bits) {
  std::vector<Direction> dirs;
  for (char c : bits) {
    if (c == '0') dirs.push_back(Direction::Forward);
    else if (c == '1') dirs.push_back(Direction::Backward);
    else throw std::invalid_argument("orientation bitstring may only contain '0' and '1'");
  }
  return {std::move(graph), std::move(dirs)};
}

int Orientation::tail(std::size_t edge) const {
  const Edge& e = graph_.edge(edge);
  return directions_[edge] == Direction::Forward ? e.u : e.v;
}

int Orientation::head(std::size_t edge) const {
  const Edge& e = graph_.edge(edge);
  return directions_[edge] == Direction::Forward ? e.v : e.u;
}

ExponentVector Orientation::outdegree_vector() const {
  ExponentVector out(static_cast<std::size_t>(graph_.vertex_count()));
  for (std::size_t i = 0; i < directions_.size(); ++i) ++out[tail(i) - 1];
  return out;
}

int Orientation::reversal_parity() const {
  return static_cast<int>(std::count(directions_.begin(), directions_.end(), Direction::Backward) % 2);
}

std::string Orientation::bitstring() const {
  std::string bits;
  bits.reserve(directions_.size());
  for (Direction d : directions_) bits.push_back(d == Direction::Forward ? '0' : '1');
  return bits;
}

Orientation Orientation::reversed() const {
  std::vector<Direction> dirs(directions_.size());
  std::transform(directions_.begin(), directions_.end(), dirs.begin(), [](Direction d) {
    return d == Direction::Forward ? Direction::Backward : Direction::Forward;
  });
  return {graph_, std::move(dirs)};
}

namespace {

// Dinic's max flow; arcs are scanned in insertion order, so results are
// reproducible.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

  int add_arc(int from, int to, long cap) {
    adj_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, cap});
    adj_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0});
    return static_cast<int>(arcs_.size()) - 2;
  }

  long flow_on(int arc) const { return arcs_[arc ^ 1].cap; }

  long run(int s, int t) {
    long total = 0;
    while (bfs(s, t)) {
      it_.assign(adj_.size(), 0);
      while (long pushed = dfs(s, t, std::numeric_limits<long>::max())) total += pushed;
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    long cap;
  };

  bool bfs(int s, int t) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int id : adj_[x]) {
        if (arcs_[id].cap > 0 && level_[arcs_[id].to] < 0) {
          level_[arcs_[id].to] = level_[x] + 1;
          q.push(arcs_[id].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  long dfs(int x, int t, long limit) {
    if (x == t) return limit;
    for (std::size_t& i = it_[x]; i < adj_[x].size(); ++i) {
      const int id = adj_[x][i];
      Arc& a = arcs_[id];
      if (a.cap <= 0 || level_[a.to] != level_[x] + 1) continue;
      if (long pushed = dfs(a.to, t, std::min(limit, a.cap))) {
        a.cap -= pushed;
        arcs_[id ^ 1].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

BigInt product_of(std::span<const int> k) {
  BigInt p(1);
  for (int x : k) p *= x;
  return p;
}

}  // namespace

std::optional<Orientation> orient_with_bounds(const SignedMultigraph& g, const ExponentVector& lower,
                                              const ExponentVector& upper) {
  const int n = g.vertex_count();
  const int m = static_cast<int>(g.edge_count());
  if (lower.size() != static_cast<std::size_t>(n) || upper.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("outdegree bounds must have one entry per vertex");
  }
  for (int v = 0; v < n; ++v) {
    if (lower[v] < 0 || lower[v] > upper[v]) {
      throw std::invalid_argument("outdegree bounds need 0 <= l_v <= u_v (vertex " + std::to_string(v + 1) + ")");
    }
  }

  // Circulation: S -> edge [1,1], edge -> endpoint [0,1], vertex -> T [l,u],
  // T -> S unbounded. Lower bounds move into super source/sink demands.
  const int source = 0;
  const int sink = 1;
  const int super_source = 2;
  const int super_sink = 3;
  const int edge_base = 4;
  const int vertex_base = edge_base + m;
  MaxFlow flow(vertex_base + n);
  std::vector<long> excess(static_cast<std::size_t>(vertex_base + n), 0);

  std::vector<int> to_u(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const Edge& e = g.edge(static_cast<std::size_t>(i));
    excess[edge_base + i] += 1;
    excess[source] -= 1;
    to_u[i] = flow.add_arc(edge_base + i, vertex_base + e.u - 1, 1);
    flow.add_arc(edge_base + i, vertex_base + e.v - 1, 1);
  }
  for (int v = 0; v < n; ++v) {
    if (upper[v] > lower[v]) flow.add_arc(vertex_base + v, sink, upper[v] - lower[v]);
    excess[sink] += lower[v];
    excess[vertex_base + v] -= lower[v];
  }
  flow.add_arc(sink, source, std::numeric_limits<int>::max());

  long required = 0;
  for (int x = 0; x < vertex_base + n; ++x) {
    if (excess[x] > 0) {
      flow.add_arc(super_source, x, excess[x]);
      required += excess[x];
    } else if (excess[x] < 0) {
      flow.add_arc(x, super_sink, -excess[x]);
    }
  }
  if (flow.run(super_source, super_sink) != required) return std::nullopt;

  std::vector<Direction> dirs(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) dirs[i] = flow.flow_on(to_u[i]) > 0 ? Direction::Forward : Direction::Backward;
  return Orientation(g, std::move(dirs));
}

FrankReport check_frank_conditions(const SignedMultigraph& g, const ExponentVector& lower,
                                   const ExponentVector& upper, int max_vertices) {
  const int n = g.vertex_count();
  if (n > max_vertices || n > 30) {
    throw BudgetExceeded("Frank condition check is exhaustive over 2^" + std::to_string(n) + " subsets",
                         static_cast<std::uint64_t>(max_vertices));
  }
  if (lower.size() != static_cast<std::size_t>(n) || upper.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("outdegree bounds must have one entry per vertex");
  }
  const auto adj = g.adjacency();
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<long> inside(std::size_t{1} << n, 0);  // |E(W)|
  std::vector<long> sum_u(std::size_t{1} << n, 0);
  std::vector<long> sum_l(std::size_t{1} << n, 0);
  for (std::uint32_t w = 1; w <= full && w != 0; ++w) {
    const int v = std::countr_zero(w);
    const std::uint32_t rest = w & (w - 1);
    long into = 0;
    for (int x : adj[v]) into += (rest >> x) & 1U;
    inside[w] = inside[rest] + into;
    sum_u[w] = sum_u[rest] + upper[v];
    sum_l[w] = sum_l[rest] + lower[v];
  }
  const long total = static_cast<long>(g.edge_count());
  FrankReport report;
  auto as_labels = [n](std::uint32_t w) {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
      if ((w >> v) & 1U) out.push_back(v + 1);
    return out;
  };
  for (std::uint32_t w = 1; w <= full && w != 0; ++w) {
    if (inside[w] > sum_u[w]) {
      report.all_pass = false;
      report.violation = FrankViolation{as_labels(w), 1, inside[w], sum_u[w]};
      return report;
    }
    const long touching = total - inside[full & ~w];
    if (touching < sum_l[w]) {
      report.all_pass = false;
      report.violation = FrankViolation{as_labels(w), 2, touching, sum_l[w]};
      return report;
    }
  }
  return report;
}

bool reciprocal_sum_at_most_one(std::span<const int> k) {
  const BigInt prod = product_of(k);
  BigInt lhs(0);
  for (int x : k) {
    if (x < 1) throw std::invalid_argument("box side lengths must be >= 1");
    lhs += prod / x;
  }
  return lhs <= prod;
}

bool edge_count_condition(std::span<const int> k) {
  const BigInt prod = product_of(k);
  BigInt rhs(0);
  for (int x : k) rhs += BigInt(x - 1) * (prod / x);
  return BigInt(static_cast<long>(k.size()) - 1) * prod <= rhs;
}

SignedMultigraph box_graph(std::span<const int> k) {
  if (k.empty()) throw std::invalid_argument("box needs at least one dimension");
  SignedMultigraph g = build_path(k[0]);
  for (std::size_t i = 1; i < k.size(); ++i) g = cartesian_product(g, build_path(k[i]));
  return g;
}

std::optional<Orientation> box_orientation(std::span<const int> k, long max_vertices) {
  if (k.empty()) throw std::invalid_argument("box needs at least one dimension");
  if (product_of(k) > max_vertices) {
    throw BudgetExceeded("box has more vertices than allowed", static_cast<std::uint64_t>(max_vertices));
  }
  const auto g = box_graph(k);
  const auto n = static_cast<int>(k.size());
  const auto verts = static_cast<std::size_t>(g.vertex_count());
  return orient_with_bounds(g, ExponentVector(verts, n - 1), ExponentVector(verts, n));
}

SignedMultigraph odd_cycle_product(std::span<const int> k) {
  if (k.empty()) throw std::invalid_argument("odd cycle product needs at least one factor");
  for (int x : k) {
    if (x < 1) throw std::invalid_argument("odd cycle C_{2k+1} needs k >= 1");
  }
  SignedMultigraph g = build_cycle(2 * k[0] + 1);
  for (std::size_t i = 1; i < k.size(); ++i) g = cartesian_product(g, build_cycle(2 * k[i] + 1));
  return g;
}

Orientation odd_cycle_product_orientation(std::span<const int> k) {
  if (k.empty()) throw std::invalid_argument("odd cycle product needs at least one factor");
  if (!reciprocal_sum_at_most_one(k)) {
    std::string sum;
    for (int x : k) sum += (sum.empty() ? "1/" : " + 1/") + std::to_string(x);
    throw std::invalid_argument("chess construction needs sum 1/k_i <= 1, got " + sum);
  }
  const auto dims = k.size();
  const SignedMultigraph g = odd_cycle_product(k);

  std::vector<int> side(dims);
  for (std::size_t j = 0; j < dims; ++j) side[j] = 2 * k[j] + 1;
  auto coords = [&](int label) {
    std::vector<int> c(dims);
    int x = label - 1;
    for (std::size_t j = dims; j-- > 0;) {
      c[j] = x % side[j];
      x /= side[j];
    }
    return c;
  };
  auto box_of = [&](const std::vector<int>& c) {
    std::uint32_t b = 0;
    for (std::size_t j = 0; j < dims; ++j)
      if (c[j] > k[j]) b |= std::uint32_t{1} << j;
    return b;
  };
  // Box-local row-major label; the map is monotone inside a box, so the
  // canonical u < v order of an edge is the same locally and globally.
  auto local_label = [&](const std::vector<int>& c, std::uint32_t b) {
    int label = 0;
    for (std::size_t j = 0; j < dims; ++j) {
      const bool high = (b >> j) & 1U;
      const int size = high ? k[j] : k[j] + 1;
      const int local = high ? c[j] - k[j] - 1 : c[j];
      label = label * size + local;
    }
    return label + 1;
  };

  std::map<std::uint32_t, std::map<std::pair<int, int>, Direction>> box_dirs;
  auto box_direction = [&](std::uint32_t b, int lu, int lv) {
    auto it = box_dirs.find(b);
    if (it == box_dirs.end()) {
      std::vector<int> sizes(dims);
      for (std::size_t j = 0; j < dims; ++j) sizes[j] = ((b >> j) & 1U) ? k[j] : k[j] + 1;
      auto o = box_orientation(sizes);
      if (!o) throw InvariantViolation("box orientation infeasible although sum 1/k_i <= 1");
      std::map<std::pair<int, int>, Direction> table;
      for (std::size_t e = 0; e < o->graph().edge_count(); ++e) {
        table[{o->graph().edge(e).u, o->graph().edge(e).v}] = o->directions()[e];
      }
      it = box_dirs.emplace(b, std::move(table)).first;
    }
    return it->second.at({lu, lv});
  };

  std::vector<Direction> dirs(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto cu = coords(g.edge(e).u);
    const auto cv = coords(g.edge(e).v);
    const auto bu = box_of(cu);
    const auto bv = box_of(cv);
    if (bu == bv) {
      Direction d = box_direction(bu, local_label(cu, bu), local_label(cv, bu));
      const bool black = std::popcount(bu) % 2 == 1;
      if (black) d = d == Direction::Forward ? Direction::Backward : Direction::Forward;
      dirs[e] = d;
    } else {
      const bool u_black = std::popcount(bu) % 2 == 1;
      dirs[e] = u_black ? Direction::Forward : Direction::Backward;
    }
  }
  Orientation out(g, std::move(dirs));

  const int n = static_cast<int>(dims);
  for (int d : out.outdegree_vector()) {
    if (d < n - 1 || d > n + 1) throw InvariantViolation("chess orientation produced outdegree " + std::to_string(d));
  }
  return out;
}

bool has_odd_directed_cycle(const Orientation& d) {
  const int n = d.graph().vertex_count();
  const std::size_t m = d.graph().edge_count();
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < m; ++e) out[d.tail(e) - 1].push_back(d.head(e) - 1);

  // Tarjan, iterative.
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  int counter = 0;
  int components = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [x, i] = call.back();
      if (i < out[x].size()) {
        const int y = out[x][i++];
        if (index[y] < 0) {
          index[y] = low[y] = counter++;
          stack.push_back(y);
          on_stack[y] = true;
          call.push_back({y, 0});
        } else if (on_stack[y]) {
          low[x] = std::min(low[x], index[y]);
        }
        continue;
      }
      if (low[x] == index[x]) {
        int y = -1;
        do {
          y = stack.back();
          stack.pop_back();
          on_stack[y] = false;
          comp[y] = components;
        } while (y != x);
        ++components;
      }
      const int finished = x;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
    }
  }

  // A strongly connected digraph has an odd closed walk iff its underlying
  // graph is not bipartite.
  std::vector<std::vector<int>> undirected(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < m; ++e) {
    const int a = d.tail(e) - 1;
    const int b = d.head(e) - 1;
    if (comp[a] == comp[b]) {
      undirected[a].push_back(b);
      undirected[b].push_back(a);
    }
  }
  std::vector<int> colour(static_cast<std::size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::vector<int> todo{s};
    while (!todo.empty()) {
      int x = todo.back();
      todo.pop_back();
      for (int y : undirected[x]) {
        if (colour[y] < 0) {
          colour[y] = 1 - colour[x];
          todo.push_back(y);
        } else if (colour[y] == colour[x]) {
          return true;
        }
      }
    }
  }
  return false;
}

OrientationCertificate at_certificate_from_orientation(const Orientation& d, const EngineOptions& opts) {
  if (has_odd_directed_cycle(d)) {
    throw std::invalid_argument("orientation has an odd directed cycle; no Alon-Tarsi certificate");
  }
  OrientationCertificate cert;
  cert.graph = d.graph();
  cert.directions = d.bitstring();
  cert.outdegrees = d.outdegree_vector();
  cert.at_bound = cert.outdegrees.max() + 1;
  try {
    cert.coefficient = coefficient(d.graph(), cert.outdegrees, opts).value;
  } catch (const BudgetExceeded&) {
    cert.coefficient.reset();  // the orientation itself is the witness
  }
  if (cert.coefficient && *cert.coefficient == 0) {
    throw InvariantViolation("orientation without odd directed cycles gave a zero coefficient");
  }
  return cert;
}

Orientation degeneracy_orientation(const SignedMultigraph& g) {
  const int n = g.vertex_count();
  const auto adj = g.adjacency();
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) deg[i] = static_cast<int>(adj[i].size());
  std::vector<int> removed_at(static_cast<std::size_t>(n), -1);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (removed_at[i] < 0 && (best < 0 || deg[i] < deg[best])) best = i;
    }
    removed_at[best] = step;
    for (int w : adj[best])
      if (removed_at[w] < 0) --deg[w];
  }
  std::vector<Direction> dirs(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    dirs[e] = removed_at[ed.u - 1] < removed_at[ed.v - 1] ? Direction::Forward : Direction::Backward;
  }
  return {g, std::move(dirs)};
}

Orientation low_outdegree_orientation(const SignedMultigraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  Orientation fallback = degeneracy_orientation(g);
  if (n == 0) return fallback;
  const int fallback_max = fallback.outdegree_vector().max();
  const int start = alon_tarsi_lower_bound(g) - 1;
  for (int d = start; d < fallback_max; ++d) {
    auto o = orient_with_bounds(g, ExponentVector(n, 0), ExponentVector(n, d));
    if (o && !has_odd_directed_cycle(*o)) return *o;
  }
  return fallback;
}

SignedMultigraph mixed_base_graph(std::span<const int> odd_k, std::span<const int> even_half) {
  if (!odd_k.empty()) return odd_cycle_product(odd_k);
  if (even_half.empty()) throw std::invalid_argument("mixed cycle product needs at least one factor");
  return build_cycle(2 * even_half[0]);
}

MixedCertificate mixed_cycle_pipeline(std::span<const int> odd_k, std::span<const int> even_half,
                                      const MixedOptions& opts) {
  if (odd_k.empty() && even_half.empty()) {
    throw std::invalid_argument("mixed cycle product needs at least one factor");
  }
  for (int h : even_half) {
    if (h < 2) throw std::invalid_argument("even cycle C_{2h} needs h >= 2");
  }
  MixedCertificate cert;
  cert.odd_k.assign(odd_k.begin(), odd_k.end());
  cert.even_half.assign(even_half.begin(), even_half.end());

  SignedMultigraph current;
  std::size_t first_step = 0;
  if (!odd_k.empty()) {
    cert.base = at_certificate_from_orientation(odd_cycle_product_orientation(odd_k), opts.engine);
    current = cert.base.graph;
  } else {
    // Cyclic orientation of C_{2h}: i -> i+1 and n -> 1, all outdegrees 1.
    current = build_cycle(2 * even_half[0]);
    std::vector<Direction> dirs(current.edge_count(), Direction::Forward);
    dirs.back() = Direction::Backward;
    cert.base = at_certificate_from_orientation(Orientation(current, std::move(dirs)), opts.engine);
    first_step = 1;
  }

  PhiOptions phi_opts;
  phi_opts.max_vertices = opts.phi_max_vertices;
  phi_opts.engine = opts.engine;
  for (std::size_t i = first_step; i < even_half.size(); ++i) {
    MixedStep step;
    step.cycle_length = 2 * even_half[i];
    step.vertex_count = current.vertex_count();
    if (current.vertex_count() <= opts.phi_max_vertices) {
      try {
        step.trace = trace_power(build_phi(current, phi_opts), step.cycle_length);
      } catch (const BudgetExceeded&) {
        step.trace.reset();
      }
      if (step.trace && *step.trace == 0) {
        throw InvariantViolation("trace vanished on a graph with a nonzero almost-central coefficient");
      }
    }
    cert.steps.push_back(std::move(step));
    current = cartesian_product(current, build_cycle(2 * even_half[i]));
  }

  const int factors = static_cast<int>(odd_k.size() + even_half.size());
  // Without an even factor nothing lifts the almost-central coefficient to a
  // central one, so only the orientation bound max outdegree + 1 is proved.
  cert.at_bound = even_half.empty() ? cert.base.at_bound : factors + 1;
  cert.at_lower = factors + 1;
  cert.chi_lower = odd_k.empty() ? 2 : 3;
  return cert;
}

}  // namespace atn
