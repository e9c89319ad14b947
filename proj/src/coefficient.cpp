#include "atn/coefficient.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <limits>
#include <unordered_map>
#include <vector>

namespace atn {

BigInt SupportMap::at(const ExponentVector& xi) const {
  auto it = entries.find(xi);
  return it == entries.end() ? BigInt(0) : it->second;
}

namespace {

// Mixed-radix packing of a whole exponent vector into one machine word.
struct PackedCodec {
  using Key = std::uint64_t;
  using Hash = std::hash<std::uint64_t>;

  std::vector<std::uint64_t> stride;
  std::vector<std::uint64_t> radix;

  static std::optional<PackedCodec> make(const ExponentVector& upper) {
    PackedCodec c;
    std::uint64_t s = 1;
    for (int cap : upper) {
      const auto r = static_cast<std::uint64_t>(cap) + 1;
      c.stride.push_back(s);
      c.radix.push_back(r);
      if (s > std::numeric_limits<std::uint64_t>::max() / 2 / r) return std::nullopt;
      s *= r;
    }
    return c;
  }
  Key zero() const { return 0; }
  int get(Key k, int i) const { return static_cast<int>((k / stride[i]) % radix[i]); }
  Key bump(Key k, int i) const { return k + stride[i]; }
  ExponentVector decode(Key k) const {
    ExponentVector out(stride.size());
    for (std::size_t i = 0; i < stride.size(); ++i) out[i] = get(k, static_cast<int>(i));
    return out;
  }
};

struct ByteVectorHash {
  std::size_t operator()(const std::vector<std::uint8_t>& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto b : v) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Fallback when the packed radix product overflows a word.
struct ByteCodec {
  using Key = std::vector<std::uint8_t>;
  using Hash = ByteVectorHash;

  std::size_t n = 0;

  Key zero() const { return Key(n, 0); }
  int get(const Key& k, int i) const { return k[i]; }
  Key bump(Key k, int i) const {
    ++k[i];
    return k;
  }
  ExponentVector decode(const Key& k) const {
    ExponentVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = k[i];
    return out;
  }
};

std::vector<Edge> dp_order(const SignedMultigraph& g) {
  std::vector<Edge> order(g.edges().begin(), g.edges().end());
  std::stable_sort(order.begin(), order.end(),
                   [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  return order;
}

void validate_window(const SignedMultigraph& g, const ExponentVector& lower, const ExponentVector& upper) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("exponent window length must equal the vertex count " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (lower[i] < 0 || upper[i] < 0) throw std::invalid_argument("exponent window entries must be >= 0");
  }
}

// Window with upper clamped to the degree; nullopt when provably empty.
std::optional<std::pair<ExponentVector, ExponentVector>> normalize_window(const SignedMultigraph& g,
                                                                          const ExponentVector& lower,
                                                                          const ExponentVector& upper) {
  validate_window(g, lower, upper);
  const auto deg = g.degree_vector();
  ExponentVector lo = lower;
  ExponentVector hi = upper;
  long lo_sum = 0;
  long hi_sum = 0;
  for (std::size_t i = 0; i < deg.size(); ++i) {
    hi[i] = std::min(hi[i], deg[i]);
    if (lo[i] > hi[i]) return std::nullopt;
    lo_sum += lo[i];
    hi_sum += hi[i];
  }
  const auto m = static_cast<long>(g.edge_count());
  if (lo_sum > m || hi_sum < m) return std::nullopt;
  return std::make_pair(std::move(lo), std::move(hi));
}

template <class Codec>
SupportMap run_dp(const SignedMultigraph& g, const ExponentVector& lower, const ExponentVector& upper,
                  const Codec& codec, std::uint64_t budget) {
  using Key = typename Codec::Key;
  using StateMap = std::unordered_map<Key, BigInt, typename Codec::Hash>;

  auto remaining = g.degree_vector();
  StateMap current;
  current.emplace(codec.zero(), BigInt(1));
  std::uint64_t states = 1;

  for (const Edge& e : dp_order(g)) {
    const int u = e.u - 1;
    const int v = e.v - 1;
    --remaining[u];
    --remaining[v];
    StateMap next;
    next.reserve(current.size() * 2);
    auto add = [&](Key key, const BigInt& c, bool negate) {
      auto [it, inserted] = next.try_emplace(std::move(key), 0);
      if (negate) it->second -= c;
      else it->second += c;
      if (inserted && states + next.size() > budget) {
        throw BudgetExceeded("coefficient DP exceeded its state budget", budget);
      }
    };
    for (const auto& [key, c] : current) {
      const int eu = codec.get(key, u);
      const int ev = codec.get(key, v);
      // Term x_v, coefficient +1.
      if (ev + 1 <= upper[v] && ev + 1 + remaining[v] >= lower[v] && eu + remaining[u] >= lower[u]) {
        add(codec.bump(key, v), c, false);
      }
      // Term x_u, coefficient -1 for a difference factor, +1 for a sum factor.
      if (eu + 1 <= upper[u] && eu + 1 + remaining[u] >= lower[u] && ev + remaining[v] >= lower[v]) {
        add(codec.bump(key, u), c, e.tag == EdgeTag::Diff);
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    states += next.size();
    current = std::move(next);
  }

  SupportMap out;
  out.lower = lower;
  out.upper = upper;
  for (auto& [key, c] : current) {
    auto xi = codec.decode(key);
    bool inside = true;
    for (std::size_t i = 0; i < xi.size(); ++i) inside = inside && xi[i] >= lower[i] && xi[i] <= upper[i];
    if (inside) out.entries.emplace(std::move(xi), std::move(c));
  }
  return out;
}

// Depth-first enumeration of term choices. Each worker owns one instance.
class TermEnumerator {
 public:
  TermEnumerator(const std::vector<Edge>& order, const ExponentVector& lower, const ExponentVector& upper,
                 std::atomic<std::uint64_t>& nodes, std::uint64_t budget)
      : order_(order), lower_(lower), upper_(upper), nodes_(nodes), budget_(budget) {}

  struct Frame {
    ExponentVector exps;
    ExponentVector remaining;
    std::size_t depth;
    int sign;
  };

  // Collects frames at the given depth (pruned), in deterministic order.
  void split(Frame f, std::size_t depth, std::vector<Frame>& out) {
    if (f.depth == depth || f.depth == order_.size()) {
      out.push_back(std::move(f));
      return;
    }
    for_each_child(f, [&](Frame child) { split(std::move(child), depth, out); });
  }

  void run(Frame f) { descend(f); }

  std::map<ExponentVector, long long>& leaves() { return leaves_; }

 private:
  // In-place backtracking; f is restored on return.
  void descend(Frame& f) {
    if (f.depth == order_.size()) {
      for (std::size_t i = 0; i < f.exps.size(); ++i) {
        if (f.exps[i] < lower_[i] || f.exps[i] > upper_[i]) return;
      }
      leaves_[f.exps] += f.sign;
      return;
    }
    if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_) {
      throw BudgetExceeded("term-choice enumeration exceeded its node budget", budget_);
    }
    const Edge& e = order_[f.depth];
    const int u = e.u - 1;
    const int v = e.v - 1;
    --f.remaining[u];
    --f.remaining[v];
    ++f.depth;
    int& eu = f.exps[u];
    int& ev = f.exps[v];
    if (ev + 1 <= upper_[v] && ev + 1 + f.remaining[v] >= lower_[v] && eu + f.remaining[u] >= lower_[u]) {
      ++ev;
      descend(f);
      --ev;
    }
    if (eu + 1 <= upper_[u] && eu + 1 + f.remaining[u] >= lower_[u] && ev + f.remaining[v] >= lower_[v]) {
      const int saved = f.sign;
      ++eu;
      if (e.tag == EdgeTag::Diff) f.sign = -f.sign;
      descend(f);
      f.sign = saved;
      --eu;
    }
    --f.depth;
    ++f.remaining[u];
    ++f.remaining[v];
  }

  template <class Fn>
  void for_each_child(const Frame& f, Fn&& fn) {
    if (nodes_.fetch_add(1, std::memory_order_relaxed) >= budget_) {
      throw BudgetExceeded("term-choice enumeration exceeded its node budget", budget_);
    }
    const Edge& e = order_[f.depth];
    const int u = e.u - 1;
    const int v = e.v - 1;
    Frame base = f;
    --base.remaining[u];
    --base.remaining[v];
    ++base.depth;
    const int eu = base.exps[u];
    const int ev = base.exps[v];
    if (ev + 1 <= upper_[v] && ev + 1 + base.remaining[v] >= lower_[v] && eu + base.remaining[u] >= lower_[u]) {
      Frame child = base;
      ++child.exps[v];
      fn(std::move(child));
    }
    if (eu + 1 <= upper_[u] && eu + 1 + base.remaining[u] >= lower_[u] && ev + base.remaining[v] >= lower_[v]) {
      Frame child = std::move(base);
      ++child.exps[u];
      if (e.tag == EdgeTag::Diff) child.sign = -child.sign;
      fn(std::move(child));
    }
  }

  const std::vector<Edge>& order_;
  const ExponentVector& lower_;
  const ExponentVector& upper_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t budget_;
  std::map<ExponentVector, long long> leaves_;
};

SupportMap enumerate_window(const SignedMultigraph& g, const ExponentVector& lower, const ExponentVector& upper,
                            const EngineOptions& opts) {
  const auto order = dp_order(g);
  std::atomic<std::uint64_t> nodes{0};
  TermEnumerator::Frame root{ExponentVector(lower.size()), g.degree_vector(), 0, 1};

  std::map<ExponentVector, BigInt> merged;
  auto absorb = [&merged](std::map<ExponentVector, long long>& leaves) {
    for (auto& [xi, c] : leaves) merged[xi] += BigInt(c);
  };

  const unsigned threads = std::max(1U, opts.threads);
  if (threads == 1 || order.size() < 8) {
    TermEnumerator walker(order, lower, upper, nodes, opts.budget);
    walker.run(std::move(root));
    absorb(walker.leaves());
  } else {
    std::vector<TermEnumerator::Frame> tasks;
    TermEnumerator splitter(order, lower, upper, nodes, opts.budget);
    std::size_t depth = 0;
    while ((std::size_t{1} << depth) < 4 * threads && depth + 1 < order.size()) ++depth;
    splitter.split(std::move(root), depth, tasks);

    std::atomic<std::size_t> next_task{0};
    std::vector<std::map<ExponentVector, long long>> results(tasks.size());
    auto worker = [&]() {
      for (std::size_t t = next_task.fetch_add(1); t < tasks.size(); t = next_task.fetch_add(1)) {
        TermEnumerator walker(order, lower, upper, nodes, opts.budget);
        walker.run(tasks[t]);
        results[t] = std::move(walker.leaves());
      }
    };
    std::vector<std::future<void>> pool;
    for (unsigned w = 0; w < threads; ++w) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
    // Merge in task order so the result does not depend on scheduling.
    for (auto& r : results) absorb(r);
  }

  SupportMap out;
  out.lower = lower;
  out.upper = upper;
  for (auto& [xi, c] : merged) {
    if (c != 0) out.entries.emplace(xi, std::move(c));
  }
  return out;
}

SupportMap empty_support(const ExponentVector& lower, const ExponentVector& upper) {
  SupportMap out;
  out.lower = lower;
  out.upper = upper;
  return out;
}

void validate_exponent(const SignedMultigraph& g, const ExponentVector& xi) {
  if (xi.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw std::invalid_argument("exponent has length " + std::to_string(xi.size()) + ", graph has " +
                                std::to_string(g.vertex_count()) + " vertices");
  }
  for (int x : xi) {
    if (x < 0) throw std::invalid_argument("exponent entries must be non-negative");
  }
}

std::optional<std::string> homogeneity_advisory(const SignedMultigraph& g, const ExponentVector& xi) {
  if (xi.total() == static_cast<long>(g.edge_count())) return std::nullopt;
  return "|xi| = " + std::to_string(xi.total()) + " differs from |E| = " + std::to_string(g.edge_count()) +
         "; coefficient is 0 by homogeneity";
}

}  // namespace

SupportMap window_support(const SignedMultigraph& g, const ExponentVector& lower, const ExponentVector& upper,
                          const EngineOptions& opts) {
  auto window = normalize_window(g, lower, upper);
  if (!window) return empty_support(lower, upper);
  const auto& [lo, hi] = *window;
  SupportMap out;
  if (auto packed = PackedCodec::make(hi)) {
    out = run_dp(g, lo, hi, *packed, opts.budget);
  } else {
    if (hi.max() > 255) throw std::invalid_argument("vertex degree above 255 is not supported");
    out = run_dp(g, lo, hi, ByteCodec{hi.size()}, opts.budget);
  }
  out.lower = lower;
  out.upper = upper;
  return out;
}

SupportMap window_support_by_enumeration(const SignedMultigraph& g, const ExponentVector& lower,
                                         const ExponentVector& upper, const EngineOptions& opts) {
  auto window = normalize_window(g, lower, upper);
  if (!window) return empty_support(lower, upper);
  auto out = enumerate_window(g, window->first, window->second, opts);
  out.lower = lower;
  out.upper = upper;
  return out;
}

CoefficientResult coefficient(const SignedMultigraph& g, const ExponentVector& xi, const EngineOptions& opts) {
  validate_exponent(g, xi);
  if (auto advisory = homogeneity_advisory(g, xi)) return {BigInt(0), advisory};
  return {window_support(g, xi, xi, opts).at(xi), std::nullopt};
}

CoefficientResult coefficient_by_enumeration(const SignedMultigraph& g, const ExponentVector& xi,
                                             const EngineOptions& opts) {
  validate_exponent(g, xi);
  if (auto advisory = homogeneity_advisory(g, xi)) return {BigInt(0), advisory};
  return {window_support_by_enumeration(g, xi, xi, opts).at(xi), std::nullopt};
}

CoefficientResult coefficient_cross_checked(const SignedMultigraph& g, const ExponentVector& xi,
                                            const EngineOptions& opts) {
  auto dp = coefficient(g, xi, opts);
  auto en = coefficient_by_enumeration(g, xi, opts);
  if (dp.value != en.value) {
    throw InvariantViolation("DP and enumeration disagree: " + to_decimal(dp.value) + " vs " +
                             to_decimal(en.value));
  }
  return dp;
}

SupportMap support(const SignedMultigraph& g, const ExponentVector& cap, const EngineOptions& opts) {
  return window_support(g, ExponentVector(cap.size()), cap, opts);
}

int alon_tarsi_lower_bound(const SignedMultigraph& g) {
  const long n = g.vertex_count();
  if (n == 0) return 1;
  const long m = static_cast<long>(g.edge_count());
  return static_cast<int>((m + n - 1) / n) + 1;
}

AlonTarsiResult alon_tarsi_number_exact(const SignedMultigraph& g, const EngineOptions& opts) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (n == 0) return {1, ExponentVector{}, BigInt(1)};
  const int max_deg = g.max_degree();
  for (int cap = alon_tarsi_lower_bound(g) - 1; cap <= max_deg; ++cap) {
    auto found = support(g, ExponentVector(n, cap), opts);
    if (!found.empty()) {
      auto last = std::prev(found.entries.end());
      return {cap + 1, last->first, last->second};
    }
  }
  // A product of nonzero linear forms is never the zero polynomial.
  throw InvariantViolation("graph polynomial is identically zero");
}

ExponentVector half_degrees(const SignedMultigraph& g) {
  auto deg = g.degree_vector();
  for (std::size_t i = 0; i < deg.size(); ++i) {
    if (deg[i] % 2 != 0) {
      throw std::invalid_argument("vertex " + std::to_string(i + 1) + " has odd degree " + std::to_string(deg[i]) +
                                  "; central and almost-central coefficients need even degrees");
    }
    deg[i] /= 2;
  }
  return deg;
}

SupportMap almost_central_scan(const SignedMultigraph& g, const EngineOptions& opts) {
  const auto a = half_degrees(g);
  ExponentVector lower(a.size());
  ExponentVector upper(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    lower[i] = std::max(0, a[i] - 1);
    upper[i] = a[i] + 1;
  }
  return window_support(g, lower, upper, opts);
}

int mirror_sign(const SignedMultigraph& g) { return g.diff_edge_count() % 2 == 0 ? 1 : -1; }

bool mirror_coefficient_check(const SignedMultigraph& g, const ExponentVector& xi, const EngineOptions& opts) {
  validate_exponent(g, xi);
  const auto deg = g.degree_vector();
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (xi[i] > deg[i]) return coefficient(g, xi, opts).value == 0;
  }
  const auto lhs = coefficient(g, xi, opts).value;
  const auto rhs = coefficient(g, deg - xi, opts).value;
  return lhs == mirror_sign(g) * rhs;
}

}  // namespace atn
