#include "atn/choosability.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <stdexcept>

namespace atn {

namespace {

using Mask = std::uint64_t;

std::vector<std::vector<int>> simple_neighbours(const SignedMultigraph& g) {
  auto adj = g.adjacency();
  for (auto& list : adj) list.erase(std::unique(list.begin(), list.end()), list.end());
  return adj;
}

// Colours are bit positions; returns the chosen bit per vertex.
class MaskColoring {
 public:
  explicit MaskColoring(const std::vector<std::vector<int>>& adj) : adj_(adj) {}

  bool solve(std::vector<Mask> avail) {
    colour_.assign(avail.size(), -1);
    return step(avail, avail.size());
  }
  const std::vector<int>& colours() const noexcept { return colour_; }

 private:
  bool step(std::vector<Mask>& avail, std::size_t left) {
    if (left == 0) return true;
    std::size_t pick = avail.size();
    int fewest = 65;
    for (std::size_t v = 0; v < avail.size(); ++v) {
      if (colour_[v] >= 0) continue;
      const int c = std::popcount(avail[v]);
      if (c < fewest) {
        fewest = c;
        pick = v;
      }
    }
    if (fewest == 0) return false;
    for (Mask rest = avail[pick]; rest != 0; rest &= rest - 1) {
      const int c = std::countr_zero(rest);
      std::vector<Mask> next = avail;
      for (int w : adj_[pick]) next[w] &= ~(Mask{1} << c);
      colour_[pick] = c;
      if (step(next, left - 1)) return true;
    }
    colour_[pick] = -1;
    return false;
  }

  const std::vector<std::vector<int>>& adj_;
  std::vector<int> colour_;
};

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return BigInt(0);
  BigInt r(1);
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Mask> subsets_of_size(int universe, int k) {
  std::vector<Mask> out;
  if (k == 0) return {Mask{0}};
  Mask m = (Mask{1} << k) - 1;
  const Mask limit = Mask{1} << universe;
  while (m < limit) {
    out.push_back(m);
    const Mask low = m & (~m + 1);
    const Mask ripple = m + low;
    m = ripple | (((m ^ ripple) >> 2) / low);
    if (ripple == 0) break;
  }
  return out;
}

std::vector<int> mask_to_list(Mask m) {
  std::vector<int> out;
  for (; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
  return out;
}

void require_sizes(const SignedMultigraph& g, const ExponentVector& f) {
  if (f.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw std::invalid_argument("list sizes must have one entry per vertex");
  }
  for (int x : f) {
    if (x < 1) throw std::invalid_argument("list sizes must be >= 1");
  }
}

}  // namespace

std::optional<std::vector<int>> find_list_coloring(const SignedMultigraph& g, const ListAssignment& lists) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  if (lists.size() != n) throw std::invalid_argument("need one list per vertex");
  std::map<int, int> index;
  for (const auto& l : lists)
    for (int c : l) index.emplace(c, 0);
  int next = 0;
  for (auto& [c, i] : index) i = next++;
  std::vector<int> palette;
  for (const auto& [c, i] : index) palette.push_back(c);

  const auto adj = simple_neighbours(g);
  // Lists of up to 64 distinct colours use the bitmask solver; colour
  // indices are ordered like the colours themselves.
  if (palette.size() > 64) throw std::invalid_argument("at most 64 distinct colours supported");
  std::vector<Mask> avail(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (int c : lists[v]) avail[v] |= Mask{1} << index[c];
  MaskColoring solver(adj);
  if (!solver.solve(avail)) return std::nullopt;
  std::vector<int> out(n);
  for (std::size_t v = 0; v < n; ++v) out[v] = palette[solver.colours()[v]];
  return out;
}

bool list_coloring_exists(const SignedMultigraph& g, const ListAssignment& lists) {
  return find_list_coloring(g, lists).has_value();
}

int default_universe(const ExponentVector& f) {
  long sum = f.total();
  return static_cast<int>(std::min<long>(sum, 2L * f.max()));
}

ExhaustiveResult f_choosable_exhaustive(const SignedMultigraph& g, const ExponentVector& f, int universe,
                                        std::uint64_t budget) {
  require_sizes(g, f);
  ExhaustiveResult result;
  const int n = g.vertex_count();
  if (n == 0) return result;
  if (universe <= 0) universe = default_universe(f);
  if (universe > 63) throw std::invalid_argument("universe of at most 63 colours supported");
  result.universe = universe;
  if (f.max() > universe) throw std::invalid_argument("a list size exceeds the colour universe");

  BigInt count(1);
  for (int v = 1; v < n; ++v) count *= binomial(universe, f[v]);
  if (count > BigInt(budget)) {
    throw BudgetExceeded("exhaustive choosability needs " + to_decimal(count) + " list assignments", budget);
  }

  std::map<int, std::vector<Mask>> by_size;
  for (int v = 1; v < n; ++v) by_size.try_emplace(f[v], subsets_of_size(universe, f[v]));
  std::vector<const std::vector<Mask>*> choices(static_cast<std::size_t>(n));
  for (int v = 1; v < n; ++v) choices[v] = &by_size.at(f[v]);

  const auto adj = simple_neighbours(g);
  MaskColoring solver(adj);
  std::vector<std::size_t> odo(static_cast<std::size_t>(n), 0);
  std::vector<Mask> avail(static_cast<std::size_t>(n));
  avail[0] = (Mask{1} << f[0]) - 1;
  while (true) {
    for (int v = 1; v < n; ++v) avail[v] = (*choices[v])[odo[v]];
    ++result.assignments;
    if (!solver.solve(avail)) {
      result.choosable = false;
      ListAssignment bad;
      for (Mask m : avail) bad.push_back(mask_to_list(m));
      result.counterexample = std::move(bad);
      return result;
    }
    int v = n - 1;
    while (v >= 1 && ++odo[v] == choices[v]->size()) odo[v--] = 0;
    if (v < 1) break;
  }
  return result;
}

int choice_number_exhaustive(const SignedMultigraph& g, std::uint64_t budget) {
  const int n = g.vertex_count();
  if (n == 0) return 0;
  for (int m = 1;; ++m) {
    const ExponentVector f(static_cast<std::size_t>(n), m);
    if (f_choosable_exhaustive(g, f, std::min(m * n, 63), budget).choosable) return m;
  }
}

std::optional<CnCertificate> cn_choosability_certificate(const SignedMultigraph& g, const ExponentVector& f,
                                                         const EngineOptions& opts) {
  require_sizes(g, f);
  const auto n = static_cast<std::size_t>(g.vertex_count());
  ExponentVector cap(n);
  for (std::size_t i = 0; i < n; ++i) cap[i] = f[i] - 1;
  if (cap.total() < static_cast<long>(g.edge_count())) return std::nullopt;
  const SupportMap window = window_support(g, ExponentVector(n, 0), cap, opts);
  if (window.empty()) return std::nullopt;
  const auto& [witness, value] = *window.entries.rbegin();
  return CnCertificate{g, f, witness, value};
}

int colbound(int ch_g, int col_g, int ch_h, int col_h) {
  return std::min(ch_g + col_h, col_g + ch_h) - 1;
}

nlohmann::json to_json(const StressReport& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& lists : r.failures) failures.push_back(lists);
  return {{"trials", r.trials}, {"seed", r.seed}, {"universe", r.universe}, {"failures", failures}};
}

StressReport random_list_stress(const SignedMultigraph& g, const ExponentVector& f, std::uint64_t trials,
                                std::uint64_t seed, int universe, const std::optional<CnCertificate>& held) {
  require_sizes(g, f);
  const auto n = static_cast<std::size_t>(g.vertex_count());
  StressReport report;
  report.seed = seed;
  report.universe = universe > 0 ? universe : (n == 0 ? 1 : f.max() + 1);
  if (n > 0 && f.max() > report.universe) throw std::invalid_argument("a list size exceeds the colour universe");
  if (held && (held->graph != g || held->f != f)) {
    throw std::invalid_argument("held certificate is for a different graph or list size function");
  }

  std::mt19937_64 rng(seed);
  std::vector<int> colours(static_cast<std::size_t>(report.universe));
  for (std::uint64_t t = 0; t < trials; ++t) {
    ListAssignment lists(n);
    for (std::size_t v = 0; v < n; ++v) {
      for (int c = 0; c < report.universe; ++c) colours[c] = c + 1;
      // Partial Fisher-Yates: the first f_v slots become the list.
      for (int i = 0; i < f[v]; ++i) {
        std::uniform_int_distribution<int> pick(i, report.universe - 1);
        std::swap(colours[i], colours[pick(rng)]);
      }
      lists[v].assign(colours.begin(), colours.begin() + f[v]);
      std::sort(lists[v].begin(), lists[v].end());
    }
    ++report.trials;
    if (!list_coloring_exists(g, lists)) {
      if (held) {
        throw InvariantViolation("list assignment " + nlohmann::json(lists).dump() +
                                 " is not colourable although a nonzero coefficient certifies it");
      }
      report.failures.push_back(std::move(lists));
    }
  }
  return report;
}

}  // namespace atn
