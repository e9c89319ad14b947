#include "atn/phi.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace atn {

namespace {

std::uint64_t central_binomial(int n) {
  // C(2n, n), saturating.
  std::uint64_t c = 1;
  for (int i = 1; i <= n; ++i) {
    c = c * static_cast<std::uint64_t>(n + i) / static_cast<std::uint64_t>(i);
    if (c > (std::uint64_t{1} << 40)) return c;
  }
  return c;
}

}  // namespace

PhiMatrix<BigInt> build_phi(const SignedMultigraph& q, const PhiOptions& opts) {
  const int n = q.vertex_count();
  const auto a = half_degrees(q);  // rejects odd degrees
  if (n > opts.max_vertices) {
    throw BudgetExceeded("Phi needs " + std::to_string(n) + " vertices, above the cap of " +
                             std::to_string(opts.max_vertices),
                         static_cast<std::uint64_t>(opts.max_vertices));
  }
  if (central_binomial(n) > opts.max_entries) {
    throw BudgetExceeded("Phi blocks for " + std::to_string(n) + " vertices exceed the entry budget",
                         opts.max_entries);
  }

  const auto window = almost_central_scan(q, opts.engine);
  PhiMatrix<BigInt> phi(n, a, mirror_sign(q), static_cast<int>(q.edge_count() % 2));
  using Mask = PhiMatrix<BigInt>::Mask;

  ExponentVector xi(static_cast<std::size_t>(n));
  for (int size = 0; size <= n; ++size) {
    auto& block = phi.block(size);
    const auto subsets = phi.subsets(size);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      const Mask s = subsets[i];
      const bool negate = size % 2 != 0;
      for (std::size_t j = 0; j < subsets.size(); ++j) {
        const Mask t = subsets[j];
        bool valid = true;
        for (int v = 0; v < n; ++v) {
          xi[v] = a[v] + static_cast<int>((t >> v) & 1U) - static_cast<int>((s >> v) & 1U);
          valid = valid && xi[v] >= 0;
        }
        if (!valid) continue;
        auto it = window.entries.find(xi);
        if (it == window.entries.end()) continue;
        block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = negate ? BigInt(-it->second) : it->second;
      }
    }
  }
  return phi;
}

BigInt product_central_via_trace(const SignedMultigraph& q, int k, const PhiOptions& opts) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("cycle length must be even and >= 2, got " + std::to_string(k));
  return trace_power(build_phi(q, opts), k);
}

std::optional<std::pair<ExponentVector, BigInt>> pick_almost_central_witness(const SupportMap& window,
                                                                             const ExponentVector& half) {
  std::optional<std::pair<ExponentVector, BigInt>> out;
  long best_distance = 0;
  for (const auto& [xi, c] : window.entries) {
    long distance = 0;
    for (std::size_t i = 0; i < xi.size(); ++i) distance += std::abs(xi[i] - half[i]);
    // Ties go to the later (lexicographically larger) exponent.
    if (!out || distance <= best_distance) {
      best_distance = distance;
      out = std::make_pair(xi, c);
    }
  }
  return out;
}

std::optional<TraceCertificate> trace_certificate(const SignedMultigraph& q, int cycle_length,
                                                     const PhiOptions& opts) {
  if (cycle_length < 2 || cycle_length % 2 != 0) {
    throw std::invalid_argument("cycle length must be even and >= 2, got " + std::to_string(cycle_length));
  }
  const auto half = half_degrees(q);
  const auto window = almost_central_scan(q, opts.engine);
  auto witness = pick_almost_central_witness(window, half);
  if (!witness) return std::nullopt;

  TraceCertificate cert;
  cert.graph = q;
  cert.cycle_length = cycle_length;
  cert.witness = witness->first;
  cert.witness_coefficient = witness->second;
  cert.trace = trace_power(build_phi(q, opts), cycle_length);
  cert.at_bound = q.max_degree() / 2 + 2;
  if (cert.trace == 0) {
    throw InvariantViolation("tr(Phi^k) vanished although an almost-central coefficient is nonzero");
  }
  return cert;
}

}  // namespace atn
