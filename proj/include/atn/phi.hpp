#ifndef ATN_PHI_HPP
#define ATN_PHI_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <boost/multiprecision/eigen.hpp>

#include "atn/bigint.hpp"
#include "atn/certificate.hpp"
#include "atn/coefficient.hpp"
#include "atn/graph.hpp"

namespace atn {

/// Transfer matrix indexed by vertex subsets (bitmasks, bit i = vertex i+1):
///
///   Phi(S, T) = (-1)^|S| [x^(a + chi_T - chi_S)] Q,   a = deg/2,
///
/// and zero when |S| != |T|. It is block diagonal by subset size, so only the
/// C(n, s) x C(n, s) diagonal blocks are stored; block s lists subsets of size
/// s in increasing mask order.
template <class Scalar>
class PhiMatrix {
 public:
  using Block = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Mask = std::uint32_t;

  PhiMatrix(int n, ExponentVector half_degrees, int symmetry_sign, int edge_parity)
      : n_(checked_size(n)),
        half_degrees_(std::move(half_degrees)),
        symmetry_sign_(symmetry_sign),
        edge_parity_(edge_parity),
        subsets_(static_cast<std::size_t>(n) + 1),
        index_(std::size_t{1} << n),
        blocks_(static_cast<std::size_t>(n) + 1) {
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      auto& list = subsets_[std::popcount(m)];
      index_[m] = static_cast<std::uint32_t>(list.size());
      list.push_back(m);
    }
    for (int s = 0; s <= n; ++s) {
      const auto dim = static_cast<Eigen::Index>(subsets_[s].size());
      blocks_[s] = Block::Zero(dim, dim);
    }
  }

  int vertex_count() const noexcept { return n_; }
  const ExponentVector& half_degrees() const noexcept { return half_degrees_; }
  /// sigma with Phi(T, S) = sigma * Phi(S, T).
  int symmetry_sign() const noexcept { return symmetry_sign_; }
  /// |E| mod 2 of the underlying multigraph.
  int edge_parity() const noexcept { return edge_parity_; }

  std::span<const Mask> subsets(int size) const { return subsets_.at(size); }
  std::uint32_t index_in_block(Mask m) const { return index_.at(m); }

  const Block& block(int size) const { return blocks_.at(size); }
  Block& block(int size) { return blocks_.at(size); }

  Scalar entry(Mask s, Mask t) const {
    const int size = std::popcount(s);
    if (size != std::popcount(t)) return Scalar(0);
    return blocks_[size](index_[s], index_[t]);
  }
  void set_entry(Mask s, Mask t, const Scalar& value) {
    const int size = std::popcount(s);
    if (size != std::popcount(t)) throw std::invalid_argument("Phi is zero off the |S| = |T| blocks");
    blocks_[size](index_[s], index_[t]) = value;
  }

  std::size_t nonzero_count() const {
    std::size_t count = 0;
    for (const auto& b : blocks_)
      for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) count += b(i, j) != Scalar(0);
    return count;
  }
  bool is_zero() const { return nonzero_count() == 0; }

 private:
  static int checked_size(int n) {
    if (n < 0 || n > 30) throw std::invalid_argument("PhiMatrix supports 0..30 vertices");
    return n;
  }

  int n_;
  ExponentVector half_degrees_;
  int symmetry_sign_;
  int edge_parity_;
  std::vector<std::vector<Mask>> subsets_;
  std::vector<std::uint32_t> index_;
  std::vector<Block> blocks_;
};

/// M^e for e >= 1 by square-and-multiply.
template <class Dense>
Dense matrix_power(Dense base, int e) {
  if (e < 1) throw std::invalid_argument("matrix_power needs e >= 1");
  std::optional<Dense> result;
  while (true) {
    if (e & 1) result = result ? Dense(*result * base) : base;
    e >>= 1;
    if (e == 0) break;
    base = Dense(base * base);
  }
  return *result;
}

/// tr(M^k) for a square matrix, k >= 1, via M^(k/2) and a Hadamard-product
/// trace for the final step.
template <class Derived>
typename Derived::Scalar trace_of_power(const Eigen::MatrixBase<Derived>& m, int k) {
  using Scalar = typename Derived::Scalar;
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (k < 1) throw std::invalid_argument("trace_of_power needs k >= 1");
  if (m.rows() == 0) return Scalar(0);
  if (k == 1) return m.trace();
  const Dense half = matrix_power(Dense(m), k / 2);
  if (k % 2 == 0) return half.cwiseProduct(half.transpose()).sum();
  const Dense other = (half * m).eval();
  return other.cwiseProduct(half.transpose()).sum();
}

/// Exact tr(M^k), k even, for a BigInt matrix. When every entry of M^(k/2)
/// provably fits in 62 bits (|M^j|_max <= dim^(j-1) * max|M|^j), the powers
/// run in machine integers and only the final sum is exact big arithmetic.
inline BigInt exact_trace_of_even_power(const Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>& m, int k) {
  using Small = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
  BigInt max_abs(0);
  for (Eigen::Index i = 0; i < m.size(); ++i) max_abs = std::max(max_abs, BigInt(abs(m.data()[i])));
  if (max_abs == 0) return BigInt(0);
  const int j = k / 2;
  BigInt bound = pow(max_abs, static_cast<unsigned>(j)) * pow(BigInt(m.rows()), static_cast<unsigned>(j - 1));
  if (bound > BigInt(std::int64_t{1} << 62)) return trace_of_power(m, k);
  Small small(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.size(); ++i) small.data()[i] = static_cast<std::int64_t>(m.data()[i]);
  const Small half = matrix_power(small, j);
  BigInt total(0);
  for (Eigen::Index c = 0; c < half.cols(); ++c)
    for (Eigen::Index r = 0; r < half.rows(); ++r)
      if (half(r, c) != 0 && half(c, r) != 0) total += BigInt(half(r, c)) * BigInt(half(c, r));
  return total;
}

/// tr(M^k), k even, for a sparse M: M^(k/2) by repeated sparse products.
template <class Scalar>
Scalar sparse_trace_of_even_power(const Eigen::SparseMatrix<Scalar>& m, int k) {
  using Sparse = Eigen::SparseMatrix<Scalar>;
  Sparse half = m;
  for (int i = 1; i < k / 2; ++i) {
    half = Sparse(half * m);
    half.prune(Scalar(0));
  }
  const Sparse t = half.transpose();
  Scalar total(0);
  for (Eigen::Index c = 0; c < half.outerSize(); ++c) {
    typename Sparse::InnerIterator a(half, c), b(t, c);
    while (a && b) {
      if (a.index() < b.index()) ++a;
      else if (b.index() < a.index()) ++b;
      else {
        total += a.value() * b.value();
        ++a;
        ++b;
      }
    }
  }
  return total;
}

/// Exact tr(Phi^k) for even k >= 2, block by block. Blocks with at most one
/// nonzero in eight entries go through sparse products.
template <class Scalar>
Scalar trace_power(const PhiMatrix<Scalar>& phi, int k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("trace_power needs an even k >= 2, got " + std::to_string(k));
  Scalar total(0);
  for (int s = 0; s <= phi.vertex_count(); ++s) {
    const auto& b = phi.block(s);
    if (b.rows() == 0) continue;
    std::vector<Eigen::Triplet<Scalar>> nz;
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      for (Eigen::Index i = 0; i < b.rows(); ++i)
        if (b(i, j) != Scalar(0)) nz.emplace_back(i, j, b(i, j));
    if (nz.size() * 8 > static_cast<std::size_t>(b.size())) {
      if constexpr (std::is_same_v<Scalar, BigInt>) total += exact_trace_of_even_power(b, k);
      else total += trace_of_power(b, k);
      continue;
    }
    Eigen::SparseMatrix<Scalar> sparse(b.rows(), b.cols());
    sparse.setFromTriplets(nz.begin(), nz.end());
    total += sparse_trace_of_even_power(sparse, k);
  }
  return total;
}

struct PhiOptions {
  int max_vertices = 20;
  std::uint64_t max_entries = 4'000'000;  // sum of C(n,s)^2 = C(2n, n)
  EngineOptions engine;
};

/// Builds Phi for a (generalized) graph polynomial with all degrees even.
/// Entries come from one almost-central window scan of Q.
PhiMatrix<BigInt> build_phi(const SignedMultigraph& q, const PhiOptions& opts = {});

/// tr(Phi^k), k even. Its absolute value is the absolute value of the central
/// coefficient of the polynomial of Q boxed with the k-cycle (for k = 2 the
/// digon, i.e. doubled rungs). The sign need not match the canonical sign of
/// that product graph.
BigInt product_central_via_trace(const SignedMultigraph& q, int k, const PhiOptions& opts = {});

/// The almost-central witness used by certificates: closest to central (L1),
/// then lexicographically largest.
std::optional<std::pair<ExponentVector, BigInt>> pick_almost_central_witness(const SupportMap& window,
                                                                             const ExponentVector& half);

/// Certificate that Q boxed with any even cycle has a nonzero central
/// coefficient, hence AT <= Delta(Q)/2 + 2, with tr(Phi^k) for the requested
/// cycle length k as the checkable witness. std::nullopt when the
/// almost-central window of Q is empty (not a disproof of choosability).
std::optional<TraceCertificate> trace_certificate(const SignedMultigraph& q, int cycle_length,
                                                     const PhiOptions& opts = {});

}  // namespace atn

#endif  // ATN_PHI_HPP
