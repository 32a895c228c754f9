#pragma once

// Seeded generators for random Krein spaces, subspaces and families. Used by
// the property suites and the tests; every draw is reproducible from the seed.

#include <cstdint>
#include <random>

#include "kreinlab/families.hpp"

namespace kreinlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  Complex cnormal() { return {normal(), normal()}; }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  /// Uniform integer in [lo, hi].
  Index index(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(engine_); }
  CMatrix gaussian(Index rows, Index cols);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Haar-distributed unitary.
CMatrix random_unitary(Rng& rng, Index n);

/// J = U diag(I_{n - n_minus}, -I_{n_minus}) U^H with U random unitary.
KreinSpace random_space(Rng& rng, Index n, Index n_minus);

/// Generic subspace of dimension `dim`.
Subspace random_subspace(Rng& rng, const KreinSpace& space, Index dim);

/// Neutral subspace of dimension k; requires k <= min(n_plus, n_minus).
Subspace random_neutral_subspace(Rng& rng, const KreinSpace& space, Index k);

/// S = N + R with N neutral of dimension `isotropic_dim` and R a regular
/// subspace of N^perp of dimension `regular_dim`, so that S^0 = N.
Subspace random_degenerate_subspace(Rng& rng, const KreinSpace& space, Index regular_dim, Index isotropic_dim);

/// K-orthonormal basis W (W^H J W = diag(signs)) of a random regular subspace
/// of dimension `dim`; Gram eigenvalues below `min_gap` in modulus are redrawn.
struct KOrthonormalBasis {
  CMatrix w;
  std::vector<int> signs;
};
KOrthonormalBasis random_k_orthonormal(Rng& rng, const KreinSpace& space, Index dim, double min_gap = 0.05);

/// Pairwise K-orthogonal selfadjoint projections with the given ranks.
std::vector<ProjectionOp> random_regular_family(Rng& rng, const KreinSpace& space, const std::vector<Index>& ranks);

/// Normal projections satisfying the three pairwise orthogonality relations,
/// one per block size; each block mixes signs when it can.
std::vector<ProjectionOp> random_normal_family(Rng& rng, const KreinSpace& space,
                                               const std::vector<Index>& block_sizes);

/// Nested oblique projections X diag(1_{k_d}, 0) X^{-1} for increasing k_d.
std::vector<ProjectionOp> random_nested_oblique(Rng& rng, const KreinSpace& space, const std::vector<Index>& ranks);

/// Prefix sums of a random normal family.
std::vector<ProjectionOp> random_nested_normal(Rng& rng, const KreinSpace& space,
                                               const std::vector<Index>& block_sizes);

}  // namespace kreinlab
