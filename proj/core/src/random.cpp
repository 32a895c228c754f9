#include "kreinlab/random.hpp"

#include <cmath>
#include <numeric>

#include "kreinlab/errors.hpp"

namespace kreinlab {

namespace {

constexpr int kMaxRedraws = 200;

struct SignedEigenbasis {
  CMatrix plus;
  CMatrix minus;
};

SignedEigenbasis split_by_sign(const KreinSpace& space) {
  const HermitianEig eig = hermitian_eig(space.j());
  std::vector<Index> neg;
  std::vector<Index> pos;
  for (Index i = 0; i < eig.values.size(); ++i) (eig.values(i) < 0.0 ? neg : pos).push_back(i);
  return {eig.vectors(Eigen::all, pos), eig.vectors(Eigen::all, neg)};
}

}  // namespace

CMatrix Rng::gaussian(Index rows, Index cols) {
  CMatrix out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) out(i, j) = cnormal();
  }
  return out;
}

CMatrix random_unitary(Rng& rng, Index n) {
  const CMatrix g = rng.gaussian(n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (Index i = 0; i < n; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

KreinSpace random_space(Rng& rng, Index n, Index n_minus) {
  if (n <= 0 || n_minus < 0 || n_minus > n) {
    throw KreinError(ErrorKind::kInvalidArgument, "0 <= n_minus <= n", "invalid signature");
  }
  const CMatrix u = random_unitary(rng, n);
  RVector d = RVector::Ones(n);
  d.tail(n_minus).setConstant(-1.0);
  const CMatrix j = u * d.cast<Complex>().asDiagonal() * u.adjoint();
  return KreinSpace(0.5 * (j + j.adjoint()));
}

Subspace random_subspace(Rng& rng, const KreinSpace& space, Index dim) {
  if (dim == 0) return Subspace::zero(space);
  return Subspace::span_of(space, rng.gaussian(space.dim(), dim));
}

Subspace random_neutral_subspace(Rng& rng, const KreinSpace& space, Index k) {
  if (k == 0) return Subspace::zero(space);
  const SignedEigenbasis e = split_by_sign(space);
  if (k > e.plus.cols() || k > e.minus.cols()) {
    throw KreinError(ErrorKind::kInvalidArgument, "k <= min(n_plus, n_minus)", "neutral subspace too large");
  }
  const CMatrix a = random_unitary(rng, e.plus.cols()).leftCols(k);
  const CMatrix b = random_unitary(rng, e.minus.cols()).leftCols(k);
  return Subspace::span_of(space, e.plus * a + e.minus * b);
}

Subspace random_degenerate_subspace(Rng& rng, const KreinSpace& space, Index regular_dim, Index isotropic_dim) {
  if (regular_dim + 2 * isotropic_dim > space.dim()) {
    throw KreinError(ErrorKind::kInvalidArgument, "regular_dim + 2 isotropic_dim <= dim H",
                     "degenerate subspace does not fit");
  }
  const Subspace n = random_neutral_subspace(rng, space, isotropic_dim);
  const Subspace companion = ortho_companion(n);
  CMatrix gens(space.dim(), isotropic_dim + regular_dim);
  gens << n.basis(), companion.basis() * rng.gaussian(companion.dim(), regular_dim);
  return Subspace::span_of(space, gens);
}

KOrthonormalBasis random_k_orthonormal(Rng& rng, const KreinSpace& space, Index dim, double min_gap) {
  if (dim == 0) return {CMatrix::Zero(space.dim(), 0), {}};
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    const Subspace s = random_subspace(rng, space, dim);
    const HermitianEig eig = hermitian_eig(s.gram());
    if (eig.values.cwiseAbs().minCoeff() < min_gap) continue;
    KOrthonormalBasis out;
    const RVector scale = eig.values.cwiseAbs().cwiseSqrt().cwiseInverse();
    out.w = s.basis() * eig.vectors * scale.cast<Complex>().asDiagonal();
    for (Index i = 0; i < dim; ++i) out.signs.push_back(eig.values(i) > 0.0 ? 1 : -1);
    return out;
  }
  throw KreinError(ErrorKind::kInvalidArgument, "Gram gap reachable", "could not draw a well-separated Gram");
}

std::vector<ProjectionOp> random_regular_family(Rng& rng, const KreinSpace& space, const std::vector<Index>& ranks) {
  const Index total = std::accumulate(ranks.begin(), ranks.end(), Index{0});
  const KOrthonormalBasis basis = random_k_orthonormal(rng, space, total);
  std::vector<ProjectionOp> out;
  Index offset = 0;
  for (Index r : ranks) {
    const CMatrix mix = r > 0 ? CMatrix(basis.w.middleCols(offset, r) * rng.gaussian(r, r)) : CMatrix::Zero(space.dim(), 0);
    out.push_back(selfadjoint_projection(r > 0 ? Subspace::span_of(space, mix) : Subspace::zero(space)));
    offset += r;
  }
  return out;
}

std::vector<ProjectionOp> random_normal_family(Rng& rng, const KreinSpace& space,
                                               const std::vector<Index>& block_sizes) {
  const Index total = std::accumulate(block_sizes.begin(), block_sizes.end(), Index{0});
  const KOrthonormalBasis basis = random_k_orthonormal(rng, space, total);
  // Order coordinates so each block receives both signs when possible.
  std::vector<Index> plus;
  std::vector<Index> minus;
  for (Index i = 0; i < total; ++i) (basis.signs[static_cast<std::size_t>(i)] > 0 ? plus : minus).push_back(i);
  std::vector<Index> order;
  {
    std::size_t ip = 0;
    std::size_t im = 0;
    for (Index s : block_sizes) {
      for (Index k = 0; k < s; ++k) {
        const bool want_minus = (k % 2 == 1);
        if ((want_minus && im < minus.size()) || ip >= plus.size()) {
          order.push_back(minus[im++]);
        } else {
          order.push_back(plus[ip++]);
        }
      }
    }
  }
  const CMatrix w = basis.w(Eigen::all, order);
  std::vector<int> signs;
  for (Index i : order) signs.push_back(basis.signs[static_cast<std::size_t>(i)]);
  const RVector jd = Eigen::Map<const Eigen::VectorXi>(signs.data(), total).cast<double>();
  const CMatrix right = jd.cast<Complex>().asDiagonal() * space.apply_j(w).adjoint();  // J_d W^H J

  std::vector<ProjectionOp> out;
  Index offset = 0;
  for (Index s : block_sizes) {
    std::vector<int> local(signs.begin() + offset, signs.begin() + offset + s);
    const KreinSpace local_space = KreinSpace::diagonal(local);
    const Index n_minus = local_space.negative_index();
    const Index n_plus = local_space.positive_index();
    Subspace sub = Subspace::zero(local_space);
    if (s >= 2 && n_minus > 0 && n_plus > 0) {
      const Index iso = 1;
      const Index reg = rng.index(0, s - 2);
      sub = random_degenerate_subspace(rng, local_space, reg, iso);
    } else if (s > 0) {
      sub = random_subspace(rng, local_space, rng.index(1, s));
    }
    CMatrix q_tilde = CMatrix::Zero(total, total);
    q_tilde.block(offset, offset, s, s) = normal_projection(sub).matrix();
    const CMatrix q = w * q_tilde * right;
    out.push_back(ProjectionOp::from_matrix(space, q));
    offset += s;
  }
  return out;
}

std::vector<ProjectionOp> random_nested_oblique(Rng& rng, const KreinSpace& space, const std::vector<Index>& ranks) {
  const Index n = space.dim();
  RVector scales(n);
  for (Index i = 0; i < n; ++i) scales(i) = rng.uniform(0.5, 2.0);
  const CMatrix x = random_unitary(rng, n) * scales.cast<Complex>().asDiagonal() * random_unitary(rng, n);
  const CMatrix x_inv = x.fullPivLu().inverse();
  std::vector<ProjectionOp> out;
  for (Index k : ranks) {
    out.push_back(ProjectionOp::from_lowrank(space, x.leftCols(k), CMatrix::Identity(k, k),
                                             x_inv.topRows(k).adjoint()));
  }
  return out;
}

std::vector<ProjectionOp> random_nested_normal(Rng& rng, const KreinSpace& space,
                                               const std::vector<Index>& block_sizes) {
  const std::vector<ProjectionOp> family = random_normal_family(rng, space, block_sizes);
  std::vector<ProjectionOp> out;
  CMatrix sum = CMatrix::Zero(space.dim(), space.dim());
  for (const ProjectionOp& q : family) {
    sum += q.matrix();
    out.push_back(ProjectionOp::from_matrix(space, sum));
  }
  return out;
}

}  // namespace kreinlab
