#pragma once

// Discrete radial Laplacian and bilaplacian on the half-offset grid.
//
// The Laplacian is the conservative flux form of r^(1-d) (r^(d-1) f')':
//
//   (Lap f)_i = omega [ A_{i+1} (f_{i+1}-f_i)/h - A_i (f_i-f_{i-1})/h ] / w_i
//
// with face coefficients A_j = (j h)^(d-1).  A_0 = 0 closes the origin (zero
// flux through r = 0, which is the regularity condition for radial fields);
// the outer face carries a homogeneous Dirichlet ghost (f = 0 at r_max).
// Writing Lap = W^(-1) S with S symmetric makes the operator exactly
// self-adjoint in the weighted inner product, negative definite, and exact
// on the functions 1 and r^2 at every node.  The bilaplacian is the square
// of this matrix, never an independent stencil, so <Lap^2 f, f> = ||Lap f||^2
// holds identically and the spectral calculus for exp(i t mu Lap^2) uses the
// squared Laplacian eigenvalues.

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <stdexcept>

#include "bnls/grid.hpp"

namespace bnls {

struct SpectralFactorization {
  RVec eigenvalues;               // ascending
  Eigen::MatrixXd eigenvectors;   // columns q_j, orthonormal wrt grid weights
  Eigen::MatrixXd adjoint_basis;  // Q^T diag(w); maps nodal values to coefficients
};

class LinearOperator {
 public:
  LinearOperator(std::shared_ptr<const RadialGrid> grid, Eigen::MatrixXd matrix)
      : grid_(std::move(grid)), mat_(std::move(matrix)) {}

  const RadialGrid& grid() const { return *grid_; }
  std::shared_ptr<const RadialGrid> grid_ptr() const { return grid_; }
  const Eigen::MatrixXd& matrix() const { return mat_; }

  template <typename Derived>
  auto apply(const Eigen::MatrixBase<Derived>& f) const {
    check_length(*grid_, f.size(), "LinearOperator::apply");
    if constexpr (Eigen::NumTraits<typename Derived::Scalar>::IsComplex) {
      CVec out(f.size());
      out.real() = mat_ * f.real().eval().template cast<double>();
      out.imag() = mat_ * f.imag().eval().template cast<double>();
      return out;
    } else {
      RVec out = mat_ * f.eval().template cast<double>();
      return out;
    }
  }

  bool has_factorization() const { return fact_.has_value(); }
  const SpectralFactorization& factorization() const {
    if (!fact_) throw std::logic_error("LinearOperator: no factorization attached");
    return *fact_;
  }
  void attach_factorization(SpectralFactorization f) { fact_ = std::move(f); }

  // Max self-adjointness defect |<Af,g> - <f,Ag>| over the canonical basis,
  // relative to the operator scale.  Zero up to roundoff by construction.
  double self_adjointness_defect() const {
    const Eigen::MatrixXd wa =
        grid_->weights.asDiagonal() * mat_;  // should be symmetric
    return (wa - wa.transpose()).cwiseAbs().maxCoeff() / wa.cwiseAbs().maxCoeff();
  }

 private:
  std::shared_ptr<const RadialGrid> grid_;
  Eigen::MatrixXd mat_;
  std::optional<SpectralFactorization> fact_;
};

inline LinearOperator radial_laplacian(std::shared_ptr<const RadialGrid> grid) {
  const RadialGrid& g = *grid;
  const int n = g.n;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  const double om = g.sphere_area;
  auto face = [&](int j) { return om * std::pow(j * g.h, g.d - 1) / g.h; };
  for (int i = 0; i < n; ++i) {
    const double lo = face(i);                // zero at i = 0
    const double hi = face(i + 1);
    S(i, i) -= lo + hi;
    if (i > 0) S(i, i - 1) = lo;
    if (i + 1 < n) S(i, i + 1) = hi;
  }
  // Dirichlet ghost across the outer face: f_n = -f_{n-1}.
  S(n - 1, n - 1) -= face(n);
  Eigen::MatrixXd A = g.weights.cwiseInverse().asDiagonal() * S;
  return LinearOperator(std::move(grid), std::move(A));
}

// Dense symmetric eigensolve through the similarity transform
// B = W^(1/2) A W^(-1/2); eigenvectors are mapped back to W-orthonormal form.
inline SpectralFactorization compute_factorization(const LinearOperator& op) {
  const RadialGrid& g = op.grid();
  const RVec ws = g.weights.array().sqrt().matrix();
  const RVec wsi = ws.cwiseInverse();
  Eigen::MatrixXd B = ws.asDiagonal() * op.matrix() * wsi.asDiagonal();
  B = 0.5 * (B + B.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(B);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("diagonalize: symmetric eigensolver failed (n = " +
                             std::to_string(g.n) + ")");
  SpectralFactorization f;
  f.eigenvalues = solver.eigenvalues();
  f.eigenvectors = wsi.asDiagonal() * solver.eigenvectors();
  f.adjoint_basis = solver.eigenvectors().transpose() * ws.asDiagonal();
  return f;
}

inline LinearOperator diagonalize(LinearOperator op) {
  auto f = compute_factorization(op);
  // Reconstruction guard: A = Q Lambda Q^* in the weighted product.
  const Eigen::MatrixXd rec =
      f.eigenvectors * f.eigenvalues.asDiagonal() * f.adjoint_basis;
  const double rel = (rec - op.matrix()).norm() / op.matrix().norm();
  if (!(rel <= 1e-8))
    throw std::runtime_error("diagonalize: reconstruction residual " +
                             std::to_string(rel) + " exceeds 1e-8");
  op.attach_factorization(std::move(f));
  return op;
}

// Square of the discrete Laplacian.  When the Laplacian carries its spectral
// factorization the square inherits it with eigenvalues squared (exact
// functional calculus); eigenvalue order is kept ascending.
inline LinearOperator bilaplacian(const LinearOperator& lap) {
  LinearOperator op(lap.grid_ptr(), lap.matrix() * lap.matrix());
  if (lap.has_factorization()) {
    const auto& base = lap.factorization();
    SpectralFactorization f;
    const Eigen::Index n = base.eigenvalues.size();
    f.eigenvalues.resize(n);
    f.eigenvectors.resize(base.eigenvectors.rows(), n);
    f.adjoint_basis.resize(n, base.adjoint_basis.cols());
    // Laplacian eigenvalues ascend through negatives, so squares descend;
    // reverse to keep the ascending convention.
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index src = n - 1 - j;
      f.eigenvalues[j] = base.eigenvalues[src] * base.eigenvalues[src];
      f.eigenvectors.col(j) = base.eigenvectors.col(src);
      f.adjoint_basis.row(j) = base.adjoint_basis.row(src);
    }
    op.attach_factorization(std::move(f));
  }
  return op;
}

inline LinearOperator bilaplacian(std::shared_ptr<const RadialGrid> grid) {
  return bilaplacian(radial_laplacian(std::move(grid)));
}

}  // namespace bnls
