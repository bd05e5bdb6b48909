#pragma once

#include <Eigen/Sparse>
#include <span>
#include <vector>

#include "kerrpair/model.hpp"

namespace kerrpair {

// state validation gates
inline constexpr double kHermTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPositivityTol = -1e-8;

// Validated quantum state. Construction checks hermiticity, unit trace and
// positivity against the gates above; the stored matrix is never mutated,
// clamping happens only in reporting accessors.
class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd rho);
  static DensityMatrix pure(Eigen::VectorXcd psi);  // normalizes psi
  static DensityMatrix vacuum(const HilbertSpec& spec);

  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

  double hermiticity_error() const;  // max_ij |rho - rho^dag|
  double trace_error() const;       // |tr(rho) - 1|
  double min_eigenvalue() const { return min_eig_; }
  Eigen::VectorXd populations() const;  // diagonal, negatives clamped to 0

 private:
  Eigen::MatrixXcd rho_;
  double min_eig_ = 0.0;
};

// Linear map on column-stacked density matrices, vec(rho)_{i+d*j} = rho_ij.
// Sparse inside; dense() materializes the full dim^2 x dim^2 matrix.
class Superoperator {
 public:
  Superoperator(Eigen::SparseMatrix<Complex> mat, int hilbert_dim);

  int hilbert_dim() const { return hilbert_dim_; }
  Eigen::Index vec_dim() const { return mat_.rows(); }
  const Eigen::SparseMatrix<Complex>& sparse() const { return mat_; }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(mat_); }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& vec_rho) const;
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;

 private:
  Eigen::SparseMatrix<Complex> mat_;
  int hilbert_dim_ = 0;
};

// L = -i (I x H - H^T x I)
//     + sum_k rate_k [ conj(A_k) x A_k - 1/2 I x A_k^dag A_k - 1/2 (A_k^dag A_k)^T x I ]
Superoperator liouvillian(const Operator& h, std::span<const Collapse> collapses);

struct EvolveOptions {
  double dt = 0.01;        // fixed RK4 step (in 1/kappa1)
  bool adaptive = false;   // step halving on the full-vs-two-halves error
  double step_tol = 1e-8;  // max-abs error accepted per step when adaptive
  double min_dt = 1e-10;
};

// RK4 propagation of an arbitrary vectorized operator (no state checks);
// used for conditioned, unnormalized evolution.
Eigen::VectorXcd propagate(const Superoperator& l, Eigen::VectorXcd v, double duration,
                           const EvolveOptions& opts = {});

// States at the requested times. t_grid must be strictly increasing and
// start at >= 0; every returned state passes the DensityMatrix gates.
std::vector<DensityMatrix> evolve(const DensityMatrix& rho0, const Superoperator& l,
                                  std::span<const double> t_grid,
                                  const EvolveOptions& opts = {});

// Null vector of L with unit trace, via a direct solve of the trace-row
// replaced system, with a dense eigenvector fallback for small problems.
// Throws SolverError when the null space is degenerate or the residual
// cannot be pushed below tolerance.
DensityMatrix steady_state(const Superoperator& l);

}  // namespace kerrpair
