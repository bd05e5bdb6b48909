#include "kerrpair/lindblad.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "kerrpair/errors.hpp"

namespace kerrpair {

namespace {

using SparseOp = Eigen::SparseMatrix<Complex>;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

SparseOp kron(const SparseOp& a, const SparseOp& b) {
  SparseOp out(a.rows() * b.rows(), a.cols() * b.cols());
  out = Eigen::kroneckerProduct(a, b);
  return out;
}

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, Eigen::Index d) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d);
}

Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Eigen::VectorXcd rk4_step(const Superoperator& l, const Eigen::VectorXcd& v, double h) {
  const Eigen::VectorXcd k1 = l.apply(v);
  const Eigen::VectorXcd k2 = l.apply(Eigen::VectorXcd(v + (0.5 * h) * k1));
  const Eigen::VectorXcd k3 = l.apply(Eigen::VectorXcd(v + (0.5 * h) * k2));
  const Eigen::VectorXcd k4 = l.apply(Eigen::VectorXcd(v + h * k3));
  return v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (rho_.rows() == 0 || rho_.rows() != rho_.cols())
    throw SolverError("density matrix must be square and nonempty");
  if (!rho_.allFinite()) throw SolverError("density matrix has nonfinite entries");
  if (const double h = hermiticity_error(); h > kHermTol)
    throw SolverError("state lost hermiticity, max |rho - rho^dag| = " + fmt(h));
  if (const double t = trace_error(); t > kTraceTol)
    throw SolverError("state lost unit trace, |tr(rho) - 1| = " + fmt(t));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho_ + rho_.adjoint()),
                                                    Eigen::EigenvaluesOnly);
  min_eig_ = es.eigenvalues().minCoeff();
  if (min_eig_ < kPositivityTol)
    throw SolverError("state lost positivity, min eigenvalue = " + fmt(min_eig_));
}

DensityMatrix DensityMatrix::pure(Eigen::VectorXcd psi) {
  const double norm = psi.norm();
  if (norm <= 0.0) throw SolverError("cannot build a state from the zero vector");
  psi /= norm;
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::vacuum(const HilbertSpec& spec) {
  const std::vector<int> zeros(spec.n_modes(), 0);
  return pure(basis_state(spec, zeros));
}

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::trace_error() const { return std::abs(rho_.trace() - Complex(1.0)); }

Eigen::VectorXd DensityMatrix::populations() const {
  return rho_.diagonal().real().cwiseMax(0.0);
}

Superoperator::Superoperator(Eigen::SparseMatrix<Complex> mat, int hilbert_dim)
    : mat_(std::move(mat)), hilbert_dim_(hilbert_dim) {
  if (mat_.rows() != mat_.cols())
    throw SolverError("superoperator must be square");
  if (static_cast<Eigen::Index>(hilbert_dim_) * hilbert_dim_ != mat_.rows())
    throw SolverError("superoperator size is not hilbert_dim^2");
  mat_.makeCompressed();
}

Eigen::VectorXcd Superoperator::apply(const Eigen::VectorXcd& vec_rho) const {
  if (vec_rho.size() != mat_.cols())
    throw SolverError("vectorized state has the wrong length");
  return mat_ * vec_rho;
}

Eigen::MatrixXcd Superoperator::apply(const Eigen::MatrixXcd& rho) const {
  if (rho.rows() != hilbert_dim_ || rho.cols() != hilbert_dim_)
    throw SolverError("state dimension does not match the superoperator");
  return unvec(apply(vec(rho)), hilbert_dim_);
}

Superoperator liouvillian(const Operator& h, std::span<const Collapse> collapses) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw SolverError("hamiltonian must be square and nonempty");
  const Eigen::Index d = h.rows();
  SparseOp id(d, d);
  id.setIdentity();
  const SparseOp hs = h.sparseView();

  SparseOp l = kron(id, hs);
  l -= kron(SparseOp(hs.transpose()), id);
  l = (Complex(0.0, -1.0) * l).eval();

  for (const auto& c : collapses) {
    if (c.rate <= 0.0) continue;
    if (c.op.rows() != d || c.op.cols() != d)
      throw SolverError("collapse operator dimension does not match the hamiltonian");
    const SparseOp as = c.op.sparseView();
    const SparseOp ada = SparseOp(SparseOp(as.adjoint()) * as).pruned();
    l += (c.rate * kron(SparseOp(as.conjugate()), as)).eval();
    l -= (0.5 * c.rate * kron(id, ada)).eval();
    l -= (0.5 * c.rate * kron(SparseOp(ada.transpose()), id)).eval();
  }
  return Superoperator(std::move(l), static_cast<int>(d));
}

Eigen::VectorXcd propagate(const Superoperator& l, Eigen::VectorXcd v, double duration,
                           const EvolveOptions& opts) {
  if (v.size() != l.vec_dim()) throw SolverError("vectorized state has the wrong length");
  if (duration < 0.0) throw SolverError("cannot propagate backwards in time");
  if (!(opts.dt > 0.0)) throw ConfigError("dt must be > 0");
  if (duration == 0.0) return v;

  if (!opts.adaptive) {
    const auto steps =
        std::max<long>(1, static_cast<long>(std::ceil(duration / opts.dt - 1e-12)));
    const double h = duration / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) v = rk4_step(l, v, h);
    return v;
  }

  double remaining = duration;
  double h = std::min(opts.dt, duration);
  while (remaining > 0.0) {
    h = std::min(h, remaining);
    if (h < opts.min_dt) {
      // sliver left over from accumulation, finish without error control
      v = rk4_step(l, v, remaining);
      break;
    }
    const Eigen::VectorXcd full = rk4_step(l, v, h);
    const Eigen::VectorXcd half = rk4_step(l, rk4_step(l, v, 0.5 * h), 0.5 * h);
    const double err = (full - half).lpNorm<Eigen::Infinity>();
    // a nonfinite trial state means the step was unstable, not just inaccurate;
    // the norm alone can miss it because NaN comparisons exclude those entries
    if (half.allFinite() && err <= opts.step_tol) {
      v = half;
      remaining -= h;
      if (err < 0.01 * opts.step_tol) h = std::min(2.0 * h, opts.dt);
    } else {
      h *= 0.5;
      if (h < opts.min_dt)
        throw SolverError("adaptive step fell below min_dt without meeting step_tol");
    }
  }
  return v;
}

std::vector<DensityMatrix> evolve(const DensityMatrix& rho0, const Superoperator& l,
                                  std::span<const double> t_grid,
                                  const EvolveOptions& opts) {
  if (rho0.dim() != l.hilbert_dim())
    throw SolverError("initial state does not match the superoperator");
  std::vector<DensityMatrix> out;
  out.reserve(t_grid.size());
  Eigen::VectorXcd v = vec(rho0.matrix());
  double t = 0.0;
  bool first = true;
  for (double tk : t_grid) {
    if (tk < 0.0 || (!first && tk <= t))
      throw ConfigError("time grid must be strictly increasing and start at >= 0");
    first = false;
    v = propagate(l, std::move(v), tk - t, opts);
    t = tk;
    out.emplace_back(unvec(v, rho0.dim()));
  }
  return out;
}

DensityMatrix steady_state(const Superoperator& l) {
  const int d = l.hilbert_dim();
  const Eigen::Index n = l.vec_dim();
  constexpr double kResidTol = 1e-10;
  constexpr Eigen::Index kDenseFallbackMax = 4096;

  // replace the first row of L with the trace functional, rhs picks trace 1
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<size_t>(l.sparse().nonZeros()) + d);
  for (int k = 0; k < l.sparse().outerSize(); ++k)
    for (SparseOp::InnerIterator it(l.sparse(), k); it; ++it)
      if (it.row() != 0) trips.emplace_back(static_cast<int>(it.row()),
                                            static_cast<int>(it.col()), it.value());
  for (int i = 0; i < d; ++i) trips.emplace_back(0, i * (d + 1), Complex(1.0));
  SparseOp a(n, n);
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();

  Eigen::VectorXcd x;
  double resid = std::numeric_limits<double>::infinity();
  Eigen::SparseLU<SparseOp, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() == Eigen::Success) {
    const Eigen::VectorXcd rhs = Eigen::VectorXcd::Unit(n, 0);
    x = lu.solve(rhs);
    if (lu.info() == Eigen::Success && x.allFinite())
      resid = (l.sparse() * x).lpNorm<Eigen::Infinity>();
  }

  if (!(resid < kResidTol)) {
    // direct solve failed or is untrustworthy; fall back to the kernel of L
    if (n > kDenseFallbackMax)
      throw SolverError("steady-state solve failed, residual = " + fmt(resid) +
                        " and the problem is too large for the dense fallback");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(l.dense());
    if (es.info() != Eigen::Success)
      throw SolverError("dense eigendecomposition of the Liouvillian failed");
    constexpr double kNullTol = 1e-8;
    int null_count = 0;
    Eigen::Index best = 0;
    double best_mag = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mag = std::abs(es.eigenvalues()(i));
      if (mag < kNullTol) ++null_count;
      if (mag < best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (null_count > 1)
      throw SolverError("steady state is not unique, Liouvillian kernel has dimension " +
                        std::to_string(null_count));
    if (null_count == 0)
      throw SolverError("no Liouvillian eigenvalue within " + fmt(kNullTol) +
                        " of zero, smallest = " + fmt(best_mag));
    x = es.eigenvectors().col(best);
    const Complex tr = unvec(x, d).trace();
    if (std::abs(tr) < 1e-12)
      throw SolverError("Liouvillian null vector is traceless, not a state");
    x /= tr;
    resid = (l.sparse() * x).lpNorm<Eigen::Infinity>();
    if (!(resid < kNullTol))
      throw SolverError("steady-state residual " + fmt(resid) + " exceeds tolerance");
  }

  Eigen::MatrixXcd rho = unvec(x, d);
  rho = 0.5 * (rho + rho.adjoint().eval());
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

}  // namespace kerrpair
