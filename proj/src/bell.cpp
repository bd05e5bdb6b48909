#include "kerrpair/bell.hpp"

#include <algorithm>
#include <cmath>

#include "kerrpair/errors.hpp"

namespace kerrpair {

namespace {

constexpr double kManifoldFloor = 1e-15;

// normal-ordered moments entering the rotated-mode correlator
struct TwoPhotonMoments {
  double p = 0.0;   // <a1^dag2 a1^2>
  double q = 0.0;   // <a2^dag2 a2^2>
  double r = 0.0;   // <a1^dag a2^dag a2 a1>
  Complex s;        // <a1^dag2 a2^2>
  double d = 0.0;   // <n1 - n2>
  double t = 0.0;   // <a1^dag a2 + a2^dag a1>
  double manifold() const { return p + q + 2.0 * r; }
};

TwoPhotonMoments moments(const DensityMatrix& rho, const HilbertSpec& spec) {
  spec.validate();
  if (rho.dim() != spec.total_dim())
    throw SolverError("state dimension does not match the Hilbert spec");
  const Operator a1 = embed(destroy(spec.mode_dims[0]), 0, spec);
  const Operator a2 = embed(destroy(spec.mode_dims[1]), 1, spec);
  const Operator a1d = a1.adjoint();
  const Operator a2d = a2.adjoint();

  auto re = [&rho](const Operator& op) { return expect(op, rho.matrix()).real(); };
  TwoPhotonMoments m;
  m.p = re(a1d * a1d * a1 * a1);
  m.q = re(a2d * a2d * a2 * a2);
  m.r = re(a1d * a2d * a2 * a1);
  m.s = expect(a1d * a1d * a2 * a2, rho.matrix());
  m.d = re(a1d * a1 - a2d * a2);
  m.t = re(a1d * a2 + a2d * a1);
  return m;
}

double correlator(const TwoPhotonMoments& m, double theta, double phi) {
  const double den = m.manifold();
  if (den < kManifoldFloor)
    throw UndefinedCorrelation("two-photon manifold weight vanishes, E undefined");
  const double c2t = std::cos(2.0 * theta), s2t = std::sin(2.0 * theta);
  const double c2p = std::cos(2.0 * phi), s2p = std::sin(2.0 * phi);
  const double dd = m.p + m.q - 2.0 * m.r;            // <:(n1-n2)^2:>
  const double ss = 2.0 * m.s.real() + 2.0 * m.r;     // <:(a1^dag a2 + h.c.)^2:>
  return (dd * c2t * c2p - ss * s2t * s2p + m.d * m.t * (s2t * c2p - c2t * s2p)) / den;
}

}  // namespace

double chsh_correlator(const DensityMatrix& rho, const HilbertSpec& spec, double theta,
                       double phi) {
  return correlator(moments(rho, spec), theta, phi);
}

double chsh_from_state(const DensityMatrix& rho, const HilbertSpec& spec,
                       const AngleSet& angles) {
  const TwoPhotonMoments m = moments(rho, spec);
  return std::abs(correlator(m, angles.theta, angles.phi) +
                  correlator(m, angles.theta_prime, angles.phi_prime) +
                  correlator(m, angles.theta_prime, angles.phi) -
                  correlator(m, angles.theta, angles.phi_prime));
}

double chsh_closed_form(const DensityMatrix& rho, const HilbertSpec& spec) {
  const TwoPhotonMoments m = moments(rho, spec);
  const double den = m.manifold();
  if (den < kManifoldFloor)
    throw UndefinedCorrelation("two-photon manifold weight vanishes, B undefined");
  return std::numbers::sqrt2 * std::abs(m.p + m.q - 2.0 * m.s.real() - 4.0 * m.r) / den;
}

double TransformCheckReport::max_deviation() const {
  return std::max({sum_rule_a, sum_rule_b, difference_form_a, difference_form_b});
}

TransformCheckReport mode_transformation_check(double theta, double phi) {
  const HilbertSpec spec = HilbertSpec::two_mode(3);
  const Operator a1 = embed(destroy(3), 0, spec);
  const Operator a2 = embed(destroy(3), 1, spec);
  const Operator n1 = a1.adjoint() * a1;
  const Operator n2 = a2.adjoint() * a2;
  const Operator hop = a1.adjoint() * a2 + a2.adjoint() * a1;

  const Operator ap = std::cos(theta) * a1 + std::sin(theta) * a2;
  const Operator am = -std::sin(theta) * a1 + std::cos(theta) * a2;
  const Operator bp = std::cos(phi) * a1 - std::sin(phi) * a2;
  const Operator bm = std::sin(phi) * a1 + std::cos(phi) * a2;

  auto dev = [](const Operator& lhs, const Operator& rhs) {
    return (lhs - rhs).cwiseAbs().maxCoeff();
  };
  TransformCheckReport rep;
  rep.sum_rule_a = dev(ap.adjoint() * ap + am.adjoint() * am, n1 + n2);
  rep.sum_rule_b = dev(bp.adjoint() * bp + bm.adjoint() * bm, n1 + n2);
  rep.difference_form_a =
      dev(ap.adjoint() * ap - am.adjoint() * am,
          std::cos(2.0 * theta) * (n1 - n2) + std::sin(2.0 * theta) * hop);
  rep.difference_form_b =
      dev(bp.adjoint() * bp - bm.adjoint() * bm,
          std::cos(2.0 * phi) * (n1 - n2) - std::sin(2.0 * phi) * hop);
  return rep;
}

Eigen::VectorXcd bell_state(BellLabel which, const HilbertSpec& spec) {
  spec.validate();
  if (spec.n_modes() < 2 || spec.mode_dims[0] < 2 || spec.mode_dims[1] < 2)
    throw ConfigError("Bell states need two optical modes with >= 2 levels");
  std::vector<int> occ(spec.n_modes(), 0);
  auto ket = [&](int n1, int n2) {
    occ[0] = n1;
    occ[1] = n2;
    return basis_state(spec, occ);
  };
  const double w = 1.0 / std::numbers::sqrt2;
  switch (which) {
    case BellLabel::PhiPlus:  return w * (ket(0, 0) + ket(1, 1));
    case BellLabel::PhiMinus: return w * (ket(0, 0) - ket(1, 1));
    case BellLabel::PsiPlus:  return w * (ket(0, 1) + ket(1, 0));
    case BellLabel::PsiMinus: return w * (ket(0, 1) - ket(1, 0));
  }
  throw ConfigError("unknown Bell label");
}

double bell_fidelity(const DensityMatrix& rho, BellLabel which, const HilbertSpec& spec) {
  if (rho.dim() != spec.total_dim())
    throw SolverError("state dimension does not match the Hilbert spec");
  const Eigen::VectorXcd psi = bell_state(which, spec);
  const double f = (psi.adjoint() * rho.matrix() * psi).value().real();
  return std::clamp(f, 0.0, 1.0);
}

double bell_fidelity_renormalized(const DensityMatrix& rho, BellLabel which,
                                  const HilbertSpec& spec) {
  double weight = 0.0;
  std::vector<int> occ(spec.n_modes(), 0);
  for (int n1 = 0; n1 <= 1; ++n1)
    for (int n2 = 0; n2 <= 1; ++n2) {
      occ[0] = n1;
      occ[1] = n2;
      const int k = basis_index(spec, occ);
      weight += rho.matrix()(k, k).real();
    }
  if (weight < 1e-15)
    throw UndefinedCorrelation("state has no weight in the two-qubit block");
  return bell_fidelity(rho, which, spec) / weight;
}

}  // namespace kerrpair
