#include "kerrpair/analytic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "kerrpair/errors.hpp"

namespace kerrpair {

namespace {

constexpr double kAmpThreshold = 1e-12;    // one-photon amplitudes
constexpr double kTwoPhotonFloor = 1e-15;  // two-photon amplitudes (CSI)
constexpr double kManifoldFloor = 1e-18;   // two-photon norm (CHSH)

Complex drive1(const ModelParams& p) { return p.e1 * std::exp(Complex(0.0, p.theta1)); }
Complex drive2(const ModelParams& p) { return p.e2 * std::exp(Complex(0.0, p.theta2)); }

Complex dprime1(const ModelParams& p) { return {p.delta1, -0.5 * p.kappa1}; }
Complex dprime2(const ModelParams& p) { return {p.delta2, -0.5 * p.kappa2}; }

}  // namespace

bool AmplitudeSet::hierarchy_satisfied() const {
  const double one_min = std::min(std::abs(c10), std::abs(c01));
  const double two_max = std::max({std::abs(c11), std::abs(c20), std::abs(c02)});
  return std::abs(c00) > std::abs(c10) && std::abs(c00) > std::abs(c01) &&
         one_min > two_max;
}

SingleExcitation single_excitation_amplitudes(const ModelParams& p) {
  p.validate();
  const Complex d1 = dprime1(p) - p.u1;
  const Complex d2 = dprime2(p) - p.u2;
  const Complex den = d1 * d2 - p.j_hop * p.j_hop;
  const double scale = std::max({std::abs(d1 * d2), p.j_hop * p.j_hop, 1.0});
  if (std::abs(den) < 1e-15 * scale)
    throw SolverError("one-photon denominator (D'1-U1)(D'2-U2) - J^2 vanishes");
  const Complex e1 = drive1(p);
  const Complex e2 = drive2(p);
  return {(p.j_hop * e2 - e1 * d2) / den, (p.j_hop * e1 - e2 * d1) / den};
}

TwoExcitation two_excitation_amplitudes(const ModelParams& p, Complex c10, Complex c01) {
  p.validate();
  const double rt2 = std::numbers::sqrt2;
  const Complex e1 = drive1(p);
  const Complex e2 = drive2(p);

  Eigen::Matrix3cd m;
  m << 2.0 * (dprime1(p) - 2.0 * p.u1), 0.0, rt2 * p.j_hop,
       0.0, 2.0 * (dprime2(p) - 2.0 * p.u2), rt2 * p.j_hop,
       rt2 * p.j_hop, rt2 * p.j_hop, dprime1(p) + dprime2(p) - p.u1 - p.u2;
  const Complex det = m.determinant();
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  if (std::abs(det) < 1e-14 * scale * scale * scale)
    throw SolverError("two-photon coefficient matrix is singular (vanishing determinant)");

  Eigen::Vector3cd rhs;
  rhs << -rt2 * e1 * c10, -rt2 * e2 * c01, -(e1 * c01 + e2 * c10);
  const Eigen::Vector3cd sol = m.partialPivLu().solve(rhs);
  return {sol(0), sol(1), sol(2)};
}

AmplitudeSet steady_amplitudes(const ModelParams& p) {
  AmplitudeSet amps;
  const auto [c10, c01] = single_excitation_amplitudes(p);
  const auto [c20, c02, c11] = two_excitation_amplitudes(p, c10, c01);
  amps.c10 = c10;
  amps.c01 = c01;
  amps.c20 = c20;
  amps.c02 = c02;
  amps.c11 = c11;
  return amps;
}

double g2_auto_from_amplitudes(const AmplitudeSet& amps, int mode) {
  if (mode != 0 && mode != 1) throw ConfigError("amplitude g2 knows modes 0 and 1 only");
  const double one = std::abs(mode == 0 ? amps.c10 : amps.c01);
  const double two = std::abs(mode == 0 ? amps.c20 : amps.c02);
  if (one < kAmpThreshold)
    throw UndefinedCorrelation("one-photon amplitude vanishes, g2 undefined");
  return 2.0 * two * two / (one * one * one * one);
}

double g2_cross_from_amplitudes(const AmplitudeSet& amps) {
  const double p1 = std::abs(amps.c10);
  const double p2 = std::abs(amps.c01);
  if (p1 < kAmpThreshold || p2 < kAmpThreshold)
    throw UndefinedCorrelation("one-photon amplitude vanishes, cross g2 undefined");
  const double c = std::abs(amps.c11);
  return c * c / (p1 * p1 * p2 * p2);
}

double csi_from_amplitudes(const AmplitudeSet& amps) {
  const double a20 = std::abs(amps.c20);
  const double a02 = std::abs(amps.c02);
  if (a20 < kTwoPhotonFloor || a02 < kTwoPhotonFloor)
    throw UndefinedCorrelation("two-photon amplitude vanishes, CSI witness undefined");
  const double c = std::abs(amps.c11);
  return c * c / (2.0 * a20 * a02);
}

double chsh_from_amplitudes(const AmplitudeSet& amps, ChshCrossTerm cross) {
  const double n20 = std::norm(amps.c20);
  const double n02 = std::norm(amps.c02);
  const double n11 = std::norm(amps.c11);
  const double manifold = n20 + n02 + n11;
  if (manifold < kManifoldFloor)
    throw UndefinedCorrelation("two-photon manifold vanishes, CHSH undefined");
  const double ct = cross == ChshCrossTerm::PhaseAware
                        ? std::real(std::conj(amps.c20) * amps.c02)
                        : std::abs(amps.c20) * std::abs(amps.c02);
  return std::abs(2.0 * n20 + 2.0 * n02 - 4.0 * ct - 4.0 * n11) /
         (std::numbers::sqrt2 * manifold);
}

AnalyticG2 analytic_g2(const ModelParams& p) {
  const AmplitudeSet amps = steady_amplitudes(p);
  return {g2_auto_from_amplitudes(amps, 0), g2_auto_from_amplitudes(amps, 1),
          g2_cross_from_amplitudes(amps)};
}

double analytic_csi(const ModelParams& p) { return csi_from_amplitudes(steady_amplitudes(p)); }

double analytic_chsh(const ModelParams& p, ChshCrossTerm cross) {
  return chsh_from_amplitudes(steady_amplitudes(p), cross);
}

Complex blockade_condition_residual(const ModelParams& p) {
  p.validate();
  if (p.j_hop == 0.0) throw ConfigError("blockade condition needs j_hop != 0");
  const Complex f1 = Complex(p.delta1 - 2.0 * p.u1, -0.5 * p.kappa1);
  const Complex f12 = Complex(p.delta1 + p.delta2 - p.u1 - p.u2,
                              -0.5 * (p.kappa1 + p.kappa2));
  const Complex f2 = Complex(p.delta2 - p.u2, -0.5 * p.kappa2);
  const double ratio = (p.e1 / p.j_hop) * (p.e1 / p.j_hop);
  return f1 * f12 - ratio * f2;
}

}  // namespace kerrpair
