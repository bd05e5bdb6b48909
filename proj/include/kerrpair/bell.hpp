#pragma once

#include <numbers>

#include "kerrpair/lindblad.hpp"

namespace kerrpair {

// Local-oscillator polarization angles of the interferometric CHSH test.
// The defaults maximize the violation for Bell-diagonal states.
struct AngleSet {
  double theta = 0.0;
  double theta_prime = std::numbers::pi / 4.0;
  double phi = std::numbers::pi / 8.0;
  double phi_prime = 3.0 * std::numbers::pi / 8.0;
};

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

// Bell state in the photon-number 0/1 basis of the two optical modes,
// vacuum on any further modes.
Eigen::VectorXcd bell_state(BellLabel which, const HilbertSpec& spec);

// Intensity correlator E(Theta, Phi) of the rotated-mode Bell test, all
// expectations normal ordered, normalized by the two-photon manifold weight
// <a1^dag2 a1^2> + <a2^dag2 a2^2> + 2<a1^dag a2^dag a2 a1>.
double chsh_correlator(const DensityMatrix& rho, const HilbertSpec& spec, double theta,
                       double phi);

// B = |E(T,P) + E(T',P') + E(T',P) - E(T,P')|
double chsh_from_state(const DensityMatrix& rho, const HilbertSpec& spec,
                       const AngleSet& angles = {});

// The same quantity at the default angles, collapsed to one expression:
// sqrt(2) |p + q - <a1^dag2 a2^2> - <a2^dag2 a1^2> - 4r| / (p + q + 2r)
double chsh_closed_form(const DensityMatrix& rho, const HilbertSpec& spec);

// Exact operator identities behind the rotated-mode construction, checked
// on a cutoff-3 two-mode space: two sum rules (rotated number operators add
// to n1 + n2) and two difference forms (cos/sin double-angle combinations).
struct TransformCheckReport {
  double sum_rule_a = 0.0;
  double sum_rule_b = 0.0;
  double difference_form_a = 0.0;
  double difference_form_b = 0.0;
  double max_deviation() const;
  bool passed(double tol = 1e-13) const { return max_deviation() <= tol; }
};
TransformCheckReport mode_transformation_check(double theta, double phi);

// F = <psi_Bell| rho |psi_Bell>, the raw subspace overlap; leakage out of
// the 0/1 photon-number block depresses F and is not divided out here.
double bell_fidelity(const DensityMatrix& rho, BellLabel which, const HilbertSpec& spec);

// F divided by the weight of rho in the two-qubit block; use when leakage
// should be factored out. Throws when that weight vanishes.
double bell_fidelity_renormalized(const DensityMatrix& rho, BellLabel which,
                                  const HilbertSpec& spec);

}  // namespace kerrpair
