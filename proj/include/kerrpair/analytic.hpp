#pragma once

#include "kerrpair/model.hpp"

namespace kerrpair {

// Steady-state amplitudes of the weak-drive wavefunction truncated at two
// total excitations, |psi> = sum C_{n1 n2} |n1 n2>, normalized to c00 = 1.
struct AmplitudeSet {
  Complex c00{1.0, 0.0};
  Complex c10{0.0, 0.0};
  Complex c01{0.0, 0.0};
  Complex c11{0.0, 0.0};
  Complex c20{0.0, 0.0};
  Complex c02{0.0, 0.0};

  // weak-drive ordering |c00| > one-photon > two-photon amplitudes
  bool hierarchy_satisfied() const;
};

struct SingleExcitation {
  Complex c10;
  Complex c01;
};
struct TwoExcitation {
  Complex c20;
  Complex c02;
  Complex c11;
};
struct AnalyticG2 {
  double g2_a1;
  double g2_a2;
  double g2_cross;
};

// one-photon amplitudes from the complex detunings Delta'_j = Delta_j - i kappa_j/2
SingleExcitation single_excitation_amplitudes(const ModelParams& p);

// two-photon amplitudes from the 3x3 linear system coupling c20, c02, c11
TwoExcitation two_excitation_amplitudes(const ModelParams& p, Complex c10, Complex c01);

AmplitudeSet steady_amplitudes(const ModelParams& p);

// The closed-form correlators built from an AmplitudeSet. Throw
// UndefinedCorrelation when the needed amplitudes vanish.
double g2_auto_from_amplitudes(const AmplitudeSet& amps, int mode);
double g2_cross_from_amplitudes(const AmplitudeSet& amps);
double csi_from_amplitudes(const AmplitudeSet& amps);

// Cross term of the amplitude-level CHSH: the phase-aware -4 Re(c20* c02)
// follows from the Bell-correlator algebra; ModulusPrinted swaps in
// -4 |c20||c02| for comparison runs.
enum class ChshCrossTerm { PhaseAware, ModulusPrinted };
double chsh_from_amplitudes(const AmplitudeSet& amps,
                            ChshCrossTerm cross = ChshCrossTerm::PhaseAware);

// g2_a1 = 2|c20|^2/|c10|^4, g2_a2 = 2|c02|^2/|c01|^4,
// g2_cross = |c11|^2/(|c10|^2 |c01|^2)
AnalyticG2 analytic_g2(const ModelParams& p);

// C = |c11|^2 / (2 |c20||c02|)
double analytic_csi(const ModelParams& p);

// B = (1/sqrt2) |2|c20|^2 + 2|c02|^2 + cross - 4|c11|^2| / (|c20|^2+|c02|^2+|c11|^2)
double analytic_chsh(const ModelParams& p, ChshCrossTerm cross = ChshCrossTerm::PhaseAware);

// (Delta1 - 2U1 - i kappa1/2)(Delta1 + Delta2 - U1 - U2 - i(kappa1+kappa2)/2)
//   - (E1/J)^2 (Delta2 - U2 - i kappa2/2); zero marks the optimal blockade point
Complex blockade_condition_residual(const ModelParams& p);

}  // namespace kerrpair
