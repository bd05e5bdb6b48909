#pragma once

#include <vector>

#include "kerrpair/hilbert.hpp"

namespace kerrpair {

// All frequencies in units of kappa1. Defaults are the weak-drive operating
// point: E1 = 0.1 kappa, E2 = E1/10, symmetric cavities, cold mechanics.
struct ModelParams {
  double delta1 = 0.0;   // cavity 1 detuning
  double delta2 = 0.0;   // cavity 2 detuning
  double u1 = 0.0;       // Kerr coefficient, cavity 1
  double u2 = 0.0;       // Kerr coefficient, cavity 2
  double j_hop = 0.0;    // photon hopping J
  double e1 = 0.1;       // drive amplitude, cavity 1
  double e2 = 0.01;      // drive amplitude, cavity 2
  double theta1 = 0.0;   // drive phase, cavity 1
  double theta2 = 0.0;   // drive phase, cavity 2
  double kappa1 = 1.0;   // cavity 1 decay
  double kappa2 = 1.0;   // cavity 2 decay
  double gamma = 1e-4;   // mechanical damping
  double n_th = 0.0;     // thermal phonon occupation
  double omega_m = 100.0;  // mechanical frequency
  double g_om = 0.0;       // optomechanical coupling (lab frame only)
  bool include_mechanics = false;

  void set_delta(double d) { delta1 = delta2 = d; }
  void set_u(double u) { u1 = u2 = u; }
  void set_kappa(double k) { kappa1 = kappa2 = k; }

  void validate() const;  // throws ConfigError naming the offending field
};

// U = g^2 / omega_m, flagged invalid once g_om reaches omega_m (the polaron
// elimination needs omega_m > g).
struct KerrCoefficient {
  double u = 0.0;
  bool weak_coupling_valid = false;
};
KerrCoefficient effective_kerr_u(double g_om, double omega_m);

// |E| = sqrt(P_in kappa / omega_L); all arguments must be positive.
double drive_amplitude_from_power(double power, double kappa, double omega_laser);

// Effective two-mode Hamiltonian after eliminating the mechanics:
//   sum_j [ Delta_j n_j - U_j (a_j^dag a_j)^2 + E_j e^{i theta_j} a_j^dag + h.c. ]
//   + J (a1^dag a2 + a2^dag a1)
Operator build_effective_hamiltonian(const ModelParams& p, const HilbertSpec& spec);

// Four-mode optomechanical Hamiltonian in the drive frame:
//   sum_j [ Delta_j n_j + omega_m b_j^dag b_j - g n_j (b_j + b_j^dag)
//           + E_j e^{i theta_j} a_j^dag + h.c. ] + J (a1^dag a2 + a2^dag a1)
Operator build_lab_hamiltonian(const ModelParams& p, const HilbertSpec& spec);

struct Collapse {
  Operator op;
  double rate = 0.0;
};

// Photon decay on both cavities; when mechanics are present, phonon decay
// (n_th + 1) gamma and thermal excitation n_th gamma. Zero-rate channels
// are dropped.
std::vector<Collapse> collapse_operators(const ModelParams& p, const HilbertSpec& spec);

}  // namespace kerrpair
