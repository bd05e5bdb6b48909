#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kerrpair/lindblad.hpp"

namespace kerrpair {

// below this mean photon number, g2 ratios are noise, not physics
inline constexpr double kPhotonThreshold = 1e-12;

// One parameter point's photon statistics. Quantities whose denominators
// vanish are left empty instead of carrying huge ratios.
struct CorrelationReport {
  double n1 = 0.0;
  double n2 = 0.0;
  std::optional<double> g2_a1;
  std::optional<double> g2_a2;
  std::optional<double> g2_cross;
  std::optional<double> csi;
};

double mean_photon(const DensityMatrix& rho, int mode, const HilbertSpec& spec);

// g2(0) = <a^dag a^dag a a> / <n>^2; throws UndefinedCorrelation below the
// photon threshold.
double g2_auto(const DensityMatrix& rho, int mode, const HilbertSpec& spec);

// g2_ij(0) = <ai^dag aj^dag aj ai> / (<ni><nj>), i != j
double g2_cross(const DensityMatrix& rho, int mode_i, int mode_j, const HilbertSpec& spec);

// C = g2_cross / sqrt(g2_a1 g2_a2); C > 1 violates the classical CSI
double csi_witness(const DensityMatrix& rho, const HilbertSpec& spec);

// <n1 n2> - <n1><n2>, the covariance form of the cross correlation
double photon_covariance(const DensityMatrix& rho, const HilbertSpec& spec);

// g2(tau) by the regression theorem: evolve the conditioned operator
// a rho_ss a^dag under the same Liouvillian, read out <n> at each delay,
// normalize by <n>_ss^2 once at readout. rho_ss must satisfy
// ||L rho_ss|| <= 1e-8.
std::vector<double> g2_tau(const DensityMatrix& rho_ss, const Superoperator& l, int mode,
                           std::span<const double> tau_grid, const HilbertSpec& spec,
                           const EvolveOptions& opts = {});

// n1, n2 and every defined equal-time ratio in one pass
CorrelationReport correlation_report(const DensityMatrix& rho, const HilbertSpec& spec);

}  // namespace kerrpair
