#include "kerrpair/correlations.hpp"

#include <cmath>
#include <string>

#include "kerrpair/errors.hpp"

namespace kerrpair {

namespace {

void check_mode(int mode, const HilbertSpec& spec) {
  if (mode < 0 || mode >= spec.n_modes())
    throw ConfigError("mode index " + std::to_string(mode) + " out of range");
}

// real part of a trace that must be real up to roundoff
double real_expect(const Operator& op, const DensityMatrix& rho, const char* what) {
  const Complex v = expect(op, rho.matrix());
  if (std::abs(v.imag()) > 1e-10)
    throw SolverError(std::string(what) + " has imaginary residue " +
                      std::to_string(v.imag()));
  return v.real();
}

Operator mode_destroy(int mode, const HilbertSpec& spec) {
  return embed(destroy(spec.mode_dims[mode]), mode, spec);
}

}  // namespace

double mean_photon(const DensityMatrix& rho, int mode, const HilbertSpec& spec) {
  check_mode(mode, spec);
  const Operator n = embed(number_op(spec.mode_dims[mode]), mode, spec);
  return real_expect(n, rho, "mean photon number");
}

double g2_auto(const DensityMatrix& rho, int mode, const HilbertSpec& spec) {
  check_mode(mode, spec);
  if (spec.mode_dims[mode] < 3)
    throw UndefinedCorrelation("mode '" + spec.mode_labels[mode] +
                               "' is truncated below the two-photon level");
  const double n = mean_photon(rho, mode, spec);
  if (n <= kPhotonThreshold)
    throw UndefinedCorrelation("mean photon number " + std::to_string(n) +
                               " in mode '" + spec.mode_labels[mode] +
                               "' is below the g2 threshold");
  const Operator a = mode_destroy(mode, spec);
  const double num = real_expect(a.adjoint() * a.adjoint() * a * a, rho, "g2 numerator");
  return num / (n * n);
}

double g2_cross(const DensityMatrix& rho, int mode_i, int mode_j, const HilbertSpec& spec) {
  check_mode(mode_i, spec);
  check_mode(mode_j, spec);
  if (mode_i == mode_j)
    throw ConfigError("cross correlation needs two distinct modes");
  const double ni = mean_photon(rho, mode_i, spec);
  const double nj = mean_photon(rho, mode_j, spec);
  if (ni <= kPhotonThreshold || nj <= kPhotonThreshold)
    throw UndefinedCorrelation("mean photon number below the g2 threshold");
  const Operator ai = mode_destroy(mode_i, spec);
  const Operator aj = mode_destroy(mode_j, spec);
  const double num =
      real_expect(ai.adjoint() * aj.adjoint() * aj * ai, rho, "cross-g2 numerator");
  return num / (ni * nj);
}

double csi_witness(const DensityMatrix& rho, const HilbertSpec& spec) {
  const double g11 = g2_auto(rho, 0, spec);
  const double g22 = g2_auto(rho, 1, spec);
  const double g12 = g2_cross(rho, 0, 1, spec);
  const double denom = std::sqrt(g11 * g22);
  if (denom <= 0.0)
    throw UndefinedCorrelation("autocorrelation vanishes, CSI witness is 0/0");
  return g12 / denom;
}

double photon_covariance(const DensityMatrix& rho, const HilbertSpec& spec) {
  const Operator n1 = embed(number_op(spec.mode_dims[0]), 0, spec);
  const Operator n2 = embed(number_op(spec.mode_dims[1]), 1, spec);
  return real_expect(n1 * n2, rho, "photon covariance") -
         mean_photon(rho, 0, spec) * mean_photon(rho, 1, spec);
}

std::vector<double> g2_tau(const DensityMatrix& rho_ss, const Superoperator& l, int mode,
                           std::span<const double> tau_grid, const HilbertSpec& spec,
                           const EvolveOptions& opts) {
  check_mode(mode, spec);
  if (rho_ss.dim() != l.hilbert_dim() || spec.total_dim() != l.hilbert_dim())
    throw SolverError("state, Liouvillian and Hilbert spec disagree on dimension");
  const double stat = l.apply(rho_ss.matrix()).cwiseAbs().maxCoeff();
  if (stat > 1e-8)
    throw SolverError("g2_tau needs a stationary state, ||L rho|| = " + std::to_string(stat));
  const double nbar = mean_photon(rho_ss, mode, spec);
  if (nbar <= kPhotonThreshold)
    throw UndefinedCorrelation("mean photon number below the g2 threshold");

  const Operator a = mode_destroy(mode, spec);
  const Operator n = embed(number_op(spec.mode_dims[mode]), mode, spec);
  // conditioned, unnormalized: trace = <n>_ss, evolved as-is
  Eigen::MatrixXcd cond = a * rho_ss.matrix() * a.adjoint();
  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(cond.data(), cond.size());

  std::vector<double> out;
  out.reserve(tau_grid.size());
  double t = 0.0;
  bool first = true;
  for (double tau : tau_grid) {
    if (tau < 0.0 || (!first && tau <= t))
      throw ConfigError("tau grid must be strictly increasing and start at >= 0");
    first = false;
    v = propagate(l, std::move(v), tau - t, opts);
    t = tau;
    const Eigen::MatrixXcd m =
        Eigen::Map<const Eigen::MatrixXcd>(v.data(), rho_ss.dim(), rho_ss.dim());
    out.push_back(expect(n, m).real() / (nbar * nbar));
  }
  return out;
}

CorrelationReport correlation_report(const DensityMatrix& rho, const HilbertSpec& spec) {
  spec.validate();
  CorrelationReport rep;
  rep.n1 = mean_photon(rho, 0, spec);
  rep.n2 = mean_photon(rho, 1, spec);
  auto keep = [](auto&& f) -> std::optional<double> {
    try {
      return f();
    } catch (const UndefinedCorrelation&) {
      return std::nullopt;
    }
  };
  rep.g2_a1 = keep([&] { return g2_auto(rho, 0, spec); });
  rep.g2_a2 = keep([&] { return g2_auto(rho, 1, spec); });
  rep.g2_cross = keep([&] { return g2_cross(rho, 0, 1, spec); });
  rep.csi = keep([&] { return csi_witness(rho, spec); });
  return rep;
}

}  // namespace kerrpair
