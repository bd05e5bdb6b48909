#include "kerrpair/model.hpp"

#include <cmath>
#include <string>

#include "kerrpair/errors.hpp"

namespace kerrpair {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void require_finite(double v, const char* name) {
  require(std::isfinite(v), std::string(name) + " is not finite");
}

// drive term E e^{i theta} a^dag + E e^{-i theta} a
Operator drive_term(double e, double theta, const Operator& a) {
  const Complex amp = e * std::exp(Complex(0.0, theta));
  return amp * a.adjoint() + std::conj(amp) * a;
}

}  // namespace

void ModelParams::validate() const {
  for (auto [v, name] : {std::pair{delta1, "delta1"}, {delta2, "delta2"},
                         {u1, "u1"}, {u2, "u2"}, {j_hop, "j_hop"},
                         {e1, "e1"}, {e2, "e2"}, {theta1, "theta1"},
                         {theta2, "theta2"}, {kappa1, "kappa1"},
                         {kappa2, "kappa2"}, {gamma, "gamma"}, {n_th, "n_th"},
                         {omega_m, "omega_m"}, {g_om, "g_om"}})
    require_finite(v, name);
  require(kappa1 > 0.0, "kappa1 must be > 0");
  require(kappa2 > 0.0, "kappa2 must be > 0");
  require(gamma >= 0.0, "gamma must be >= 0");
  require(n_th >= 0.0, "n_th must be >= 0");
  require(e1 >= 0.0, "e1 must be >= 0 (use theta1 for the phase)");
  require(e2 >= 0.0, "e2 must be >= 0 (use theta2 for the phase)");
  if (include_mechanics)
    require(omega_m > g_om,
            "omega_m must exceed g_om for the effective Kerr picture to hold");
}

KerrCoefficient effective_kerr_u(double g_om, double omega_m) {
  if (!(omega_m > 0.0)) throw ConfigError("omega_m must be > 0");
  KerrCoefficient k;
  k.u = g_om * g_om / omega_m;
  k.weak_coupling_valid = omega_m > g_om;
  return k;
}

double drive_amplitude_from_power(double power, double kappa, double omega_laser) {
  require(power > 0.0, "power must be > 0");
  require(kappa > 0.0, "kappa must be > 0");
  require(omega_laser > 0.0, "omega_laser must be > 0");
  return std::sqrt(power * kappa / omega_laser);
}

Operator build_effective_hamiltonian(const ModelParams& p, const HilbertSpec& spec) {
  p.validate();
  spec.validate();
  require(spec.n_modes() == 2, "effective model needs the two-mode space");

  const Operator a1 = embed(destroy(spec.mode_dims[0]), 0, spec);
  const Operator a2 = embed(destroy(spec.mode_dims[1]), 1, spec);
  const Operator n1 = a1.adjoint() * a1;
  const Operator n2 = a2.adjoint() * a2;

  Operator h = p.delta1 * n1 + p.delta2 * n2 - p.u1 * n1 * n1 - p.u2 * n2 * n2;
  h += p.j_hop * (a1.adjoint() * a2 + a2.adjoint() * a1);
  h += drive_term(p.e1, p.theta1, a1);
  h += drive_term(p.e2, p.theta2, a2);
  return h;
}

Operator build_lab_hamiltonian(const ModelParams& p, const HilbertSpec& spec) {
  p.validate();
  spec.validate();
  require(p.include_mechanics, "lab-frame model needs include_mechanics set");
  require(spec.n_modes() == 4, "lab-frame model needs the four-mode space");

  const Operator a1 = embed(destroy(spec.mode_dims[0]), 0, spec);
  const Operator a2 = embed(destroy(spec.mode_dims[1]), 1, spec);
  const Operator b1 = embed(destroy(spec.mode_dims[2]), 2, spec);
  const Operator b2 = embed(destroy(spec.mode_dims[3]), 3, spec);
  const Operator n1 = a1.adjoint() * a1;
  const Operator n2 = a2.adjoint() * a2;

  Operator h = p.delta1 * n1 + p.delta2 * n2;
  h += p.omega_m * (b1.adjoint() * b1 + b2.adjoint() * b2);
  h += p.j_hop * (a1.adjoint() * a2 + a2.adjoint() * a1);
  h -= p.g_om * (n1 * (b1 + b1.adjoint()) + n2 * (b2 + b2.adjoint()));
  h += drive_term(p.e1, p.theta1, a1);
  h += drive_term(p.e2, p.theta2, a2);
  return h;
}

std::vector<Collapse> collapse_operators(const ModelParams& p, const HilbertSpec& spec) {
  p.validate();
  spec.validate();
  require(spec.n_modes() == (p.include_mechanics ? 4 : 2),
          "mode count does not match the include_mechanics flag");

  std::vector<Collapse> out;
  auto add = [&out](Operator op, double rate) {
    if (rate > 0.0) out.push_back({std::move(op), rate});
  };

  add(embed(destroy(spec.mode_dims[0]), 0, spec), p.kappa1);
  add(embed(destroy(spec.mode_dims[1]), 1, spec), p.kappa2);
  if (spec.n_modes() == 4) {
    for (int k = 2; k < 4; ++k) {
      const Operator b = embed(destroy(spec.mode_dims[k]), k, spec);
      add(b, (p.n_th + 1.0) * p.gamma);
      add(b.adjoint(), p.n_th * p.gamma);
    }
  }
  return out;
}

}  // namespace kerrpair
