#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "kerrpair/bell.hpp"
#include "kerrpair/errors.hpp"

using namespace kerrpair;

namespace {

constexpr double kRoot2 = std::numbers::sqrt2;

DensityMatrix random_density(std::mt19937& rng, int dim) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

}  // namespace

TEST_CASE("the four Bell states are normalized and mutually orthogonal") {
  const HilbertSpec spec = HilbertSpec::two_mode(3);
  const std::array<BellLabel, 4> labels = {BellLabel::PhiPlus, BellLabel::PhiMinus,
                                           BellLabel::PsiPlus, BellLabel::PsiMinus};
  for (auto a : labels) {
    const Eigen::VectorXcd va = bell_state(a, spec);
    CHECK(va.norm() == doctest::Approx(1.0));
    for (auto b : labels) {
      const double overlap = std::abs(va.dot(bell_state(b, spec)));
      CHECK(overlap == doctest::Approx(a == b ? 1.0 : 0.0));
    }
    CHECK(bell_fidelity(DensityMatrix::pure(va), a, spec) == doctest::Approx(1.0));
  }
}

TEST_CASE("the pair Bell state saturates the Tsirelson bound") {
  const HilbertSpec spec = HilbertSpec::two_mode(3);
  const DensityMatrix phi = DensityMatrix::pure(bell_state(BellLabel::PhiPlus, spec));
  CHECK(std::abs(chsh_from_state(phi, spec) - 2.0 * kRoot2) < 1e-12);
  CHECK(std::abs(chsh_closed_form(phi, spec) - 2.0 * kRoot2) < 1e-12);
  CHECK(chsh_correlator(phi, spec, 0.0, std::numbers::pi / 8.0) ==
        doctest::Approx(-1.0 / kRoot2).epsilon(1e-12));
}

TEST_CASE("a bare two-photon Fock state is classical under the CHSH test") {
  const HilbertSpec spec = HilbertSpec::two_mode(3);
  const std::array<int, 2> occ = {2, 0};
  const DensityMatrix rho = DensityMatrix::pure(basis_state(spec, occ));
  CHECK(chsh_from_state(rho, spec) == doctest::Approx(kRoot2).epsilon(1e-12));
}

TEST_CASE("single-photon Bell states have no two-photon manifold for this test") {
  const HilbertSpec spec = HilbertSpec::two_mode(3);
  const DensityMatrix psi = DensityMatrix::pure(bell_state(BellLabel::PsiPlus, spec));
  CHECK_THROWS_AS(chsh_from_state(psi, spec), UndefinedCorrelation);
}

TEST_CASE("angle sum and closed form agree on random mixed states") {
  const HilbertSpec spec = HilbertSpec::two_mode(3);
  std::mt19937 rng(314159);
  double worst = 0.0;
  double max_b = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const DensityMatrix rho = random_density(rng, spec.total_dim());
    const double from_angles = chsh_from_state(rho, spec);
    const double closed = chsh_closed_form(rho, spec);
    worst = std::max(worst, std::abs(from_angles - closed));
    max_b = std::max(max_b, from_angles);
  }
  CHECK(worst < 1e-10);
  CHECK(max_b <= 2.0 * kRoot2 + 1e-9);
}

TEST_CASE("degenerate analyzer angles collapse the combination") {
  const HilbertSpec spec = HilbertSpec::two_mode(3);
  const DensityMatrix phi = DensityMatrix::pure(bell_state(BellLabel::PhiPlus, spec));
  AngleSet degenerate;
  degenerate.theta_prime = degenerate.theta;  // both settings on one side equal
  CHECK(chsh_from_state(phi, spec, degenerate) == doctest::Approx(kRoot2).epsilon(1e-12));
}

TEST_CASE("rotated-mode operator identities hold to machine precision") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int rep = 0; rep < 8; ++rep) {
    const TransformCheckReport rep_out = mode_transformation_check(angle(rng), angle(rng));
    CHECK(rep_out.passed());
    CHECK(rep_out.max_deviation() < 1e-13);
  }
}

TEST_CASE("fidelities of simple states come out exactly") {
  const HilbertSpec spec = HilbertSpec::two_mode(3);
  const DensityMatrix vac = DensityMatrix::vacuum(spec);
  CHECK(bell_fidelity(vac, BellLabel::PhiPlus, spec) == doctest::Approx(0.5));
  CHECK(bell_fidelity(vac, BellLabel::PhiMinus, spec) == doctest::Approx(0.5));
  CHECK(bell_fidelity(vac, BellLabel::PsiPlus, spec) == doctest::Approx(0.0));
  CHECK(bell_fidelity(vac, BellLabel::PsiMinus, spec) == doctest::Approx(0.0));
}

TEST_CASE("renormalized fidelity divides out leakage from the qubit block") {
  const HilbertSpec spec = HilbertSpec::two_mode(3);
  const Eigen::VectorXcd phi = bell_state(BellLabel::PhiPlus, spec);
  const std::array<int, 2> leak_occ = {2, 2};
  const Eigen::VectorXcd leak = basis_state(spec, leak_occ);
  const Eigen::MatrixXcd rho =
      0.6 * (phi * phi.adjoint()) + 0.4 * (leak * leak.adjoint());
  const DensityMatrix mixed(rho);

  CHECK(bell_fidelity(mixed, BellLabel::PhiPlus, spec) == doctest::Approx(0.6));
  CHECK(bell_fidelity_renormalized(mixed, BellLabel::PhiPlus, spec) ==
        doctest::Approx(1.0));
  CHECK(bell_fidelity_renormalized(mixed, BellLabel::PhiMinus, spec) ==
        doctest::Approx(0.0));

  const DensityMatrix pure_leak = DensityMatrix::pure(leak);
  CHECK_THROWS_AS(bell_fidelity_renormalized(pure_leak, BellLabel::PhiPlus, spec),
                  UndefinedCorrelation);
}
