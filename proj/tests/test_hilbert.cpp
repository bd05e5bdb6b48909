#include <doctest.h>

#include <array>
#include <complex>

#include "kerrpair/errors.hpp"
#include "kerrpair/hilbert.hpp"

using namespace kerrpair;

namespace {
double max_abs_diff(const Operator& a, const Operator& b) {
  return (a - b).cwiseAbs().maxCoeff();
}
}  // namespace

TEST_CASE("destroy has sqrt(n) superdiagonal and nothing else") {
  const Operator a = destroy(4);
  for (int n = 1; n < 4; ++n) CHECK(a(n - 1, n).real() == doctest::Approx(std::sqrt(n)));
  CHECK(a.cwiseAbs().sum() == doctest::Approx(std::sqrt(1.0) + std::sqrt(2.0) + std::sqrt(3.0)));
  CHECK((a * fock(4, 0)).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(destroy(1), ConfigError);
}

TEST_CASE("create is the adjoint of destroy and a^dag a is the number operator") {
  const int dim = 6;
  CHECK(max_abs_diff(create(dim), destroy(dim).adjoint()) == 0.0);
  CHECK(max_abs_diff(create(dim) * destroy(dim), number_op(dim)) < 1e-14);
}

TEST_CASE("commutator [a, a^dag] is the identity except the truncation corner") {
  const int dim = 5;
  const Operator comm = destroy(dim) * create(dim) - create(dim) * destroy(dim);
  for (int i = 0; i < dim - 1; ++i) CHECK(comm(i, i).real() == doctest::Approx(1.0));
  CHECK(comm(dim - 1, dim - 1).real() == doctest::Approx(-(dim - 1.0)));
  Operator off = comm;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tensor product is associative and multiplies dimensions") {
  const Operator a = destroy(3), n = number_op(4), id = identity(2);
  const std::array<Operator, 3> abc = {a, n, id};
  const Operator direct = tensor(abc);
  CHECK(direct.rows() == 3 * 4 * 2);
  const std::array<Operator, 2> ab = {a, n};
  const std::array<Operator, 2> ab_c = {tensor(ab), id};
  CHECK(max_abs_diff(direct, tensor(ab_c)) < 1e-14);
  const std::array<Operator, 1> just_a = {a};
  CHECK(max_abs_diff(tensor(just_a), a) == 0.0);
}

TEST_CASE("embed lifts a single-mode operator with identities elsewhere") {
  const HilbertSpec spec = HilbertSpec::two_mode(3);
  const Operator a1 = embed(destroy(3), 0, spec);
  const Operator n2 = embed(number_op(3), 1, spec);
  CHECK(a1.rows() == 9);
  CHECK(max_abs_diff(a1 * n2, n2 * a1) < 1e-14);

  const std::array<int, 2> occ = {2, 1};
  const Eigen::VectorXcd v = basis_state(spec, occ);
  const std::array<int, 2> lowered = {1, 1};
  const Eigen::VectorXcd w = a1 * v;
  CHECK((w - std::sqrt(2.0) * basis_state(spec, lowered)).norm() < 1e-14);

  CHECK_THROWS_AS(embed(destroy(4), 0, spec), ConfigError);
  CHECK_THROWS_AS(embed(destroy(3), 2, spec), ConfigError);
}

TEST_CASE("basis indexing puts the first mode slowest") {
  const HilbertSpec spec = HilbertSpec::two_mode(5);
  const std::array<int, 2> occ = {1, 2};
  CHECK(basis_index(spec, occ) == 1 * 5 + 2);
  for (int n1 = 0; n1 < 5; ++n1)
    for (int n2 = 0; n2 < 5; ++n2) {
      const std::array<int, 2> o = {n1, n2};
      const Eigen::VectorXcd v = basis_state(spec, o);
      CHECK(v(basis_index(spec, o)) == Complex(1.0, 0.0));
      CHECK(v.norm() == doctest::Approx(1.0));
    }
  const std::array<int, 2> bad = {5, 0};
  CHECK_THROWS_AS(basis_index(spec, bad), ConfigError);
}

TEST_CASE("expectation values through expect match direct matrix elements") {
  const HilbertSpec spec = HilbertSpec::two_mode(4);
  const std::array<int, 2> occ = {2, 3};
  const Eigen::VectorXcd v = basis_state(spec, occ);
  const Eigen::MatrixXcd rho = v * v.adjoint();
  CHECK(expect(embed(number_op(4), 0, spec), rho).real() == doctest::Approx(2.0));
  CHECK(expect(embed(number_op(4), 1, spec), rho).real() == doctest::Approx(3.0));
  CHECK_THROWS_AS(expect(number_op(3), rho), ConfigError);
}

TEST_CASE("coherent state is normalized with Poissonian weights") {
  const Complex alpha(0.6, -0.3);
  const Eigen::VectorXcd v = coherent(30, alpha);
  CHECK(v.norm() == doctest::Approx(1.0));
  CHECK(std::abs(v(1) / v(0) - alpha) < 1e-12);
  double nbar = 0.0;
  for (int n = 0; n < 30; ++n) nbar += n * std::norm(v(n));
  CHECK(nbar == doctest::Approx(std::norm(alpha)).epsilon(1e-9));
}

TEST_CASE("hilbert spec validation catches short modes and bad labels") {
  HilbertSpec spec = HilbertSpec::two_mode(5);
  CHECK(spec.total_dim() == 25);
  CHECK(spec.mode_index("a2") == 1);
  CHECK_THROWS_AS(spec.mode_index("b1"), ConfigError);
  CHECK_NOTHROW(spec.validate(3));
  spec.mode_dims[1] = 2;
  CHECK_THROWS_AS(spec.validate(3), ConfigError);

  const HilbertSpec mech = HilbertSpec::with_mechanics(5, 3);
  CHECK(mech.n_modes() == 4);
  CHECK(mech.total_dim() == 5 * 5 * 3 * 3);
  CHECK(mech.mode_index("b2") == 3);
}
