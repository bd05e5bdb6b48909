#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace kerrpair {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;

// Truncated multimode bosonic space. mode_dims[k] levels per mode, so a
// cutoff of 5 keeps Fock states |0>..|4>. Kronecker order follows the list
// order; basis index = sum_k n_k * stride_k with the last mode fastest.
struct HilbertSpec {
  std::vector<int> mode_dims;
  std::vector<std::string> mode_labels;

  // two optical modes a1, a2
  static HilbertSpec two_mode(int optical_cutoff = 5);
  // optical modes a1, a2 plus mechanical modes b1, b2
  static HilbertSpec with_mechanics(int optical_cutoff = 5, int phonon_cutoff = 3);

  int n_modes() const { return static_cast<int>(mode_dims.size()); }
  int total_dim() const;
  int mode_index(const std::string& label) const;  // throws on unknown label

  // every mode needs >= 2 levels; two-photon observables need >= 3
  void validate(int min_levels = 2) const;
};

Operator destroy(int dim);
Operator create(int dim);
Operator number_op(int dim);
Operator identity(int dim);

// Kronecker product of the listed operators, left factor slowest.
Operator tensor(std::span<const Operator> ops);

// Lift a single-mode operator into the full space (identity elsewhere).
Operator embed(const Operator& op, int mode, const HilbertSpec& spec);

// tr(op rho); rho need not be normalized here.
Complex expect(const Operator& op, const Eigen::MatrixXcd& rho);

Eigen::VectorXcd fock(int dim, int n);
// normalized truncated coherent state, amplitudes alpha^n/sqrt(n!)
Eigen::VectorXcd coherent(int dim, Complex alpha);
// product Fock state |n_0, n_1, ...> of the full space
Eigen::VectorXcd basis_state(const HilbertSpec& spec, std::span<const int> occupations);
int basis_index(const HilbertSpec& spec, std::span<const int> occupations);

}  // namespace kerrpair
