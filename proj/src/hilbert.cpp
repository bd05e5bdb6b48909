#include "kerrpair/hilbert.hpp"

#include <cmath>
#include <numeric>

#include "kerrpair/errors.hpp"

namespace kerrpair {

HilbertSpec HilbertSpec::two_mode(int optical_cutoff) {
  return {{optical_cutoff, optical_cutoff}, {"a1", "a2"}};
}

HilbertSpec HilbertSpec::with_mechanics(int optical_cutoff, int phonon_cutoff) {
  return {{optical_cutoff, optical_cutoff, phonon_cutoff, phonon_cutoff},
          {"a1", "a2", "b1", "b2"}};
}

int HilbertSpec::total_dim() const {
  return std::accumulate(mode_dims.begin(), mode_dims.end(), 1, std::multiplies<>());
}

int HilbertSpec::mode_index(const std::string& label) const {
  for (int k = 0; k < n_modes(); ++k)
    if (mode_labels[k] == label) return k;
  throw ConfigError("unknown mode label '" + label + "'");
}

void HilbertSpec::validate(int min_levels) const {
  if (mode_dims.empty()) throw ConfigError("hilbert space has no modes");
  if (mode_labels.size() != mode_dims.size())
    throw ConfigError("hilbert space has " + std::to_string(mode_dims.size()) +
                      " dims but " + std::to_string(mode_labels.size()) + " labels");
  for (int k = 0; k < n_modes(); ++k)
    if (mode_dims[k] < min_levels)
      throw ConfigError("mode '" + mode_labels[k] + "' has " +
                        std::to_string(mode_dims[k]) + " levels, need >= " +
                        std::to_string(min_levels));
}

Operator destroy(int dim) {
  if (dim < 2) throw ConfigError("ladder operator needs dim >= 2, got " + std::to_string(dim));
  Operator a = Operator::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Operator create(int dim) { return destroy(dim).adjoint(); }

Operator number_op(int dim) {
  if (dim < 1) throw ConfigError("number operator needs dim >= 1");
  Operator n = Operator::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Operator identity(int dim) { return Operator::Identity(dim, dim); }

Operator tensor(std::span<const Operator> ops) {
  if (ops.empty()) throw ConfigError("tensor product of zero operators");
  Operator out = ops[0];
  for (size_t i = 1; i < ops.size(); ++i) {
    const Operator& b = ops[i];
    Operator next(out.rows() * b.rows(), out.cols() * b.cols());
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c)
        next.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = out(r, c) * b;
    out = std::move(next);
  }
  return out;
}

Operator embed(const Operator& op, int mode, const HilbertSpec& spec) {
  spec.validate();
  if (mode < 0 || mode >= spec.n_modes())
    throw ConfigError("mode index " + std::to_string(mode) + " out of range");
  if (op.rows() != spec.mode_dims[mode] || op.cols() != spec.mode_dims[mode])
    throw ConfigError("operator shape does not match mode dimension");
  std::vector<Operator> factors;
  factors.reserve(spec.n_modes());
  for (int k = 0; k < spec.n_modes(); ++k)
    factors.push_back(k == mode ? op : identity(spec.mode_dims[k]));
  return tensor(factors);
}

Complex expect(const Operator& op, const Eigen::MatrixXcd& rho) {
  if (op.rows() != rho.rows() || op.cols() != rho.cols())
    throw ConfigError("operator and state dimensions differ");
  return (op * rho).trace();
}

Eigen::VectorXcd fock(int dim, int n) {
  if (n < 0 || n >= dim)
    throw ConfigError("fock level " + std::to_string(n) + " outside dimension " +
                      std::to_string(dim));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(n) = 1.0;
  return v;
}

Eigen::VectorXcd coherent(int dim, Complex alpha) {
  Eigen::VectorXcd v(dim);
  v(0) = 1.0;
  for (int n = 1; n < dim; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  v.normalize();
  return v;
}

int basis_index(const HilbertSpec& spec, std::span<const int> occupations) {
  if (static_cast<int>(occupations.size()) != spec.n_modes())
    throw ConfigError("occupation list length does not match mode count");
  int idx = 0;
  for (int k = 0; k < spec.n_modes(); ++k) {
    if (occupations[k] < 0 || occupations[k] >= spec.mode_dims[k])
      throw ConfigError("occupation " + std::to_string(occupations[k]) +
                        " outside mode '" + spec.mode_labels[k] + "'");
    idx = idx * spec.mode_dims[k] + occupations[k];
  }
  return idx;
}

Eigen::VectorXcd basis_state(const HilbertSpec& spec, std::span<const int> occupations) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(spec.total_dim());
  v(basis_index(spec, occupations)) = 1.0;
  return v;
}

}  // namespace kerrpair
