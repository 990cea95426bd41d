// Brute-force reference constructions for the test suite. Everything here is
// built from first principles (explicit 2x2 literals and Kronecker products)
// and stays independent of the library's own construction paths.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace oracles {

using Complex = std::complex<double>;

inline Eigen::Matrix2cd pauli_i() { return Eigen::Matrix2cd::Identity(); }

inline Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

inline Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

// X^q Z^p i^{qp} by direct 2x2 multiplication.
inline Eigen::Matrix2cd single_qubit_t(int q, int p) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  if (q) m = pauli_x() * m;
  if (p) m = m * pauli_z();
  if (q && p) m *= Complex(0, 1);
  return m;
}

// Kronecker chain of single-qubit factors, leftmost factor first.
inline Eigen::MatrixXcd kron_chain(const std::vector<Eigen::Matrix2cd>& parts) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (const auto& part : parts) {
    out = Eigen::kroneckerProduct(out, part).eval();
  }
  return out;
}

inline Eigen::MatrixXcd xx() {
  return Eigen::kroneckerProduct(pauli_x(), pauli_x()).eval();
}

inline Eigen::MatrixXcd zz() {
  return Eigen::kroneckerProduct(pauli_z(), pauli_z()).eval();
}

inline double max_abs_diff(const Eigen::MatrixXcd& a,
                           const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace oracles
