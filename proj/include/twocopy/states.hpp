#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "twocopy/pauli.hpp"

namespace twocopy {

// Validation tolerances shared by the state types.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

// A 2^n x 2^n density matrix. Construction validates Hermiticity (1e-10,
// max elementwise), unit trace (1e-10) and positive semidefiniteness
// (minimum eigenvalue >= -1e-9).
class DensityMatrix {
 public:
  DensityMatrix(int n, Eigen::MatrixXcd matrix);

  int qubits() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  double purity() const;  // Tr(rho^2)

 private:
  int n_;
  Eigen::MatrixXcd m_;
};

// Real coefficients c_{q,p} = Tr(rho T(q,p)), flat in (q||p)-lexicographic
// order. c at the identity label is 1 for any unit-trace state.
struct PauliCoefficients {
  int n = 1;
  Eigen::VectorXd c;

  double at(const PauliLabel& label) const { return c(label.flat_index()); }
  double& at(const PauliLabel& label) { return c(label.flat_index()); }
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

// Bloch vector of the state C_{a,b} maps a single-qubit rho to:
// componentwise signs ((-1)^a, (-1)^{a+b+1}, (-1)^b) on (x, y, z).
BlochVector reflected_bloch(int a, int b, const BlochVector& p);

PauliCoefficients pauli_decompose(const DensityMatrix& rho);

// Sum c_{q,p} T(q,p) / N. Requires c = 1 at the identity label; rejects
// coefficient vectors whose state has an eigenvalue below -1e-9.
DensityMatrix reconstruct(const PauliCoefficients& coeffs);

DensityMatrix qubit_from_bloch(const BlochVector& p);

// Ginibre-style GG^dagger / Tr(GG^dagger) state of the requested rank,
// deterministic in the seed.
DensityMatrix random_state(int n, int rank, std::uint64_t seed);

// Traces out the qubits whose bit in `keep` is zero. `keep` uses the shared
// mask convention (qubit k at bit n-1-k); kept qubits preserve their order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::uint32_t keep);

// Named fixture states.
DensityMatrix product_zero_state(int n);  // |0...0><0...0|
DensityMatrix bell_pair_state();          // |beta_00> on two qubits
DensityMatrix ghz_state(int n);

}  // namespace twocopy
