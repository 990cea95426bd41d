#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace twocopy {

// Dense-matrix operations cap out here; Choi matrices already reach
// dimension 4^n and every brute-force oracle must stay runnable in seconds.
inline constexpr int kMaxQubits = 6;

// Throws ResourceLimitError when a dense object of 2^n rows is requested
// above the cap.
void check_dense_cap(int n);

// Exact integer power of i: i_power(m) = i^(m mod 4).
std::complex<double> i_power(int m);

// Label (q, p) of the generalized Pauli operator
//   T(q,p) = X^{q_1}Z^{p_1} x ... x X^{q_n}Z^{p_n} * i^{q.p}.
//
// Bit convention shared by every module: qubit k (0-based, leftmost tensor
// factor) lives at bit (n-1-k) of the masks, so the textual form "q=110"
// reads left to right and masks align with computational-basis indices.
struct PauliLabel {
  int n = 1;
  std::uint32_t q = 0;  // X-part
  std::uint32_t p = 0;  // Z-part

  PauliLabel(int n, std::uint32_t q, std::uint32_t p);

  // Parses the textual form "q=110,p=011".
  static PauliLabel parse(std::string_view text);

  // Inverse of flat_index() for the given qubit count.
  static PauliLabel from_flat(int n, std::size_t index);

  // Position in flat arrays: lexicographic over the concatenation (q||p),
  // q major.
  std::size_t flat_index() const {
    return (static_cast<std::size_t>(q) << n) | p;
  }

  bool is_identity() const { return q == 0 && p == 0; }

  // The inner product q.p = sum_k q_k p_k (as an integer).
  int qp() const;

  std::string str() const;

  friend bool operator==(const PauliLabel&, const PauliLabel&) = default;
};

// Per-qubit classification counts: (q_k,p_k) = (0,0) -> alpha_0,
// (1,0) -> alpha_x, (1,1) -> alpha_y, (0,1) -> alpha_z.
struct WeightProfile {
  int alpha_0 = 0;
  int alpha_x = 0;
  int alpha_y = 0;
  int alpha_z = 0;

  friend bool operator==(const WeightProfile&, const WeightProfile&) = default;
};

// Materializes the Hermitian unitary T(q,p) as a dense 2^n x 2^n matrix.
// The i^{q.p} phase is included, so T(q,p)^2 = I.
Eigen::MatrixXcd pauli_matrix(const PauliLabel& label);

WeightProfile weight_profile(const PauliLabel& label);

// Tr(rho_matrix * T(q,p)) without materializing T. Result of a Hermitian
// input is real; the caller decides what to do with the imaginary residue.
std::complex<double> pauli_trace(const Eigen::MatrixXcd& m,
                                 const PauliLabel& label);

}  // namespace twocopy
