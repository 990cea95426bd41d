#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "twocopy/states.hpp"

namespace twocopy {

// Operator side of the correspondence between operators on H (x) H and
// superoperators on H, realized by Chat = (Ctilde (x) I)(|I><I|) with
// |I> = sum_i |ii>.
//
// Index convention, fixed globally: composite index (i, j) = i*N + j, and
// the FIRST tensor factor (i) is the map's output space, so
//   Chat[(i,j),(k,l)] = <i| Ctilde(|j><l|) |k>.
class ChoiMatrix {
 public:
  ChoiMatrix(int n, Eigen::MatrixXcd matrix);  // N^2 x N^2, Hermitian 1e-10

  int qubits() const { return n_; }
  std::size_t space_dim() const { return std::size_t{1} << n_; }  // N
  std::size_t dim() const { return space_dim() * space_dim(); }   // N^2
  const Eigen::MatrixXcd& matrix() const { return m_; }

 private:
  int n_;
  Eigen::MatrixXcd m_;
};

// Action of the superoperator whose Choi matrix is `choi` on an arbitrary
// N x N operator; linear in x.
Eigen::MatrixXcd apply_choi(const ChoiMatrix& choi, const Eigen::MatrixXcd& x);

// Builds the Choi matrix of a map given as a callable on N x N operators.
ChoiMatrix choi_from_map(
    int n, const std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>& map);

// Choi matrix of C composed with the transposition (i.e. x -> C(x^T)),
// re-derived by feeding transposed basis elements through the map. Equals a
// partial transpose on the input-side tensor factor.
ChoiMatrix compose_with_transpose(const ChoiMatrix& choi);

enum class PositivityClass { kCpOnly, kCcpOnly, kBoth, kNeither };

const char* to_string(PositivityClass cls);

struct PositivityReport {
  PositivityClass cls;
  double min_eig_cp;   // min eigenvalue of the Choi matrix itself
  double min_eig_ccp;  // min eigenvalue of the Choi of C composed with T
};

// CP iff min-eig(Chat) >= -tol; ccP iff the transposition-composed Choi has
// min eigenvalue >= -tol.
PositivityReport positivity_class(const ChoiMatrix& choi, double tol = kPsdTol);

// Reference maps.
ChoiMatrix identity_map_choi(int n);      // |I><I|
ChoiMatrix transpose_map_choi(int n);     // the Swap operator
ChoiMatrix depolarizing_map_choi(int n);  // the N^2 identity

// The N^2 x N^2 operator exchanging two N-dimensional factors.
Eigen::MatrixXcd swap_operator(std::size_t space_dim);

struct CcpmvmMember {
  std::string outcome;
  ChoiMatrix choi;  // Choi matrix of C_mu = Ctilde_mu o T
};

// A family of completely co-positive maps summing to the fully depolarizing
// map: every generalized measurement on two copies decomposes into one.
class CcpmvmFamily {
 public:
  // Validates the ccP property of each member (min eigenvalue >= -1e-9 after
  // composing with transposition) and that the members' Choi matrices sum to
  // the N^2 identity within 1e-10.
  CcpmvmFamily(int n, std::vector<CcpmvmMember> members);

  int qubits() const { return n_; }
  const std::vector<CcpmvmMember>& members() const { return members_; }

 private:
  int n_;
  std::vector<CcpmvmMember> members_;
};

// Decomposes a POVM on two copies (elements are N^2 x N^2, PSD, summing to
// the identity) into its ccP map family. The second tensor factor of each
// element is the copy that becomes the map's (transposed) argument, which is
// what makes Tr(rho (x) rho A_mu) = Tr(rho C_mu(rho)) hold.
CcpmvmFamily povm_to_ccpmvm(int n, const std::vector<Eigen::MatrixXcd>& povm,
                            std::vector<std::string> labels = {});

// Tr(rho C(rho)); the outcome probability when C belongs to a ccPMVM.
double map_fidelity(const ChoiMatrix& choi, const DensityMatrix& rho);

// Test/CLI fixture: m PSD matrices symmetrized by S^{-1/2} A S^{-1/2} so the
// completeness relation holds exactly.
std::vector<Eigen::MatrixXcd> random_povm(int n, int elements,
                                          std::uint64_t seed);

}  // namespace twocopy
