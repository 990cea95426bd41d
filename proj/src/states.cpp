#include "twocopy/states.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "twocopy/errors.hpp"
#include "twocopy/rng.hpp"

namespace twocopy {

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

double min_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

DensityMatrix::DensityMatrix(int n, Eigen::MatrixXcd matrix)
    : n_(n), m_(std::move(matrix)) {
  check_dense_cap(n_);
  const auto d = static_cast<Eigen::Index>(dim());
  if (m_.rows() != d || m_.cols() != d) {
    throw ArgumentError("density matrix must be 2^n x 2^n for n = " +
                        std::to_string(n_));
  }
  const double herm_dev = max_abs(m_ - m_.adjoint());
  if (herm_dev > kHermitianTol) {
    throw InvalidStateError("matrix is not Hermitian (max |M - M^dag| = " +
                            std::to_string(herm_dev) + ")");
  }
  const std::complex<double> tr = m_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw InvalidStateError("matrix trace is not 1");
  }
  const double min_eig = min_eigenvalue(m_);
  if (min_eig < -kPsdTol) {
    throw InvalidStateError("matrix is not positive semidefinite (min "
                            "eigenvalue = " +
                            std::to_string(min_eig) + ")");
  }
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector reflected_bloch(int a, int b, const BlochVector& p) {
  const double sa = (a & 1) ? -1.0 : 1.0;
  const double sb = (b & 1) ? -1.0 : 1.0;
  return BlochVector{sa * p.x, -sa * sb * p.y, sb * p.z};
}

PauliCoefficients pauli_decompose(const DensityMatrix& rho) {
  const int n = rho.qubits();
  const std::size_t labels = std::size_t{1} << (2 * n);
  PauliCoefficients coeffs{n, Eigen::VectorXd(labels)};
  for (std::size_t idx = 0; idx < labels; ++idx) {
    const std::complex<double> c =
        pauli_trace(rho.matrix(), PauliLabel::from_flat(n, idx));
    if (std::abs(c.imag()) > 1e-10) {
      throw InvalidStateError(
          "pauli coefficient has imaginary residue " +
          std::to_string(c.imag()) + "; input is not Hermitian");
    }
    coeffs.c(idx) = c.real();
  }
  return coeffs;
}

DensityMatrix reconstruct(const PauliCoefficients& coeffs) {
  const int n = coeffs.n;
  check_dense_cap(n);
  const std::size_t labels = std::size_t{1} << (2 * n);
  if (static_cast<std::size_t>(coeffs.c.size()) != labels) {
    throw ArgumentError("coefficient vector length must be 4^n");
  }
  if (std::abs(coeffs.c(0) - 1.0) > kTraceTol) {
    throw ArgumentError("coefficient at the identity label must be 1");
  }
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t idx = 0; idx < labels; ++idx) {
    if (coeffs.c(idx) != 0.0) {
      m += coeffs.c(idx) * pauli_matrix(PauliLabel::from_flat(n, idx));
    }
  }
  m /= static_cast<double>(dim);
  const double min_eig = min_eigenvalue(m);
  if (min_eig < -kPsdTol) {
    throw NonPhysicalCoefficientsError(
        "coefficients reconstruct to a non-physical state (min eigenvalue = " +
        std::to_string(min_eig) + ")");
  }
  return DensityMatrix(n, std::move(m));
}

DensityMatrix qubit_from_bloch(const BlochVector& p) {
  if (p.norm() > 1.0 + 1e-12) {
    throw InvalidBlochError("Bloch vector norm " + std::to_string(p.norm()) +
                            " exceeds 1");
  }
  Eigen::MatrixXcd m(2, 2);
  // (I + p.sigma)/2 with T(1,1) = Y, so c_{1,0} = x, c_{1,1} = y, c_{0,1} = z.
  m(0, 0) = 0.5 * (1.0 + p.z);
  m(1, 1) = 0.5 * (1.0 - p.z);
  m(0, 1) = 0.5 * std::complex<double>(p.x, -p.y);
  m(1, 0) = 0.5 * std::complex<double>(p.x, p.y);
  return DensityMatrix(1, std::move(m));
}

DensityMatrix random_state(int n, int rank, std::uint64_t seed) {
  check_dense_cap(n);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  if (rank < 1 || rank > dim) {
    throw ArgumentError("rank must lie in [1, 2^n], got " +
                        std::to_string(rank));
  }
  SplitMix64 rng(seed);
  Eigen::MatrixXcd g(dim, rank);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < rank; ++j) {
      g(i, j) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
    }
  }
  Eigen::MatrixXcd m = g * g.adjoint();
  m /= m.trace().real();
  // Symmetrize away the last bits of rounding noise.
  m = 0.5 * (m + m.adjoint().eval());
  return DensityMatrix(n, std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::uint32_t keep) {
  const int n = rho.qubits();
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  if ((keep & ~full) != 0) {
    throw ArgumentError("keep mask has bits beyond the qubit count");
  }
  if (keep == 0) {
    throw ArgumentError("keep mask must retain at least one qubit");
  }
  if (keep == full) {
    return rho;
  }
  // Bit positions of kept / traced qubits, kept qubits in global order
  // (qubit k occupies bit n-1-k).
  std::vector<int> keep_pos, trace_pos;
  for (int k = 0; k < n; ++k) {
    const int pos = n - 1 - k;
    if ((keep >> pos) & 1u) {
      keep_pos.push_back(pos);
    } else {
      trace_pos.push_back(pos);
    }
  }
  const int m = static_cast<int>(keep_pos.size());
  const std::size_t kept_dim = std::size_t{1} << m;
  const std::size_t traced_dim = std::size_t{1} << (n - m);
  auto compose = [&](std::size_t kept_bits, std::size_t traced_bits) {
    std::size_t full_index = 0;
    for (int i = 0; i < m; ++i) {
      full_index |= ((kept_bits >> (m - 1 - i)) & 1u) << keep_pos[i];
    }
    for (std::size_t i = 0; i < trace_pos.size(); ++i) {
      full_index |= ((traced_bits >> (trace_pos.size() - 1 - i)) & 1u)
                    << trace_pos[i];
    }
    return full_index;
  };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kept_dim, kept_dim);
  for (std::size_t r = 0; r < kept_dim; ++r) {
    for (std::size_t c = 0; c < kept_dim; ++c) {
      std::complex<double> acc = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t) {
        acc += rho.matrix()(compose(r, t), compose(c, t));
      }
      out(r, c) = acc;
    }
  }
  return DensityMatrix(m, std::move(out));
}

DensityMatrix product_zero_state(int n) {
  check_dense_cap(n);
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m(0, 0) = 1.0;
  return DensityMatrix(n, std::move(m));
}

DensityMatrix bell_pair_state() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix(2, v * v.adjoint());
}

DensityMatrix ghz_state(int n) {
  check_dense_cap(n);
  const std::size_t dim = std::size_t{1} << n;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(0) = v(dim - 1) = 1.0 / std::sqrt(2.0);
  return DensityMatrix(n, v * v.adjoint());
}

}  // namespace twocopy
