#include "twocopy/channels.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "twocopy/errors.hpp"
#include "twocopy/rng.hpp"

namespace twocopy {

namespace {

double min_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

ChoiMatrix::ChoiMatrix(int n, Eigen::MatrixXcd matrix)
    : n_(n), m_(std::move(matrix)) {
  check_dense_cap(n_);
  const auto d = static_cast<Eigen::Index>(dim());
  if (m_.rows() != d || m_.cols() != d) {
    throw ArgumentError("Choi matrix must be N^2 x N^2 with N = 2^n");
  }
  const double herm_dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermitianTol) {
    throw InvalidStateError("Choi matrix is not Hermitian (max |M - M^dag| = " +
                            std::to_string(herm_dev) + ")");
  }
}

Eigen::MatrixXcd apply_choi(const ChoiMatrix& choi, const Eigen::MatrixXcd& x) {
  const auto N = static_cast<Eigen::Index>(choi.space_dim());
  if (x.rows() != N || x.cols() != N) {
    throw ArgumentError("operator dimension does not match the Choi matrix");
  }
  // C(x)[i,k] = sum_{j,l} Chat[(i,j),(k,l)] x[j,l]
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N, N);
  const Eigen::MatrixXcd& c = choi.matrix();
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index k = 0; k < N; ++k) {
      std::complex<double> acc = 0.0;
      for (Eigen::Index j = 0; j < N; ++j) {
        for (Eigen::Index l = 0; l < N; ++l) {
          acc += c(i * N + j, k * N + l) * x(j, l);
        }
      }
      out(i, k) = acc;
    }
  }
  return out;
}

ChoiMatrix choi_from_map(
    int n,
    const std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>& map) {
  check_dense_cap(n);
  const auto N = static_cast<Eigen::Index>(std::size_t{1} << n);
  Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(N * N, N * N);
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(N, N);
  for (Eigen::Index j = 0; j < N; ++j) {
    for (Eigen::Index l = 0; l < N; ++l) {
      basis(j, l) = 1.0;
      const Eigen::MatrixXcd image = map(basis);
      basis(j, l) = 0.0;
      for (Eigen::Index i = 0; i < N; ++i) {
        for (Eigen::Index k = 0; k < N; ++k) {
          choi(i * N + j, k * N + l) = image(i, k);
        }
      }
    }
  }
  return ChoiMatrix(n, std::move(choi));
}

ChoiMatrix compose_with_transpose(const ChoiMatrix& choi) {
  // (C o T)(|j><l|) = C(|l><j|), so the new Choi is the old one with the
  // input-side indices exchanged: Chat'[(i,j),(k,l)] = Chat[(i,l),(k,j)].
  const auto N = static_cast<Eigen::Index>(choi.space_dim());
  Eigen::MatrixXcd out(N * N, N * N);
  const Eigen::MatrixXcd& c = choi.matrix();
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) {
      for (Eigen::Index k = 0; k < N; ++k) {
        for (Eigen::Index l = 0; l < N; ++l) {
          out(i * N + j, k * N + l) = c(i * N + l, k * N + j);
        }
      }
    }
  }
  return ChoiMatrix(choi.qubits(), std::move(out));
}

const char* to_string(PositivityClass cls) {
  switch (cls) {
    case PositivityClass::kCpOnly:
      return "CP-only";
    case PositivityClass::kCcpOnly:
      return "ccP-only";
    case PositivityClass::kBoth:
      return "both";
    default:
      return "neither";
  }
}

PositivityReport positivity_class(const ChoiMatrix& choi, double tol) {
  const double min_cp = min_eigenvalue(choi.matrix());
  const double min_ccp = min_eigenvalue(compose_with_transpose(choi).matrix());
  const bool cp = min_cp >= -tol;
  const bool ccp = min_ccp >= -tol;
  PositivityClass cls;
  if (cp && ccp) {
    cls = PositivityClass::kBoth;
  } else if (cp) {
    cls = PositivityClass::kCpOnly;
  } else if (ccp) {
    cls = PositivityClass::kCcpOnly;
  } else {
    cls = PositivityClass::kNeither;
  }
  return PositivityReport{cls, min_cp, min_ccp};
}

ChoiMatrix identity_map_choi(int n) {
  check_dense_cap(n);
  const auto N = static_cast<Eigen::Index>(std::size_t{1} << n);
  Eigen::VectorXcd max_ent = Eigen::VectorXcd::Zero(N * N);
  for (Eigen::Index i = 0; i < N; ++i) {
    max_ent(i * N + i) = 1.0;
  }
  return ChoiMatrix(n, max_ent * max_ent.adjoint());
}

ChoiMatrix transpose_map_choi(int n) {
  check_dense_cap(n);
  return ChoiMatrix(n, swap_operator(std::size_t{1} << n));
}

ChoiMatrix depolarizing_map_choi(int n) {
  check_dense_cap(n);
  const auto N = static_cast<Eigen::Index>(std::size_t{1} << n);
  return ChoiMatrix(n, Eigen::MatrixXcd::Identity(N * N, N * N));
}

Eigen::MatrixXcd swap_operator(std::size_t space_dim) {
  const auto N = static_cast<Eigen::Index>(space_dim);
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(N * N, N * N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) {
      swap(j * N + i, i * N + j) = 1.0;
    }
  }
  return swap;
}

CcpmvmFamily::CcpmvmFamily(int n, std::vector<CcpmvmMember> members)
    : n_(n), members_(std::move(members)) {
  check_dense_cap(n_);
  const auto N = static_cast<Eigen::Index>(std::size_t{1} << n_);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(N * N, N * N);
  for (const auto& member : members_) {
    if (member.choi.qubits() != n_) {
      throw ArgumentError("family member dimension mismatch");
    }
    const double min_eig =
        min_eigenvalue(compose_with_transpose(member.choi).matrix());
    if (min_eig < -kPsdTol) {
      throw InvalidStateError("family member '" + member.outcome +
                              "' is not ccP (min eigenvalue " +
                              std::to_string(min_eig) + ")");
    }
    sum += member.choi.matrix();
  }
  const double dev =
      (sum - Eigen::MatrixXcd::Identity(N * N, N * N)).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw InvalidStateError(
        "family members do not sum to the fully depolarizing map (max "
        "deviation " +
        std::to_string(dev) + ")");
  }
}

CcpmvmFamily povm_to_ccpmvm(int n, const std::vector<Eigen::MatrixXcd>& povm,
                            std::vector<std::string> labels) {
  check_dense_cap(n);
  const auto N = static_cast<Eigen::Index>(std::size_t{1} << n);
  if (povm.empty()) {
    throw InvalidPovmError("POVM has no elements", -1, 0.0);
  }
  if (!labels.empty() && labels.size() != povm.size()) {
    throw ArgumentError("label list length does not match the POVM");
  }
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(N * N, N * N);
  for (std::size_t mu = 0; mu < povm.size(); ++mu) {
    const auto& element = povm[mu];
    if (element.rows() != N * N || element.cols() != N * N) {
      throw InvalidPovmError("POVM element " + std::to_string(mu) +
                                 " is not N^2 x N^2",
                             static_cast<int>(mu), 0.0);
    }
    const double herm_dev = (element - element.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > kHermitianTol) {
      throw InvalidPovmError("POVM element " + std::to_string(mu) +
                                 " is not Hermitian",
                             static_cast<int>(mu), herm_dev);
    }
    const double min_eig = min_eigenvalue(element);
    if (min_eig < -kPsdTol) {
      throw InvalidPovmError("POVM element " + std::to_string(mu) +
                                 " is not PSD (min eigenvalue " +
                                 std::to_string(min_eig) + ")",
                             static_cast<int>(mu), min_eig);
    }
    sum += element;
  }
  const double completeness_dev =
      (sum - Eigen::MatrixXcd::Identity(N * N, N * N)).cwiseAbs().maxCoeff();
  if (completeness_dev > 1e-9) {
    throw InvalidPovmError("POVM elements do not sum to the identity (max "
                           "deviation " +
                               std::to_string(completeness_dev) + ")",
                           -1, completeness_dev);
  }
  std::vector<CcpmvmMember> members;
  members.reserve(povm.size());
  for (std::size_t mu = 0; mu < povm.size(); ++mu) {
    // A_mu is the Choi matrix of Ctilde_mu; composing with transposition
    // yields the ccP map C_mu whose fidelity reproduces Prob(mu).
    ChoiMatrix tilde(n, povm[mu]);
    std::string label =
        labels.empty() ? "mu=" + std::to_string(mu) : std::move(labels[mu]);
    members.push_back(
        CcpmvmMember{std::move(label), compose_with_transpose(tilde)});
  }
  return CcpmvmFamily(n, std::move(members));
}

double map_fidelity(const ChoiMatrix& choi, const DensityMatrix& rho) {
  if (choi.space_dim() != rho.dim()) {
    throw ArgumentError("state dimension does not match the Choi matrix");
  }
  return (rho.matrix() * apply_choi(choi, rho.matrix())).trace().real();
}

std::vector<Eigen::MatrixXcd> random_povm(int n, int elements,
                                          std::uint64_t seed) {
  check_dense_cap(n);
  if (elements < 1) {
    throw ArgumentError("a POVM needs at least one element");
  }
  const auto D = static_cast<Eigen::Index>((std::size_t{1} << n) *
                                           (std::size_t{1} << n));
  SplitMix64 rng(seed);
  std::vector<Eigen::MatrixXcd> povm;
  povm.reserve(elements);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(D, D);
  for (int mu = 0; mu < elements; ++mu) {
    Eigen::MatrixXcd g(D, D);
    for (Eigen::Index i = 0; i < D; ++i) {
      for (Eigen::Index j = 0; j < D; ++j) {
        g(i, j) =
            std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
      }
    }
    Eigen::MatrixXcd a = g * g.adjoint();
    a = 0.5 * (a + a.adjoint().eval());
    sum += a;
    povm.push_back(std::move(a));
  }
  // S^{-1/2} A_mu S^{-1/2} restores completeness exactly.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sum);
  const Eigen::MatrixXcd inv_sqrt =
      solver.eigenvectors() *
      solver.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
      solver.eigenvectors().adjoint();
  for (auto& a : povm) {
    a = inv_sqrt * a * inv_sqrt;
    a = 0.5 * (a + a.adjoint().eval());
  }
  return povm;
}

}  // namespace twocopy
