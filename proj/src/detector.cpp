#include "twocopy/detector.hpp"

#include <cmath>
#include <string>

#include "twocopy/errors.hpp"

namespace twocopy {

namespace {

double coefficient_or_throw(const AncillaSpec& ancilla,
                            const PauliLabel& label) {
  const double c0 = ancilla.c0.at(label);
  if (std::abs(c0) <= kRecoverableThreshold) {
    throw UnrecoverableCoefficientError(
        "ancilla coefficient vanishes at label " + label.str() +
        "; this c_{q,p} cannot be determined");
  }
  return c0;
}

}  // namespace

AncillaSpec AncillaSpec::from_state(DensityMatrix rho0) {
  PauliCoefficients c0 = pauli_decompose(rho0);
  double min_abs = 0.0;
  bool any_vanishing = false;
  for (Eigen::Index idx = 1; idx < c0.c.size(); ++idx) {
    const double mag = std::abs(c0.c(idx));
    if (mag <= kRecoverableThreshold) {
      any_vanishing = true;
    } else if (min_abs == 0.0 || mag < min_abs) {
      min_abs = mag;
    }
  }
  if (any_vanishing) {
    min_abs = 0.0;
  }
  return AncillaSpec{std::move(rho0), std::move(c0), min_abs};
}

double ancilla_joint_expectation(const DensityMatrix& rho,
                                 const AncillaSpec& ancilla,
                                 const PauliLabel& label) {
  if (rho.qubits() != ancilla.rho0.qubits()) {
    throw ArgumentError("state and ancilla qubit counts differ");
  }
  const BellDistribution dist =
      exact_distribution(rho, ancilla.rho0, DistributionMethod::kClosedForm);
  return estimate_csq(dist, label).value;
}

Estimate estimate_c_ancilla(const SampleSet& samples,
                            const AncillaSpec& ancilla,
                            const PauliLabel& label) {
  const double c0 = coefficient_or_throw(ancilla, label);
  Estimate kernel = estimate_csq(samples, label);
  kernel.value /= c0;
  kernel.std_error /= std::abs(c0);
  return kernel;
}

Estimate estimate_c_ancilla(const BellDistribution& dist,
                            const AncillaSpec& ancilla,
                            const PauliLabel& label) {
  const double c0 = coefficient_or_throw(ancilla, label);
  Estimate kernel = estimate_csq(dist, label);
  kernel.value /= c0;
  return kernel;
}

EfficiencyReport efficiency_report(const AncillaSpec& ancilla,
                                   const ShotPlan& plan) {
  EfficiencyReport report;
  report.total_labels = static_cast<std::size_t>(ancilla.c0.c.size());
  report.baseline_shots = plan.shots;
  const int n = ancilla.rho0.qubits();
  for (std::size_t idx = 0; idx < report.total_labels; ++idx) {
    const double c0 = ancilla.c0.c(idx);
    if (std::abs(c0) <= kRecoverableThreshold) {
      continue;
    }
    const double amplification = 1.0 / (c0 * c0);
    const double shots =
        std::ceil(static_cast<double>(plan.shots) * amplification);
    report.recoverable.push_back(LabelCost{
        PauliLabel::from_flat(n, idx), c0, amplification,
        static_cast<std::uint64_t>(shots)});
  }
  report.universal = report.recoverable.size() == report.total_labels;
  return report;
}

DensityMatrix unbiased_ancilla(int n) {
  check_dense_cap(n);
  const std::size_t dim = std::size_t{1} << n;
  // A = sum of all non-identity T(q,p); the admissible magnitude for a
  // constant coefficient vector (I + u A)/N is u = 1/|min eigenvalue of A|.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  const std::size_t labels = std::size_t{1} << (2 * n);
  for (std::size_t idx = 1; idx < labels; ++idx) {
    a += pauli_matrix(PauliLabel::from_flat(n, idx));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a,
                                                         Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  const double u = 1.0 / std::abs(min_eig);
  Eigen::MatrixXcd m =
      (Eigen::MatrixXcd::Identity(dim, dim) + u * a) / static_cast<double>(dim);
  m = 0.5 * (m + m.adjoint().eval());
  return DensityMatrix(n, std::move(m));
}

double unbiased_coefficient_bound(int n, double purity) {
  const double N = static_cast<double>(std::size_t{1} << n);
  return std::sqrt((N * purity - 1.0) / (N * N - 1.0));
}

}  // namespace twocopy
