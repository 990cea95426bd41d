#pragma once

#include <cstdint>
#include <vector>

#include "twocopy/estimators.hpp"
#include "twocopy/states.hpp"

namespace twocopy {

// Known ancilla state rho_0 of the ancilla-based universal detector, with
// its coefficients precomputed. A coefficient is treated as vanishing below
// 1e-12.
struct AncillaSpec {
  DensityMatrix rho0;
  PauliCoefficients c0;
  double min_abs_c0 = 0.0;  // over non-identity labels; 0 if any vanish

  static AncillaSpec from_state(DensityMatrix rho0);
};

inline constexpr double kRecoverableThreshold = 1e-12;

// Exact joint Bell expectation <T(q,p) (x) T(q,p)> on rho (x) rho_0, which
// equals c_{q,p} c^(0)_{q,p}.
double ancilla_joint_expectation(const DensityMatrix& rho,
                                 const AncillaSpec& ancilla,
                                 const PauliLabel& label);

// Signed estimate of c_{q,p}: (mean kernel statistic) / c^(0)_{q,p}. Unlike
// the copy pipeline this recovers the sign, but only where c^(0) does not
// vanish.
Estimate estimate_c_ancilla(const SampleSet& samples,
                            const AncillaSpec& ancilla,
                            const PauliLabel& label);
Estimate estimate_c_ancilla(const BellDistribution& dist,
                            const AncillaSpec& ancilla,
                            const PauliLabel& label);

struct LabelCost {
  PauliLabel label;
  double c0 = 0.0;
  double amplification = 1.0;  // 1 / c0^2, variance vs the copy baseline
  std::uint64_t shots_needed = 0;
};

struct EfficiencyReport {
  std::vector<LabelCost> recoverable;
  std::size_t total_labels = 0;
  bool universal = false;
  std::uint64_t baseline_shots = 0;  // the copy method, independent of n
};

EfficiencyReport efficiency_report(const AncillaSpec& ancilla,
                                   const ShotPlan& plan);

// Worst-case fixture: all non-identity coefficients equal, pushed to the
// PSD boundary. Every label is recoverable but each coefficient is small.
DensityMatrix unbiased_ancilla(int n);

// Upper bound sqrt((N Tr rho0^2 - 1) / (N^2 - 1)) on the smallest
// coefficient magnitude of any ancilla with none vanishing.
double unbiased_coefficient_bound(int n, double purity);

}  // namespace twocopy
