#include "twocopy/estimators.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "twocopy/errors.hpp"

namespace twocopy {

namespace {

// Mean and standard error of a +-1 (or bounded) per-shot statistic.
Estimate reduce_samples(const SampleSet& samples,
                        const std::function<double(const BellOutcome&)>& stat) {
  if (samples.outcomes.empty()) {
    throw ArgumentError("estimator needs at least one outcome");
  }
  const auto shots = static_cast<double>(samples.outcomes.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const auto& outcome : samples.outcomes) {
    const double x = stat(outcome);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / shots;
  // Population variance keeps std_error <= 1/sqrt(shots) for +-1 statistics.
  const double var = std::max(0.0, sum_sq / shots - mean * mean);
  const double std_error = std::sqrt(var / shots);
  return Estimate{mean, std_error, samples.outcomes.size(), {}};
}

Estimate reduce_exact(const BellDistribution& dist,
                      const std::function<double(const BellOutcome&)>& stat) {
  double acc = 0.0;
  for (std::size_t idx = 0; idx < dist.outcomes(); ++idx) {
    const double p = dist.probabilities()(idx);
    if (p != 0.0) {
      acc += p * stat(BellDistribution::outcome_from_flat(dist.qubits(), idx));
    }
  }
  return Estimate{acc, 0.0, 0, {"exact"}};
}

void check_label_fits(int n, const PauliLabel& label) {
  if (label.n != n) {
    throw ArgumentError("label qubit count does not match the outcomes");
  }
}

std::uint32_t full_mask(int n) { return (1u << n) - 1u; }

void check_mask(int n, std::uint32_t mask, bool allow_empty) {
  if ((mask & ~full_mask(n)) != 0) {
    throw ArgumentError("mask has bits beyond the qubit count");
  }
  if (!allow_empty && mask == 0) {
    throw ArgumentError("mask must select at least one pair");
  }
}

Estimate concurrence_from_pall(Estimate pall) {
  const double one_minus = 1.0 - pall.value;
  Estimate out;
  out.shots = pall.shots;
  out.flags = pall.flags;
  if (one_minus < 0.0) {
    out.value = 0.0;
    out.flags.push_back("clamped");
  } else {
    out.value = 2.0 * std::sqrt(one_minus);
  }
  // Delta method: |d/dp 2 sqrt(1-p)| = 1/sqrt(1-p). Degenerate when the
  // branch point is within one standard error.
  if (pall.std_error > 0.0) {
    if (one_minus <= pall.std_error) {
      out.std_error = std::numeric_limits<double>::infinity();
      out.flags.push_back("error-degenerate");
    } else {
      out.std_error = pall.std_error / std::sqrt(one_minus);
    }
  }
  return out;
}

}  // namespace

ShotPlan plan_shots(double delta, double epsilon, double p_conf) {
  if (!(delta > 0.0) || !(epsilon > 0.0)) {
    throw ArgumentError("delta and epsilon must be positive");
  }
  if (!(p_conf > 0.0) || p_conf >= 1.0) {
    throw ArgumentError("p_conf must lie strictly inside (0, 1)");
  }
  const double inv_sqrt2 = 0.70710678118654752440;
  double lo = 0.0;
  double hi = 10.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (std::erf(mid * inv_sqrt2) < p_conf) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double k = 0.5 * (lo + hi);
  const double raw = k * k / (4.0 * delta * delta * epsilon * epsilon);
  return ShotPlan{delta, epsilon, p_conf, k,
                  static_cast<std::uint64_t>(std::ceil(raw))};
}

double abs_c_halfwidth(const ShotPlan& plan, double sigma, double abs_c_est) {
  if (!(abs_c_est > 0.0)) {
    throw ArgumentError("|c| estimate must be positive for the interval rule");
  }
  return plan.k * sigma / (2.0 * abs_c_est);
}

Estimate estimate_csq(const SampleSet& samples, const PauliLabel& label) {
  check_label_fits(samples.n, label);
  return reduce_samples(samples, [&](const BellOutcome& outcome) {
    return static_cast<double>(kernel_sign(label, outcome));
  });
}

Estimate estimate_csq(const BellDistribution& dist, const PauliLabel& label) {
  check_label_fits(dist.qubits(), label);
  return reduce_exact(dist, [&](const BellOutcome& outcome) {
    return static_cast<double>(kernel_sign(label, outcome));
  });
}

double abs_c_from_csq(const Estimate& csq, bool* clamped) {
  const double clamped_value = std::max(0.0, csq.value);
  if (clamped != nullptr) {
    *clamped = csq.value < 0.0;
  }
  return std::sqrt(clamped_value);
}

PairSelector::PairSelector(int n, std::vector<std::array<int, 4>> signs)
    : n_(n), signs_(std::move(signs)) {
  if (static_cast<int>(signs_.size()) != n_) {
    throw ArgumentError("selector needs one sign table per pair");
  }
  for (const auto& table : signs_) {
    for (int s : table) {
      if (s != 1 && s != -1) {
        throw ArgumentError("selector signs must be +1 or -1");
      }
    }
  }
}

PairSelector PairSelector::all_plus(int n) {
  return PairSelector(n, std::vector<std::array<int, 4>>(
                             n, std::array<int, 4>{1, 1, 1, 1}));
}

PairSelector PairSelector::single_bell(int n, int m, int n_bit,
                                       std::uint32_t mask) {
  check_mask(n, mask, /*allow_empty=*/true);
  std::vector<std::array<int, 4>> signs(n, std::array<int, 4>{1, 1, 1, 1});
  for (int k = 0; k < n; ++k) {
    if ((mask >> (n - 1 - k)) & 1u) {
      signs[k][(m << 1) | n_bit] = -1;
    }
  }
  return PairSelector(n, std::move(signs));
}

int PairSelector::product(const BellOutcome& outcome) const {
  int prod = 1;
  for (int k = 0; k < n_; ++k) {
    const int pos = n_ - 1 - k;
    prod *= sign(k, (outcome.a >> pos) & 1u, (outcome.b >> pos) & 1u);
  }
  return prod;
}

Estimate coarse_parity(const SampleSet& samples, const PairSelector& selector) {
  if (selector.qubits() != samples.n) {
    throw ArgumentError("selector qubit count does not match the outcomes");
  }
  return reduce_samples(samples, [&](const BellOutcome& outcome) {
    return static_cast<double>(selector.product(outcome));
  });
}

Estimate coarse_parity(const BellDistribution& dist,
                       const PairSelector& selector) {
  if (selector.qubits() != dist.qubits()) {
    throw ArgumentError("selector qubit count does not match the distribution");
  }
  return reduce_exact(dist, [&](const BellOutcome& outcome) {
    return static_cast<double>(selector.product(outcome));
  });
}

int coarse_sign(const PauliLabel& label, int m, int n_bit) {
  const WeightProfile w = weight_profile(label);
  const int exponent =
      (m + 1) * (w.alpha_x + w.alpha_y) + (n_bit + 1) * (w.alpha_z + w.alpha_y);
  return (exponent & 1) ? -1 : 1;
}

double pall_weight(const PauliLabel& label, int m, int n_bit) {
  const WeightProfile w = weight_profile(label);
  return std::pow(3.0, w.alpha_0) * coarse_sign(label, m, n_bit);
}

Estimate purity(const SampleSet& samples, std::uint32_t keep) {
  check_mask(samples.n, keep, /*allow_empty=*/false);
  return coarse_parity(samples,
                       PairSelector::single_bell(samples.n, 1, 1, keep));
}

Estimate purity(const BellDistribution& dist, std::uint32_t keep) {
  check_mask(dist.qubits(), keep, /*allow_empty=*/false);
  return coarse_parity(dist,
                       PairSelector::single_bell(dist.qubits(), 1, 1, keep));
}

namespace {

std::function<double(const BellOutcome&)> pall_statistic(int n, int m,
                                                         int n_bit,
                                                         std::uint32_t mask) {
  return [n, m, n_bit, mask](const BellOutcome& outcome) {
    for (int k = 0; k < n; ++k) {
      const int pos = n - 1 - k;
      if (((mask >> pos) & 1u) && ((outcome.a >> pos) & 1u) == unsigned(m) &&
          ((outcome.b >> pos) & 1u) == unsigned(n_bit)) {
        return 0.0;
      }
    }
    return 1.0;
  };
}

}  // namespace

Estimate p_all(const SampleSet& samples, int m, int n_bit,
               std::uint32_t mask) {
  check_mask(samples.n, mask, /*allow_empty=*/true);
  return reduce_samples(samples, pall_statistic(samples.n, m, n_bit, mask));
}

Estimate p_all(const BellDistribution& dist, int m, int n_bit,
               std::uint32_t mask) {
  check_mask(dist.qubits(), mask, /*allow_empty=*/true);
  return reduce_exact(dist, pall_statistic(dist.qubits(), m, n_bit, mask));
}

Estimate concurrence_pure(const SampleSet& samples) {
  return concurrence_from_pall(p_all(samples, 1, 1, full_mask(samples.n)));
}

Estimate concurrence_pure(const BellDistribution& dist) {
  return concurrence_from_pall(p_all(dist, 1, 1, full_mask(dist.qubits())));
}

double concurrence_direct(const DensityMatrix& rho) {
  const int n = rho.qubits();
  if (n < 2) {
    throw ArgumentError("concurrence needs at least two qubits");
  }
  if (rho.purity() < 1.0 - 1e-8) {
    throw PreconditionError("state is not pure (Tr rho^2 = " +
                            std::to_string(rho.purity()) + ")");
  }
  const std::uint32_t full = full_mask(n);
  double marginal_purities = 0.0;
  for (std::uint32_t subset = 1; subset < full; ++subset) {
    marginal_purities += partial_trace(rho, subset).purity();
  }
  const double gap =
      static_cast<double>((std::size_t{1} << n) - 2) - marginal_purities;
  return std::pow(2.0, 1.0 - 0.5 * n) * std::sqrt(std::max(0.0, gap));
}

}  // namespace twocopy
