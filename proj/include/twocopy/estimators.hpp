#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "twocopy/bellmeas.hpp"
#include "twocopy/states.hpp"

namespace twocopy {

// Repetition plan for estimating every |c_{q,p}| >= delta to uncertainty
// epsilon with success probability p_conf = erf(k / sqrt(2)).
struct ShotPlan {
  double delta = 0.0;
  double epsilon = 0.0;
  double p_conf = 0.0;
  double k = 0.0;
  std::uint64_t shots = 0;  // ceil(k^2 / (4 delta^2 epsilon^2))
};

// Inverts p_conf = erf(k / sqrt(2)) by bisection on k in [0, 10]. The plan
// deliberately takes no qubit count: the repetition budget depends on the
// precision targets only.
ShotPlan plan_shots(double delta, double epsilon, double p_conf);

// Half-width of the |c| confidence interval implied by a c^2 estimate:
// k * sigma / (2 |c_est|).
double abs_c_halfwidth(const ShotPlan& plan, double sigma, double abs_c_est);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t shots = 0;
  std::vector<std::string> flags;

  bool exact() const { return shots == 0; }
};

// Mean of the +-1 statistic (-1)^{a.q + b.p + q.p} over the shots; its
// expectation is c_{q,p}^2. The distribution overload returns the exact
// expectation with zero error.
Estimate estimate_csq(const SampleSet& samples, const PauliLabel& label);
Estimate estimate_csq(const BellDistribution& dist, const PauliLabel& label);

// The copy pipeline only ever determines |c|; negative sample means are
// clamped to zero (and flagged) before the square root.
double abs_c_from_csq(const Estimate& csq, bool* clamped = nullptr);

// Per-pair sign function h_k : (a_k, b_k) -> {+1, -1} defining a coarse
// grained +-1 statistic prod_k h_k(a_k, b_k).
class PairSelector {
 public:
  PairSelector(int n, std::vector<std::array<int, 4>> signs);

  static PairSelector all_plus(int n);
  // -1 exactly at outcome (m, n_bit) on the pairs selected by `mask`;
  // the all-ones mask is the single-Bell-state coarse graining.
  static PairSelector single_bell(int n, int m, int n_bit, std::uint32_t mask);

  int qubits() const { return n_; }
  int sign(int k, int a_k, int b_k) const {
    return signs_[k][(a_k << 1) | b_k];
  }
  int product(const BellOutcome& outcome) const;

 private:
  int n_;
  std::vector<std::array<int, 4>> signs_;
};

// Mean (or exact expectation) of the selector's +-1 statistic. For the
// single-Bell-state selector at (m,n) on all pairs, the expectation is
// (1/N) sum s_{q,p} c_{q,p}^2 with s from coarse_sign().
Estimate coarse_parity(const SampleSet& samples, const PairSelector& selector);
Estimate coarse_parity(const BellDistribution& dist,
                       const PairSelector& selector);

// s_{q,p} = (-1)^{(m+1)(alpha_x+alpha_y)} (-1)^{(n+1)(alpha_z+alpha_y)}.
int coarse_sign(const PauliLabel& label, int m, int n_bit);

// f_{q,p} = 3^{alpha_0} (-1)^{(m+1)(alpha_x+alpha_y)+(n+1)(alpha_z+alpha_y)}.
double pall_weight(const PauliLabel& label, int m, int n_bit);

// Singlet parity restricted to the pairs in `keep`; expectation Tr(rho_J^2).
Estimate purity(const SampleSet& samples, std::uint32_t keep);
Estimate purity(const BellDistribution& dist, std::uint32_t keep);

// Probability that no pair in `mask` shows outcome (m, n_bit). For the full
// mask this matches sum c^2 f_{q,p} / N^2.
Estimate p_all(const SampleSet& samples, int m, int n_bit, std::uint32_t mask);
Estimate p_all(const BellDistribution& dist, int m, int n_bit,
               std::uint32_t mask);

// 2 sqrt(1 - p^(all)_{1,1}) for a pure global state, delta-method error.
Estimate concurrence_pure(const SampleSet& samples);
Estimate concurrence_pure(const BellDistribution& dist);

// Marginal-purity form 2^{1-n/2} sqrt((2^n - 2) - sum_l Tr rho_l^2) over all
// nontrivial qubit subsets; the oracle for concurrence_pure.
double concurrence_direct(const DensityMatrix& rho);

}  // namespace twocopy
