#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "twocopy/states.hpp"

namespace twocopy {

// Joint outcome of the pairwise Bell measurement: (a_k, b_k) identifies the
// Bell state detected on pair k. Same mask convention as PauliLabel.
struct BellOutcome {
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  friend bool operator==(const BellOutcome&, const BellOutcome&) = default;
};

// Probabilities over all 4^n joint outcomes, flat in (a||b)-lexicographic
// order. Entries in [-1e-12, 0) are clipped to 0; anything lower, or a total
// off 1 by more than 1e-10, is rejected.
class BellDistribution {
 public:
  BellDistribution(int n, Eigen::VectorXd prob);

  int qubits() const { return n_; }
  std::size_t outcomes() const { return std::size_t{1} << (2 * n_); }
  const Eigen::VectorXd& probabilities() const { return prob_; }
  double prob(const BellOutcome& outcome) const {
    return prob_((static_cast<std::size_t>(outcome.a) << n_) | outcome.b);
  }
  static BellOutcome outcome_from_flat(int n, std::size_t index);

 private:
  int n_;
  Eigen::VectorXd prob_;
};

// |beta_{a,b}>: the simultaneous eigenstate of X(x)X and Z(x)Z with
// eigenvalues (-1)^a and (-1)^b, first nonzero amplitude real positive.
Eigen::Vector4cd bell_state(int a, int b);

enum class DistributionMethod { kDirect, kClosedForm };

// Exact outcome distribution for a joint Bell measurement pairing qubit k of
// copy A with qubit k of copy B. kDirect evaluates Bell projector
// expectations on the permuted two-copy state; kClosedForm evaluates
// sum_{q,p} (-1)^{a.q + b.p + q.p} c^A_{q,p} c^B_{q,p} / N^2.
BellDistribution exact_distribution(const DensityMatrix& rho_a,
                                    const DensityMatrix& rho_b,
                                    DistributionMethod method);

struct SampleSet {
  int n = 1;
  std::vector<BellOutcome> outcomes;

  std::uint64_t shots() const { return outcomes.size(); }
};

// i.i.d. draws by inverse CDF over the flat table; deterministic in
// (seed, shots).
SampleSet sample_outcomes(const BellDistribution& dist, std::uint64_t shots,
                          std::uint64_t seed);

// Inverts the (-1)^{a.q + b.p + q.p} kernel, recovering all 4^n squared
// coefficients. This is the exponential-cost route (every Prob(a,b) is of
// order 1/N), kept as a testing oracle rather than the efficient pipeline.
Eigen::VectorXd csq_from_distribution(const BellDistribution& dist);

// The measured value of T(q,p) (x) T(q,p) read off a Bell outcome:
// (-1)^{a.q + b.p + q.p}, always +-1.
int kernel_sign(const PauliLabel& label, const BellOutcome& outcome);

// The 4^n rank-one Bell-product projectors as a POVM on the two-copy space
// in (all of A, then all of B) qubit ordering, (a||b)-lexicographic.
std::vector<Eigen::MatrixXcd> bell_povm(int n);

}  // namespace twocopy
