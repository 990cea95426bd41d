#include "twocopy/bellmeas.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "twocopy/errors.hpp"
#include "twocopy/rng.hpp"

namespace twocopy {

namespace {

// Spreads the n bits of an A-copy (or B-copy) index into the interleaved
// (A_1, B_1, A_2, B_2, ...) ordering used for the paired two-copy matrix.
std::vector<std::uint32_t> interleave_table(int n, bool is_a_copy) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::uint32_t> table(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::uint32_t out = 0;
    for (int k = 0; k < n; ++k) {
      const std::uint32_t bit = (idx >> (n - 1 - k)) & 1u;
      const int pos = 2 * (n - 1 - k) + (is_a_copy ? 1 : 0);
      out |= bit << pos;
    }
    table[idx] = out;
  }
  return table;
}

BellDistribution direct_distribution(const DensityMatrix& rho_a,
                                     const DensityMatrix& rho_b) {
  const int n = rho_a.qubits();
  const std::size_t dim = rho_a.dim();
  const auto il_a = interleave_table(n, true);
  const auto il_b = interleave_table(n, false);

  // pi(rho_a (x) rho_b) with qubit k of A adjacent to qubit k of B.
  const std::size_t pair_dim = dim * dim;
  Eigen::MatrixXcd paired(pair_dim, pair_dim);
  for (std::size_t ra = 0; ra < dim; ++ra) {
    for (std::size_t rb = 0; rb < dim; ++rb) {
      const std::size_t row = il_a[ra] | il_b[rb];
      for (std::size_t ca = 0; ca < dim; ++ca) {
        for (std::size_t cb = 0; cb < dim; ++cb) {
          paired(row, il_a[ca] | il_b[cb]) =
              rho_a.matrix()(ra, ca) * rho_b.matrix()(rb, cb);
        }
      }
    }
  }

  const std::size_t outcomes = std::size_t{1} << (2 * n);
  Eigen::VectorXd prob(outcomes);
  std::vector<std::size_t> support;
  std::vector<std::complex<double>> amp;
  for (std::size_t idx = 0; idx < outcomes; ++idx) {
    const std::uint32_t a = static_cast<std::uint32_t>(idx >> n);
    const std::uint32_t b = static_cast<std::uint32_t>(idx) & ((1u << n) - 1u);
    // Bell product vector over the pairs, built by Kronecker chaining.
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
    for (int k = 0; k < n; ++k) {
      const Eigen::Vector4cd beta =
          bell_state((a >> (n - 1 - k)) & 1u, (b >> (n - 1 - k)) & 1u);
      Eigen::VectorXcd next(v.size() * 4);
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) {
          next(i * 4 + j) = v(i) * beta(j);
        }
      }
      v = std::move(next);
    }
    support.clear();
    amp.clear();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v(i) != 0.0) {
        support.push_back(static_cast<std::size_t>(i));
        amp.push_back(v(i));
      }
    }
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      for (std::size_t j = 0; j < support.size(); ++j) {
        acc += std::conj(amp[i]) * paired(support[i], support[j]) * amp[j];
      }
    }
    prob(idx) = acc.real();
  }
  return BellDistribution(n, std::move(prob));
}

BellDistribution closed_form_distribution(const DensityMatrix& rho_a,
                                          const DensityMatrix& rho_b) {
  const int n = rho_a.qubits();
  const auto ca = pauli_decompose(rho_a);
  const auto cb = pauli_decompose(rho_b);
  const std::size_t count = std::size_t{1} << (2 * n);
  const double norm = static_cast<double>(rho_a.dim() * rho_a.dim());
  Eigen::VectorXd weights(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    weights(idx) = ca.c(idx) * cb.c(idx) / norm;
  }
  Eigen::VectorXd prob(count);
  const std::uint32_t mask = (1u << n) - 1u;
  for (std::size_t out = 0; out < count; ++out) {
    const BellOutcome outcome{static_cast<std::uint32_t>(out >> n),
                              static_cast<std::uint32_t>(out) & mask};
    double acc = 0.0;
    for (std::size_t idx = 0; idx < count; ++idx) {
      if (weights(idx) != 0.0) {
        acc += kernel_sign(PauliLabel::from_flat(n, idx), outcome) *
               weights(idx);
      }
    }
    prob(out) = acc;
  }
  return BellDistribution(n, std::move(prob));
}

}  // namespace

BellDistribution::BellDistribution(int n, Eigen::VectorXd prob)
    : n_(n), prob_(std::move(prob)) {
  check_dense_cap(n_);
  if (static_cast<std::size_t>(prob_.size()) != outcomes()) {
    throw ArgumentError("distribution must have 4^n entries");
  }
  for (Eigen::Index i = 0; i < prob_.size(); ++i) {
    if (prob_(i) < -1e-12) {
      throw ArgumentError("distribution entry " + std::to_string(i) +
                          " is negative: " + std::to_string(prob_(i)));
    }
    if (prob_(i) < 0.0) {
      prob_(i) = 0.0;
    }
  }
  if (std::abs(prob_.sum() - 1.0) > 1e-10) {
    throw ArgumentError("distribution entries sum to " +
                        std::to_string(prob_.sum()) + ", expected 1");
  }
}

BellOutcome BellDistribution::outcome_from_flat(int n, std::size_t index) {
  const std::uint32_t mask = (1u << n) - 1u;
  return BellOutcome{static_cast<std::uint32_t>(index >> n),
                     static_cast<std::uint32_t>(index) & mask};
}

Eigen::Vector4cd bell_state(int a, int b) {
  if ((a & ~1) != 0 || (b & ~1) != 0) {
    throw ArgumentError("Bell labels must be bits");
  }
  // (|0,b> + (-1)^a |1,1^b>) / sqrt(2)
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  const double amp = 1.0 / std::sqrt(2.0);
  v(b) = amp;
  v(2 + (1 - b)) = (a ? -amp : amp);
  return v;
}

BellDistribution exact_distribution(const DensityMatrix& rho_a,
                                    const DensityMatrix& rho_b,
                                    DistributionMethod method) {
  if (rho_a.qubits() != rho_b.qubits()) {
    throw ArgumentError("the two states must have the same qubit count");
  }
  switch (method) {
    case DistributionMethod::kDirect:
      return direct_distribution(rho_a, rho_b);
    default:
      return closed_form_distribution(rho_a, rho_b);
  }
}

SampleSet sample_outcomes(const BellDistribution& dist, std::uint64_t shots,
                          std::uint64_t seed) {
  const int n = dist.qubits();
  const auto& prob = dist.probabilities();
  std::vector<double> cdf(prob.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < prob.size(); ++i) {
    acc += prob(i);
    cdf[static_cast<std::size_t>(i)] = acc;
  }
  cdf.back() = 1.0;
  SampleSet set{n, {}};
  set.outcomes.reserve(shots);
  SplitMix64 rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.next_uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx =
        static_cast<std::size_t>(std::distance(cdf.begin(), it));
    set.outcomes.push_back(BellDistribution::outcome_from_flat(n, idx));
  }
  return set;
}

Eigen::VectorXd csq_from_distribution(const BellDistribution& dist) {
  const int n = dist.qubits();
  const std::size_t count = dist.outcomes();
  const std::uint32_t mask = (1u << n) - 1u;
  Eigen::VectorXd csq(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const PauliLabel label = PauliLabel::from_flat(n, idx);
    double acc = 0.0;
    for (std::size_t out = 0; out < count; ++out) {
      const BellOutcome outcome{static_cast<std::uint32_t>(out >> n),
                                static_cast<std::uint32_t>(out) & mask};
      acc += kernel_sign(label, outcome) * dist.probabilities()(out);
    }
    csq(idx) = acc;
  }
  return csq;
}

int kernel_sign(const PauliLabel& label, const BellOutcome& outcome) {
  const int bits = std::popcount(outcome.a & label.q) +
                   std::popcount(outcome.b & label.p) +
                   std::popcount(label.q & label.p);
  return (bits & 1) ? -1 : 1;
}

std::vector<Eigen::MatrixXcd> bell_povm(int n) {
  check_dense_cap(n);
  if (n > 4) {
    // 4^n elements of dimension 4^n x 4^n; past n = 4 that is tens of GB.
    throw ResourceLimitError(
        "materializing the full Bell POVM is capped at n <= 4");
  }
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t count = std::size_t{1} << (2 * n);
  std::vector<Eigen::MatrixXcd> povm;
  povm.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    const std::uint32_t a = static_cast<std::uint32_t>(idx >> n);
    const std::uint32_t b = static_cast<std::uint32_t>(idx) & ((1u << n) - 1u);
    // Product vector in (all of A, then all of B) ordering:
    // v[(rA, rB)] = prod_k beta_{a_k, b_k}[rA_k, rB_k].
    Eigen::VectorXcd v(dim * dim);
    for (std::size_t ra = 0; ra < dim; ++ra) {
      for (std::size_t rb = 0; rb < dim; ++rb) {
        std::complex<double> amp = 1.0;
        for (int k = 0; k < n; ++k) {
          const int pos = n - 1 - k;
          const Eigen::Vector4cd beta =
              bell_state((a >> pos) & 1u, (b >> pos) & 1u);
          amp *= beta(((ra >> pos) & 1u) * 2 + ((rb >> pos) & 1u));
        }
        v(ra * dim + rb) = amp;
      }
    }
    povm.push_back(v * v.adjoint());
  }
  return povm;
}

}  // namespace twocopy
