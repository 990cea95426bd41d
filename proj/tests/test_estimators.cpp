#include <doctest.h>

#include <cmath>
#include <type_traits>

#include <unsupported/Eigen/KroneckerProduct>

#include "oracles.hpp"
#include "twocopy/channels.hpp"
#include "twocopy/errors.hpp"
#include "twocopy/estimators.hpp"

using namespace twocopy;

// The repetition budget is a function of the precision targets alone; it
// never sees a qubit count.
static_assert(std::is_same_v<decltype(&plan_shots),
                             ShotPlan (*)(double, double, double)>);

namespace {

BellDistribution dist_of(const DensityMatrix& rho) {
  return exact_distribution(rho, rho, DistributionMethod::kClosedForm);
}

}  // namespace

TEST_SUITE("estimators") {

TEST_CASE("plan_shots inverts erf and applies the shot formula") {
  // erf(sqrt(2))  =>  k = 2  =>  shots = 4 / (4 * 0.1^2 * 0.1^2) = 10000
  const double p_conf = std::erf(std::sqrt(2.0));
  const ShotPlan plan = plan_shots(0.1, 0.1, p_conf);
  CHECK(plan.k == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(std::erf(plan.k / std::sqrt(2.0)) - p_conf) <= 1e-10);
  CHECK(plan.shots == 10000);

  // doubling epsilon divides the budget by four, exactly
  CHECK(plan_shots(0.1, 0.2, p_conf).shots == 2500);

  CHECK_THROWS_AS(plan_shots(0.1, 0.1, 1.0), ArgumentError);
  CHECK_THROWS_AS(plan_shots(0.1, 0.1, 0.0), ArgumentError);
  CHECK_THROWS_AS(plan_shots(0.0, 0.1, 0.5), ArgumentError);
}

TEST_CASE("abs_c interval half-width rule") {
  const ShotPlan plan = plan_shots(0.1, 0.1, std::erf(std::sqrt(2.0)));
  CHECK(abs_c_halfwidth(plan, 0.01, 0.5) ==
        doctest::Approx(2.0 * 0.01 / (2.0 * 0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(abs_c_halfwidth(plan, 0.01, 0.0), ArgumentError);
}

TEST_CASE("estimate_csq at the identity label is exactly 1") {
  const DensityMatrix rho = random_state(2, 2, 5);
  const SampleSet samples = sample_outcomes(dist_of(rho), 200, 3);
  const Estimate est = estimate_csq(samples, PauliLabel(2, 0, 0));
  CHECK(est.value == 1.0);
  CHECK(est.std_error == 0.0);
  CHECK(est.shots == 200);
}

TEST_CASE("estimate_csq on |0><0| at the Z label is exactly 1") {
  const DensityMatrix zero = product_zero_state(1);
  const BellDistribution dist = dist_of(zero);
  // support lives entirely on b = 0 outcomes
  CHECK(dist.prob({0, 1}) <= 1e-14);
  CHECK(dist.prob({1, 1}) <= 1e-14);
  const SampleSet samples = sample_outcomes(dist, 1000, 9);
  for (const auto& outcome : samples.outcomes) {
    CHECK(outcome.b == 0);
  }
  const Estimate est = estimate_csq(samples, PauliLabel(1, 0, 1));
  CHECK(est.value == 1.0);
}

TEST_CASE("exact csq equals the squared decomposition at every label") {
  const DensityMatrix rho = random_state(3, 3, 23);
  const BellDistribution dist = dist_of(rho);
  const PauliCoefficients c = pauli_decompose(rho);
  for (std::size_t idx = 0; idx < 64; ++idx) {
    const PauliLabel label = PauliLabel::from_flat(3, idx);
    const Estimate est = estimate_csq(dist, label);
    CHECK(est.exact());
    CHECK(std::abs(est.value - c.c(idx) * c.c(idx)) <= 1e-10);
  }
}

TEST_CASE("std_error of a parity statistic never exceeds 1/sqrt(shots)") {
  const DensityMatrix rho = random_state(2, 2, 6);
  const BellDistribution dist = dist_of(rho);
  for (std::uint64_t shots : {2ULL, 3ULL, 10ULL, 1000ULL}) {
    const SampleSet samples = sample_outcomes(dist, shots, shots);
    for (std::size_t idx = 0; idx < 16; idx += 3) {
      const Estimate est = estimate_csq(samples, PauliLabel::from_flat(2, idx));
      CHECK(est.std_error <= 1.0 / std::sqrt(static_cast<double>(shots)) +
                                 1e-15);
    }
  }
}

TEST_CASE("estimators reject empty outcome lists") {
  CHECK_THROWS_AS(estimate_csq(SampleSet{1, {}}, PauliLabel(1, 0, 0)),
                  ArgumentError);
}

TEST_CASE("negative csq means clamp to zero for |c|") {
  Estimate est;
  est.value = -0.02;
  bool clamped = false;
  CHECK(abs_c_from_csq(est, &clamped) == 0.0);
  CHECK(clamped);
  est.value = 0.25;
  CHECK(abs_c_from_csq(est, &clamped) == doctest::Approx(0.5));
  CHECK(!clamped);
}

TEST_CASE("coarse parity with the singlet selector reads the purity") {
  const DensityMatrix pure = random_state(2, 1, 40);
  CHECK(coarse_parity(dist_of(pure), PairSelector::single_bell(2, 1, 1, 0b11))
            .value == doctest::Approx(1.0).epsilon(1e-10));

  const DensityMatrix mixed(2, Eigen::MatrixXcd::Identity(4, 4) / 4.0);
  CHECK(coarse_parity(dist_of(mixed), PairSelector::single_bell(2, 1, 1, 0b11))
            .value == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("coarse parity matches the s-vector closed form") {
  const DensityMatrix rho = random_state(2, 2, 41);
  const PauliCoefficients c = pauli_decompose(rho);
  for (int m = 0; m <= 1; ++m) {
    for (int nb = 0; nb <= 1; ++nb) {
      double expected = 0.0;
      for (std::size_t idx = 0; idx < 16; ++idx) {
        const PauliLabel label = PauliLabel::from_flat(2, idx);
        expected += coarse_sign(label, m, nb) * c.c(idx) * c.c(idx) / 4.0;
      }
      const double got =
          coarse_parity(dist_of(rho), PairSelector::single_bell(2, m, nb, 0b11))
              .value;
      CHECK(std::abs(got - expected) <= 1e-10);
    }
  }
}

TEST_CASE("s-vector structure: all +1 for the singlet, half otherwise") {
  for (int n = 1; n <= 3; ++n) {
    const std::size_t labels = std::size_t{1} << (2 * n);
    for (int m = 0; m <= 1; ++m) {
      for (int nb = 0; nb <= 1; ++nb) {
        std::size_t plus = 0;
        for (std::size_t idx = 0; idx < labels; ++idx) {
          if (coarse_sign(PauliLabel::from_flat(n, idx), m, nb) == 1) {
            ++plus;
          }
        }
        if (m == 1 && nb == 1) {
          CHECK(plus == labels);
        } else {
          CHECK(plus == labels / 2);
        }
      }
    }
  }
}

TEST_CASE("purity estimator: full and partial masks") {
  const DensityMatrix bell = bell_pair_state();
  CHECK(purity(dist_of(bell), 0b11).value ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(purity(dist_of(bell), 0b10).value ==
        doctest::Approx(0.5).epsilon(1e-10));

  const DensityMatrix rho1 = random_state(1, 2, 50);
  const DensityMatrix rho2 = random_state(1, 2, 51);
  const DensityMatrix product(
      2, Eigen::kroneckerProduct(rho1.matrix(), rho2.matrix()).eval());
  CHECK(std::abs(purity(dist_of(product), 0b10).value - rho1.purity()) <=
        1e-10);

  // sampled at 1e5 shots, inside five standard errors
  const SampleSet samples = sample_outcomes(dist_of(product), 100000, 7);
  const Estimate sampled = purity(samples, 0b10);
  CHECK(std::abs(sampled.value - rho1.purity()) <= 5.0 * sampled.std_error);

  CHECK_THROWS_AS(purity(dist_of(bell), 0b00), ArgumentError);
}

TEST_CASE("purity equals the partial-trace oracle on random states") {
  const DensityMatrix rho = random_state(3, 2, 52);
  const BellDistribution dist = dist_of(rho);
  for (std::uint32_t mask = 1; mask < 8; ++mask) {
    CHECK(std::abs(purity(dist, mask).value -
                   partial_trace(rho, mask).purity()) <= 1e-10);
  }
}

TEST_CASE("swap identity: three routes to Tr rho^2") {
  for (int n = 1; n <= 3; ++n) {
    const DensityMatrix rho = random_state(n, 2, 60 + n);
    const double direct = rho.purity();
    const double via_parity =
        purity(dist_of(rho), (1u << n) - 1u).value;
    const Eigen::MatrixXcd two_copy =
        Eigen::kroneckerProduct(rho.matrix(), rho.matrix()).eval();
    const double via_swap =
        (swap_operator(rho.dim()) * two_copy).trace().real();
    CHECK(std::abs(direct - via_parity) <= 1e-10);
    CHECK(std::abs(direct - via_swap) <= 1e-10);
    CHECK(std::abs(via_parity - via_swap) <= 1e-10);
  }
}

TEST_CASE("p_all single-pair complement and closed form") {
  const DensityMatrix rho = random_state(1, 2, 70);
  const BellDistribution dist = dist_of(rho);
  CHECK(p_all(dist, 1, 1, 0b1).value ==
        doctest::Approx(1.0 - dist.prob({1, 1})).epsilon(1e-12));

  // fully product pure state: no singlet ever appears
  const DensityMatrix zeros = product_zero_state(3);
  CHECK(p_all(dist_of(zeros), 1, 1, 0b111).value ==
        doctest::Approx(1.0).epsilon(1e-12));

  const DensityMatrix rho2 = random_state(2, 2, 71);
  const PauliCoefficients c = pauli_decompose(rho2);
  for (int m = 0; m <= 1; ++m) {
    for (int nb = 0; nb <= 1; ++nb) {
      double expected = 0.0;
      for (std::size_t idx = 0; idx < 16; ++idx) {
        expected += pall_weight(PauliLabel::from_flat(2, idx), m, nb) *
                    c.c(idx) * c.c(idx) / 16.0;
      }
      CHECK(std::abs(p_all(dist_of(rho2), m, nb, 0b11).value - expected) <=
            1e-10);
    }
  }
}

TEST_CASE("concurrence of reference states") {
  // Bell pair: marginal-purity route gives 2^{1-n/2} sqrt((2^n-2) - sum Tr rho_l^2) = 1
  const DensityMatrix bell = bell_pair_state();
  CHECK(concurrence_direct(bell) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(concurrence_pure(dist_of(bell)).value ==
        doctest::Approx(1.0).epsilon(1e-8));

  const DensityMatrix ghz = ghz_state(3);
  CHECK(concurrence_direct(ghz) ==
        doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));
  CHECK(concurrence_pure(dist_of(ghz)).value ==
        doctest::Approx(std::sqrt(1.5)).epsilon(1e-8));

  const DensityMatrix zeros = product_zero_state(3);
  CHECK(concurrence_direct(zeros) <= 1e-7);
  CHECK(concurrence_pure(dist_of(zeros)).value <= 1e-7);
}

TEST_CASE("sampled concurrence lands within five propagated errors") {
  const DensityMatrix ghz = ghz_state(3);
  const SampleSet samples = sample_outcomes(dist_of(ghz), 100000, 13);
  const Estimate est = concurrence_pure(samples);
  CHECK(std::abs(est.value - std::sqrt(1.5)) <= 5.0 * est.std_error);
  CHECK(est.std_error > 0.0);
}

TEST_CASE("concurrence_direct preconditions") {
  const DensityMatrix mixed(2, Eigen::MatrixXcd::Identity(4, 4) / 4.0);
  CHECK_THROWS_AS(concurrence_direct(mixed), PreconditionError);
  CHECK_THROWS_AS(concurrence_direct(random_state(1, 1, 3)), ArgumentError);
}

TEST_CASE("every estimator is unbiased against its closed form") {
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const DensityMatrix rho =
          random_state(n, 1 + trial % (1 << n), 8000 + 7 * trial + n);
      const BellDistribution dist = dist_of(rho);
      const PauliCoefficients c = pauli_decompose(rho);
      const double N = static_cast<double>(rho.dim());

      // csq at a few labels
      for (std::size_t idx = 0; idx < (std::size_t{1} << (2 * n));
           idx += (idx / 3 + 1)) {
        const PauliLabel label = PauliLabel::from_flat(n, idx);
        CHECK(std::abs(estimate_csq(dist, label).value -
                       c.c(idx) * c.c(idx)) <= 1e-10);
      }

      // purity
      CHECK(std::abs(purity(dist, (1u << n) - 1u).value - rho.purity()) <=
            1e-10);

      // p_all(1,1)
      double pall_expected = 0.0;
      for (std::size_t idx = 0; idx < (std::size_t{1} << (2 * n)); ++idx) {
        pall_expected += pall_weight(PauliLabel::from_flat(n, idx), 1, 1) *
                         c.c(idx) * c.c(idx) / (N * N);
      }
      CHECK(std::abs(p_all(dist, 1, 1, (1u << n) - 1u).value -
                     pall_expected) <= 1e-10);
    }
  }
}

TEST_CASE("coverage of the planned csq confidence interval") {
  // |c| >= delta estimated with the planned budget: the true c^2 must land
  // in value +- k*sigma in at least p_conf of trials (minus 3 binomial SEs).
  const ShotPlan plan = plan_shots(0.1, 0.1, std::erf(std::sqrt(2.0)));
  const DensityMatrix rho = random_state(2, 1, 314);
  const PauliCoefficients c = pauli_decompose(rho);
  PauliLabel label(2, 0, 0);
  double best = 0.0;
  for (std::size_t idx = 1; idx < 16; ++idx) {
    if (std::abs(c.c(idx)) > best) {
      best = std::abs(c.c(idx));
      label = PauliLabel::from_flat(2, idx);
    }
  }
  REQUIRE(best >= plan.delta);
  const double truth = c.at(label) * c.at(label);
  const BellDistribution dist = dist_of(rho);
  const int trials = 200;
  int covered = 0;
  for (int t = 0; t < trials; ++t) {
    const SampleSet samples =
        sample_outcomes(dist, plan.shots, 9000 + static_cast<std::uint64_t>(t));
    const Estimate est = estimate_csq(samples, label);
    if (std::abs(est.value - truth) <= plan.k * est.std_error) {
      ++covered;
    }
  }
  const double fraction = static_cast<double>(covered) / trials;
  const double se =
      std::sqrt(plan.p_conf * (1.0 - plan.p_conf) / static_cast<double>(trials));
  CHECK(fraction >= plan.p_conf - 3.0 * se);
}

TEST_CASE("selector validation") {
  CHECK_THROWS_AS(PairSelector(2, {{{1, 1, 1, 1}}}), ArgumentError);
  CHECK_THROWS_AS(PairSelector(1, {{{1, 0, 1, 1}}}), ArgumentError);
  CHECK_THROWS_AS(
      coarse_parity(SampleSet{2, {BellOutcome{0, 0}}}, PairSelector::all_plus(1)),
      ArgumentError);
}

}  // TEST_SUITE
