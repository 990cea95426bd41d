#include <doctest.h>

#include "oracles.hpp"
#include "twocopy/errors.hpp"
#include "twocopy/pauli.hpp"

using namespace twocopy;

TEST_SUITE("pauli") {

TEST_CASE("identity label gives the identity matrix") {
  const PauliLabel label(2, 0b00, 0b00);
  CHECK(oracles::max_abs_diff(pauli_matrix(label),
                              Eigen::MatrixXcd::Identity(4, 4)) == 0.0);
}

TEST_CASE("q=1,p=1 is Y, with the phase making it Hermitian") {
  const Eigen::MatrixXcd t = pauli_matrix(PauliLabel(1, 1, 1));
  Eigen::Matrix2cd y;
  y << 0.0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0.0;
  CHECK(oracles::max_abs_diff(t, y) == 0.0);
  CHECK(oracles::max_abs_diff(t, oracles::single_qubit_t(1, 1)) == 0.0);
}

TEST_CASE("q=10,p=01 is X (x) Z with phase +1") {
  const Eigen::MatrixXcd t = pauli_matrix(PauliLabel(2, 0b10, 0b01));
  const Eigen::MatrixXcd expected =
      Eigen::kroneckerProduct(oracles::pauli_x(), oracles::pauli_z()).eval();
  CHECK(oracles::max_abs_diff(t, expected) == 0.0);
}

TEST_CASE("weight profiles classify per qubit") {
  CHECK(weight_profile(PauliLabel(2, 0b00, 0b00)) == WeightProfile{2, 0, 0, 0});
  CHECK(weight_profile(PauliLabel(3, 0b110, 0b011)) ==
        WeightProfile{0, 1, 1, 1});
  CHECK(weight_profile(PauliLabel(1, 1, 0)) == WeightProfile{0, 1, 0, 0});
}

TEST_CASE("every T is Hermitian and squares to the identity") {
  for (int n = 1; n <= 3; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t idx = 0; idx < (std::size_t{1} << (2 * n)); ++idx) {
      const Eigen::MatrixXcd t = pauli_matrix(PauliLabel::from_flat(n, idx));
      CHECK(oracles::max_abs_diff(t, t.adjoint()) <= 1e-12);
      CHECK(oracles::max_abs_diff(
                t * t, Eigen::MatrixXcd::Identity(dim, dim)) <= 1e-12);
    }
  }
}

TEST_CASE("Hilbert-Schmidt orthogonality Tr(T T') = N delta") {
  for (int n = 1; n <= 3; ++n) {
    const std::size_t labels = std::size_t{1} << (2 * n);
    const double dim = static_cast<double>(std::size_t{1} << n);
    for (std::size_t i = 0; i < labels; ++i) {
      const Eigen::MatrixXcd ti = pauli_matrix(PauliLabel::from_flat(n, i));
      for (std::size_t j = 0; j < labels; ++j) {
        const Eigen::MatrixXcd tj = pauli_matrix(PauliLabel::from_flat(n, j));
        const std::complex<double> tr = (ti * tj).trace();
        const double expected = (i == j) ? dim : 0.0;
        CHECK(std::abs(tr - expected) <= 1e-12);
      }
    }
  }
}

TEST_CASE("T factorizes into the Kronecker chain of single-qubit T's") {
  for (int n = 1; n <= 3; ++n) {
    for (std::size_t idx = 0; idx < (std::size_t{1} << (2 * n)); ++idx) {
      const PauliLabel label = PauliLabel::from_flat(n, idx);
      std::vector<Eigen::Matrix2cd> parts;
      for (int k = 0; k < n; ++k) {
        parts.push_back(oracles::single_qubit_t(
            (label.q >> (n - 1 - k)) & 1u, (label.p >> (n - 1 - k)) & 1u));
      }
      CHECK(oracles::max_abs_diff(pauli_matrix(label),
                                  oracles::kron_chain(parts)) <= 1e-14);
    }
  }
}

TEST_CASE("pauli_trace agrees with dense Tr(M T)") {
  const int n = 2;
  Eigen::MatrixXcd m(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      m(r, c) = std::complex<double>(0.1 * r + c, 0.3 * r - 0.2 * c);
    }
  }
  for (std::size_t idx = 0; idx < 16; ++idx) {
    const PauliLabel label = PauliLabel::from_flat(n, idx);
    const std::complex<double> dense = (m * pauli_matrix(label)).trace();
    CHECK(std::abs(pauli_trace(m, label) - dense) <= 1e-12);
  }
}

TEST_CASE("label text form round trips") {
  const PauliLabel label(3, 0b110, 0b011);
  CHECK(label.str() == "q=110,p=011");
  CHECK(PauliLabel::parse("q=110,p=011") == label);
  CHECK(PauliLabel::parse(label.str()).flat_index() == label.flat_index());
  CHECK_THROWS_AS(PauliLabel::parse("q=11,p=011"), ArgumentError);
  CHECK_THROWS_AS(PauliLabel::parse("110,011"), ArgumentError);
  CHECK_THROWS_AS(PauliLabel::parse("q=1a,p=01"), ArgumentError);
}

TEST_CASE("flat index is (q||p) lexicographic, q major") {
  const PauliLabel label(2, 0b10, 0b01);
  CHECK(label.flat_index() == (0b10u << 2 | 0b01u));
  CHECK(PauliLabel::from_flat(2, label.flat_index()) == label);
  // enumeration order: identity first, then p ascending within fixed q
  CHECK(PauliLabel::from_flat(2, 0).is_identity());
  CHECK(PauliLabel::from_flat(2, 1) == PauliLabel(2, 0b00, 0b01));
  CHECK(PauliLabel::from_flat(2, 4) == PauliLabel(2, 0b01, 0b00));
}

TEST_CASE("dense construction above the qubit cap is refused") {
  CHECK_THROWS_AS(pauli_matrix(PauliLabel(7, 0, 0)), ResourceLimitError);
  CHECK_THROWS_AS(PauliLabel(0, 0, 0), ArgumentError);
  CHECK_THROWS_AS(PauliLabel(2, 0b100, 0), ArgumentError);
}

}  // TEST_SUITE
