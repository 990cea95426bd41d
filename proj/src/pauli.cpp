#include "twocopy/pauli.hpp"

#include <bit>

#include "twocopy/errors.hpp"

namespace twocopy {

namespace {

int parity(std::uint32_t bits) { return std::popcount(bits) & 1; }

void check_label_args(int n) {
  if (n < 1) {
    throw ArgumentError("qubit count must be >= 1, got " + std::to_string(n));
  }
  if (n > 31) {
    throw ArgumentError("qubit count too large for a 32-bit label mask");
  }
}

}  // namespace

void check_dense_cap(int n) {
  check_label_args(n);
  if (n > kMaxQubits) {
    throw ResourceLimitError("dense operations are capped at n <= " +
                             std::to_string(kMaxQubits) + " qubits, got n = " +
                             std::to_string(n));
  }
}

std::complex<double> i_power(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

PauliLabel::PauliLabel(int n_in, std::uint32_t q_in, std::uint32_t p_in)
    : n(n_in), q(q_in), p(p_in) {
  check_label_args(n);
  const std::uint32_t mask = (n == 32) ? ~0u : ((1u << n) - 1u);
  if ((q & ~mask) != 0 || (p & ~mask) != 0) {
    throw ArgumentError("label bits exceed the declared qubit count");
  }
}

PauliLabel PauliLabel::parse(std::string_view text) {
  auto fail = [&] {
    throw ArgumentError("cannot parse pauli label '" + std::string(text) +
                        "', expected e.g. \"q=110,p=011\"");
  };
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) fail();
  std::string_view q_part = text.substr(0, comma);
  std::string_view p_part = text.substr(comma + 1);
  if (!q_part.starts_with("q=") || !p_part.starts_with("p=")) fail();
  q_part.remove_prefix(2);
  p_part.remove_prefix(2);
  if (q_part.empty() || q_part.size() != p_part.size()) fail();
  std::uint32_t q = 0, p = 0;
  for (std::size_t i = 0; i < q_part.size(); ++i) {
    if ((q_part[i] != '0' && q_part[i] != '1') ||
        (p_part[i] != '0' && p_part[i] != '1')) {
      fail();
    }
    q = (q << 1) | static_cast<std::uint32_t>(q_part[i] - '0');
    p = (p << 1) | static_cast<std::uint32_t>(p_part[i] - '0');
  }
  return PauliLabel(static_cast<int>(q_part.size()), q, p);
}

PauliLabel PauliLabel::from_flat(int n, std::size_t index) {
  check_label_args(n);
  if (index >= (std::size_t{1} << (2 * n))) {
    throw ArgumentError("flat label index out of range");
  }
  const std::uint32_t mask = (1u << n) - 1u;
  return PauliLabel(n, static_cast<std::uint32_t>(index >> n),
                    static_cast<std::uint32_t>(index) & mask);
}

int PauliLabel::qp() const { return std::popcount(q & p); }

std::string PauliLabel::str() const {
  std::string out = "q=";
  for (int k = 0; k < n; ++k) {
    out += static_cast<char>('0' + ((q >> (n - 1 - k)) & 1u));
  }
  out += ",p=";
  for (int k = 0; k < n; ++k) {
    out += static_cast<char>('0' + ((p >> (n - 1 - k)) & 1u));
  }
  return out;
}

Eigen::MatrixXcd pauli_matrix(const PauliLabel& label) {
  check_dense_cap(label.n);
  const std::size_t dim = std::size_t{1} << label.n;
  // X^q Z^p |c> = (-1)^{p.c} |c xor q>, times the global i^{q.p}.
  const std::complex<double> phase = i_power(label.qp());
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t row = col ^ label.q;
    const double sign =
        parity(static_cast<std::uint32_t>(col) & label.p) ? -1.0 : 1.0;
    t(row, col) = sign * phase;
  }
  return t;
}

WeightProfile weight_profile(const PauliLabel& label) {
  WeightProfile w;
  for (int k = 0; k < label.n; ++k) {
    const int qk = (label.q >> (label.n - 1 - k)) & 1;
    const int pk = (label.p >> (label.n - 1 - k)) & 1;
    if (qk == 0 && pk == 0) {
      ++w.alpha_0;
    } else if (qk == 1 && pk == 0) {
      ++w.alpha_x;
    } else if (qk == 0 && pk == 1) {
      ++w.alpha_z;
    } else {
      ++w.alpha_y;
    }
  }
  return w;
}

std::complex<double> pauli_trace(const Eigen::MatrixXcd& m,
                                 const PauliLabel& label) {
  const std::size_t dim = std::size_t{1} << label.n;
  if (static_cast<std::size_t>(m.rows()) != dim ||
      static_cast<std::size_t>(m.cols()) != dim) {
    throw ArgumentError("matrix dimension does not match the label");
  }
  // Tr(M T) = sum_r M(r, r xor q) * i^{q.p} * (-1)^{p.r}.
  const std::complex<double> phase = i_power(label.qp());
  std::complex<double> acc = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    const double sign =
        parity(static_cast<std::uint32_t>(r) & label.p) ? -1.0 : 1.0;
    acc += m(r, r ^ label.q) * sign;
  }
  return acc * phase;
}

}  // namespace twocopy
