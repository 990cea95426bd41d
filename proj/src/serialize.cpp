#include "twocopy/serialize.hpp"

#include <ostream>
#include <string>

#include "twocopy/errors.hpp"

namespace twocopy {

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rows.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& entries,
                                  Eigen::Index dim) {
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(dim * dim)) {
    throw ArgumentError("matrix field must hold dim^2 [re, im] pairs");
  }
  Eigen::MatrixXcd m(dim, dim);
  std::size_t idx = 0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c, ++idx) {
      const auto& pair = entries[idx];
      if (!pair.is_array() || pair.size() != 2) {
        throw ArgumentError("matrix entries must be [re, im] pairs");
      }
      m(r, c) = std::complex<double>(pair[0].get<double>(),
                                     pair[1].get<double>());
    }
  }
  return m;
}

int qubits_from_json(const nlohmann::json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw ArgumentError("document needs an integer field 'n'");
  }
  return j["n"].get<int>();
}

}  // namespace

nlohmann::json to_json(const DensityMatrix& rho) {
  return {{"n", rho.qubits()}, {"matrix", matrix_to_json(rho.matrix())}};
}

DensityMatrix density_from_json(const nlohmann::json& j) {
  const int n = qubits_from_json(j);
  check_dense_cap(n);
  return DensityMatrix(
      n, matrix_from_json(j.at("matrix"),
                          static_cast<Eigen::Index>(std::size_t{1} << n)));
}

nlohmann::json to_json(const ChoiMatrix& choi) {
  return {{"n", choi.qubits()}, {"matrix", matrix_to_json(choi.matrix())}};
}

ChoiMatrix choi_from_json(const nlohmann::json& j) {
  const int n = qubits_from_json(j);
  check_dense_cap(n);
  const auto dim = static_cast<Eigen::Index>((std::size_t{1} << n) *
                                             (std::size_t{1} << n));
  return ChoiMatrix(n, matrix_from_json(j.at("matrix"), dim));
}

nlohmann::json to_json(const PauliCoefficients& coeffs) {
  return {{"n", coeffs.n},
          {"c", std::vector<double>(coeffs.c.data(),
                                    coeffs.c.data() + coeffs.c.size())}};
}

PauliCoefficients coefficients_from_json(const nlohmann::json& j) {
  const int n = qubits_from_json(j);
  const auto values = j.at("c").get<std::vector<double>>();
  if (values.size() != (std::size_t{1} << (2 * n))) {
    throw ArgumentError("coefficient vector must have 4^n entries");
  }
  PauliCoefficients coeffs{n, Eigen::VectorXd(values.size())};
  for (std::size_t i = 0; i < values.size(); ++i) {
    coeffs.c(static_cast<Eigen::Index>(i)) = values[i];
  }
  return coeffs;
}

nlohmann::json to_json(const BellDistribution& dist) {
  const auto& p = dist.probabilities();
  return {{"n", dist.qubits()},
          {"prob", std::vector<double>(p.data(), p.data() + p.size())},
          {"order", "(a||b) lexicographic"}};
}

BellDistribution distribution_from_json(const nlohmann::json& j) {
  const int n = qubits_from_json(j);
  const auto values = j.at("prob").get<std::vector<double>>();
  Eigen::VectorXd prob(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    prob(static_cast<Eigen::Index>(i)) = values[i];
  }
  return BellDistribution(n, std::move(prob));
}

nlohmann::json to_json(const Estimate& estimate) {
  return {{"value", estimate.value},
          {"std_error", estimate.std_error},
          {"shots", estimate.shots},
          {"flags", estimate.flags}};
}

nlohmann::json estimate_report(const std::string& estimator,
                               nlohmann::json params,
                               const Estimate& estimate) {
  return {{"estimator", estimator},
          {"params", std::move(params)},
          {"value", estimate.value},
          {"std_error", estimate.std_error},
          {"shots", estimate.shots},
          {"flags", estimate.flags}};
}

nlohmann::json to_json(const ShotPlan& plan) {
  return {{"delta", plan.delta},
          {"epsilon", plan.epsilon},
          {"p_conf", plan.p_conf},
          {"k", plan.k},
          {"shots", plan.shots}};
}

nlohmann::json to_json(const EfficiencyReport& report) {
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& cost : report.recoverable) {
    labels.push_back({{"label", cost.label.str()},
                      {"c0", cost.c0},
                      {"amplification", cost.amplification},
                      {"shots_needed", cost.shots_needed}});
  }
  return {{"labels", labels},
          {"summary",
           {{"recoverable", report.recoverable.size()},
            {"total", report.total_labels},
            {"universal", report.universal}}},
          {"baseline_shots", report.baseline_shots}};
}

void write_outcomes_csv(std::ostream& out, const SampleSet& samples) {
  const int n = samples.n;
  for (int k = 0; k < n; ++k) {
    out << 'a' << (k + 1) << ',';
  }
  for (int k = 0; k < n; ++k) {
    out << 'b' << (k + 1) << (k + 1 == n ? '\n' : ',');
  }
  for (const auto& outcome : samples.outcomes) {
    for (int k = 0; k < n; ++k) {
      out << ((outcome.a >> (n - 1 - k)) & 1u) << ',';
    }
    for (int k = 0; k < n; ++k) {
      out << ((outcome.b >> (n - 1 - k)) & 1u) << (k + 1 == n ? '\n' : ',');
    }
  }
}

}  // namespace twocopy
