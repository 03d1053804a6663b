#include "conceptua/interference.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace conceptua::interference {

namespace {

void check_column(const std::vector<double>& column, const char* name) {
  if (column.empty()) {
    throw ValidationError(std::string("dataset: column ") + name + " is empty");
  }
  double sum = 0.0;
  for (double value : column) {
    if (value < 0.0) {
      throw ValidationError(std::string("dataset: column ") + name + " has a negative entry");
    }
    sum += value;
  }
  if (std::abs(sum - 1.0) > kColumnSumTol) {
    throw ValidationError(std::string("dataset: column ") + name +
                          " does not sum to 1 within 1e-9");
  }
}

} // namespace

void DisjunctionDataset::validate() const {
  const std::size_t n = exemplars.size();
  if (n < 1) {
    throw ValidationError("dataset: needs at least one exemplar");
  }
  if (mu_a.size() != n || mu_b.size() != n || mu_obs.size() != n) {
    throw ValidationError("dataset: column lengths differ");
  }
  check_column(mu_a, "mu_a");
  check_column(mu_b, "mu_b");
  check_column(mu_obs, "mu_obs");
}

std::vector<double> classical_mixture(const std::vector<double>& mu_a,
                                      const std::vector<double>& mu_b) {
  if (mu_a.size() != mu_b.size()) {
    throw ValidationError("classical_mixture: length mismatch");
  }
  std::vector<double> mixture(mu_a.size());
  for (std::size_t k = 0; k < mu_a.size(); ++k) {
    mixture[k] = 0.5 * (mu_a[k] + mu_b[k]);
  }
  return mixture;
}

std::vector<double> interference_deviation(const DisjunctionDataset& dataset) {
  dataset.validate();
  std::vector<double> deviation(dataset.size());
  for (std::size_t k = 0; k < dataset.size(); ++k) {
    deviation[k] = dataset.mu_obs[k] - 0.5 * (dataset.mu_a[k] + dataset.mu_b[k]);
  }
  return deviation;
}

PhaseSolution solve_phases(const DisjunctionDataset& dataset) {
  const std::vector<double> deviation = interference_deviation(dataset);
  const std::size_t n = dataset.size();

  PhaseSolution solution;
  solution.cos_theta.assign(n, 0.0);
  solution.status.assign(n, PhaseStatus::exact);
  solution.residuals.assign(n, 0.0);

  for (std::size_t k = 0; k < n; ++k) {
    const double weight = std::sqrt(dataset.mu_a[k] * dataset.mu_b[k]);
    const double d = deviation[k];
    if (weight <= 0.0) {
      if (d != 0.0) {
        solution.status[k] = PhaseStatus::unfittable;
        solution.residuals[k] = std::abs(d);
      }
      continue;
    }
    const double raw = d / weight;
    if (raw > 1.0) {
      solution.cos_theta[k] = 1.0;
      solution.status[k] = PhaseStatus::clamped;
      solution.residuals[k] = std::abs(d) - weight;
    } else if (raw < -1.0) {
      solution.cos_theta[k] = -1.0;
      solution.status[k] = PhaseStatus::clamped;
      solution.residuals[k] = std::abs(d) - weight;
    } else {
      solution.cos_theta[k] = raw;
    }
    solution.consistency += weight * solution.cos_theta[k];
  }
  return solution;
}

std::vector<double> predict_disjunction(const std::vector<double>& mu_a,
                                        const std::vector<double>& mu_b,
                                        const std::vector<double>& cos_theta) {
  if (mu_a.size() != mu_b.size() || mu_a.size() != cos_theta.size()) {
    throw ValidationError("predict_disjunction: length mismatch");
  }
  double consistency = 0.0;
  for (std::size_t k = 0; k < mu_a.size(); ++k) {
    if (std::abs(cos_theta[k]) > 1.0) {
      throw ValidationError("predict_disjunction: |cos theta| > 1 at exemplar " +
                            std::to_string(k));
    }
    consistency += std::sqrt(mu_a[k] * mu_b[k]) * cos_theta[k];
  }
  if (std::abs(consistency) > kConsistencyTol) {
    throw ValidationError("predict_disjunction: phases are non-normalizable, "
                          "|sum sqrt(mu_a mu_b) cos theta| = " +
                          std::to_string(std::abs(consistency)));
  }
  std::vector<double> predicted(mu_a.size());
  for (std::size_t k = 0; k < mu_a.size(); ++k) {
    predicted[k] = 0.5 * (mu_a[k] + mu_b[k]) + std::sqrt(mu_a[k] * mu_b[k]) * cos_theta[k];
    if (predicted[k] < -kNegativePredictionTol) {
      throw ValidationError("predict_disjunction: model violation, negative probability at "
                            "exemplar " + std::to_string(k));
    }
  }
  return predicted;
}

std::vector<ExtensionTag> classify_extension(const DisjunctionDataset& dataset, double tolerance) {
  if (tolerance < 0.0) {
    throw ValidationError("classify_extension: tolerance must be >= 0");
  }
  const std::vector<double> deviation = interference_deviation(dataset);
  std::vector<ExtensionTag> tags(deviation.size());
  for (std::size_t k = 0; k < deviation.size(); ++k) {
    if (deviation[k] > tolerance) {
      tags[k] = ExtensionTag::overextended;
    } else if (deviation[k] < -tolerance) {
      tags[k] = ExtensionTag::underextended;
    } else {
      tags[k] = ExtensionTag::classical;
    }
  }
  return tags;
}

} // namespace conceptua::interference
