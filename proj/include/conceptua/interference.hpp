#pragma once

#include <string>
#include <vector>

#include "conceptua/errors.hpp"

namespace conceptua::interference {

inline constexpr double kColumnSumTol = 1e-9;
inline constexpr double kConsistencyTol = 1e-6;
inline constexpr double kNegativePredictionTol = 1e-9;

/// Per-exemplar selection probabilities for two concepts and their observed
/// disjunction. Each column is a distribution: nonnegative, summing to 1
/// within 1e-9.
struct DisjunctionDataset {
  std::vector<std::string> exemplars;
  std::vector<double> mu_a;
  std::vector<double> mu_b;
  std::vector<double> mu_obs;

  std::size_t size() const { return exemplars.size(); }
  void validate() const;
};

enum class PhaseStatus {
  exact,      // deviation explained exactly by a phase in [-1, 1]
  clamped,    // |deviation| exceeds the interference budget sqrt(mu_a mu_b)
  unfittable, // mu_a mu_b = 0 with a nonzero deviation: no phase exists
};

struct PhaseSolution {
  std::vector<double> cos_theta;    // in [-1, 1]
  std::vector<PhaseStatus> status;
  std::vector<double> residuals;    // 0 where status == exact
  double consistency = 0.0;         // sum_k sqrt(mu_a mu_b) cos_theta; ~0 for normalized data

  bool clamped(std::size_t k) const { return status[k] != PhaseStatus::exact; }
};

enum class ExtensionTag { overextended, underextended, classical };

/// Element-wise (mu_a + mu_b) / 2.
std::vector<double> classical_mixture(const std::vector<double>& mu_a,
                                      const std::vector<double>& mu_b);

/// d_k = mu_obs - mixture; sums to zero for normalized columns.
std::vector<double> interference_deviation(const DisjunctionDataset& dataset);

/// Closed-form per-exemplar phase extraction: cos theta_k = d_k / sqrt(mu_a mu_b),
/// clamped into [-1, 1] with the excess reported as a residual.
PhaseSolution solve_phases(const DisjunctionDataset& dataset);

/// Forward model mu_pred = mixture + sqrt(mu_a mu_b) cos_theta. Requires
/// |cos theta| <= 1 and the normalization consistency
/// |sum sqrt(mu_a mu_b) cos_theta| <= 1e-6; rejects negative predictions.
std::vector<double> predict_disjunction(const std::vector<double>& mu_a,
                                        const std::vector<double>& mu_b,
                                        const std::vector<double>& cos_theta);

/// Tags each exemplar by the sign of its deviation against the tolerance.
std::vector<ExtensionTag> classify_extension(const DisjunctionDataset& dataset, double tolerance);

} // namespace conceptua::interference
