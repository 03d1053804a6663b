#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "conceptua/errors.hpp"

namespace conceptua::hilbert {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigenvalueTol = 1e-10;
inline constexpr double kProjectorTol = 1e-10;
inline constexpr double kGeneratorTol = 1e-12;
inline constexpr double kZeroProbabilityTol = 1e-14;

/// Density operator: square, Hermitian within 1e-12, unit trace within
/// 1e-12, eigenvalues >= -1e-10. Immutable after construction.
class DensityState {
public:
  explicit DensityState(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

private:
  ComplexMatrix matrix_;
};

/// Partition of the outcome indices {0..N-1} into disjoint nonempty groups.
using OutcomeGroups = std::vector<std::vector<int>>;

/// Complete projective measurement: N rank-1 orthogonal projectors summing
/// to the identity, with an optional outcome grouping for degenerate
/// measurements.
class ProjectiveMeasurement {
public:
  explicit ProjectiveMeasurement(std::vector<ComplexMatrix> projectors,
                                 std::optional<OutcomeGroups> groups = std::nullopt);

  /// Builds rank-1 projectors from (assumed orthonormal) basis vectors;
  /// vectors are normalized, orthogonality is enforced by the invariants.
  static ProjectiveMeasurement from_basis_vectors(const std::vector<ComplexVector>& vectors,
                                                  std::optional<OutcomeGroups> groups = std::nullopt);

  static ProjectiveMeasurement computational(int dim,
                                             std::optional<OutcomeGroups> groups = std::nullopt);

  int dim() const { return static_cast<int>(projectors_.size()); }
  const std::vector<ComplexMatrix>& projectors() const { return projectors_; }
  const std::optional<OutcomeGroups>& groups() const { return groups_; }

  /// Number of distinguishable outcomes: group count if grouped, else N.
  int outcome_count() const {
    return groups_ ? static_cast<int>(groups_->size()) : dim();
  }

private:
  std::vector<ComplexMatrix> projectors_;
  std::optional<OutcomeGroups> groups_;
};

/// Orthogonal generator basis for traceless Hermitian N x N matrices:
/// tr(L_i) = 0 and tr(L_i L_j) = 2 delta_ij, both within 1e-12.
class GeneratorBasis {
public:
  GeneratorBasis(int dim, std::vector<ComplexMatrix> generators);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(generators_.size()); }
  const std::vector<ComplexMatrix>& generators() const { return generators_; }

private:
  int dim_;
  std::vector<ComplexMatrix> generators_;
};

/// Rank-1 projector onto the normalized amplitude vector.
DensityState density_from_amplitudes(const ComplexVector& amplitudes);

/// Generalized Gell-Mann generators, N^2 - 1 of them, ordered as: symmetric
/// off-diagonal pairs, antisymmetric off-diagonal pairs, diagonal generators;
/// each block in lexicographic (row, col) order. The ordering is fixed so
/// Bloch coordinates are reproducible across runs.
GeneratorBasis gell_mann_basis(int dim);

/// Trace-formula outcome probabilities p_i = tr(rho P_i).
Eigen::VectorXd born_probability(const DensityState& rho, const ProjectiveMeasurement& measurement);

/// Post-measurement state for outcome group M: P_M rho P_M / tr(P_M rho)
/// with P_M the sum of the group's projectors.
DensityState lueders_update(const DensityState& rho, const std::vector<int>& group,
                            const ProjectiveMeasurement& measurement);

/// Probability of an outcome group under the trace formula.
double group_probability(const Eigen::VectorXd& fine_probabilities, const std::vector<int>& group);

} // namespace conceptua::hilbert
