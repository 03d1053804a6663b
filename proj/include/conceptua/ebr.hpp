#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "conceptua/hilbert.hpp"
#include "conceptua/rng.hpp"

namespace conceptua::ebr {

inline constexpr double kUnitNormTol = 1e-10;
inline constexpr double kBarycentricTol = 1e-10;
inline constexpr double kCorruptedStateTol = 1e-8;
inline constexpr double kBarycentricResidualTol = 1e-8;
inline constexpr double kSimplexRankTol = 1e-10;
inline constexpr double kMembershipTol = 1e-12;

/// Real Bloch coordinates of an N-dimensional state: a vector of length
/// N^2 - 1. Pure states sit on the unit sphere, mixed states strictly inside.
struct BlochVector {
  int dim_hilbert = 0;
  Eigen::VectorXd coords;
};

/// The outcome simplex of a complete measurement: N unit-norm vertex vectors
/// spanning an (N-1)-dimensional affine hull, with an orthonormalized edge
/// frame cached for projections and barycentric solves.
class MeasurementSimplex {
public:
  explicit MeasurementSimplex(std::vector<BlochVector> vertices);

  int outcome_count() const { return static_cast<int>(vertices_.size()); }
  int ambient_dim() const { return static_cast<int>(frame_.rows()); }
  const std::vector<BlochVector>& vertices() const { return vertices_; }
  const Eigen::MatrixXd& affine_frame() const { return frame_; }

  /// Orthogonal projection of an ambient point onto the affine hull.
  Eigen::VectorXd project(const Eigen::VectorXd& ambient) const;

  /// Barycentric coordinates of a point of the affine hull, solved by least
  /// squares against the cached edge matrix; residual above 1e-8 indicates a
  /// degenerate simplex and is rejected.
  Eigen::VectorXd barycentric(const Eigen::VectorXd& ambient_on_hull) const;

  Eigen::VectorXd ambient(const Eigen::VectorXd& barycentric) const;

private:
  std::vector<BlochVector> vertices_;
  Eigen::MatrixXd edges_;                           // columns v_i - v_0
  Eigen::MatrixXd frame_;                           // orthonormal edge span
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> solver_;
};

/// Where the state comes to rest on the outcome simplex. The barycentric
/// weights are the outcome probabilities.
struct EquilibriumPoint {
  Eigen::VectorXd ambient;
  Eigen::VectorXd barycentric;
};

/// A point of the outcome simplex in barycentric form (the fluctuation
/// variable of a collapse).
struct SimplexPoint {
  Eigen::VectorXd barycentric;
};

struct CollapseSample {
  int outcome = 0; // group index when the measurement is grouped, else fine index
  SimplexPoint fluctuation;
  hilbert::DensityState post_state;
};

struct PerceptualWarp {
  double surface_distance = 0.0;
  double equilibrium_distance = 0.0;
  double ratio = 0.0;
  bool ratio_defined = false;
};

struct OutcomeStatistics {
  std::vector<int> members; // fine outcome indices (singleton when ungrouped)
  double probability = 0.0; // trace-formula oracle
  std::uint64_t count = 0;
  double frequency = 0.0;
  double z_score = 0.0;
};

struct MeasurementStatistics {
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  Eigen::VectorXd born_oracle;     // trace formula, fine outcomes
  Eigen::VectorXd ebr_barycentric; // equilibrium-point weights, fine outcomes
  std::vector<OutcomeStatistics> outcomes;
};

enum class Execution { serial, parallel };

/// State -> Bloch coordinates: r_i = sqrt(N / (2(N-1))) tr(rho L_i).
BlochVector to_bloch(const hilbert::DensityState& rho, const hilbert::GeneratorBasis& basis);

/// Bloch coordinates -> state: rho = I/N + sqrt((N-1)/(2N)) sum_i r_i L_i.
/// Throws when the reconstructed matrix has an eigenvalue below -1e-10 (the
/// unit ball is strictly larger than the state space for N >= 3).
hilbert::DensityState from_bloch(const BlochVector& v, const hilbert::GeneratorBasis& basis);

/// Vertices are the Bloch vectors of the measurement's rank-1 eigenprojectors.
MeasurementSimplex outcome_simplex(const hilbert::ProjectiveMeasurement& measurement,
                                   const hilbert::GeneratorBasis& basis);

/// Orthogonal drop of the state vector onto the outcome simplex. All
/// barycentric weights of a valid state are nonnegative up to roundoff; a
/// weight below -1e-8 signals a corrupted input and is rejected.
EquilibriumPoint equilibrium_point(const BlochVector& v, const MeasurementSimplex& simplex);

/// Outcome probabilities read off as the equilibrium point's barycentric
/// weights. Agrees with hilbert::born_probability to numerical precision.
Eigen::VectorXd born_from_ebr(const hilbert::DensityState& rho,
                              const hilbert::ProjectiveMeasurement& measurement,
                              const hilbert::GeneratorBasis& basis);

/// Index i of the subregion A_i = conv({r_e} union {v_j : j != i}) containing
/// the simplex point. Membership is decided through the point's barycentric
/// coordinates with respect to that sub-simplex; boundary ties resolve to the
/// lowest index.
int subregion_of(const SimplexPoint& lambda, const EquilibriumPoint& eq,
                 const MeasurementSimplex& simplex);

/// Uniform point of the (n-1)-simplex: n unit-rate exponential draws,
/// normalized into barycentric weights.
SimplexPoint uniform_simplex_point(int n, SplitMix64& rng);

/// One collapse: draw a uniform fluctuation, find its subregion, map the fine
/// outcome through the measurement's groups (when present), and build the
/// post-measurement state (eigenstate, or Lueders projection for a
/// non-singleton group). Deterministic for a fixed seed.
CollapseSample sample_collapse(const hilbert::DensityState& rho,
                               const hilbert::ProjectiveMeasurement& measurement,
                               const hilbert::GeneratorBasis& basis, std::uint64_t seed);

/// Sample `index` of the stream that run_measurement_statistics consumes.
CollapseSample sample_collapse_at(const hilbert::DensityState& rho,
                                  const hilbert::ProjectiveMeasurement& measurement,
                                  const hilbert::GeneratorBasis& basis, std::uint64_t seed,
                                  std::uint64_t index);

/// Serial reference kernel: fine-outcome counts of n_samples collapses for a
/// measurement whose equilibrium weights are `equilibrium_weights`.
std::vector<std::uint64_t> sample_outcome_counts_serial(const Eigen::VectorXd& equilibrium_weights,
                                                        std::uint64_t n_samples,
                                                        std::uint64_t seed);

/// OpenMP kernel sharding the same per-sample substreams; counts are
/// bit-identical to the serial reference for every seed and thread count.
std::vector<std::uint64_t> sample_outcome_counts(const Eigen::VectorXd& equilibrium_weights,
                                                 std::uint64_t n_samples, std::uint64_t seed);

/// Aggregate Monte Carlo frequencies against the trace-formula oracle.
MeasurementStatistics run_measurement_statistics(const hilbert::DensityState& rho,
                                                 const hilbert::ProjectiveMeasurement& measurement,
                                                 const hilbert::GeneratorBasis& basis,
                                                 std::uint64_t n_samples, std::uint64_t seed,
                                                 Execution execution = Execution::parallel);

/// Distance on the state sphere vs distance between the corresponding
/// equilibrium points on the outcome simplex. The projection is 1-Lipschitz,
/// so the ratio is <= 1 and varies with where the pair sits: the geometric
/// footprint of categorical perception.
PerceptualWarp perceptual_warp(const hilbert::DensityState& rho1, const hilbert::DensityState& rho2,
                               const hilbert::ProjectiveMeasurement& measurement,
                               const hilbert::GeneratorBasis& basis);

} // namespace conceptua::ebr
