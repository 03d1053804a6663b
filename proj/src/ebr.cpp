#include "conceptua/ebr.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>

namespace conceptua::ebr {

namespace {

constexpr int kMaxOutcomes = 32;

double coords_scale(int n) { return std::sqrt(n / (2.0 * (n - 1))); }
double state_scale(int n) { return std::sqrt((n - 1) / (2.0 * n)); }

Eigen::VectorXd bloch_coords(const hilbert::ComplexMatrix& state,
                             const hilbert::GeneratorBasis& basis) {
  const int n = basis.dim();
  const double scale = coords_scale(n);
  Eigen::VectorXd coords(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    coords(i) = scale * (state * basis.generators()[i]).trace().real();
  }
  return coords;
}

/// Sub-simplex membership on raw buffers. For candidate i the barycentric
/// coordinates of `beta` with respect to conv({r_e} union {v_k : k != i})
/// are t = beta_i / p_i on the apex r_e and s_k = beta_k - p_k t on the
/// remaining vertices; the point is a member when every coordinate is
/// >= -1e-12. The first passing candidate wins, which is the lowest-index
/// tie-break on boundaries.
int subregion_index(const double* beta, const double* weights, int n) {
  int top = 0;
  for (int i = 1; i < n; ++i) {
    if (weights[i] > weights[top]) {
      top = i;
    }
  }
  if (weights[top] >= 1.0 - kMembershipTol) {
    return top; // equilibrium at a vertex: the whole simplex is its subregion
  }
  for (int i = 0; i < n; ++i) {
    const double p = weights[i];
    if (p <= 1e-15) {
      continue; // zero-measure subregion
    }
    const double t = beta[i] / p;
    bool member = true;
    for (int k = 0; k < n; ++k) {
      if (k != i && beta[k] - weights[k] * t < -kMembershipTol) {
        member = false;
        break;
      }
    }
    if (member) {
      return i;
    }
  }
  // Roundoff pushed the point outside every tolerance band; smallest apex
  // coordinate is the limit of the membership test.
  int fallback = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (weights[i] > 1e-15 && beta[i] / weights[i] < best) {
      best = beta[i] / weights[i];
      fallback = i;
    }
  }
  return fallback;
}

void fill_uniform_barycentric(double* beta, int n, SplitMix64& rng) {
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    beta[k] = rng.exponential();
    total += beta[k];
  }
  if (total <= 0.0) {
    for (int k = 0; k < n; ++k) {
      beta[k] = 1.0 / n;
    }
    return;
  }
  for (int k = 0; k < n; ++k) {
    beta[k] /= total;
  }
}

int draw_outcome(const double* weights, int n, std::uint64_t seed, std::uint64_t index,
                 double* beta) {
  SplitMix64 rng(substream_seed(seed, index));
  fill_uniform_barycentric(beta, n, rng);
  return subregion_index(beta, weights, n);
}

void check_weights(const Eigen::VectorXd& weights) {
  if (weights.size() < 2 || weights.size() > kMaxOutcomes) {
    throw ValidationError("sampling kernel: outcome count out of supported range");
  }
  if (weights.minCoeff() < -kCorruptedStateTol || std::abs(weights.sum() - 1.0) > 1e-9) {
    throw ValidationError("sampling kernel: weights are not a probability vector");
  }
}

hilbert::DensityState eigenstate_of(const hilbert::ComplexMatrix& projector) {
  hilbert::ComplexMatrix h = 0.5 * (projector + projector.adjoint().eval());
  h /= h.trace().real();
  return hilbert::DensityState(std::move(h));
}

} // namespace

MeasurementSimplex::MeasurementSimplex(std::vector<BlochVector> vertices)
    : vertices_(std::move(vertices)) {
  const int n = static_cast<int>(vertices_.size());
  if (n < 2) {
    throw ValidationError("simplex: needs at least 2 vertices");
  }
  const int ambient = static_cast<int>(vertices_[0].coords.size());
  for (const auto& v : vertices_) {
    if (v.coords.size() != ambient) {
      throw ValidationError("simplex: vertices of mixed dimension");
    }
    if (std::abs(v.coords.norm() - 1.0) > kUnitNormTol) {
      throw ValidationError("simplex: vertex is not a unit vector within 1e-10");
    }
  }
  edges_.resize(ambient, n - 1);
  for (int i = 1; i < n; ++i) {
    edges_.col(i - 1) = vertices_[i].coords - vertices_[0].coords;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(edges_);
  if (svd.singularValues().minCoeff() <= kSimplexRankTol) {
    throw ValidationError("simplex: vertices are affinely dependent");
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(edges_);
  frame_ = qr.householderQ() * Eigen::MatrixXd::Identity(ambient, n - 1);
  solver_.compute(edges_);
}

Eigen::VectorXd MeasurementSimplex::project(const Eigen::VectorXd& ambient) const {
  if (ambient.size() != frame_.rows()) {
    throw ValidationError("simplex: ambient dimension mismatch");
  }
  const Eigen::VectorXd rel = ambient - vertices_[0].coords;
  return vertices_[0].coords + frame_ * (frame_.transpose() * rel);
}

Eigen::VectorXd MeasurementSimplex::barycentric(const Eigen::VectorXd& ambient_on_hull) const {
  if (ambient_on_hull.size() != frame_.rows()) {
    throw ValidationError("simplex: ambient dimension mismatch");
  }
  const Eigen::VectorXd rel = ambient_on_hull - vertices_[0].coords;
  const Eigen::VectorXd tail = solver_.solve(rel);
  if ((edges_ * tail - rel).norm() > kBarycentricResidualTol) {
    throw ValidationError("simplex: barycentric solve residual above 1e-8");
  }
  Eigen::VectorXd weights(outcome_count());
  weights(0) = 1.0 - tail.sum();
  weights.tail(outcome_count() - 1) = tail;
  return weights;
}

Eigen::VectorXd MeasurementSimplex::ambient(const Eigen::VectorXd& barycentric) const {
  if (barycentric.size() != outcome_count()) {
    throw ValidationError("simplex: barycentric dimension mismatch");
  }
  Eigen::VectorXd point = Eigen::VectorXd::Zero(frame_.rows());
  for (int i = 0; i < outcome_count(); ++i) {
    point += barycentric(i) * vertices_[i].coords;
  }
  return point;
}

BlochVector to_bloch(const hilbert::DensityState& rho, const hilbert::GeneratorBasis& basis) {
  if (rho.dim() != basis.dim()) {
    throw ValidationError("to_bloch: state and basis dimensions differ");
  }
  return BlochVector{rho.dim(), bloch_coords(rho.matrix(), basis)};
}

hilbert::DensityState from_bloch(const BlochVector& v, const hilbert::GeneratorBasis& basis) {
  const int n = basis.dim();
  if (v.coords.size() != basis.size()) {
    throw ValidationError("from_bloch: coordinate and basis dimensions differ");
  }
  const double scale = state_scale(n);
  hilbert::ComplexMatrix state = hilbert::ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  for (int i = 0; i < basis.size(); ++i) {
    state += scale * v.coords(i) * basis.generators()[i];
  }
  Eigen::SelfAdjointEigenSolver<hilbert::ComplexMatrix> solver(state, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("from_bloch: eigenvalue decomposition failed");
  }
  if (solver.eigenvalues().minCoeff() < -hilbert::kEigenvalueTol) {
    throw ValidationError("from_bloch: vector lies outside the state space (negative eigenvalue)");
  }
  return hilbert::DensityState(std::move(state));
}

MeasurementSimplex outcome_simplex(const hilbert::ProjectiveMeasurement& measurement,
                                   const hilbert::GeneratorBasis& basis) {
  if (measurement.dim() != basis.dim()) {
    throw ValidationError("outcome_simplex: measurement and basis dimensions differ");
  }
  std::vector<BlochVector> vertices;
  vertices.reserve(measurement.dim());
  for (const auto& projector : measurement.projectors()) {
    vertices.push_back(BlochVector{measurement.dim(), bloch_coords(projector, basis)});
  }
  return MeasurementSimplex(std::move(vertices));
}

EquilibriumPoint equilibrium_point(const BlochVector& v, const MeasurementSimplex& simplex) {
  if (v.coords.size() != simplex.ambient_dim()) {
    throw ValidationError("equilibrium_point: vector dimension mismatch");
  }
  Eigen::VectorXd ambient = simplex.project(v.coords);
  Eigen::VectorXd weights = simplex.barycentric(ambient);
  if (weights.minCoeff() < -kCorruptedStateTol) {
    throw ValidationError("equilibrium_point: projection falls outside the simplex; "
                          "input is not a valid state vector");
  }
  return EquilibriumPoint{std::move(ambient), std::move(weights)};
}

Eigen::VectorXd born_from_ebr(const hilbert::DensityState& rho,
                              const hilbert::ProjectiveMeasurement& measurement,
                              const hilbert::GeneratorBasis& basis) {
  const MeasurementSimplex simplex = outcome_simplex(measurement, basis);
  return equilibrium_point(to_bloch(rho, basis), simplex).barycentric;
}

int subregion_of(const SimplexPoint& lambda, const EquilibriumPoint& eq,
                 const MeasurementSimplex& simplex) {
  const int n = simplex.outcome_count();
  if (lambda.barycentric.size() != n || eq.barycentric.size() != n) {
    throw ValidationError("subregion_of: barycentric dimension mismatch");
  }
  if (lambda.barycentric.minCoeff() < -kMembershipTol ||
      std::abs(lambda.barycentric.sum() - 1.0) > 1e-9) {
    throw ValidationError("subregion_of: point lies outside the simplex");
  }
  return subregion_index(lambda.barycentric.data(), eq.barycentric.data(), n);
}

SimplexPoint uniform_simplex_point(int n, SplitMix64& rng) {
  if (n < 2 || n > kMaxOutcomes) {
    throw ValidationError("uniform_simplex_point: outcome count out of supported range");
  }
  Eigen::VectorXd beta(n);
  fill_uniform_barycentric(beta.data(), n, rng);
  return SimplexPoint{std::move(beta)};
}

CollapseSample sample_collapse_at(const hilbert::DensityState& rho,
                                  const hilbert::ProjectiveMeasurement& measurement,
                                  const hilbert::GeneratorBasis& basis, std::uint64_t seed,
                                  std::uint64_t index) {
  const int n = measurement.dim();
  const MeasurementSimplex simplex = outcome_simplex(measurement, basis);
  const EquilibriumPoint eq = equilibrium_point(to_bloch(rho, basis), simplex);

  SplitMix64 rng(substream_seed(seed, index));
  SimplexPoint lambda = uniform_simplex_point(n, rng);
  const int fine = subregion_index(lambda.barycentric.data(), eq.barycentric.data(), n);

  if (!measurement.groups()) {
    return CollapseSample{fine, std::move(lambda), eigenstate_of(measurement.projectors()[fine])};
  }
  const auto& groups = *measurement.groups();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int member : groups[g]) {
      if (member == fine) {
        auto post = groups[g].size() == 1
                        ? eigenstate_of(measurement.projectors()[fine])
                        : hilbert::lueders_update(rho, groups[g], measurement);
        return CollapseSample{static_cast<int>(g), std::move(lambda), std::move(post)};
      }
    }
  }
  throw ValidationError("sample_collapse: outcome not covered by any group");
}

CollapseSample sample_collapse(const hilbert::DensityState& rho,
                               const hilbert::ProjectiveMeasurement& measurement,
                               const hilbert::GeneratorBasis& basis, std::uint64_t seed) {
  return sample_collapse_at(rho, measurement, basis, seed, 0);
}

std::vector<std::uint64_t> sample_outcome_counts_serial(const Eigen::VectorXd& equilibrium_weights,
                                                        std::uint64_t n_samples,
                                                        std::uint64_t seed) {
  check_weights(equilibrium_weights);
  const int n = static_cast<int>(equilibrium_weights.size());
  std::vector<std::uint64_t> counts(n, 0);
  double beta[kMaxOutcomes];
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    ++counts[draw_outcome(equilibrium_weights.data(), n, seed, i, beta)];
  }
  return counts;
}

std::vector<std::uint64_t> sample_outcome_counts(const Eigen::VectorXd& equilibrium_weights,
                                                 std::uint64_t n_samples, std::uint64_t seed) {
#ifdef CONCEPTUA_HAVE_OPENMP
  check_weights(equilibrium_weights);
  const int n = static_cast<int>(equilibrium_weights.size());
  const double* weights = equilibrium_weights.data();
  std::vector<std::uint64_t> counts(n, 0);
  const std::int64_t total = static_cast<std::int64_t>(n_samples);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(n, 0);
    double beta[kMaxOutcomes];
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
      ++local[draw_outcome(weights, n, seed, static_cast<std::uint64_t>(i), beta)];
    }
#pragma omp critical
    {
      for (int k = 0; k < n; ++k) {
        counts[k] += local[k];
      }
    }
  }
  return counts;
#else
  return sample_outcome_counts_serial(equilibrium_weights, n_samples, seed);
#endif
}

MeasurementStatistics run_measurement_statistics(const hilbert::DensityState& rho,
                                                 const hilbert::ProjectiveMeasurement& measurement,
                                                 const hilbert::GeneratorBasis& basis,
                                                 std::uint64_t n_samples, std::uint64_t seed,
                                                 Execution execution) {
  if (n_samples < 1) {
    throw ValidationError("run_measurement_statistics: n_samples must be >= 1");
  }
  MeasurementStatistics stats;
  stats.n_samples = n_samples;
  stats.seed = seed;
  stats.born_oracle = hilbert::born_probability(rho, measurement);
  stats.ebr_barycentric = born_from_ebr(rho, measurement, basis);

  const std::vector<std::uint64_t> fine_counts =
      execution == Execution::serial
          ? sample_outcome_counts_serial(stats.ebr_barycentric, n_samples, seed)
          : sample_outcome_counts(stats.ebr_barycentric, n_samples, seed);

  hilbert::OutcomeGroups groups;
  if (measurement.groups()) {
    groups = *measurement.groups();
  } else {
    for (int i = 0; i < measurement.dim(); ++i) {
      groups.push_back({i});
    }
  }
  for (const auto& members : groups) {
    OutcomeStatistics row;
    row.members = members;
    row.probability = hilbert::group_probability(stats.born_oracle, members);
    for (int member : members) {
      row.count += fine_counts[member];
    }
    row.frequency = static_cast<double>(row.count) / static_cast<double>(n_samples);
    const double sigma =
        std::sqrt(row.probability * (1.0 - row.probability) / static_cast<double>(n_samples));
    if (sigma > 0.0) {
      row.z_score = (row.frequency - row.probability) / sigma;
    } else {
      row.z_score = row.frequency == row.probability
                        ? 0.0
                        : std::numeric_limits<double>::infinity();
    }
    stats.outcomes.push_back(std::move(row));
  }
  return stats;
}

PerceptualWarp perceptual_warp(const hilbert::DensityState& rho1, const hilbert::DensityState& rho2,
                               const hilbert::ProjectiveMeasurement& measurement,
                               const hilbert::GeneratorBasis& basis) {
  if (rho1.dim() != rho2.dim()) {
    throw ValidationError("perceptual_warp: state dimensions differ");
  }
  const MeasurementSimplex simplex = outcome_simplex(measurement, basis);
  const BlochVector v1 = to_bloch(rho1, basis);
  const BlochVector v2 = to_bloch(rho2, basis);
  const EquilibriumPoint e1 = equilibrium_point(v1, simplex);
  const EquilibriumPoint e2 = equilibrium_point(v2, simplex);

  PerceptualWarp warp;
  warp.surface_distance = (v1.coords - v2.coords).norm();
  warp.equilibrium_distance = (e1.ambient - e2.ambient).norm();
  warp.ratio_defined = warp.surface_distance >= 1e-12;
  warp.ratio = warp.ratio_defined ? warp.equilibrium_distance / warp.surface_distance : 0.0;
  return warp;
}

} // namespace conceptua::ebr
