#include "conceptua/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace conceptua::hilbert {

namespace {

using Complex = std::complex<double>;

double hermitian_deviation(const ComplexMatrix& m) {
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigenvalue decomposition failed");
  }
  return solver.eigenvalues().minCoeff();
}

void check_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 2) {
    throw ValidationError(std::string(what) + ": matrix must be square with dimension >= 2");
  }
}

void check_groups(const OutcomeGroups& groups, int dim) {
  std::vector<int> seen(dim, 0);
  if (groups.empty()) {
    throw ValidationError("outcome groups: empty partition");
  }
  for (const auto& group : groups) {
    if (group.empty()) {
      throw ValidationError("outcome groups: empty group");
    }
    for (int idx : group) {
      if (idx < 0 || idx >= dim) {
        throw ValidationError("outcome groups: index " + std::to_string(idx) + " out of range");
      }
      if (seen[idx]++) {
        throw ValidationError("outcome groups: index " + std::to_string(idx) + " repeated");
      }
    }
  }
  for (int i = 0; i < dim; ++i) {
    if (!seen[i]) {
      throw ValidationError("outcome groups: index " + std::to_string(i) + " not covered");
    }
  }
}

} // namespace

DensityState::DensityState(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  check_square(matrix_, "density state");
  if (hermitian_deviation(matrix_) > kHermitianTol) {
    throw ValidationError("density state: not Hermitian within 1e-12");
  }
  if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > kTraceTol) {
    throw ValidationError("density state: trace differs from 1 by more than 1e-12");
  }
  if (min_eigenvalue(matrix_) < -kEigenvalueTol) {
    throw ValidationError("density state: eigenvalue below -1e-10");
  }
}

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<ComplexMatrix> projectors,
                                             std::optional<OutcomeGroups> groups)
    : projectors_(std::move(projectors)), groups_(std::move(groups)) {
  const int n = static_cast<int>(projectors_.size());
  if (n < 2) {
    throw ValidationError("measurement: needs at least 2 projectors");
  }
  for (const auto& p : projectors_) {
    check_square(p, "measurement projector");
    if (p.rows() != n) {
      throw ValidationError("measurement: projector count must equal dimension");
    }
    if (hermitian_deviation(p) > kProjectorTol) {
      throw ValidationError("measurement: projector not Hermitian within 1e-10");
    }
    if ((p * p - p).cwiseAbs().maxCoeff() > kProjectorTol) {
      throw ValidationError("measurement: projector not idempotent within 1e-10");
    }
    if (std::abs(p.trace() - Complex(1.0, 0.0)) > kProjectorTol) {
      throw ValidationError("measurement: projector is not rank-1");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((projectors_[i] * projectors_[j]).cwiseAbs().maxCoeff() > kProjectorTol) {
        throw ValidationError("measurement: projectors not mutually orthogonal within 1e-10");
      }
    }
  }
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& p : projectors_) {
    sum += p;
  }
  if ((sum - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > kProjectorTol) {
    throw ValidationError("measurement: projectors do not sum to the identity within 1e-10");
  }
  if (groups_) {
    check_groups(*groups_, n);
  }
}

ProjectiveMeasurement ProjectiveMeasurement::from_basis_vectors(
    const std::vector<ComplexVector>& vectors, std::optional<OutcomeGroups> groups) {
  const int n = static_cast<int>(vectors.size());
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != n) {
      throw ValidationError("measurement: basis vector length must equal vector count");
    }
    const double norm = v.norm();
    if (norm <= 0.0) {
      throw ValidationError("measurement: zero basis vector");
    }
    ComplexVector u = v / norm;
    projectors.push_back(u * u.adjoint());
  }
  return ProjectiveMeasurement(std::move(projectors), std::move(groups));
}

ProjectiveMeasurement ProjectiveMeasurement::computational(int dim,
                                                           std::optional<OutcomeGroups> groups) {
  if (dim < 2) {
    throw ValidationError("measurement: dimension must be >= 2");
  }
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    p(i, i) = Complex(1.0, 0.0);
    projectors.push_back(std::move(p));
  }
  return ProjectiveMeasurement(std::move(projectors), std::move(groups));
}

GeneratorBasis::GeneratorBasis(int dim, std::vector<ComplexMatrix> generators)
    : dim_(dim), generators_(std::move(generators)) {
  if (dim_ < 2) {
    throw ValidationError("generator basis: dimension must be >= 2");
  }
  const int expected = dim_ * dim_ - 1;
  if (static_cast<int>(generators_.size()) != expected) {
    throw ValidationError("generator basis: expected " + std::to_string(expected) + " generators");
  }
  for (const auto& g : generators_) {
    if (g.rows() != dim_ || g.cols() != dim_) {
      throw ValidationError("generator basis: generator has wrong shape");
    }
    if (hermitian_deviation(g) > kGeneratorTol) {
      throw ValidationError("generator basis: generator not Hermitian within 1e-12");
    }
    if (std::abs(g.trace()) > kGeneratorTol) {
      throw ValidationError("generator basis: generator not traceless within 1e-12");
    }
  }
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (std::size_t j = i; j < generators_.size(); ++j) {
      const Complex inner = (generators_[i] * generators_[j]).trace();
      const double expected_inner = (i == j) ? 2.0 : 0.0;
      if (std::abs(inner - Complex(expected_inner, 0.0)) > kGeneratorTol) {
        throw ValidationError("generator basis: tr(L_i L_j) != 2 delta_ij within 1e-12");
      }
    }
  }
}

DensityState density_from_amplitudes(const ComplexVector& amplitudes) {
  if (amplitudes.size() < 2) {
    throw ValidationError("amplitudes: need at least 2 components");
  }
  const double norm = amplitudes.norm();
  if (norm <= 0.0) {
    throw ValidationError("amplitudes: zero vector");
  }
  ComplexVector u = amplitudes / norm;
  return DensityState(u * u.adjoint());
}

GeneratorBasis gell_mann_basis(int dim) {
  if (dim < 2) {
    throw ValidationError("gell_mann_basis: dimension must be >= 2");
  }
  const Complex i_unit(0.0, 1.0);
  std::vector<ComplexMatrix> generators;
  generators.reserve(static_cast<std::size_t>(dim) * dim - 1);

  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
      g(j, k) = Complex(1.0, 0.0);
      g(k, j) = Complex(1.0, 0.0);
      generators.push_back(std::move(g));
    }
  }
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
      g(j, k) = -i_unit;
      g(k, j) = i_unit;
      generators.push_back(std::move(g));
    }
  }
  for (int l = 1; l < dim; ++l) {
    // diag(1,...,1,-l,0,...)/sqrt(l(l+1)/2): traceless with tr(g^2) = 2
    ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
    const double scale = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
    for (int m = 0; m < l; ++m) {
      g(m, m) = Complex(scale, 0.0);
    }
    g(l, l) = Complex(-scale * l, 0.0);
    generators.push_back(std::move(g));
  }
  return GeneratorBasis(dim, std::move(generators));
}

Eigen::VectorXd born_probability(const DensityState& rho, const ProjectiveMeasurement& measurement) {
  if (rho.dim() != measurement.dim()) {
    throw ValidationError("born_probability: state and measurement dimensions differ");
  }
  const int n = rho.dim();
  Eigen::VectorXd probs(n);
  for (int i = 0; i < n; ++i) {
    probs(i) = (rho.matrix() * measurement.projectors()[i]).trace().real();
  }
  return probs;
}

DensityState lueders_update(const DensityState& rho, const std::vector<int>& group,
                            const ProjectiveMeasurement& measurement) {
  if (rho.dim() != measurement.dim()) {
    throw ValidationError("lueders_update: state and measurement dimensions differ");
  }
  if (group.empty()) {
    throw ValidationError("lueders_update: empty outcome group");
  }
  const int n = rho.dim();
  ComplexMatrix p_group = ComplexMatrix::Zero(n, n);
  for (int idx : group) {
    if (idx < 0 || idx >= n) {
      throw ValidationError("lueders_update: outcome index out of range");
    }
    p_group += measurement.projectors()[idx];
  }
  const double prob = (p_group * rho.matrix()).trace().real();
  if (prob <= kZeroProbabilityTol) {
    throw ValidationError("lueders_update: zero-probability outcome group");
  }
  ComplexMatrix updated = (p_group * rho.matrix() * p_group) / prob;
  return DensityState(std::move(updated));
}

double group_probability(const Eigen::VectorXd& fine_probabilities, const std::vector<int>& group) {
  double total = 0.0;
  for (int idx : group) {
    if (idx < 0 || idx >= fine_probabilities.size()) {
      throw ValidationError("group_probability: outcome index out of range");
    }
    total += fine_probabilities(idx);
  }
  return total;
}

} // namespace conceptua::hilbert
