#include "conceptua/dilation.hpp"

#include <cmath>
#include <string>

namespace conceptua::dilation {

void ConceptualProcess::validate() const {
  if (n_steps < 1) {
    throw ValidationError("process: n_steps must be >= 1");
  }
  if (!(step_length > 0.0)) {
    throw ValidationError("process: step length must be > 0");
  }
  if (!(speed > 0.0)) {
    throw ValidationError("process: speed must be > 0");
  }
}

void SpacetimeTrajectory::validate() const {
  if (vertices.size() < 2) {
    throw ValidationError("trajectory: needs at least 2 vertices");
  }
  if (vertices.front().t != 0.0 || vertices.front().x != 0.0) {
    throw ValidationError("trajectory: must start at the origin");
  }
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (!(vertices[i].t > vertices[i - 1].t)) {
      throw ValidationError("trajectory: t must be strictly increasing");
    }
  }
}

CoordinationResult coordinate(int n_a, int n_b, double step_length, double speed) {
  if (n_b < 2 || n_a < n_b) {
    throw ValidationError("coordinate: requires n_a >= n_b >= 2");
  }
  if (n_b % 2 != 0) {
    throw ValidationError("coordinate: n_b must be even; an odd step count cannot split "
                          "into equal outward and return legs that close at x = 0");
  }
  const ConceptualProcess process_a{n_a, step_length, speed};
  const ConceptualProcess process_b{n_b, step_length, speed};
  process_a.validate();
  process_b.validate();

  const double tau = process_a.step_duration();
  const double ratio = static_cast<double>(n_b) / static_cast<double>(n_a);

  CoordinationResult result;
  result.velocity = speed * std::sqrt(1.0 - ratio * ratio);
  result.gamma = static_cast<double>(n_a) / static_cast<double>(n_b);

  result.trajectory_a.vertices.reserve(n_a + 1);
  for (int k = 0; k <= n_a; ++k) {
    result.trajectory_a.vertices.push_back({static_cast<double>(k) * tau, 0.0});
  }

  // B's vertices at t_k = (k n_a / n_b) tau; outward leg to the midpoint,
  // return leg mirrored so the last vertex lands on x = 0 exactly.
  const double total_time = static_cast<double>(n_a) * tau;
  result.trajectory_b.vertices.reserve(n_b + 1);
  for (int k = 0; k <= n_b; ++k) {
    const double t = static_cast<double>(k) * static_cast<double>(n_a) /
                     static_cast<double>(n_b) * tau;
    const double x = (2 * k <= n_b) ? result.velocity * t : result.velocity * (total_time - t);
    result.trajectory_b.vertices.push_back({t, x});
  }

  result.trajectory_a.validate();
  result.trajectory_b.validate();

  const auto& vb = result.trajectory_b.vertices;
  for (std::size_t i = 1; i < vb.size(); ++i) {
    const double ct = speed * (vb[i].t - vb[i - 1].t);
    const double dx = vb[i].x - vb[i - 1].x;
    result.step_minkowski_lengths_b.push_back(std::sqrt(ct * ct - dx * dx));
  }
  return result;
}

double minkowski_length(const SpacetimeTrajectory& trajectory, double speed) {
  if (!(speed > 0.0)) {
    throw ValidationError("minkowski_length: speed must be > 0");
  }
  if (trajectory.vertices.size() < 2) {
    throw ValidationError("minkowski_length: trajectory needs at least 2 vertices");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < trajectory.vertices.size(); ++i) {
    const double dt = trajectory.vertices[i].t - trajectory.vertices[i - 1].t;
    if (!(dt > 0.0)) {
      throw ValidationError("minkowski_length: t must be strictly increasing");
    }
    const double ct = speed * dt;
    const double dx = trajectory.vertices[i].x - trajectory.vertices[i - 1].x;
    if (ct <= std::abs(dx)) {
      throw ValidationError("minkowski_length: segment " + std::to_string(i - 1) +
                            " is not timelike");
    }
    total += std::sqrt(ct * ct - dx * dx);
  }
  return total;
}

double euclidean_length(const SpacetimeTrajectory& trajectory, double speed) {
  if (!(speed > 0.0)) {
    throw ValidationError("euclidean_length: speed must be > 0");
  }
  if (trajectory.vertices.size() < 2) {
    throw ValidationError("euclidean_length: trajectory needs at least 2 vertices");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < trajectory.vertices.size(); ++i) {
    const double dt = trajectory.vertices[i].t - trajectory.vertices[i - 1].t;
    if (!(dt > 0.0)) {
      throw ValidationError("euclidean_length: t must be strictly increasing");
    }
    const double ct = speed * dt;
    const double dx = trajectory.vertices[i].x - trajectory.vertices[i - 1].x;
    total += std::sqrt(ct * ct + dx * dx);
  }
  return total;
}

double dilation_factor(double velocity, double speed) {
  if (!(speed > 0.0)) {
    throw ValidationError("dilation_factor: speed must be > 0");
  }
  const double beta = velocity / speed;
  if (std::abs(beta) >= 1.0) {
    throw ValidationError("dilation_factor: |v| must be below c");
  }
  return 1.0 / std::sqrt(1.0 - beta * beta);
}

} // namespace conceptua::dilation
