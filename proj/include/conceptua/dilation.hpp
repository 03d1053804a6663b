#pragma once

#include <vector>

#include "conceptua/errors.hpp"

namespace conceptua::dilation {

/// A reasoning process of n equal steps traversed at absolute speed c, each
/// step of length L, so each step lasts tau = L / c.
struct ConceptualProcess {
  int n_steps = 0;
  double step_length = 0.0;
  double speed = 0.0;

  void validate() const;
  double step_duration() const { return step_length / speed; }
};

struct SpacetimeVertex {
  double t = 0.0;
  double x = 0.0;
};

/// Piecewise-linear worldline in the coordinating observer's frame; starts at
/// the origin with strictly increasing t.
struct SpacetimeTrajectory {
  std::vector<SpacetimeVertex> vertices;

  void validate() const;
};

struct CoordinationResult {
  double velocity = 0.0; // spatial speed attached to the faster process
  double gamma = 0.0;    // equals n_a / n_b
  SpacetimeTrajectory trajectory_a;
  SpacetimeTrajectory trajectory_b;
  std::vector<double> step_minkowski_lengths_b; // each equals the step length
};

/// Coordinates an n_a-step process and an n_b-step process in one frame:
/// A runs up the time axis, B takes an outward-and-return spatial detour at
/// speed v = c sqrt(1 - (n_b/n_a)^2), chosen so both processes share the
/// per-step proper length L. n_b must be even so the two legs close at x = 0.
CoordinationResult coordinate(int n_a, int n_b, double step_length, double speed);

/// Sum over segments of sqrt(c^2 dt^2 - dx^2); every segment must be
/// timelike (c dt > |dx|).
double minkowski_length(const SpacetimeTrajectory& trajectory, double speed);

/// Sum over segments of sqrt(c^2 dt^2 + dx^2), the time axis measured in
/// length units.
double euclidean_length(const SpacetimeTrajectory& trajectory, double speed);

/// gamma = 1 / sqrt(1 - v^2/c^2) for |v| < c.
double dilation_factor(double velocity, double speed);

} // namespace conceptua::dilation
