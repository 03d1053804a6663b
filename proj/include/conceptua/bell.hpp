#pragma once

#include <array>
#include <cstdint>

#include "conceptua/errors.hpp"

namespace conceptua::bell {

inline constexpr double kTableSumTol = 1e-9;
inline constexpr double kClassicalBound = 2.0;
inline constexpr double kClassicalSlack = 1e-12;
inline constexpr double kTsirelsonSlack = 1e-9;

/// Joint outcome distribution of one coincidence experiment: p(i, j) for
/// outcomes i, j in {1, 2}. Nonnegative, unit sum within 1e-9.
struct JointProbabilityTable {
  double p11 = 0.0;
  double p12 = 0.0;
  double p21 = 0.0;
  double p22 = 0.0;

  void validate() const;
};

struct ChshReport {
  double e_ab = 0.0;
  double e_ab_prime = 0.0;
  double e_aprime_b = 0.0;
  double e_aprime_bprime = 0.0;
  /// E(A',B') + E(A',B) + E(A,B') - E(A,B).
  double s_value = 0.0;
  /// Maximum of the CHSH combination over the 8 placements of an odd number
  /// of minus signs. Convenience field: experimental conventions vary in
  /// which correlator carries the minus.
  double s_max_placement = 0.0;
  bool violates_classical = false;  // s_value > 2 beyond roundoff
  bool exceeds_tsirelson = false;   // s_value > 2 sqrt(2) beyond roundoff
};

/// E = p11 - p12 - p21 + p22, always in [-1, 1] for a valid table.
double expectation(const JointProbabilityTable& table);

/// CHSH analysis of the four joint measurements.
ChshReport chsh(const JointProbabilityTable& ab, const JointProbabilityTable& ab_prime,
                const JointProbabilityTable& aprime_b, const JointProbabilityTable& aprime_bprime);

/// Analytic singlet-state coincidence table for analyzer angles a and b:
/// E = -cos(a - b), p11 = p22 = (1+E)/4, p12 = p21 = (1-E)/4.
JointProbabilityTable singlet_tables(double angle_a, double angle_b);

/// Normalized frequencies from raw coincidence tallies.
JointProbabilityTable counts_to_table(const std::array<std::array<std::uint64_t, 2>, 2>& counts);

} // namespace conceptua::bell
