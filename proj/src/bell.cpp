#include "conceptua/bell.hpp"

#include <algorithm>
#include <cmath>

namespace conceptua::bell {

void JointProbabilityTable::validate() const {
  if (p11 < 0.0 || p12 < 0.0 || p21 < 0.0 || p22 < 0.0) {
    throw ValidationError("joint table: negative probability");
  }
  if (std::abs(p11 + p12 + p21 + p22 - 1.0) > kTableSumTol) {
    throw ValidationError("joint table: probabilities do not sum to 1 within 1e-9");
  }
}

double expectation(const JointProbabilityTable& table) {
  table.validate();
  return table.p11 - table.p12 - table.p21 + table.p22;
}

ChshReport chsh(const JointProbabilityTable& ab, const JointProbabilityTable& ab_prime,
                const JointProbabilityTable& aprime_b, const JointProbabilityTable& aprime_bprime) {
  ChshReport report;
  report.e_ab = expectation(ab);
  report.e_ab_prime = expectation(ab_prime);
  report.e_aprime_b = expectation(aprime_b);
  report.e_aprime_bprime = expectation(aprime_bprime);
  report.s_value =
      report.e_aprime_bprime + report.e_aprime_b + report.e_ab_prime - report.e_ab;

  const double e[4] = {report.e_ab, report.e_ab_prime, report.e_aprime_b,
                       report.e_aprime_bprime};
  report.s_max_placement = -4.0;
  for (int mask = 0; mask < 16; ++mask) {
    if (__builtin_popcount(mask) % 2 == 0) {
      continue; // CHSH family: odd number of minus signs
    }
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
      s += (mask & (1 << i)) ? -e[i] : e[i];
    }
    report.s_max_placement = std::max(report.s_max_placement, s);
  }

  report.violates_classical = report.s_value > kClassicalBound + kClassicalSlack;
  report.exceeds_tsirelson = report.s_value > 2.0 * std::sqrt(2.0) + kTsirelsonSlack;
  return report;
}

JointProbabilityTable singlet_tables(double angle_a, double angle_b) {
  const double correlation = -std::cos(angle_a - angle_b);
  JointProbabilityTable table;
  table.p11 = table.p22 = 0.25 * (1.0 + correlation);
  table.p12 = table.p21 = 0.25 * (1.0 - correlation);
  return table;
}

JointProbabilityTable counts_to_table(const std::array<std::array<std::uint64_t, 2>, 2>& counts) {
  const double total = static_cast<double>(counts[0][0]) + static_cast<double>(counts[0][1]) +
                       static_cast<double>(counts[1][0]) + static_cast<double>(counts[1][1]);
  if (total <= 0.0) {
    throw ValidationError("counts_to_table: all counts are zero");
  }
  JointProbabilityTable table;
  table.p11 = static_cast<double>(counts[0][0]) / total;
  table.p12 = static_cast<double>(counts[0][1]) / total;
  table.p21 = static_cast<double>(counts[1][0]) / total;
  table.p22 = static_cast<double>(counts[1][1]) / total;
  return table;
}

} // namespace conceptua::bell
