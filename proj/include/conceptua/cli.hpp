#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "conceptua/errors.hpp"

namespace conceptua::cli {

/// Structured result document. ordered_json keeps insertion order, so a
/// report serializes to the same bytes on every run with the same inputs.
using Report = nlohmann::ordered_json;

inline constexpr const char* kToolName = "conceptua";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportFormatVersion = "1";

inline constexpr int kExitOk = 0;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitValidationError = 3;
inline constexpr int kExitNumericError = 4;

struct RunConfig {
  std::uint64_t seed = 0;
  std::uint64_t samples = 100000;
  std::string input_path;
  std::string emit_plot_path;
  int top_k = 3;
  bool keep_case = false;
  int min_len = 1;
  std::vector<double> singlet_angles; // empty, or a, a', b, b'
  int n_a = 0;
  int n_b = 0;
  double step_length = 1.0;
  double speed = 1.0;
};

/// Seeded collapse simulation against the trace-formula oracle; adds a
/// perceptual-warp block when the input file carries a second state.
Report cmd_ebr(const RunConfig& config);

/// Disjunction analysis of an exemplar table: mixture, deviations, phases,
/// over/underextension tags, consistency diagnostic.
Report cmd_interference(const RunConfig& config);

/// CHSH correlators from four joint tables, or from analytic singlet tables
/// when --singlet angles are given.
Report cmd_bell(const RunConfig& config);

/// Rank-frequency analysis of a text corpus with Zipf products and
/// Bose-Einstein vs Maxwell-Boltzmann fits.
Report cmd_cognitons(const RunConfig& config);

/// Two-process spacetime coordination with Minkowski/Euclidean path lengths.
Report cmd_dilation(const RunConfig& config);

std::string serialize_report(const Report& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Full-precision decimal form (%.17g): parsing it back recovers the double
/// bit for bit.
std::string format_double(double value);

} // namespace conceptua::cli
