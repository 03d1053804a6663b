#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conceptua/errors.hpp"

namespace conceptua::cognitons {

struct TokenizerConfig {
  bool lowercase = true;    // fold ASCII letters
  int min_length = 1;       // drop shorter tokens (bytes)
};

/// Word frequencies ranked by descending count, ties broken alphabetically.
/// The energy level of a word is its rank, starting at 1 so the log-log plot
/// is defined everywhere.
struct RankRow {
  std::string word;
  std::uint64_t count = 0;
  int rank = 0;
  double energy = 0.0;
};

struct RankFrequencyTable {
  std::vector<RankRow> rows;
  std::uint64_t total_tokens = 0;
};

struct ZipfReport {
  std::vector<double> products; // rank * count, one per row
  int top_k = 3;
  double max_min_ratio = 1.0;   // over the first top_k products
};

struct MaxwellBoltzmannFit {
  double c = 0.0;        // N(E) = c exp(-E / b)
  double b = 0.0;
  double sse_log = 0.0;  // sum of squared residuals in log N
  int n_points = 0;
};

struct BoseEinsteinFit {
  double a = 0.0;        // N(E) = a / (exp((E - mu) / b) - 1)
  double b = 0.0;
  double mu = 0.0;       // constrained below the lowest energy level 1
  double sse_log = 0.0;
  int n_points = 0;
  bool converged = false;
  int iterations = 0;
};

enum class FitWinner { bose_einstein, maxwell_boltzmann };

struct FitComparison {
  BoseEinsteinFit be;
  MaxwellBoltzmannFit mb;
  FitWinner winner = FitWinner::bose_einstein;
  bool tie = false; // sse difference below 1e-12; BE wins by convention
};

/// Splits text into word tokens: ASCII alphanumerics (and bytes >= 0x80, so
/// UTF-8 sequences stay intact) are word characters, hyphens join only when
/// flanked by word characters, everything else separates.
std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config = {});

/// Empty token list -> empty-corpus error.
RankFrequencyTable rank_table(const std::vector<std::string>& tokens);

ZipfReport zipf_products(const RankFrequencyTable& table, int top_k = 3);

/// Ordinary least squares of log N against E (closed form). Requires at
/// least 3 points and a decaying profile.
MaxwellBoltzmannFit fit_maxwell_boltzmann(std::span<const double> energies,
                                          std::span<const double> counts);
MaxwellBoltzmannFit fit_maxwell_boltzmann(const RankFrequencyTable& table);

/// Damped Gauss-Newton in log space over (log a, b, s) with mu = 1 - exp(s),
/// multi-started on a 3x3 grid of (s, b) with a seeded from the rank-1 count.
/// A start converges when the applied step norm drops below 1e-10 within 200
/// iterations; if no start converges the error carries the best parameters
/// found.
BoseEinsteinFit fit_bose_einstein(std::span<const double> energies,
                                  std::span<const double> counts);
BoseEinsteinFit fit_bose_einstein(const RankFrequencyTable& table);

FitComparison compare_fits(const RankFrequencyTable& table);

/// Fitted log N(E); finite and exp(result) > 0 for every energy above mu.
double predict_log_count(const MaxwellBoltzmannFit& fit, double energy);
double predict_log_count(const BoseEinsteinFit& fit, double energy);

} // namespace conceptua::cognitons
