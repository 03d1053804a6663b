#include "conceptua/cognitons.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace conceptua::cognitons {

namespace {

// log(exp(u) - 1), stable across the whole u > 0 range
double log_expm1(double u) { return u > 30.0 ? u : std::log(std::expm1(u)); }

// d/du log(exp(u) - 1) = 1 / (1 - exp(-u))
double log_expm1_prime(double u) { return 1.0 / (1.0 - std::exp(-u)); }

void check_series(std::span<const double> energies, std::span<const double> counts,
                  std::size_t min_points, const char* what) {
  if (energies.size() != counts.size()) {
    throw ValidationError(std::string(what) + ": energy and count lengths differ");
  }
  if (energies.size() < min_points) {
    throw ValidationError(std::string(what) + ": needs at least " +
                          std::to_string(min_points) + " points");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (!(counts[i] > 0.0)) {
      throw ValidationError(std::string(what) + ": counts must be positive");
    }
    if (!(energies[i] > 0.0)) {
      throw ValidationError(std::string(what) + ": energies must be positive");
    }
  }
}

struct BeObjective {
  std::span<const double> energies;
  std::span<const double> log_counts;

  double sse(double alpha, double b, double s) const {
    const double mu = 1.0 - std::exp(s);
    double total = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
      const double u = (energies[i] - mu) / b;
      const double r = alpha - log_expm1(u) - log_counts[i];
      total += r * r;
    }
    return total;
  }
};

} // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
  if (config.min_length < 1) {
    throw ValidationError("tokenizer: min_length must be >= 1");
  }
  const auto is_word = [](unsigned char ch) { return std::isalnum(ch) != 0 || ch >= 0x80; };

  std::vector<std::string> tokens;
  std::string current;
  const auto flush = [&]() {
    if (static_cast<int>(current.size()) >= config.min_length) {
      tokens.push_back(current);
    }
    current.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char ch = static_cast<unsigned char>(text[i]);
    if (is_word(ch)) {
      if (config.lowercase && ch < 0x80) {
        current.push_back(static_cast<char>(std::tolower(ch)));
      } else {
        current.push_back(static_cast<char>(ch));
      }
    } else if (ch == '-' && !current.empty() && i + 1 < text.size() &&
               is_word(static_cast<unsigned char>(text[i + 1]))) {
      current.push_back('-');
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

RankFrequencyTable rank_table(const std::vector<std::string>& tokens) {
  if (tokens.empty()) {
    throw ValidationError("rank_table: empty corpus");
  }
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& token : tokens) {
    ++counts[token];
  }
  RankFrequencyTable table;
  table.total_tokens = tokens.size();
  table.rows.reserve(counts.size());
  for (auto& [word, count] : counts) {
    table.rows.push_back(RankRow{word, count, 0, 0.0});
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const RankRow& lhs, const RankRow& rhs) {
    if (lhs.count != rhs.count) {
      return lhs.count > rhs.count;
    }
    return lhs.word < rhs.word;
  });
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    table.rows[i].rank = static_cast<int>(i + 1);
    table.rows[i].energy = static_cast<double>(i + 1);
  }
  return table;
}

ZipfReport zipf_products(const RankFrequencyTable& table, int top_k) {
  if (table.rows.empty()) {
    throw ValidationError("zipf_products: empty table");
  }
  if (top_k < 1) {
    throw ValidationError("zipf_products: top_k must be >= 1");
  }
  ZipfReport report;
  report.top_k = top_k;
  report.products.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    report.products.push_back(static_cast<double>(row.rank) * static_cast<double>(row.count));
  }
  const std::size_t k = std::min<std::size_t>(top_k, report.products.size());
  double lo = report.products[0];
  double hi = report.products[0];
  for (std::size_t i = 1; i < k; ++i) {
    lo = std::min(lo, report.products[i]);
    hi = std::max(hi, report.products[i]);
  }
  report.max_min_ratio = hi / lo;
  return report;
}

MaxwellBoltzmannFit fit_maxwell_boltzmann(std::span<const double> energies,
                                          std::span<const double> counts) {
  check_series(energies, counts, 3, "fit_maxwell_boltzmann");
  const std::size_t n = energies.size();

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += energies[i];
    mean_y += std::log(counts[i]);
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = energies[i] - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(counts[i]) - mean_y);
  }
  if (sxx <= 0.0) {
    throw NumericError("fit_maxwell_boltzmann: degenerate design, all energies equal");
  }
  const double slope = sxy / sxx;
  if (slope >= 0.0) {
    throw NumericError("fit_maxwell_boltzmann: counts do not decay with energy");
  }
  const double intercept = mean_y - slope * mean_x;

  MaxwellBoltzmannFit fit;
  fit.b = -1.0 / slope;
  fit.c = std::exp(intercept);
  fit.n_points = static_cast<int>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = std::log(counts[i]) - (intercept + slope * energies[i]);
    fit.sse_log += r * r;
  }
  return fit;
}

MaxwellBoltzmannFit fit_maxwell_boltzmann(const RankFrequencyTable& table) {
  std::vector<double> energies;
  std::vector<double> counts;
  for (const auto& row : table.rows) {
    energies.push_back(row.energy);
    counts.push_back(static_cast<double>(row.count));
  }
  return fit_maxwell_boltzmann(energies, counts);
}

BoseEinsteinFit fit_bose_einstein(std::span<const double> energies,
                                  std::span<const double> counts) {
  check_series(energies, counts, 4, "fit_bose_einstein");
  const std::size_t n = energies.size();

  std::vector<double> log_counts(n);
  double e_min = energies[0];
  double e_max = energies[0];
  double count_at_min = counts[0];
  for (std::size_t i = 0; i < n; ++i) {
    log_counts[i] = std::log(counts[i]);
    if (energies[i] < e_min) {
      e_min = energies[i];
      count_at_min = counts[i];
    }
    e_max = std::max(e_max, energies[i]);
  }
  const BeObjective objective{energies, std::span<const double>(log_counts)};

  const double s_starts[3] = {-2.0, 0.0, 2.0};
  const double b_starts[3] = {1.0, e_max / 4.0, e_max};

  BoseEinsteinFit best;
  best.sse_log = std::numeric_limits<double>::infinity();
  BoseEinsteinFit best_any = best;

  for (double s0 : s_starts) {
    for (double b0 : b_starts) {
      const double mu0 = 1.0 - std::exp(s0);
      double alpha = std::log(count_at_min) + log_expm1((e_min - mu0) / b0);
      double b = b0;
      double s = s0;
      double sse = objective.sse(alpha, b, s);
      bool converged = false;
      int iter = 0;

      for (; iter < 200; ++iter) {
        const double mu = 1.0 - std::exp(s);
        Eigen::Matrix3d hessian = Eigen::Matrix3d::Zero();
        Eigen::Vector3d gradient = Eigen::Vector3d::Zero();
        for (std::size_t i = 0; i < n; ++i) {
          const double u = (energies[i] - mu) / b;
          const double r = alpha - log_expm1(u) - log_counts[i];
          const double gp = log_expm1_prime(u);
          Eigen::Vector3d jac(1.0, u * gp / b, -std::exp(s) * gp / b);
          hessian += jac * jac.transpose();
          gradient += jac * r;
        }
        const Eigen::Vector3d step = hessian.ldlt().solve(-gradient);
        if (!step.allFinite()) {
          break;
        }

        double factor = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 30; ++halving, factor *= 0.5) {
          const double alpha_try = alpha + factor * step(0);
          const double b_try = b + factor * step(1);
          const double s_try = s + factor * step(2);
          if (!(b_try > 1e-12) || std::abs(s_try) > 40.0) {
            continue;
          }
          const double sse_try = objective.sse(alpha_try, b_try, s_try);
          if (std::isfinite(sse_try) && sse_try < sse) {
            alpha = alpha_try;
            b = b_try;
            s = s_try;
            sse = sse_try;
            accepted = true;
            break;
          }
        }
        if (!accepted) {
          converged = true; // no improving step of any size: stationary
          break;
        }
        if (factor * step.norm() < 1e-10) {
          converged = true;
          break;
        }
      }

      BoseEinsteinFit fit;
      fit.a = std::exp(alpha);
      fit.b = b;
      fit.mu = 1.0 - std::exp(s);
      fit.sse_log = sse;
      fit.n_points = static_cast<int>(n);
      fit.converged = converged;
      fit.iterations = iter;
      if (fit.sse_log < best_any.sse_log) {
        best_any = fit;
      }
      if (converged && fit.sse_log < best.sse_log) {
        best = fit;
      }
    }
  }

  if (!best.converged) {
    throw NumericError("fit_bose_einstein: no start converged; best so far a=" +
                       std::to_string(best_any.a) + " b=" + std::to_string(best_any.b) +
                       " mu=" + std::to_string(best_any.mu) +
                       " sse_log=" + std::to_string(best_any.sse_log));
  }
  return best;
}

BoseEinsteinFit fit_bose_einstein(const RankFrequencyTable& table) {
  std::vector<double> energies;
  std::vector<double> counts;
  for (const auto& row : table.rows) {
    energies.push_back(row.energy);
    counts.push_back(static_cast<double>(row.count));
  }
  return fit_bose_einstein(energies, counts);
}

double predict_log_count(const MaxwellBoltzmannFit& fit, double energy) {
  return std::log(fit.c) - energy / fit.b;
}

double predict_log_count(const BoseEinsteinFit& fit, double energy) {
  if (!(energy > fit.mu)) {
    throw ValidationError("predict_log_count: energy must be above mu");
  }
  return std::log(fit.a) - log_expm1((energy - fit.mu) / fit.b);
}

FitComparison compare_fits(const RankFrequencyTable& table) {
  FitComparison comparison;
  comparison.mb = fit_maxwell_boltzmann(table);
  comparison.be = fit_bose_einstein(table);
  const double difference = comparison.be.sse_log - comparison.mb.sse_log;
  if (std::abs(difference) <= 1e-12) {
    comparison.winner = FitWinner::bose_einstein;
    comparison.tie = true;
  } else {
    comparison.winner =
        difference < 0.0 ? FitWinner::bose_einstein : FitWinner::maxwell_boltzmann;
  }
  return comparison;
}

} // namespace conceptua::cognitons
