#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "conceptua/cli.hpp"

namespace {

using conceptua::cli::Report;
using conceptua::cli::RunConfig;

void emit(const Report& report, const std::string& output_path) {
  const std::string text = conceptua::cli::serialize_report(report);
  if (output_path.empty()) {
    std::cout << text;
  } else {
    conceptua::cli::write_text_file(output_path, text);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"conceptua: measurement simulation, interference fitting, CHSH analysis, "
               "rank-frequency fitting and step-counting time dilation"};
  app.require_subcommand(1);
  app.footer("Exit codes: 0 success, 2 parse error (flags or input files), "
             "3 validation error, 4 numeric failure.\n"
             "All runs are deterministic for fixed flags and --seed (default 0).");

  RunConfig config;
  std::string output_path;

  const auto add_common = [&](CLI::App* sub, bool with_seed) {
    sub->add_option("--output", output_path, "Write the JSON report here instead of stdout");
    if (with_seed) {
      sub->add_option("--seed", config.seed, "RNG seed (default 0)");
    }
  };

  CLI::App* ebr = app.add_subcommand(
      "ebr", "Simulate a projective measurement and compare against the analytic probabilities");
  ebr->add_option("--input", config.input_path,
                  "JSON file with 'state', 'measurement' and optional 'state_b'")
      ->required();
  ebr->add_option("--samples", config.samples, "Monte Carlo sample count (default 100000)");
  ebr->add_option("--emit-plot", config.emit_plot_path, "Write per-outcome table (TSV)");
  add_common(ebr, true);

  CLI::App* interference =
      app.add_subcommand("interference", "Analyze a disjunction dataset (CSV)");
  interference
      ->add_option("--input", config.input_path, "CSV file with exemplar,mu_a,mu_b,mu_obs")
      ->required();
  interference->add_option("--emit-plot", config.emit_plot_path,
                           "Write the four series (TSV): mu_a, mu_b, mixture, mu_obs");
  add_common(interference, true);

  CLI::App* bell = app.add_subcommand("bell", "CHSH analysis of four joint tables");
  bell->add_option("--input", config.input_path,
                   "JSON file with tables AB, ABp, ApB, ApBp (counts or probabilities)");
  bell->add_option("--singlet", config.singlet_angles,
                   "Generate singlet tables from angles a,a',b,b'")
      ->delimiter(',')
      ->expected(4);
  add_common(bell, true);

  CLI::App* cognitons = app.add_subcommand("cognitons", "Rank-frequency analysis of a text file");
  cognitons->add_option("--input", config.input_path, "UTF-8 text file")->required();
  cognitons->add_option("--top-k", config.top_k, "Zipf constancy window (default 3)");
  cognitons->add_flag("--keep-case", config.keep_case, "Do not lowercase tokens");
  cognitons->add_option("--min-len", config.min_len, "Minimum token length (default 1)");
  cognitons->add_option("--emit-plot", config.emit_plot_path,
                        "Write log-log points and fitted curves (TSV)");
  add_common(cognitons, true);

  CLI::App* dilation = app.add_subcommand("dilation", "Coordinate two step-counting processes");
  dilation->add_option("--na", config.n_a, "Step count of the slower process A")->required();
  dilation->add_option("--nb", config.n_b, "Step count of the faster process B (even)")
      ->required();
  dilation->add_option("--L", config.step_length, "Step length (default 1)");
  dilation->add_option("--c", config.speed, "Absolute speed (default 1)");
  dilation->add_option("--emit-plot", config.emit_plot_path, "Write both vertex lists (TSV)");
  add_common(dilation, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? conceptua::cli::kExitOk : conceptua::cli::kExitParseError;
  }

  try {
    if (ebr->parsed()) {
      emit(conceptua::cli::cmd_ebr(config), output_path);
    } else if (interference->parsed()) {
      emit(conceptua::cli::cmd_interference(config), output_path);
    } else if (bell->parsed()) {
      emit(conceptua::cli::cmd_bell(config), output_path);
    } else if (cognitons->parsed()) {
      emit(conceptua::cli::cmd_cognitons(config), output_path);
    } else if (dilation->parsed()) {
      emit(conceptua::cli::cmd_dilation(config), output_path);
    }
  } catch (const conceptua::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return conceptua::cli::kExitParseError;
  } catch (const conceptua::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return conceptua::cli::kExitValidationError;
  } catch (const conceptua::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return conceptua::cli::kExitNumericError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return conceptua::cli::kExitValidationError;
  }
  return conceptua::cli::kExitOk;
}
