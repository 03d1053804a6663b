#include "conceptua/cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "conceptua/bell.hpp"
#include "conceptua/cognitons.hpp"
#include "conceptua/dilation.hpp"
#include "conceptua/ebr.hpp"
#include "conceptua/hilbert.hpp"
#include "conceptua/interference.hpp"

namespace conceptua::cli {

namespace {

using nlohmann::json;

json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::complex<double> complex_from_json(const json& value, const std::string& context) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
    throw ParseError(context + ": complex values are [re, im] pairs");
  }
  return {value[0].get<double>(), value[1].get<double>()};
}

hilbert::ComplexVector complex_vector_from_json(const json& value, const std::string& context) {
  if (!value.is_array() || value.empty()) {
    throw ParseError(context + ": expected a nonempty array of [re, im] pairs");
  }
  hilbert::ComplexVector vec(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    vec(static_cast<Eigen::Index>(i)) =
        complex_from_json(value[i], context + "[" + std::to_string(i) + "]");
  }
  return vec;
}

hilbert::DensityState state_from_json(const json& value, const std::string& context) {
  if (!value.is_object()) {
    throw ParseError(context + ": expected an object with 'amplitudes' or 'density'");
  }
  if (value.contains("amplitudes")) {
    return hilbert::density_from_amplitudes(
        complex_vector_from_json(value["amplitudes"], context + ".amplitudes"));
  }
  if (value.contains("density")) {
    const json& rows = value["density"];
    if (!rows.is_array() || rows.empty()) {
      throw ParseError(context + ".density: expected a square matrix of [re, im] pairs");
    }
    const std::size_t n = rows.size();
    hilbert::ComplexMatrix matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!rows[i].is_array() || rows[i].size() != n) {
        throw ParseError(context + ".density: row " + std::to_string(i) + " has wrong length");
      }
      for (std::size_t j = 0; j < n; ++j) {
        matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = complex_from_json(
            rows[i][j], context + ".density[" + std::to_string(i) + "][" + std::to_string(j) + "]");
      }
    }
    return hilbert::DensityState(std::move(matrix));
  }
  throw ParseError(context + ": needs either 'amplitudes' or 'density'");
}

hilbert::ProjectiveMeasurement measurement_from_json(const json& value) {
  if (!value.is_object() || !value.contains("vectors")) {
    throw ParseError("measurement: expected an object with 'vectors'");
  }
  const json& rows = value["vectors"];
  if (!rows.is_array() || rows.size() < 2) {
    throw ParseError("measurement.vectors: expected at least 2 basis vectors");
  }
  std::vector<hilbert::ComplexVector> vectors;
  vectors.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    vectors.push_back(
        complex_vector_from_json(rows[i], "measurement.vectors[" + std::to_string(i) + "]"));
  }
  std::optional<hilbert::OutcomeGroups> groups;
  if (value.contains("groups")) {
    const json& raw = value["groups"];
    if (!raw.is_array()) {
      throw ParseError("measurement.groups: expected an array of index arrays");
    }
    hilbert::OutcomeGroups parsed;
    for (const auto& group : raw) {
      if (!group.is_array()) {
        throw ParseError("measurement.groups: expected an array of index arrays");
      }
      std::vector<int> members;
      for (const auto& idx : group) {
        if (!idx.is_number_integer()) {
          throw ParseError("measurement.groups: indices must be integers");
        }
        members.push_back(idx.get<int>());
      }
      parsed.push_back(std::move(members));
    }
    groups = std::move(parsed);
  }
  return hilbert::ProjectiveMeasurement::from_basis_vectors(vectors, std::move(groups));
}

bell::JointProbabilityTable bell_table_from_json(const json& doc, const std::string& name) {
  if (!doc.contains(name)) {
    throw ValidationError("bell input: missing table '" + name + "'");
  }
  const json& value = doc[name];
  if (value.is_object() && value.contains("counts")) {
    const json& rows = value["counts"];
    if (!rows.is_array() || rows.size() != 2 || !rows[0].is_array() || rows[0].size() != 2 ||
        !rows[1].is_array() || rows[1].size() != 2) {
      throw ParseError("bell input: '" + name + "'.counts must be a 2x2 array");
    }
    std::array<std::array<std::uint64_t, 2>, 2> counts{};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const json& cell = rows[i][j];
        if (!cell.is_number_integer() || cell.get<std::int64_t>() < 0) {
          throw ParseError("bell input: '" + name + "'.counts must be nonnegative integers");
        }
        counts[i][j] = cell.get<std::uint64_t>();
      }
    }
    return bell::counts_to_table(counts);
  }
  if (value.is_object() && value.contains("probabilities")) {
    const json& rows = value["probabilities"];
    if (!rows.is_array() || rows.size() != 2 || !rows[0].is_array() || rows[0].size() != 2 ||
        !rows[1].is_array() || rows[1].size() != 2) {
      throw ParseError("bell input: '" + name + "'.probabilities must be a 2x2 array");
    }
    bell::JointProbabilityTable table;
    table.p11 = rows[0][0].get<double>();
    table.p12 = rows[0][1].get<double>();
    table.p21 = rows[1][0].get<double>();
    table.p22 = rows[1][1].get<double>();
    table.validate();
    return table;
  }
  throw ParseError("bell input: '" + name + "' needs 'counts' or 'probabilities'");
}

json table_to_json(const bell::JointProbabilityTable& table) {
  return json::array({json::array({table.p11, table.p12}), json::array({table.p21, table.p22})});
}

Report make_report(const std::string& subcommand, const RunConfig& config) {
  Report report;
  report["tool"] = kToolName;
  report["tool_version"] = kToolVersion;
  report["format_version"] = kReportFormatVersion;
  report["subcommand"] = subcommand;
  report["seed"] = config.seed;
  report["inputs"] = Report::object();
  return report;
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

double parse_double_field(const std::string& cell, const std::string& context) {
  const std::string trimmed = trim(cell);
  if (trimmed.empty()) {
    throw ParseError(context + ": empty numeric field");
  }
  char* end = nullptr;
  const double value = std::strtod(trimmed.c_str(), &end);
  if (end != trimmed.c_str() + trimmed.size()) {
    throw ParseError(context + ": bad numeric value '" + trimmed + "'");
  }
  return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream stream(line);
  while (std::getline(stream, cell, ',')) {
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') {
    cells.push_back("");
  }
  return cells;
}

interference::DisjunctionDataset dataset_from_csv(const std::string& path) {
  std::istringstream stream(read_text_file(path));
  std::string line;
  int line_number = 0;

  if (!std::getline(stream, line)) {
    throw ParseError(path + ": empty file");
  }
  ++line_number;
  const auto header = split_csv_line(trim(line));
  if (header.size() != 4 || trim(header[0]) != "exemplar" || trim(header[1]) != "mu_a" ||
      trim(header[2]) != "mu_b" || trim(header[3]) != "mu_obs") {
    throw ParseError(path + ":1: header must be 'exemplar,mu_a,mu_b,mu_obs'");
  }

  interference::DisjunctionDataset dataset;
  while (std::getline(stream, line)) {
    ++line_number;
    if (trim(line).empty()) {
      continue;
    }
    const auto cells = split_csv_line(line);
    const std::string context = path + ":" + std::to_string(line_number);
    if (cells.size() != 4) {
      throw ParseError(context + ": expected 4 columns");
    }
    dataset.exemplars.push_back(trim(cells[0]));
    dataset.mu_a.push_back(parse_double_field(cells[1], context + " (mu_a)"));
    dataset.mu_b.push_back(parse_double_field(cells[2], context + " (mu_b)"));
    dataset.mu_obs.push_back(parse_double_field(cells[3], context + " (mu_obs)"));
  }
  if (dataset.exemplars.empty()) {
    throw ParseError(path + ": no data rows");
  }

  // Human-edited columns are accepted within 1e-6 of unit sum and then
  // renormalized exactly so the dataset invariant (1e-9) holds downstream.
  const auto renormalize = [&](std::vector<double>& column, const char* name) {
    double sum = 0.0;
    for (double value : column) {
      if (value < 0.0) {
        throw ValidationError(path + ": column " + name + " has a negative entry");
      }
      sum += value;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw ValidationError(path + ": column " + name + " sums to " + std::to_string(sum) +
                            ", expected 1 within 1e-6");
    }
    for (double& value : column) {
      value /= sum;
    }
  };
  renormalize(dataset.mu_a, "mu_a");
  renormalize(dataset.mu_b, "mu_b");
  renormalize(dataset.mu_obs, "mu_obs");
  dataset.validate();
  return dataset;
}

void emit_plot_file(const std::string& path, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += header[i];
    out += (i + 1 < header.size()) ? '\t' : '\n';
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      out += (i + 1 < row.size()) ? '\t' : '\n';
    }
  }
  write_text_file(path, out);
}

} // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) {
    throw ParseError("cannot open file: " + path);
  }
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) {
    throw ParseError("cannot write file: " + path);
  }
  stream << content;
  if (!stream) {
    throw ParseError("failed writing file: " + path);
  }
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string serialize_report(const Report& report) { return report.dump(2) + "\n"; }

Report cmd_ebr(const RunConfig& config) {
  if (config.input_path.empty()) {
    throw ValidationError("ebr: --input is required");
  }
  const json doc = parse_json_file(config.input_path);
  if (!doc.contains("state")) {
    throw ParseError(config.input_path + ": missing field 'state'");
  }
  if (!doc.contains("measurement")) {
    throw ParseError(config.input_path + ": missing field 'measurement'");
  }
  const hilbert::DensityState rho = state_from_json(doc["state"], "state");
  const hilbert::ProjectiveMeasurement measurement = measurement_from_json(doc["measurement"]);
  const hilbert::GeneratorBasis basis = hilbert::gell_mann_basis(rho.dim());

  const ebr::MeasurementStatistics stats =
      ebr::run_measurement_statistics(rho, measurement, basis, config.samples, config.seed);

  Report report = make_report("ebr", config);
  report["inputs"]["input"] = config.input_path;
  report["inputs"]["samples"] = config.samples;
  if (!config.emit_plot_path.empty()) {
    report["inputs"]["emit_plot"] = config.emit_plot_path;
  }

  Report result;
  result["dim"] = rho.dim();
  result["born_oracle"] = std::vector<double>(
      stats.born_oracle.data(), stats.born_oracle.data() + stats.born_oracle.size());
  result["ebr_barycentric"] = std::vector<double>(
      stats.ebr_barycentric.data(), stats.ebr_barycentric.data() + stats.ebr_barycentric.size());
  result["outcomes"] = Report::array();
  for (const auto& row : stats.outcomes) {
    Report entry;
    entry["members"] = row.members;
    entry["probability"] = row.probability;
    entry["count"] = row.count;
    entry["frequency"] = row.frequency;
    entry["z_score"] = row.z_score;
    result["outcomes"].push_back(std::move(entry));
  }
  if (doc.contains("state_b")) {
    const hilbert::DensityState rho_b = state_from_json(doc["state_b"], "state_b");
    const ebr::PerceptualWarp warp = ebr::perceptual_warp(rho, rho_b, measurement, basis);
    Report block;
    block["surface_distance"] = warp.surface_distance;
    block["equilibrium_distance"] = warp.equilibrium_distance;
    block["ratio_defined"] = warp.ratio_defined;
    block["ratio"] = warp.ratio;
    result["warp"] = std::move(block);
  }
  report["result"] = std::move(result);

  if (!config.emit_plot_path.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < stats.outcomes.size(); ++i) {
      const auto& row = stats.outcomes[i];
      rows.push_back({std::to_string(i), format_double(row.probability),
                      format_double(row.frequency), format_double(row.z_score)});
    }
    emit_plot_file(config.emit_plot_path, {"outcome", "probability", "frequency", "z_score"},
                   rows);
  }
  return report;
}

Report cmd_interference(const RunConfig& config) {
  if (config.input_path.empty()) {
    throw ValidationError("interference: --input is required");
  }
  const interference::DisjunctionDataset dataset = dataset_from_csv(config.input_path);
  const std::vector<double> mixture = interference::classical_mixture(dataset.mu_a, dataset.mu_b);
  const std::vector<double> deviation = interference::interference_deviation(dataset);
  const interference::PhaseSolution phases = interference::solve_phases(dataset);
  const double classify_tolerance = 1e-6;
  const std::vector<interference::ExtensionTag> tags =
      interference::classify_extension(dataset, classify_tolerance);

  Report report = make_report("interference", config);
  report["inputs"]["input"] = config.input_path;
  if (!config.emit_plot_path.empty()) {
    report["inputs"]["emit_plot"] = config.emit_plot_path;
  }

  Report result;
  result["exemplars"] = dataset.exemplars;
  result["mu_a"] = dataset.mu_a;
  result["mu_b"] = dataset.mu_b;
  result["mu_obs"] = dataset.mu_obs;
  result["mixture"] = mixture;
  result["deviation"] = deviation;
  result["cos_theta"] = phases.cos_theta;
  result["residuals"] = phases.residuals;
  result["status"] = Report::array();
  for (auto status : phases.status) {
    switch (status) {
      case interference::PhaseStatus::exact:
        result["status"].push_back("exact");
        break;
      case interference::PhaseStatus::clamped:
        result["status"].push_back("clamped");
        break;
      case interference::PhaseStatus::unfittable:
        result["status"].push_back("unfittable");
        break;
    }
  }
  result["classification"] = Report::array();
  for (auto tag : tags) {
    switch (tag) {
      case interference::ExtensionTag::overextended:
        result["classification"].push_back("overextended");
        break;
      case interference::ExtensionTag::underextended:
        result["classification"].push_back("underextended");
        break;
      case interference::ExtensionTag::classical:
        result["classification"].push_back("classical");
        break;
    }
  }
  result["classification_tolerance"] = classify_tolerance;
  result["consistency"] = phases.consistency;
  report["result"] = std::move(result);

  if (!config.emit_plot_path.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < dataset.size(); ++k) {
      rows.push_back({dataset.exemplars[k], format_double(dataset.mu_a[k]),
                      format_double(dataset.mu_b[k]), format_double(mixture[k]),
                      format_double(dataset.mu_obs[k])});
    }
    emit_plot_file(config.emit_plot_path, {"exemplar", "mu_a", "mu_b", "mixture", "mu_obs"}, rows);
  }
  return report;
}

Report cmd_bell(const RunConfig& config) {
  bell::JointProbabilityTable ab;
  bell::JointProbabilityTable ab_prime;
  bell::JointProbabilityTable aprime_b;
  bell::JointProbabilityTable aprime_bprime;

  Report report = make_report("bell", config);
  if (!config.singlet_angles.empty()) {
    if (config.singlet_angles.size() != 4) {
      throw ValidationError("bell: --singlet needs exactly 4 angles a,a',b,b'");
    }
    const double a = config.singlet_angles[0];
    const double a_prime = config.singlet_angles[1];
    const double b = config.singlet_angles[2];
    const double b_prime = config.singlet_angles[3];
    ab = bell::singlet_tables(a, b);
    ab_prime = bell::singlet_tables(a, b_prime);
    aprime_b = bell::singlet_tables(a_prime, b);
    aprime_bprime = bell::singlet_tables(a_prime, b_prime);
    report["inputs"]["singlet"] = config.singlet_angles;
  } else {
    if (config.input_path.empty()) {
      throw ValidationError("bell: needs --input or --singlet");
    }
    const json doc = parse_json_file(config.input_path);
    ab = bell_table_from_json(doc, "AB");
    ab_prime = bell_table_from_json(doc, "ABp");
    aprime_b = bell_table_from_json(doc, "ApB");
    aprime_bprime = bell_table_from_json(doc, "ApBp");
    report["inputs"]["input"] = config.input_path;
  }

  const bell::ChshReport chsh = bell::chsh(ab, ab_prime, aprime_b, aprime_bprime);

  Report result;
  result["tables"]["AB"] = table_to_json(ab);
  result["tables"]["ABp"] = table_to_json(ab_prime);
  result["tables"]["ApB"] = table_to_json(aprime_b);
  result["tables"]["ApBp"] = table_to_json(aprime_bprime);
  result["correlators"]["E_AB"] = chsh.e_ab;
  result["correlators"]["E_ABp"] = chsh.e_ab_prime;
  result["correlators"]["E_ApB"] = chsh.e_aprime_b;
  result["correlators"]["E_ApBp"] = chsh.e_aprime_bprime;
  result["s_value"] = chsh.s_value;
  result["s_max_placement"] = chsh.s_max_placement;
  result["violates_classical"] = chsh.violates_classical;
  result["exceeds_tsirelson"] = chsh.exceeds_tsirelson;
  report["result"] = std::move(result);
  return report;
}

Report cmd_cognitons(const RunConfig& config) {
  if (config.input_path.empty()) {
    throw ValidationError("cognitons: --input is required");
  }
  cognitons::TokenizerConfig tokenizer;
  tokenizer.lowercase = !config.keep_case;
  tokenizer.min_length = config.min_len;

  const std::vector<std::string> tokens =
      cognitons::tokenize(read_text_file(config.input_path), tokenizer);
  const cognitons::RankFrequencyTable table = cognitons::rank_table(tokens);
  const cognitons::ZipfReport zipf = cognitons::zipf_products(table, config.top_k);
  const cognitons::FitComparison fits = cognitons::compare_fits(table);

  Report report = make_report("cognitons", config);
  report["inputs"]["input"] = config.input_path;
  report["inputs"]["keep_case"] = config.keep_case;
  report["inputs"]["min_len"] = config.min_len;
  report["inputs"]["top_k"] = config.top_k;
  if (!config.emit_plot_path.empty()) {
    report["inputs"]["emit_plot"] = config.emit_plot_path;
  }

  Report result;
  result["total_tokens"] = table.total_tokens;
  result["distinct_words"] = table.rows.size();
  result["table"] = Report::array();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    Report entry;
    entry["rank"] = row.rank;
    entry["word"] = row.word;
    entry["count"] = row.count;
    entry["energy"] = row.energy;
    entry["product"] = zipf.products[i];
    result["table"].push_back(std::move(entry));
  }
  result["zipf"]["top_k"] = zipf.top_k;
  result["zipf"]["top_products"] = std::vector<double>(
      zipf.products.begin(),
      zipf.products.begin() + std::min<std::size_t>(zipf.top_k, zipf.products.size()));
  result["zipf"]["max_min_ratio"] = zipf.max_min_ratio;
  result["fit_bose_einstein"]["a"] = fits.be.a;
  result["fit_bose_einstein"]["b"] = fits.be.b;
  result["fit_bose_einstein"]["mu"] = fits.be.mu;
  result["fit_bose_einstein"]["sse_log"] = fits.be.sse_log;
  result["fit_bose_einstein"]["n_points"] = fits.be.n_points;
  result["fit_bose_einstein"]["iterations"] = fits.be.iterations;
  result["fit_maxwell_boltzmann"]["c"] = fits.mb.c;
  result["fit_maxwell_boltzmann"]["b"] = fits.mb.b;
  result["fit_maxwell_boltzmann"]["sse_log"] = fits.mb.sse_log;
  result["fit_maxwell_boltzmann"]["n_points"] = fits.mb.n_points;
  result["winner"] =
      fits.winner == cognitons::FitWinner::bose_einstein ? "bose_einstein" : "maxwell_boltzmann";
  result["tie"] = fits.tie;
  report["result"] = std::move(result);

  if (!config.emit_plot_path.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : table.rows) {
      const double log_count = std::log(static_cast<double>(row.count));
      rows.push_back({std::to_string(row.rank), format_double(row.energy),
                      std::to_string(row.count), format_double(std::log(row.energy)),
                      format_double(log_count),
                      format_double(cognitons::predict_log_count(fits.mb, row.energy)),
                      format_double(cognitons::predict_log_count(fits.be, row.energy))});
    }
    emit_plot_file(config.emit_plot_path,
                   {"rank", "energy", "count", "log_energy", "log_count", "log_count_mb",
                    "log_count_be"},
                   rows);
  }
  return report;
}

Report cmd_dilation(const RunConfig& config) {
  const dilation::CoordinationResult coordination =
      dilation::coordinate(config.n_a, config.n_b, config.step_length, config.speed);
  const double gamma = dilation::dilation_factor(coordination.velocity, config.speed);

  Report report = make_report("dilation", config);
  report["inputs"]["n_a"] = config.n_a;
  report["inputs"]["n_b"] = config.n_b;
  report["inputs"]["step_length"] = config.step_length;
  report["inputs"]["speed"] = config.speed;
  if (!config.emit_plot_path.empty()) {
    report["inputs"]["emit_plot"] = config.emit_plot_path;
  }

  const auto vertices_to_json = [](const dilation::SpacetimeTrajectory& trajectory) {
    Report rows = Report::array();
    for (const auto& vertex : trajectory.vertices) {
      rows.push_back(Report::array({vertex.t, vertex.x}));
    }
    return rows;
  };

  Report result;
  result["velocity"] = coordination.velocity;
  result["v_over_c"] = coordination.velocity / config.speed;
  result["gamma"] = coordination.gamma;
  result["gamma_from_velocity"] = gamma;
  result["trajectory_a"] = vertices_to_json(coordination.trajectory_a);
  result["trajectory_b"] = vertices_to_json(coordination.trajectory_b);
  result["step_minkowski_lengths_b"] = coordination.step_minkowski_lengths_b;
  result["minkowski_length_a"] =
      dilation::minkowski_length(coordination.trajectory_a, config.speed);
  result["minkowski_length_b"] =
      dilation::minkowski_length(coordination.trajectory_b, config.speed);
  result["euclidean_length_a"] =
      dilation::euclidean_length(coordination.trajectory_a, config.speed);
  result["euclidean_length_b"] =
      dilation::euclidean_length(coordination.trajectory_b, config.speed);
  report["result"] = std::move(result);

  if (!config.emit_plot_path.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& vertex : coordination.trajectory_a.vertices) {
      rows.push_back({"A", format_double(vertex.t), format_double(vertex.x)});
    }
    for (const auto& vertex : coordination.trajectory_b.vertices) {
      rows.push_back({"B", format_double(vertex.t), format_double(vertex.x)});
    }
    emit_plot_file(config.emit_plot_path, {"path", "t", "x"}, rows);
  }
  return report;
}

} // namespace conceptua::cli
