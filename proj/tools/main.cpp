#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfilter/analysis.hpp"
#include "qfilter/circuit.hpp"
#include "qfilter/detection.hpp"
#include "qfilter/fock.hpp"
#include "qfilter/scenarios.hpp"

namespace {

using Json = nlohmann::ordered_json;
using qfilter::Amplitude;

/// Numerical result violates a documented guarantee (exit code 1, as
/// opposed to configuration problems which exit 2).
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kText, kCsv, kJson };

Format parse_format(const std::string& name) {
  if (name == "text") return Format::kText;
  if (name == "csv") return Format::kCsv;
  return Format::kJson;
}

/// Six significant digits, with negative zero flushed to "0".
std::string fmt6(double value) {
  if (value == 0.0) value = 0.0;
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

std::string fmt_amp(const Amplitude& amplitude) {
  return "(" + fmt6(amplitude.real()) + ", " + fmt6(amplitude.imag()) + ")";
}

std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

Json json_amp(const Amplitude& amplitude) {
  return Json{{"re", amplitude.real()}, {"im", amplitude.imag()}};
}

/// "p1H=1 p2H=1" for a sparse occupation; "vacuum" when empty.
std::string occupation_label(const qfilter::ModeRegistry& registry,
                             const qfilter::OccupationVector& occupation) {
  std::string label;
  for (std::size_t i = 0; i < registry.size(); ++i) {
    if (occupation[i] == 0) continue;
    if (!label.empty()) label += ' ';
    label += registry.label(i) + "=" + std::to_string(occupation[i]);
  }
  return label.empty() ? "vacuum" : label;
}

using HvPairs = std::vector<std::pair<std::string, std::string>>;

std::string term_label(const qfilter::ModeRegistry& registry,
                       const qfilter::OccupationVector& occupation,
                       const HvPairs& hv_pairs) {
  if (!hv_pairs.empty()) {
    if (auto word = qfilter::polarization_word(registry, occupation, hv_pairs)) {
      return *word;
    }
  }
  return occupation_label(registry, occupation);
}

void print_branches_text(std::ostringstream& out,
                         const qfilter::Ensemble& ensemble,
                         const HvPairs& hv_pairs) {
  if (ensemble.empty()) {
    out << "no accepted branches\n";
    return;
  }
  std::size_t index = 1;
  for (const auto& branch : ensemble.branches()) {
    out << "branch " << index++ << " weight " << fmt6(branch.weight) << ":\n";
    for (const auto& [occupation, amplitude] : branch.state.terms()) {
      out << "  " << term_label(ensemble.registry(), occupation, hv_pairs)
          << ": " << fmt_amp(amplitude) << "\n";
    }
  }
}

std::string branches_csv(const qfilter::Ensemble& ensemble,
                         const HvPairs& hv_pairs) {
  std::ostringstream out;
  out << "branch,weight,term,re,im\n";
  std::size_t index = 1;
  for (const auto& branch : ensemble.branches()) {
    for (const auto& [occupation, amplitude] : branch.state.terms()) {
      out << index << "," << fmt6(branch.weight) << ","
          << term_label(ensemble.registry(), occupation, hv_pairs) << ","
          << fmt6(amplitude.real()) << "," << fmt6(amplitude.imag()) << "\n";
    }
    ++index;
  }
  return out.str();
}

Json branches_json(const qfilter::Ensemble& ensemble, const HvPairs& hv_pairs) {
  Json branches = Json::array();
  for (const auto& branch : ensemble.branches()) {
    Json terms = Json::array();
    for (const auto& [occupation, amplitude] : branch.state.terms()) {
      terms.push_back(
          Json{{"term", term_label(ensemble.registry(), occupation, hv_pairs)},
               {"re", amplitude.real()},
               {"im", amplitude.imag()}});
    }
    branches.push_back(Json{{"weight", branch.weight}, {"terms", terms}});
  }
  return branches;
}

// ---------------------------------------------------------------------------
// operator command

struct OperatorConfig {
  double attenuator_r = 0.75;
  int attenuator_path = 1;
  std::optional<double> phi;
};

void run_operator(const OperatorConfig& config, Format format) {
  qfilter::FilterOptions options;
  options.attenuator_reflectivity = config.attenuator_r;
  options.attenuator_path = config.attenuator_path;
  options.compensation_phi = config.phi;
  const double phi = qfilter::resolve_compensation_phase(options);
  options.compensation_phi = phi;
  const qfilter::PolarizationOperator op =
      qfilter::effective_polarization_operator(
          qfilter::build_filter_circuit(options));

  for (int row = 0; row < 4; ++row) {
    for (int col = 0; col < 4; ++col) {
      if (row != col && std::abs(op.entries[row][col]) > 1e-9) {
        throw ContractError(
            "effective operator is not diagonal: |" +
            qfilter::polarization_basis_names()[row] + "><" +
            qfilter::polarization_basis_names()[col] + "| entry has magnitude " +
            fmt6(std::abs(op.entries[row][col])));
      }
    }
  }

  const auto& basis = qfilter::polarization_basis_names();
  if (format == Format::kCsv) {
    std::ostringstream out;
    for (int row = 0; row < 4; ++row) {
      for (int col = 0; col < 4; ++col) {
        if (col > 0) out << ",";
        out << fmt6(op.entries[row][col].real()) << ","
            << fmt6(op.entries[row][col].imag());
      }
      out << "\n";
    }
    std::cout << out.str();
    return;
  }
  if (format == Format::kJson) {
    Json matrix = Json::array();
    for (int row = 0; row < 4; ++row) {
      Json cells = Json::array();
      for (int col = 0; col < 4; ++col) cells.push_back(json_amp(op.entries[row][col]));
      matrix.push_back(cells);
    }
    Json acceptance = Json::object();
    for (int i = 0; i < 4; ++i) acceptance[basis[i]] = op.acceptance[i];
    Json document{{"command", "operator"},
                  {"basis", basis},
                  {"compensation_phase", phi},
                  {"attenuator",
                   Json{{"reflectivity", config.attenuator_r},
                        {"path", config.attenuator_path}}},
                  {"matrix", matrix},
                  {"acceptance", acceptance}};
    std::cout << document.dump(2) << "\n";
    return;
  }
  std::ostringstream out;
  out << "effective polarization operator (basis HH, HV, VH, VV)\n";
  for (int row = 0; row < 4; ++row) {
    out << "  " << basis[row] << ":";
    for (int col = 0; col < 4; ++col) out << " " << pad(fmt_amp(op.entries[row][col]), 14);
    out << "\n";
  }
  out << "acceptance probabilities:\n";
  for (int i = 0; i < 4; ++i) {
    out << "  " << basis[i] << ": " << fmt6(op.acceptance[i]) << "\n";
  }
  out << "compensation phase: " << fmt6(phi) << "\n";
  out << "attenuator: r=" << fmt6(config.attenuator_r) << " path="
      << config.attenuator_path << "\n";
  std::cout << out.str();
}

// ---------------------------------------------------------------------------
// scenario command

struct ScenarioConfig {
  std::string name;
  double ch = 0.6;
  double cv = 0.8;
  std::uint64_t seed = 1;
};

void run_scenario(const ScenarioConfig& config, Format format) {
  const HvPairs two_paths = {{"p1H", "p1V"}, {"p2H", "p2V"}};
  qfilter::FilterOutcome outcome{
      qfilter::Ensemble(qfilter::polarization_registry()), 0.0};
  HvPairs hv_pairs = two_paths;
  std::string description;
  bool two_qubit_output = false;
  Json params = Json::object();

  if (config.name == "entangle") {
    outcome = qfilter::filter_pair(qfilter::circular_pair_state());
    description = "circularly polarized photon pair (right, left)";
    two_qubit_output = true;
  } else if (config.name == "max-entangled") {
    std::mt19937_64 rng(config.seed);
    const qfilter::MaxEntangledParams drawn =
        qfilter::random_max_entangled_params(rng);
    outcome = qfilter::filter_pair(qfilter::max_entangled_state(drawn));
    description = "randomly drawn maximally entangled pair, c1=" +
                  fmt_amp(drawn.c1) + " c2=" + fmt_amp(drawn.c2) +
                  " phi=" + fmt6(drawn.phi);
    two_qubit_output = true;
    params = Json{{"seed", config.seed},
                  {"c1", json_amp(drawn.c1)},
                  {"c2", json_amp(drawn.c2)},
                  {"phi", drawn.phi}};
  } else if (config.name == "ghz4") {
    outcome = qfilter::ghz4();
    description = "two Bell pairs fused into a four-photon GHZ state";
    hv_pairs = {{"s1H", "s1V"}, {"p1H", "p1V"}, {"p2H", "p2V"}, {"s4H", "s4V"}};
  } else if (config.name == "encode2") {
    outcome = qfilter::encode2({Amplitude(config.ch, 0.0), Amplitude(config.cv, 0.0)});
    description = "diagonal photon plus qubit photon, two-photon encoding";
    two_qubit_output = true;
    params = Json{{"ch", config.ch}, {"cv", config.cv}};
  } else if (config.name == "encode3") {
    outcome = qfilter::encode3({Amplitude(config.ch, 0.0), Amplitude(config.cv, 0.0)});
    description = "Bell pair plus qubit photon, three-photon encoding";
    hv_pairs = {{"s1H", "s1V"}, {"p1H", "p1V"}, {"p2H", "p2V"}};
    params = Json{{"ch", config.ch}, {"cv", config.cv}};
  } else {
    throw std::invalid_argument("unknown scenario '" + config.name + "'");
  }

  std::optional<double> concurrence_value;
  if (two_qubit_output && outcome.acceptance > 0.0) {
    qfilter::PolarizationReduction reduction =
        qfilter::reduce_to_polarization(outcome.output);
    const double trace = reduction.rho.trace();
    if (trace > 0.0) {
      for (auto& row : reduction.rho.entries) {
        for (auto& entry : row) entry /= trace;
      }
      concurrence_value = qfilter::concurrence(reduction.rho);
    }
  }

  if (format == Format::kCsv) {
    std::cout << branches_csv(outcome.output, hv_pairs);
    return;
  }
  if (format == Format::kJson) {
    Json document{{"command", "scenario"},
                  {"name", config.name},
                  {"description", description}};
    if (!params.empty()) document["params"] = params;
    document["acceptance"] = outcome.acceptance;
    document["branches"] = branches_json(outcome.output, hv_pairs);
    if (concurrence_value) document["concurrence"] = *concurrence_value;
    std::cout << document.dump(2) << "\n";
    return;
  }
  std::ostringstream out;
  out << "scenario: " << config.name << "\n";
  out << "input: " << description << "\n";
  out << "acceptance probability: " << fmt6(outcome.acceptance) << "\n";
  print_branches_text(out, outcome.output, hv_pairs);
  if (concurrence_value) out << "concurrence: " << fmt6(*concurrence_value) << "\n";
  std::cout << out.str();
}

// ---------------------------------------------------------------------------
// error-analysis command

struct ReportRow {
  const char* field;
  double value;
  std::optional<double> reference;
};

std::vector<ReportRow> report_rows(const qfilter::ErrorReport& report) {
  // Reference points quoted for eta = 0.88, dark = 0.
  return {
      {"misread_2_as_1", report.misread_2_as_1, 0.19},
      {"hv_error_rate", report.hv_error_rate, 0.05},
      {"ideal_success_prob", report.ideal_success_prob, 0.03125},
      {"false_transmission_prob", report.false_transmission_prob, 0.0125},
      {"mixture_entangled_fraction", report.mixture_entangled_fraction, 0.70},
      {"mixture_single_photon_fraction", report.mixture_single_photon_fraction,
       0.30},
      {"dark_counts_per_pulse", report.dark_counts_per_pulse, 1e-5},
  };
}

void run_error_analysis(double eta, double dark, double dark_rate,
                        double window, Format format) {
  const qfilter::ErrorReport report =
      qfilter::error_analysis(eta, dark, dark_rate, window);
  const std::vector<ReportRow> rows = report_rows(report);

  if (format == Format::kCsv) {
    std::ostringstream out;
    out << "field,value,reference\n";
    out << "eta," << fmt6(report.eta) << ",\n";
    out << "dark," << fmt6(report.dark) << ",\n";
    for (const auto& row : rows) {
      out << row.field << "," << fmt6(row.value) << ","
          << (row.reference ? fmt6(*row.reference) : "") << "\n";
    }
    std::cout << out.str();
    return;
  }
  if (format == Format::kJson) {
    Json values{{"eta", report.eta}, {"dark", report.dark}};
    Json reference = Json::object();
    for (const auto& row : rows) {
      values[row.field] = row.value;
      if (row.reference) reference[row.field] = *row.reference;
    }
    Json document{{"command", "error-analysis"},
                  {"report", values},
                  {"reference_at_design_point", reference}};
    std::cout << document.dump(2) << "\n";
    return;
  }
  std::ostringstream out;
  out << "error analysis (eta=" << fmt6(report.eta)
      << ", dark=" << fmt6(report.dark) << ")\n";
  out << "reference column: design values quoted at eta=0.88, dark=0\n";
  out << "  " << pad("field", 32) << pad("value", 14) << "reference\n";
  for (const auto& row : rows) {
    out << "  " << pad(row.field, 32) << pad(fmt6(row.value), 14)
        << (row.reference ? fmt6(*row.reference) : "") << "\n";
  }
  std::cout << out.str();
}

// ---------------------------------------------------------------------------
// sweep command

struct SweepConfig {
  double eta_min = 0.5;
  double eta_max = 1.0;
  int steps = 11;
  double dark = 0.0;
  double dark_rate = 1e4;
  double window = 1e-9;
};

void run_sweep(const SweepConfig& config, Format format) {
  if (config.steps < 1) throw std::invalid_argument("--steps must be >= 1");
  if (!(config.eta_min > 0.0) || config.eta_max > 1.0 ||
      config.eta_min > config.eta_max) {
    throw std::invalid_argument("need 0 < eta-min <= eta-max <= 1");
  }
  std::vector<double> etas;
  for (int i = 0; i < config.steps; ++i) {
    etas.push_back(config.steps == 1
                       ? config.eta_min
                       : config.eta_min + (config.eta_max - config.eta_min) *
                                              i / (config.steps - 1));
  }
  // Fan out across workers; joining in grid order keeps output deterministic.
  std::vector<std::future<qfilter::ErrorReport>> futures;
  futures.reserve(etas.size());
  for (double eta : etas) {
    futures.push_back(std::async(std::launch::async, [eta, &config] {
      return qfilter::error_analysis(eta, config.dark, config.dark_rate,
                                     config.window);
    }));
  }
  std::vector<qfilter::ErrorReport> reports;
  reports.reserve(futures.size());
  for (auto& future : futures) reports.push_back(future.get());

  static const char* kColumns[] = {
      "eta",
      "misread_2_as_1",
      "hv_error_rate",
      "ideal_success_prob",
      "false_transmission_prob",
      "mixture_entangled_fraction",
      "mixture_single_photon_fraction",
      "dark_counts_per_pulse"};
  auto row_values = [](const qfilter::ErrorReport& r) {
    return std::vector<double>{r.eta,
                               r.misread_2_as_1,
                               r.hv_error_rate,
                               r.ideal_success_prob,
                               r.false_transmission_prob,
                               r.mixture_entangled_fraction,
                               r.mixture_single_photon_fraction,
                               r.dark_counts_per_pulse};
  };

  if (format == Format::kCsv) {
    std::ostringstream out;
    for (std::size_t i = 0; i < std::size(kColumns); ++i) {
      out << (i ? "," : "") << kColumns[i];
    }
    out << "\n";
    for (const auto& report : reports) {
      const auto values = row_values(report);
      for (std::size_t i = 0; i < values.size(); ++i) {
        out << (i ? "," : "") << fmt6(values[i]);
      }
      out << "\n";
    }
    std::cout << out.str();
    return;
  }
  if (format == Format::kJson) {
    Json rows = Json::array();
    for (const auto& report : reports) {
      Json row = Json::object();
      const auto values = row_values(report);
      for (std::size_t i = 0; i < values.size(); ++i) row[kColumns[i]] = values[i];
      rows.push_back(row);
    }
    Json document{{"command", "sweep"}, {"dark", config.dark}, {"rows", rows}};
    std::cout << document.dump(2) << "\n";
    return;
  }
  std::ostringstream out;
  out << "detector sweep (dark=" << fmt6(config.dark) << ")\n";
  for (const char* column : kColumns) out << pad(column, 32).substr(0, 31) << " ";
  out << "\n";
  for (const auto& report : reports) {
    for (double value : row_values(report)) out << pad(fmt6(value), 31) << " ";
    out << "\n";
  }
  std::cout << out.str();
}

// ---------------------------------------------------------------------------
// circuit command

std::pair<std::string, int> parse_assignment(const std::string& text) {
  const auto pos = text.find('=');
  if (pos == std::string::npos || pos == 0 || pos + 1 == text.size()) {
    throw std::invalid_argument("--in expects MODE=N, got '" + text + "'");
  }
  const std::string mode = text.substr(0, pos);
  const std::string count_text = text.substr(pos + 1);
  std::size_t consumed = 0;
  int count = 0;
  try {
    count = std::stoi(count_text, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("--in expects MODE=N, got '" + text + "'");
  }
  if (consumed != count_text.size() || count < 0) {
    throw std::invalid_argument("--in expects a non-negative count, got '" +
                                text + "'");
  }
  return {mode, count};
}

void run_circuit_file(const std::string& path,
                      const std::vector<std::string>& assignments,
                      Format format) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open circuit file '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  const qfilter::Circuit circuit = qfilter::parse_circuit(buffer.str());

  std::map<std::string, int> input = circuit.default_input;
  if (!assignments.empty()) {
    input.clear();
    for (const auto& assignment : assignments) {
      const auto [mode, count] = parse_assignment(assignment);
      input[mode] = count;
    }
  }
  if (input.empty()) {
    throw std::invalid_argument(
        "no input state: the file declares none, pass --in MODE=N");
  }
  qfilter::OccupationVector occupation(circuit.registry.size(), 0);
  for (const auto& [mode, count] : input) {
    if (!circuit.registry.contains(mode)) {
      throw std::invalid_argument("--in names unknown mode '" + mode + "'");
    }
    occupation[circuit.registry.index_of(mode)] = count;
  }
  const qfilter::FockState state =
      qfilter::make_basis_state(circuit.registry, occupation);
  const qfilter::Ensemble result = qfilter::run_circuit(circuit, state);
  const std::string input_label = occupation_label(circuit.registry, occupation);

  if (format == Format::kCsv) {
    std::cout << branches_csv(result, {});
    return;
  }
  if (format == Format::kJson) {
    Json document{{"command", "circuit"},
                  {"path", path},
                  {"modes", circuit.registry.labels()},
                  {"input", input_label},
                  {"acceptance", result.acceptance_probability()},
                  {"branches", branches_json(result, {})}};
    std::cout << document.dump(2) << "\n";
    return;
  }
  std::ostringstream out;
  out << "circuit: " << path << " (" << circuit.registry.size() << " modes, "
      << circuit.elements.size()
      << (circuit.elements.size() == 1 ? " element)\n" : " elements)\n");
  out << "input: " << input_label << "\n";
  out << "acceptance probability: " << fmt6(result.acceptance_probability())
      << "\n";
  print_branches_text(out, result, {});
  std::cout << out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bosonic Fock-state simulator for linear-optical circuits with "
      "heralded ancillas and post-selection"};
  app.require_subcommand(1);
  std::string format_name = "text";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();

  OperatorConfig operator_config;
  CLI::App* operator_cmd = app.add_subcommand(
      "operator", "Print the effective two-photon polarization operator");
  operator_cmd->fallthrough();
  operator_cmd
      ->add_option("--attenuator-r", operator_config.attenuator_r,
                   "Attenuator reflectivity")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  operator_cmd
      ->add_option("--attenuator-path", operator_config.attenuator_path,
                   "Path carrying the attenuated V mode")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  operator_cmd->add_option("--phi", operator_config.phi,
                           "Compensation phase (default: auto)");

  ScenarioConfig scenario_config;
  CLI::App* scenario_cmd =
      app.add_subcommand("scenario", "Run a named filter scenario");
  scenario_cmd->fallthrough();
  scenario_cmd
      ->add_option("name", scenario_config.name, "Scenario name")
      ->required()
      ->check(CLI::IsMember(
          {"entangle", "max-entangled", "ghz4", "encode2", "encode3"}));
  scenario_cmd->add_option("--ch", scenario_config.ch, "Qubit H amplitude")
      ->capture_default_str();
  scenario_cmd->add_option("--cv", scenario_config.cv, "Qubit V amplitude")
      ->capture_default_str();
  scenario_cmd
      ->add_option("--seed", scenario_config.seed,
                   "Seed for the max-entangled draw")
      ->capture_default_str();

  double eta = 0.88;
  double dark = 0.0;
  double dark_rate = 1e4;
  double window = 1e-9;
  CLI::App* error_cmd = app.add_subcommand(
      "error-analysis", "Imperfect-detector error budget of the filter");
  error_cmd->fallthrough();
  error_cmd->add_option("--eta", eta, "Detector quantum efficiency")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  error_cmd->add_option("--dark", dark, "Per-reading dark-count probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  error_cmd->add_option("--dark-rate", dark_rate, "Dark counts per second")
      ->capture_default_str();
  error_cmd->add_option("--window", window, "Detection window in seconds")
      ->capture_default_str();

  SweepConfig sweep_config;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Error budget over a grid of detector efficiencies");
  sweep_cmd->fallthrough();
  sweep_cmd->add_option("--eta-min", sweep_config.eta_min, "Lowest efficiency")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sweep_cmd->add_option("--eta-max", sweep_config.eta_max, "Highest efficiency")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sweep_cmd->add_option("--steps", sweep_config.steps, "Grid points")
      ->capture_default_str();
  sweep_cmd->add_option("--dark", sweep_config.dark, "Dark-count probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sweep_cmd->add_option("--dark-rate", sweep_config.dark_rate, "Dark counts per second")
      ->capture_default_str();
  sweep_cmd->add_option("--window", sweep_config.window, "Detection window in seconds")
      ->capture_default_str();

  std::string circuit_path;
  std::vector<std::string> assignments;
  CLI::App* circuit_cmd =
      app.add_subcommand("circuit", "Run a circuit file on a basis input");
  circuit_cmd->fallthrough();
  circuit_cmd->add_option("file", circuit_path, "Circuit JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  circuit_cmd->add_option("--in", assignments,
                          "Input occupation MODE=N (repeatable; overrides the "
                          "file's input_state)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const Format format = parse_format(format_name);
  try {
    if (app.got_subcommand(operator_cmd)) {
      run_operator(operator_config, format);
    } else if (app.got_subcommand(scenario_cmd)) {
      run_scenario(scenario_config, format);
    } else if (app.got_subcommand(error_cmd)) {
      run_error_analysis(eta, dark, dark_rate, window, format);
    } else if (app.got_subcommand(sweep_cmd)) {
      run_sweep(sweep_config, format);
    } else if (app.got_subcommand(circuit_cmd)) {
      run_circuit_file(circuit_path, assignments, format);
    }
  } catch (const qfilter::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ContractError& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
