#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gharm {

/// One batch experiment. `experiment` selects the estimator; the remaining
/// fields are interpreted per experiment and echoed into the report.
struct ExperimentConfig {
  std::string experiment;
  double u = 1.0;
  double r = 1.0;
  double t = 0.0;  // 0 = default t-grid for the mehler experiment
  double tol = 1e-8;
  double grid = 3.0;  // grid extent
  std::vector<double> ys;
  int q = 2;
  std::string kernel;  // kernel selector (hormander/iinf) or tree spec
  int threads = 0;     // 0 = keep the ambient setting

  void validate() const;  // throws std::invalid_argument
};

/// Deterministic tabular result. Verdicts are encoded numerically in rows
/// (0 = plateau/finite, 1 = growing/diverging, 2 = inconclusive/unknown);
/// human-readable counterparts go to meta_kv.
struct ExperimentResult {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> params;   // config echo
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> meta_kv;  // verdicts, fits
  std::vector<double> refinement_history;
  double tol = 0.0;
  std::string version;
  bool converged = true;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

std::string result_to_json(const ExperimentResult& r);
std::string result_to_csv(const ExperimentResult& r);

/// Writes the serialized result to `out_path` ("" or "-" = stdout).
/// Throws std::invalid_argument for an unknown format, std::runtime_error on
/// I/O failure. Bytes depend only on the result, never on thread count.
void emit_report(const ExperimentResult& r, const std::string& format,
                 const std::string& out_path);

}  // namespace gharm
