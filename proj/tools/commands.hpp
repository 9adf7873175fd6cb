#pragma once

// Batch commands behind the gaborlab binary.  Each command validates its
// RunConfig before computing anything and returns a Report; the binary maps
// Report::all_passed() to the exit code.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gaborlab::cli {

/// Seed used to record calibration/calibration.json.
inline constexpr std::uint64_t kCalibrationSeed = 24301;

struct RunConfig {
  std::string command;
  std::optional<double> p;
  std::optional<int> grid_log2;
  std::optional<int> span;
  std::optional<int> blocks;
  std::optional<double> growth;
  std::vector<std::int64_t> sizes;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> corpus_size;
  std::optional<int> J;
  std::optional<int> K;
  std::optional<int> length;
  std::string which;        // counterexample: thm42 | thm52
  std::string suite;        // inequalities: khintchine | squarefunc | type_cotype | lacunary | rdf
  std::string out;          // report path, empty = stdout
  std::string frame;        // frame bundle path
  std::string csv;          // per-trial table path
  std::string calibration;  // calibration file path
};

/// Fields present in `j` (keys as in to_json) overwrite `cfg`.
void merge_config(RunConfig& cfg, const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);

/// ConfigError on invalid or missing parameters, including a missing seed
/// for stochastic commands.
void validate(const RunConfig& cfg);

bool is_stochastic(const RunConfig& cfg);

struct Assertion {
  std::string name;
  bool passed = false;
  bool skipped = false;  // recorded but not counted (e.g. calibration at a foreign seed)
  std::string detail;
};

struct Report {
  std::string command;
  nlohmann::json config;
  nlohmann::json metrics = nlohmann::json::object();
  std::vector<Assertion> assertions;
  nlohmann::json calibration = nlohmann::json::object();
  double wall_time = 0.0;
  std::vector<std::string> csv_lines;  // header first; empty when no table

  void check(const std::string& name, bool ok, const std::string& detail = {});
  void skip(const std::string& name, bool observed, const std::string& reason);
  bool all_passed() const;
  nlohmann::json to_json() const;
};

/// Calibration constants; empty object when the file is missing.
nlohmann::json load_calibration(const std::string& path);
std::string default_calibration_path();

Report cmd_build_frame(const RunConfig& cfg);
Report cmd_verify_frame(const RunConfig& cfg);
Report cmd_counterexample(const RunConfig& cfg);
Report cmd_inequalities(const RunConfig& cfg);
/// Recomputes every calibration constant at the configured seed (default
/// kCalibrationSeed) and returns them in Report::metrics["calibration"].
Report cmd_calibrate(const RunConfig& cfg);

/// Validates, dispatches on cfg.command and stamps the wall time.
Report run(const RunConfig& cfg);

}  // namespace gaborlab::cli
