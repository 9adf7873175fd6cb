// gaborlab: build and verify Gabor frames, run the counterexample checks and
// the inequality suites.  Exit codes: 0 all assertions pass, 1 an assertion
// failed, 2 a module error, 3 a configuration error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "gaborlab/error.hpp"

namespace {

using gaborlab::cli::RunConfig;

struct Flags {
  double p = 0;
  int grid_log2 = 0;
  int span = 0;
  int blocks = 0;
  double growth = 0;
  std::vector<std::int64_t> sizes;
  int trials = 0;
  std::uint64_t seed = 0;
  double tol = 0;
  int corpus_size = 0;
  int J = 0;
  int K = 0;
  int length = 0;
  std::string which;
  std::string suite;
  std::string out;
  std::string frame;
  std::string csv;
  std::string calibration;
  std::string config;
};

struct Options {
  CLI::Option* p = nullptr;
  CLI::Option* grid_log2 = nullptr;
  CLI::Option* span = nullptr;
  CLI::Option* blocks = nullptr;
  CLI::Option* growth = nullptr;
  CLI::Option* sizes = nullptr;
  CLI::Option* trials = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* tol = nullptr;
  CLI::Option* corpus_size = nullptr;
  CLI::Option* J = nullptr;
  CLI::Option* K = nullptr;
  CLI::Option* length = nullptr;
  CLI::Option* which = nullptr;
  CLI::Option* suite = nullptr;
};

void add_common(CLI::App* sub, Flags& f, Options& o) {
  o.p = sub->add_option("--p", f.p, "Exponent p > 1");
  o.grid_log2 = sub->add_option("--grid-log2", f.grid_log2, "Grid step exponent m (step 2^-m)");
  o.span = sub->add_option("--span", f.span, "build-frame: number of candidate Lambda points");
  o.blocks = sub->add_option("--blocks", f.blocks, "Number of blocks K");
  o.growth = sub->add_option("--growth", f.growth, "Block growth factor (>= 2)");
  o.sizes = sub->add_option("--sizes", f.sizes, "Explicit block sizes N_1,...,N_K")->delimiter(',');
  o.trials = sub->add_option("--trials", f.trials, "Random trials / corpus size of a suite");
  o.seed = sub->add_option("--seed", f.seed, "Seed (required for stochastic commands)");
  o.tol = sub->add_option("--tol", f.tol, "Reconstruction tolerance");
  o.corpus_size = sub->add_option("--corpus-size", f.corpus_size, "verify-frame: corpus size");
  o.J = sub->add_option("--J", f.J, "thm42: lattice size J");
  o.K = sub->add_option("--K", f.K, "Window truncation level K");
  o.length = sub->add_option("--length", f.length, "thm52: number of translates");
  sub->add_option("--out", f.out, "Report path (default stdout)");
  sub->add_option("--frame", f.frame, "Frame bundle path");
  sub->add_option("--csv", f.csv, "Per-trial CSV path");
  sub->add_option("--calibration", f.calibration, "Calibration file");
  sub->add_option("--config", f.config, "JSON config; flags override it");
}

RunConfig assemble(const std::string& command, const Flags& f, const Options& o) {
  RunConfig cfg;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw gaborlab::Error(gaborlab::ErrorCode::ConfigError, "cannot read config " + f.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw gaborlab::Error(gaborlab::ErrorCode::ConfigError, std::string("config is not JSON: ") + e.what());
    }
    gaborlab::cli::merge_config(cfg, j);
  }
  cfg.command = command;
  if (o.p->count()) cfg.p = f.p;
  if (o.grid_log2->count()) cfg.grid_log2 = f.grid_log2;
  if (o.span->count()) cfg.span = f.span;
  if (o.blocks->count()) cfg.blocks = f.blocks;
  if (o.growth->count()) cfg.growth = f.growth;
  if (o.sizes->count()) cfg.sizes = f.sizes;
  if (o.trials->count()) cfg.trials = f.trials;
  if (o.seed->count()) cfg.seed = f.seed;
  if (o.tol->count()) cfg.tol = f.tol;
  if (o.corpus_size->count()) cfg.corpus_size = f.corpus_size;
  if (o.J->count()) cfg.J = f.J;
  if (o.K->count()) cfg.K = f.K;
  if (o.length->count()) cfg.length = f.length;
  if (o.which && o.which->count()) cfg.which = f.which;
  if (o.suite && o.suite->count()) cfg.suite = f.suite;
  if (!f.out.empty()) cfg.out = f.out;
  if (!f.frame.empty()) cfg.frame = f.frame;
  if (!f.csv.empty()) cfg.csv = f.csv;
  if (!f.calibration.empty()) cfg.calibration = f.calibration;
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw gaborlab::Error(gaborlab::ErrorCode::ConfigError, "cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaborlab: Gabor frame construction and verification"};
  app.require_subcommand(1);

  Flags flags;
  std::vector<std::pair<CLI::App*, Options>> subs;
  const std::pair<const char*, const char*> commands[] = {
      {"build-frame", "Plan blocks, select translates, certify and save a frame"},
      {"verify-frame", "Check the frame bound and Neumann reconstruction on a random corpus"},
      {"counterexample", "Run a non-unconditional counterexample family"},
      {"inequalities", "Run one Khintchine / square-function / lacunary test suite"},
      {"calibrate", "Regenerate the calibration file at the calibration seed"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    Options o;
    add_common(sub, flags, o);
    if (std::string(name) == "counterexample") {
      o.which = sub->add_option("--which", flags.which, "thm42 or thm52")->check(CLI::IsMember({"thm42", "thm52"}));
    }
    if (std::string(name) == "inequalities") {
      o.suite = sub->add_option("--suite", flags.suite, "khintchine|squarefunc|type_cotype|lacunary|rdf")
                    ->check(CLI::IsMember({"khintchine", "squarefunc", "type_cotype", "lacunary", "rdf"}));
    }
    subs.emplace_back(sub, o);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    for (const auto& [sub, opts] : subs) {
      if (!sub->parsed()) continue;
      const RunConfig cfg = assemble(sub->get_name(), flags, opts);
      const auto report = gaborlab::cli::run(cfg);
      const std::string text = report.to_json().dump(2) + "\n";
      if (cfg.out.empty()) {
        std::cout << text;
      } else {
        write_text(cfg.out, text);
      }
      if (!cfg.csv.empty() && !report.csv_lines.empty()) {
        std::string csv;
        for (const auto& line : report.csv_lines) csv += line + "\n";
        write_text(cfg.csv, csv);
      }
      for (const auto& a : report.assertions) {
        if (!a.passed && !a.skipped) std::cerr << "FAILED " << a.name << ": " << a.detail << "\n";
      }
      return report.all_passed() ? 0 : 1;
    }
  } catch (const gaborlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == gaborlab::ErrorCode::ConfigError ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 3;
}
