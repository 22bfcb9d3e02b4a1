// Dissociation-scan driver: case catalog (molecule, method, penalty toggles),
// per-cell optimization runs, seed derivation, convergence statistics, and
// CSV table emission/reload.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vqx/fermion.hpp"
#include "vqx/objective.hpp"
#include "vqx/powell.hpp"

namespace vqx {

struct SmoothDeflationConfig {
  bool enabled = false;
  double a = 1.0;
  double b = 0.0;
  double alpha = 100.0;
  double r_d = 1.0;
};

struct RunConfig {
  std::string molecule = "H2";
  std::string method = "vqe";         // "vqe" | "ssvqe"
  bool constraints = false;
  bool tabu = false;
  Encoding encoding = Encoding::bravyi_kitaev;
  std::vector<double> bond_lengths;   // Angstrom; empty = molecule default grid
  int samples = 10;
  std::uint64_t seed = 7;
  int trotter_depth = 2;
  bool deflation_shift = false;       // scale overlap penalties by spectral gap
  double deflation_coefficient = 1.0;
  double constraint_weight = 1.0;
  double tabu_height = 100.0;
  double tabu_width = 100.0;
  int max_updates = 2000;
  double value_tolerance = 1e-8;
  double line_search_tolerance = 1e-8;
  double initial_step = 0.1;
  double noise_scale = 0.01;          // half-width of uniform theta0 noise
  std::vector<double> ssvqe_weights = {2.0, 1.0};
  SmoothDeflationConfig smooth_deflation;
  std::string out_dir = "results";

  // 1-12 for the catalogued combinations, 0 for anything else.
  int case_id() const;
  std::vector<double> grid() const;
  static RunConfig from_json_text(const std::string& text);
  // Fills method/constraints/tabu (and molecule) from a catalogue case id.
  void apply_case(int case_id);
  std::string to_json_text() const;
};

struct StateTarget {
  std::string label;
  std::vector<int> occupation;        // spin-orbital occupation, 0u 0d 1u 1d
  double n_target = 0.0;
  double sz_target = 0.0;
  double s2_target = 0.0;
  int sector_rank = 0;                // rank among exact levels with this (N,Sz,S^2)
};

struct MoleculeTable {
  std::string name;
  int n_spatial = 0;
  int n_electrons = 0;
  std::vector<StateTarget> states;
  // observable name ("number" | "sz" | "s_squared") -> expectation to avoid
  std::vector<std::pair<std::string, double>> tabu_avoid;
};

MoleculeTable molecule_table(const std::string& molecule);

struct RunRecord {
  std::string molecule;
  int case_id = 0;
  double r = 0.0;
  int state = 0;
  std::string state_label;
  int sample = 0;
  double energy = 0.0;
  double e_fci = 0.0;       // exact level this state targets
  double e_floor = 0.0;     // exact ground of the state's (N, Sz) sector
  double accuracy = 0.0;    // log10 |energy - e_fci|, clamped at -12
  int updates_to_convergence = 0;
  int updates_used = 0;
  double max_cross_overlap = 0.0;  // largest in-group overlap seen (ssvqe)
};

struct TraceRow {
  int sequence = 0;   // vqe: state index; ssvqe: group index
  int sample = 0;
  int update = 0;     // 0 = initial point, then accepted updates
  double objective = 0.0;
  std::vector<double> energies;  // per state in the sequence
  std::vector<double> targets;   // matching exact levels
};

struct CellFailure {
  double r = 0.0;
  int sample = 0;
  std::string message;
};

struct CellTiming {
  double r = 0.0;
  int sample = 0;
  double seconds = 0.0;
};

struct SweepResult {
  RunConfig config;
  std::vector<RunRecord> records;
  // keyed by formatted bond length, e.g. "0.7"
  std::map<std::string, std::vector<TraceRow>> traces;
  std::vector<CellFailure> failures;
  std::vector<CellTiming> timings;
};

// Derives the per-optimization RNG stream; deliberately independent of the
// penalty toggles so paired cases share starting points sample by sample.
std::uint64_t cell_seed(std::uint64_t master, double r, int sequence,
                        int sample);

// First update index after which the objective never again exceeds the final
// value by more than tol. Series pairs are (update, objective).
int convergence_update(const std::vector<std::pair<int, double>>& series,
                       double tol = 1e-4);

// Worker-pool width: VQX_THREADS when set, else hardware concurrency.
int worker_count(std::size_t n_cells);

SweepResult run_sweep(const RunConfig& config);

// energies.csv, accuracy.csv, convergence_<case>_<r>.csv, timings.csv,
// failures.csv (only on failure), run_config.json. Throws if there are no
// records; writes nothing in that case.
void write_tables(const SweepResult& result, const std::string& out_dir);

// Rebuilds records/traces from a directory written by write_tables.
SweepResult load_tables(const std::string& dir);

// Exact spectrum of one geometry as CSV text (level,energy,n,sz,s_squared).
std::string spectrum_csv_text(const std::string& molecule, double r_angstrom,
                              Encoding e);

// Shared CSV float format ("%.12g") so re-runs are byte-identical.
std::string format_double(double x);

}  // namespace vqx
