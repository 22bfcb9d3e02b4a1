// Command-line front end; talks to the core exclusively through the C API.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "vqx/vqx.h"

namespace {

int report_error(const char* what) {
  std::fprintf(stderr, "error: %s\n", vqx_last_error()[0] ? vqx_last_error() : what);
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CLI::ValidationError("--config", "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statevector simulation and variational optimization for small "
               "molecular dissociation scans"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a dissociation sweep");
  std::string config_path, molecule, method, encoding, out_dir;
  int case_id = 0, samples = 0, trotter_depth = 0, max_updates = 0;
  std::uint64_t seed = 0;
  double r_min = 0, r_max = 0, step = 0, noise_scale = 0;
  bool constraints = false, tabu = false, deflation_shift = false;
  bool print_config = false;
  auto* o_config = run->add_option("--config", config_path, "JSON config file");
  auto* o_molecule = run->add_option("--molecule", molecule, "H2 or HeH");
  auto* o_case = run->add_option("--case", case_id,
                                 "catalogued case id (1-12); sets molecule, "
                                 "method and penalty toggles");
  auto* o_method = run->add_option("--method", method, "vqe or ssvqe");
  auto* o_constraints =
      run->add_flag("--constraints,!--no-constraints", constraints,
                    "penalize deviations from the target quantum numbers");
  auto* o_tabu = run->add_flag("--tabu,!--no-tabu", tabu,
                               "add Gaussian walls at avoided expectations");
  auto* o_shift =
      run->add_flag("--deflation-shift,!--no-deflation-shift", deflation_shift,
                    "scale overlap penalties by the gap to a spectral bound");
  auto* o_encoding = run->add_option("--encoding", encoding, "jw or bk");
  auto* o_rmin = run->add_option("--r-min", r_min, "grid start (Angstrom)");
  auto* o_rmax = run->add_option("--r-max", r_max, "grid end (Angstrom)");
  auto* o_step = run->add_option("--step", step, "grid step (Angstrom)");
  auto* o_samples = run->add_option("--samples", samples, "runs per grid point");
  auto* o_seed = run->add_option("--seed", seed, "master RNG seed");
  auto* o_depth =
      run->add_option("--trotter-depth", trotter_depth, "ansatz repetitions");
  auto* o_updates =
      run->add_option("--max-updates", max_updates, "optimizer update budget");
  auto* o_noise =
      run->add_option("--noise-scale", noise_scale,
                      "half-width of the uniform initial-parameter noise");
  auto* o_out = run->add_option("--out", out_dir, "output directory");
  run->add_flag("--print-config", print_config,
                "print the resolved configuration and exit");

  auto* spectrum =
      app.add_subcommand("spectrum", "print the exact reference spectrum");
  std::string sp_molecule, sp_encoding = "bk";
  double sp_r = 0;
  spectrum->add_option("--molecule", sp_molecule, "H2 or HeH")->required();
  spectrum->add_option("--r", sp_r, "bond length (Angstrom)")->required();
  spectrum->add_option("--encoding", sp_encoding, "jw or bk");

  auto* plot = app.add_subcommand(
      "plot", "re-render SVG plots from a results directory");
  std::string plot_dir;
  plot->add_option("dir", plot_dir, "directory written by `run`")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    nlohmann::json j = nlohmann::json::object();
    if (*o_config) {
      try {
        j = nlohmann::json::parse(read_file(config_path));
      } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
      }
      if (!j.is_object()) {
        std::fprintf(stderr, "error: config must be a JSON object\n");
        return 1;
      }
    }
    if (*o_molecule) j["molecule"] = molecule;
    if (*o_case) j["case"] = case_id;
    if (*o_method) j["method"] = method;
    if (*o_constraints) j["constraints"] = constraints;
    if (*o_tabu) j["tabu"] = tabu;
    if (*o_shift) j["deflation_shift"] = deflation_shift;
    if (*o_encoding) j["encoding"] = encoding;
    if (*o_rmin) {
      j["r_min"] = r_min;
      j.erase("bond_lengths");
    }
    if (*o_rmax) j["r_max"] = r_max;
    if (*o_step) j["step"] = step;
    if (*o_samples) j["samples"] = samples;
    if (*o_seed) j["seed"] = seed;
    if (*o_depth) j["trotter_depth"] = trotter_depth;
    if (*o_updates) j["max_updates"] = max_updates;
    if (*o_noise) j["noise_scale"] = noise_scale;
    if (*o_out) j["out"] = out_dir;

    char* resolved = nullptr;
    if (vqx_resolve_config(j.dump().c_str(), &resolved) != VQX_OK)
      return report_error("invalid configuration");
    if (print_config) {
      std::fputs(resolved, stdout);
      vqx_string_free(resolved);
      return 0;
    }
    int rc = vqx_run_json(resolved, nullptr);
    std::string where = nlohmann::json::parse(resolved).at("out");
    vqx_string_free(resolved);
    if (rc != VQX_OK) return report_error("run failed");
    std::printf("wrote tables and plots to %s\n", where.c_str());
    return 0;
  }

  if (spectrum->parsed()) {
    char* csv = nullptr;
    if (vqx_spectrum_csv(sp_molecule.c_str(), sp_r, sp_encoding.c_str(),
                         &csv) != VQX_OK)
      return report_error("spectrum failed");
    std::fputs(csv, stdout);
    vqx_string_free(csv);
    return 0;
  }

  if (plot->parsed()) {
    if (vqx_plot(plot_dir.c_str()) != VQX_OK)
      return report_error("plot failed");
    std::printf("re-rendered plots in %s\n", plot_dir.c_str());
    return 0;
  }
  return 0;
}
