#include "vqx/vqx.h"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>
#include <utility>

#include "vqx/fermion.hpp"
#include "vqx/molecule.hpp"
#include "vqx/oracle.hpp"
#include "vqx/plot.hpp"
#include "vqx/sweep.hpp"

struct vqx_spectrum {
  vqx::Spectrum data;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const char* what) {
  g_last_error = what;
  return code;
}

template <typename F>
int guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const std::invalid_argument& e) {
    return fail(VQX_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(VQX_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(VQX_ERR_RUNTIME, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::runtime_error("out of memory");
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* vqx_last_error(void) { return g_last_error.c_str(); }

void vqx_string_free(char* s) { std::free(s); }

int vqx_resolve_config(const char* config_json, char** out_json) {
  return guarded([&] {
    if (!config_json || !out_json)
      throw std::invalid_argument("null argument");
    vqx::RunConfig cfg = vqx::RunConfig::from_json_text(config_json);
    *out_json = dup_string(cfg.to_json_text());
    return VQX_OK;
  });
}

int vqx_run_json(const char* config_json, const char* out_dir) {
  return guarded([&] {
    if (!config_json) throw std::invalid_argument("null config");
    vqx::RunConfig cfg = vqx::RunConfig::from_json_text(config_json);
    if (out_dir) cfg.out_dir = out_dir;
    vqx::SweepResult result = vqx::run_sweep(cfg);
    vqx::write_tables(result, cfg.out_dir);
    vqx::write_plots(result, cfg.out_dir);
    return VQX_OK;
  });
}

int vqx_plot(const char* results_dir) {
  return guarded([&] {
    if (!results_dir) throw std::invalid_argument("null directory");
    vqx::SweepResult result = vqx::load_tables(results_dir);
    vqx::write_plots(result, results_dir);
    return VQX_OK;
  });
}

int vqx_spectrum_create(const char* molecule, double r_angstrom,
                        const char* encoding, vqx_spectrum** out) {
  return guarded([&] {
    if (!molecule || !encoding || !out)
      throw std::invalid_argument("null argument");
    vqx::MoleculeTable table = vqx::molecule_table(molecule);
    vqx::Encoding enc = vqx::encoding_from_string(encoding);
    vqx::Geometry geom = vqx::Geometry::diatomic(molecule, r_angstrom);
    vqx::PauliSum h = vqx::qubit_hamiltonian(geom, enc);
    vqx::Spectrum sp =
        vqx::fci_spectrum(h, vqx::build_observables(table.n_spatial, enc));
    *out = new vqx_spectrum{std::move(sp)};
    return VQX_OK;
  });
}

void vqx_spectrum_destroy(vqx_spectrum* s) { delete s; }

int vqx_spectrum_size(const vqx_spectrum* s, int* out_size) {
  return guarded([&] {
    if (!s || !out_size) throw std::invalid_argument("null argument");
    *out_size = int(s->data.levels.size());
    return VQX_OK;
  });
}

int vqx_spectrum_level(const vqx_spectrum* s, int index, double* out_energy,
                       double* out_n, double* out_sz, double* out_s_squared) {
  return guarded([&] {
    if (!s) throw std::invalid_argument("null handle");
    if (index < 0 || std::size_t(index) >= s->data.levels.size())
      throw std::invalid_argument("level index out of range");
    const auto& lv = s->data.levels[std::size_t(index)];
    if (out_energy) *out_energy = lv.energy;
    if (out_n) *out_n = lv.n_particles;
    if (out_sz) *out_sz = lv.sz;
    if (out_s_squared) *out_s_squared = lv.s_squared;
    return VQX_OK;
  });
}

int vqx_spectrum_csv(const char* molecule, double r_angstrom,
                     const char* encoding, char** out_csv) {
  return guarded([&] {
    if (!molecule || !encoding || !out_csv)
      throw std::invalid_argument("null argument");
    *out_csv = dup_string(vqx::spectrum_csv_text(
        molecule, r_angstrom, vqx::encoding_from_string(encoding)));
    return VQX_OK;
  });
}

}  // extern "C"
