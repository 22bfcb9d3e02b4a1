#include "vqx/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "vqx/ansatz.hpp"
#include "vqx/molecule.hpp"
#include "vqx/oracle.hpp"
#include "vqx/rng.hpp"

namespace vqx {
namespace {

std::string format_r(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", r);
  return buf;
}

void validate(const RunConfig& c) {
  molecule_table(c.molecule);
  if (c.method != "vqe" && c.method != "ssvqe")
    throw std::invalid_argument("method must be \"vqe\" or \"ssvqe\"");
  if (c.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (c.trotter_depth < 1)
    throw std::invalid_argument("trotter_depth must be >= 1");
  if (c.max_updates < 1) throw std::invalid_argument("max_updates must be >= 1");
  if (!(c.value_tolerance > 0.0) || !(c.line_search_tolerance > 0.0))
    throw std::invalid_argument("tolerances must be positive");
  if (!(c.initial_step > 0.0))
    throw std::invalid_argument("initial_step must be positive");
  if (c.noise_scale < 0.0)
    throw std::invalid_argument("noise_scale must be non-negative");
  if (!(c.tabu_height > 0.0) || !(c.tabu_width > 0.0))
    throw std::invalid_argument("tabu height/width must be positive");
  auto g = c.grid();
  if (g.empty()) throw std::invalid_argument("bond-length grid is empty");
  for (double r : g)
    if (!(r > 0.0)) throw std::invalid_argument("bond lengths must be positive");
  if (c.method == "ssvqe") {
    if (c.ssvqe_weights.size() != 2)
      throw std::invalid_argument("ssvqe_weights must have two entries");
    if (!(c.ssvqe_weights[0] > c.ssvqe_weights[1]) || !(c.ssvqe_weights[1] > 0.0))
      throw std::invalid_argument("ssvqe_weights must be positive and strictly decreasing");
  }
  if (c.smooth_deflation.enabled && !(c.smooth_deflation.r_d > 0.0))
    throw std::invalid_argument("smooth_deflation.r_d must be positive");
}

const PauliSum& observable_by_name(const SpinObservables& obs,
                                   const std::string& name) {
  if (name == "number") return obs.number;
  if (name == "sz") return obs.sz;
  if (name == "s_squared") return obs.s_squared;
  throw std::invalid_argument("unknown observable: " + name);
}

struct GroupData {
  std::vector<int> states;
  std::vector<PauliSum> generators;
};

struct GridPoint {
  double r;
  PauliSum h;
  Spectrum spectrum;
  double e_up;
  std::vector<double> e_target;
  std::vector<double> e_floor;
  std::vector<StateVector> references;
  std::vector<std::vector<PauliSum>> generators;
  std::vector<GroupData> groups;
};

GridPoint make_grid_point(const RunConfig& cfg, const MoleculeTable& table,
                          const SpinObservables& obs, double r) {
  Geometry geom = Geometry::diatomic(cfg.molecule, r);
  PauliSum h = qubit_hamiltonian(geom, cfg.encoding);
  Spectrum sp = fci_spectrum(h, obs);

  GridPoint gp{r, h, std::move(sp), hamiltonian_upper_bound(h), {}, {}, {}, {}, {}};
  for (const auto& st : table.states) {
    int idx = gp.spectrum.find_level(st.n_target, st.sz_target, st.s2_target,
                                     st.sector_rank);
    if (idx < 0)
      throw std::runtime_error("no exact level with N=" +
                               format_double(st.n_target) + " Sz=" +
                               format_double(st.sz_target) + " S2=" +
                               format_double(st.s2_target) + " at r=" +
                               format_r(r));
    gp.e_target.push_back(gp.spectrum.levels[idx].energy);

    double floor_e = gp.spectrum.levels[idx].energy;
    for (const auto& lv : gp.spectrum.levels)
      if (std::abs(lv.n_particles - st.n_target) < 1e-4 &&
          std::abs(lv.sz - st.sz_target) < 1e-4) {
        floor_e = lv.energy;  // levels are ascending, first match is the floor
        break;
      }
    gp.e_floor.push_back(floor_e);

    gp.references.push_back(
        StateVector::basis_state(encode_occupation(st.occupation, cfg.encoding)));
    gp.generators.push_back(uccsd_generators(st.occupation, cfg.encoding));
  }
  for (size_t s = 0; s + 1 < table.states.size(); s += 2) {
    GroupData gd;
    gd.states = {int(s), int(s + 1)};
    gd.generators =
        merge_generators({gp.generators[s], gp.generators[s + 1]});
    gp.groups.push_back(std::move(gd));
  }
  return gp;
}

PenaltySpec make_penalty(const RunConfig& cfg, const MoleculeTable& table,
                         const SpinObservables& obs, const StateTarget& st) {
  PenaltySpec p;
  if (cfg.constraints) {
    p.constraint_ops = {obs.number, obs.sz, obs.s_squared};
    p.constraint_targets = {st.n_target, st.sz_target, st.s2_target};
    p.constraint_weight = cfg.constraint_weight;
  }
  if (cfg.tabu) {
    for (const auto& [name, center] : table.tabu_avoid) {
      p.tabu_ops.push_back(observable_by_name(obs, name));
      p.tabu_centers.push_back(center);
    }
    p.tabu_height = cfg.tabu_height;
    p.tabu_width = cfg.tabu_width;
  }
  return p;
}

DeflationSpec make_deflation(const RunConfig& cfg, const GridPoint& gp,
                             const std::vector<StateVector>& priors,
                             const std::vector<double>& prior_energies) {
  DeflationSpec d;
  d.priors = priors;
  for (double ep : prior_energies)
    d.coefficients.push_back(cfg.deflation_shift
                                 ? cfg.deflation_coefficient * (gp.e_up - ep)
                                 : cfg.deflation_coefficient);
  if (cfg.smooth_deflation.enabled && !priors.empty()) {
    d.smooth.enabled = true;
    d.smooth.a = cfg.smooth_deflation.a;
    d.smooth.b = cfg.smooth_deflation.b;
    d.smooth.alpha = cfg.smooth_deflation.alpha;
    d.smooth.r = gp.r;
    d.smooth.r_d = cfg.smooth_deflation.r_d;
    d.smooth.e_p = prior_energies.back();
  }
  return d;
}

struct CellOutput {
  std::vector<RunRecord> records;
  std::vector<TraceRow> traces;
  std::optional<CellFailure> failure;
  double seconds = 0.0;
};

std::vector<std::vector<double>> reversed_axes(size_t n) {
  std::vector<std::vector<double>> dirs;
  for (size_t k = n; k-- > 0;) {
    std::vector<double> d(n, 0.0);
    d[k] = 1.0;
    dirs.push_back(std::move(d));
  }
  return dirs;
}

std::vector<double> initial_theta(std::uint64_t seed, size_t n, double scale) {
  SplitMix64 rng(seed);
  std::vector<double> theta(n);
  for (auto& x : theta) x = rng.uniform(-scale, scale);
  return theta;
}

CellOutput run_cell(const RunConfig& cfg, const MoleculeTable& table,
                    const SpinObservables& obs, const GridPoint& gp,
                    int sample) {
  CellOutput out;
  PowellOptions opts;
  opts.max_updates = cfg.max_updates;
  opts.value_tolerance = cfg.value_tolerance;
  opts.line_search_tolerance = cfg.line_search_tolerance;
  opts.initial_step = cfg.initial_step;

  auto base_record = [&](int state, int sample_idx) {
    RunRecord rec;
    rec.molecule = cfg.molecule;
    rec.case_id = cfg.case_id();
    rec.r = gp.r;
    rec.state = state;
    rec.state_label = table.states[state].label;
    rec.sample = sample_idx;
    rec.e_fci = gp.e_target[state];
    rec.e_floor = gp.e_floor[state];
    return rec;
  };

  std::vector<StateVector> priors;
  std::vector<double> prior_energies;

  if (cfg.method == "vqe") {
    for (size_t i = 0; i < table.states.size(); ++i) {
      VqeObjective obj(gp.h, gp.references[i], gp.generators[i],
                       cfg.trotter_depth,
                       make_penalty(cfg, table, obs, table.states[i]),
                       make_deflation(cfg, gp, priors, prior_energies));
      size_t n = obj.parameter_count();
      auto theta0 = initial_theta(cell_seed(cfg.seed, gp.r, int(i), sample), n,
                                  cfg.noise_scale);
      opts.initial_directions = reversed_axes(n);

      std::vector<std::pair<int, double>> series;
      auto push_row = [&](int update, double objective) {
        out.traces.push_back({int(i), sample, update, objective,
                              {obj.last_breakdown().energy},
                              {gp.e_target[i]}});
        series.emplace_back(update, objective);
      };
      push_row(0, obj(theta0));
      PowellResult res = powell_minimize(
          [&obj](const std::vector<double>& th) { return obj(th); }, theta0,
          opts, [&](const TracePoint& tp) { push_row(tp.update, tp.value); });

      obj(res.theta);  // refresh the breakdown at the returned point
      double energy = obj.last_breakdown().energy;
      StateVector psi = obj.prepare(res.theta);

      RunRecord rec = base_record(int(i), sample);
      rec.energy = energy;
      rec.accuracy = accuracy_log10(energy, gp.e_target[i]);
      rec.updates_to_convergence = convergence_update(series);
      rec.updates_used = res.updates;
      out.records.push_back(std::move(rec));

      priors.push_back(std::move(psi));
      prior_energies.push_back(energy);
    }
    return out;
  }

  for (size_t g = 0; g < gp.groups.size(); ++g) {
    const GroupData& grp = gp.groups[g];
    std::vector<StateVector> refs;
    std::vector<PenaltySpec> pens;
    for (int s : grp.states) {
      refs.push_back(gp.references[s]);
      pens.push_back(make_penalty(cfg, table, obs, table.states[s]));
    }
    SsvqeObjective obj(gp.h, refs, cfg.ssvqe_weights, grp.generators,
                       cfg.trotter_depth, pens,
                       make_deflation(cfg, gp, priors, prior_energies));
    size_t n = obj.parameter_count();
    auto theta0 = initial_theta(cell_seed(cfg.seed, gp.r, int(g), sample), n,
                                cfg.noise_scale);
    opts.initial_directions = reversed_axes(n);

    double max_cross = 0.0;
    std::vector<std::pair<int, double>> series;
    auto monitor = [&](const std::vector<double>& theta) {
      std::vector<StateVector> cur;
      for (size_t k = 0; k < grp.states.size(); ++k)
        cur.push_back(obj.prepare(k, theta));
      for (size_t a = 0; a < cur.size(); ++a)
        for (size_t b = a + 1; b < cur.size(); ++b)
          max_cross = std::max(max_cross, std::abs(cur[a].overlap(cur[b])));
      return cur;
    };
    auto push_row = [&](int update, double objective,
                        const std::vector<double>& theta) {
      std::vector<double> es, ts;
      for (size_t k = 0; k < grp.states.size(); ++k) {
        es.push_back(obj.last_breakdowns()[k].energy);
        ts.push_back(gp.e_target[grp.states[k]]);
      }
      out.traces.push_back({int(g), sample, update, objective, std::move(es),
                            std::move(ts)});
      series.emplace_back(update, objective);
      monitor(theta);
    };
    push_row(0, obj(theta0), theta0);
    PowellResult res = powell_minimize(
        [&obj](const std::vector<double>& th) { return obj(th); }, theta0,
        opts,
        [&](const TracePoint& tp) { push_row(tp.update, tp.value, tp.theta); });

    obj(res.theta);
    std::vector<StateVector> finals = monitor(res.theta);
    int conv = convergence_update(series);
    for (size_t k = 0; k < grp.states.size(); ++k) {
      double energy = obj.last_breakdowns()[k].energy;
      RunRecord rec = base_record(grp.states[k], sample);
      rec.energy = energy;
      rec.accuracy = accuracy_log10(energy, gp.e_target[grp.states[k]]);
      rec.updates_to_convergence = conv;
      rec.updates_used = res.updates;
      rec.max_cross_overlap = max_cross;
      out.records.push_back(std::move(rec));
      priors.push_back(finals[k]);
      prior_energies.push_back(energy);
    }
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

MoleculeTable molecule_table(const std::string& molecule) {
  if (molecule == "H2")
    return {"H2",
            2,
            2,
            {{"ground", {1, 1, 0, 0}, 2.0, 0.0, 0.0, 0},
             {"triplet", {0, 1, 1, 0}, 2.0, 0.0, 2.0, 0},
             {"singlet", {1, 0, 0, 1}, 2.0, 0.0, 0.0, 1},
             {"doubly", {0, 0, 1, 1}, 2.0, 0.0, 0.0, 2}},
            {{"s_squared", 0.75}, {"sz", 10000.0}, {"number", 10000.0}}};
  if (molecule == "HeH")
    return {"HeH",
            2,
            3,
            {{"ground_1", {1, 1, 1, 0}, 3.0, 0.5, 0.75, 0},
             {"ground_2", {1, 1, 0, 1}, 3.0, -0.5, 0.75, 0},
             {"excited_1", {1, 0, 1, 1}, 3.0, 0.5, 0.75, 1},
             {"excited_2", {0, 1, 1, 1}, 3.0, -0.5, 0.75, 1}},
            {{"number", 10000.0}}};
  throw std::invalid_argument("unknown molecule: " + molecule);
}

int RunConfig::case_id() const {
  int base;
  if (molecule == "H2")
    base = 0;
  else if (molecule == "HeH")
    base = 6;
  else
    return 0;
  int k;
  if (method == "vqe")
    k = 0;
  else if (method == "ssvqe")
    k = 3;
  else
    return 0;
  if (tabu && !constraints) return 0;
  return base + k + 1 + (constraints ? 1 : 0) + (tabu ? 1 : 0);
}

void RunConfig::apply_case(int id) {
  if (id < 1 || id > 12)
    throw std::invalid_argument("case must be between 1 and 12");
  molecule = id <= 6 ? "H2" : "HeH";
  int k = (id - 1) % 6;
  method = k < 3 ? "vqe" : "ssvqe";
  constraints = (k % 3) != 0;
  tabu = (k % 3) == 2;
}

std::vector<double> RunConfig::grid() const {
  if (!bond_lengths.empty()) return bond_lengths;
  std::vector<double> g;
  int k0 = molecule == "HeH" ? 5 : 3;
  for (int k = k0; k <= 20; ++k) g.push_back(k / 10.0);
  return g;
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object())
    throw std::invalid_argument("config must be a JSON object");

  RunConfig c;
  bool molecule_given = j.contains("molecule");
  if (molecule_given) c.molecule = j.at("molecule").get<std::string>();
  if (j.contains("case")) {
    std::string given = c.molecule;
    c.apply_case(j.at("case").get<int>());
    if (molecule_given && c.molecule != given)
      throw std::invalid_argument("case " + j.at("case").dump() +
                                  " belongs to molecule " + c.molecule +
                                  ", not " + given);
  }

  double r_min = 0.0, r_max = 0.0, step = 0.0;
  bool have_min = false, have_max = false, have_step = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "molecule" || key == "case") {
      // handled above
    } else if (key == "method") {
      c.method = value.get<std::string>();
    } else if (key == "constraints") {
      c.constraints = value.get<bool>();
    } else if (key == "tabu") {
      c.tabu = value.get<bool>();
    } else if (key == "encoding") {
      c.encoding = encoding_from_string(value.get<std::string>());
    } else if (key == "bond_lengths") {
      c.bond_lengths = value.get<std::vector<double>>();
    } else if (key == "r_min") {
      r_min = value.get<double>();
      have_min = true;
    } else if (key == "r_max") {
      r_max = value.get<double>();
      have_max = true;
    } else if (key == "step") {
      step = value.get<double>();
      have_step = true;
    } else if (key == "samples") {
      c.samples = value.get<int>();
    } else if (key == "seed") {
      c.seed = value.get<std::uint64_t>();
    } else if (key == "trotter_depth") {
      c.trotter_depth = value.get<int>();
    } else if (key == "deflation_shift") {
      c.deflation_shift = value.get<bool>();
    } else if (key == "deflation_coefficient") {
      c.deflation_coefficient = value.get<double>();
    } else if (key == "constraint_weight") {
      c.constraint_weight = value.get<double>();
    } else if (key == "tabu_height") {
      c.tabu_height = value.get<double>();
    } else if (key == "tabu_width") {
      c.tabu_width = value.get<double>();
    } else if (key == "max_updates") {
      c.max_updates = value.get<int>();
    } else if (key == "value_tolerance") {
      c.value_tolerance = value.get<double>();
    } else if (key == "line_search_tolerance") {
      c.line_search_tolerance = value.get<double>();
    } else if (key == "initial_step") {
      c.initial_step = value.get<double>();
    } else if (key == "noise_scale") {
      c.noise_scale = value.get<double>();
    } else if (key == "ssvqe_weights") {
      c.ssvqe_weights = value.get<std::vector<double>>();
    } else if (key == "smooth_deflation") {
      if (!value.is_object())
        throw std::invalid_argument("smooth_deflation must be an object");
      for (const auto& [sk, sv] : value.items()) {
        if (sk == "enabled")
          c.smooth_deflation.enabled = sv.get<bool>();
        else if (sk == "a")
          c.smooth_deflation.a = sv.get<double>();
        else if (sk == "b")
          c.smooth_deflation.b = sv.get<double>();
        else if (sk == "alpha")
          c.smooth_deflation.alpha = sv.get<double>();
        else if (sk == "r_d")
          c.smooth_deflation.r_d = sv.get<double>();
        else
          throw std::invalid_argument("unknown smooth_deflation key: " + sk);
      }
    } else if (key == "out") {
      c.out_dir = value.get<std::string>();
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }

  if (have_min || have_max || have_step) {
    if (!(have_min && have_max && have_step))
      throw std::invalid_argument("r_min, r_max and step must be given together");
    if (!c.bond_lengths.empty())
      throw std::invalid_argument("give either bond_lengths or r_min/r_max/step");
    if (!(step > 0.0) || r_max < r_min)
      throw std::invalid_argument("need step > 0 and r_max >= r_min");
    int count = int(std::floor((r_max - r_min) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i)
      c.bond_lengths.push_back(std::round((r_min + i * step) * 1e6) / 1e6);
  }

  validate(c);
  return c;
}

std::string RunConfig::to_json_text() const {
  nlohmann::ordered_json j;
  j["molecule"] = molecule;
  j["case"] = case_id();
  j["method"] = method;
  j["constraints"] = constraints;
  j["tabu"] = tabu;
  j["encoding"] = to_string(encoding);
  j["bond_lengths"] = grid();
  j["samples"] = samples;
  j["seed"] = seed;
  j["trotter_depth"] = trotter_depth;
  j["deflation_shift"] = deflation_shift;
  j["deflation_coefficient"] = deflation_coefficient;
  j["constraint_weight"] = constraint_weight;
  j["tabu_height"] = tabu_height;
  j["tabu_width"] = tabu_width;
  j["max_updates"] = max_updates;
  j["value_tolerance"] = value_tolerance;
  j["line_search_tolerance"] = line_search_tolerance;
  j["initial_step"] = initial_step;
  j["noise_scale"] = noise_scale;
  j["ssvqe_weights"] = ssvqe_weights;
  j["smooth_deflation"] = {{"enabled", smooth_deflation.enabled},
                           {"a", smooth_deflation.a},
                           {"b", smooth_deflation.b},
                           {"alpha", smooth_deflation.alpha},
                           {"r_d", smooth_deflation.r_d}};
  j["out"] = out_dir;
  return j.dump(2) + "\n";
}

std::uint64_t cell_seed(std::uint64_t master, double r, int sequence,
                        int sample) {
  std::uint64_t s = mix_seed(master, std::bit_cast<std::uint64_t>(r));
  s = mix_seed(s, std::uint64_t(sequence));
  return mix_seed(s, std::uint64_t(sample));
}

int convergence_update(const std::vector<std::pair<int, double>>& series,
                       double tol) {
  if (series.empty()) return 0;
  double final_value = series.back().second;
  int ans = series.front().first;
  for (std::size_t i = series.size(); i-- > 0;) {
    if (series[i].second > final_value + tol) {
      ans = series[i + 1].first;
      break;
    }
  }
  return ans;
}

int worker_count(std::size_t n_cells) {
  long n = 0;
  if (const char* env = std::getenv("VQX_THREADS")) {
    char* end = nullptr;
    n = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || n <= 0)
      throw std::invalid_argument("VQX_THREADS must be a positive integer");
  } else {
    n = long(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
  }
  if (n_cells < 1) n_cells = 1;
  return int(std::min<std::size_t>(std::size_t(n), n_cells));
}

SweepResult run_sweep(const RunConfig& cfg) {
  validate(cfg);
  MoleculeTable table = molecule_table(cfg.molecule);
  SpinObservables obs = build_observables(table.n_spatial, cfg.encoding);
  std::vector<double> grid = cfg.grid();

  std::vector<GridPoint> points;
  points.reserve(grid.size());
  for (double r : grid) points.push_back(make_grid_point(cfg, table, obs, r));

  std::size_t n_cells = grid.size() * std::size_t(cfg.samples);
  std::vector<CellOutput> outs(n_cells);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n_cells) break;
      std::size_t ri = i / std::size_t(cfg.samples);
      int sample = int(i % std::size_t(cfg.samples));
      auto t0 = std::chrono::steady_clock::now();
      try {
        outs[i] = run_cell(cfg, table, obs, points[ri], sample);
      } catch (const std::exception& e) {
        outs[i] = CellOutput{};
        outs[i].failure = CellFailure{points[ri].r, sample, e.what()};
      }
      outs[i].seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
    }
  };

  int nw = worker_count(n_cells);
  if (nw <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(nw));
    for (int t = 0; t < nw; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  SweepResult result;
  result.config = cfg;
  for (std::size_t ri = 0; ri < grid.size(); ++ri) {
    std::string key = format_r(grid[ri]);
    for (int sample = 0; sample < cfg.samples; ++sample) {
      CellOutput& c = outs[ri * std::size_t(cfg.samples) + std::size_t(sample)];
      if (c.failure) {
        result.failures.push_back(*c.failure);
      } else {
        for (auto& rec : c.records) result.records.push_back(std::move(rec));
        auto& rows = result.traces[key];
        for (auto& tr : c.traces) rows.push_back(std::move(tr));
      }
      result.timings.push_back({grid[ri], sample, c.seconds});
    }
  }
  return result;
}

void write_tables(const SweepResult& result, const std::string& out_dir) {
  if (result.records.empty())
    throw std::runtime_error("sweep produced no records; nothing written");
  std::filesystem::create_directories(out_dir);

  RunConfig resolved = result.config;
  resolved.bond_lengths = result.config.grid();
  resolved.out_dir = out_dir;
  write_text_file(out_dir + "/run_config.json", resolved.to_json_text());

  std::ostringstream e;
  e << "molecule,case,r,state,state_label,sample,energy,e_fci,e_floor,"
       "accuracy,updates_to_convergence,updates_used,max_cross_overlap\n";
  for (const auto& rec : result.records)
    e << rec.molecule << ',' << rec.case_id << ',' << format_r(rec.r) << ','
      << rec.state << ',' << rec.state_label << ',' << rec.sample << ','
      << format_double(rec.energy) << ',' << format_double(rec.e_fci) << ','
      << format_double(rec.e_floor) << ',' << format_double(rec.accuracy)
      << ',' << rec.updates_to_convergence << ',' << rec.updates_used << ','
      << format_double(rec.max_cross_overlap) << '\n';
  write_text_file(out_dir + "/energies.csv", e.str());

  struct Agg {
    std::string molecule;
    int case_id = 0;
    std::string label;
    std::vector<double> acc, en;
    std::vector<int> conv;
  };
  std::map<std::pair<double, int>, Agg> agg;
  for (const auto& rec : result.records) {
    Agg& a = agg[{rec.r, rec.state}];
    a.molecule = rec.molecule;
    a.case_id = rec.case_id;
    a.label = rec.state_label;
    a.acc.push_back(rec.accuracy);
    a.en.push_back(rec.energy);
    a.conv.push_back(rec.updates_to_convergence);
  }
  std::ostringstream acc;
  acc << "molecule,case,r,state,state_label,mean_accuracy,min_accuracy,"
         "max_accuracy,mean_energy,min_energy,max_energy,"
         "mean_updates_to_convergence\n";
  for (const auto& [key, a] : agg) {
    auto mean = [](const std::vector<double>& v) {
      double s = 0.0;
      for (double x : v) s += x;
      return s / double(v.size());
    };
    double mc = 0.0;
    for (int c : a.conv) mc += c;
    mc /= double(a.conv.size());
    acc << a.molecule << ',' << a.case_id << ',' << format_r(key.first) << ','
        << key.second << ',' << a.label << ',' << format_double(mean(a.acc))
        << ',' << format_double(*std::min_element(a.acc.begin(), a.acc.end()))
        << ',' << format_double(*std::max_element(a.acc.begin(), a.acc.end()))
        << ',' << format_double(mean(a.en)) << ','
        << format_double(*std::min_element(a.en.begin(), a.en.end())) << ','
        << format_double(*std::max_element(a.en.begin(), a.en.end())) << ','
        << format_double(mc) << '\n';
  }
  write_text_file(out_dir + "/accuracy.csv", acc.str());

  int case_id = result.config.case_id();
  for (const auto& [rkey, rows_in] : result.traces) {
    std::vector<TraceRow> rows = rows_in;
    std::sort(rows.begin(), rows.end(),
              [](const TraceRow& a, const TraceRow& b) {
                return std::tie(a.sequence, a.sample, a.update) <
                       std::tie(b.sequence, b.sample, b.update);
              });
    std::ostringstream t;
    t << "sequence,sample,update,objective,energy_state_0,energy_state_1,"
         "target_state_0,target_state_1\n";
    for (const auto& row : rows) {
      t << row.sequence << ',' << row.sample << ',' << row.update << ','
        << format_double(row.objective) << ','
        << format_double(row.energies.at(0)) << ',';
      if (row.energies.size() > 1) t << format_double(row.energies[1]);
      t << ',' << format_double(row.targets.at(0)) << ',';
      if (row.targets.size() > 1) t << format_double(row.targets[1]);
      t << '\n';
    }
    write_text_file(out_dir + "/convergence_" + std::to_string(case_id) + "_" +
                        rkey + ".csv",
                    t.str());
  }

  std::ostringstream tm;
  tm << "molecule,case,r,sample,seconds\n";
  for (const auto& row : result.timings)
    tm << result.config.molecule << ',' << case_id << ',' << format_r(row.r)
       << ',' << row.sample << ',' << format_double(row.seconds) << '\n';
  write_text_file(out_dir + "/timings.csv", tm.str());

  if (!result.failures.empty()) {
    std::ostringstream fl;
    fl << "molecule,case,r,sample,error\n";
    for (const auto& f : result.failures)
      fl << result.config.molecule << ',' << case_id << ',' << format_r(f.r)
         << ',' << f.sample << ',' << csv_quote(f.message) << '\n';
    write_text_file(out_dir + "/failures.csv", fl.str());
  }
}

SweepResult load_tables(const std::string& dir) {
  SweepResult result;
  result.config = RunConfig::from_json_text(read_text_file(dir + "/run_config.json"));

  std::istringstream es(read_text_file(dir + "/energies.csv"));
  std::string line;
  if (!std::getline(es, line) || line.rfind("molecule,", 0) != 0)
    throw std::runtime_error("energies.csv: missing header");
  while (std::getline(es, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 13)
      throw std::runtime_error("energies.csv: bad row: " + line);
    RunRecord rec;
    rec.molecule = f[0];
    rec.case_id = std::stoi(f[1]);
    rec.r = std::stod(f[2]);
    rec.state = std::stoi(f[3]);
    rec.state_label = f[4];
    rec.sample = std::stoi(f[5]);
    rec.energy = std::stod(f[6]);
    rec.e_fci = std::stod(f[7]);
    rec.e_floor = std::stod(f[8]);
    rec.accuracy = std::stod(f[9]);
    rec.updates_to_convergence = std::stoi(f[10]);
    rec.updates_used = std::stoi(f[11]);
    rec.max_cross_overlap = std::stod(f[12]);
    result.records.push_back(std::move(rec));
  }

  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.rfind("convergence_", 0) != 0 ||
        name.size() < 5 || name.substr(name.size() - 4) != ".csv")
      continue;
    std::string middle = name.substr(12, name.size() - 16);
    auto sep = middle.find('_');
    if (sep == std::string::npos) continue;
    std::string rkey = middle.substr(sep + 1);
    std::istringstream ts(read_text_file(entry.path().string()));
    if (!std::getline(ts, line) || line.rfind("sequence,", 0) != 0)
      throw std::runtime_error(name + ": missing header");
    auto& rows = result.traces[rkey];
    while (std::getline(ts, line)) {
      if (line.empty()) continue;
      auto f = split_csv_line(line);
      if (f.size() != 8) throw std::runtime_error(name + ": bad row: " + line);
      TraceRow row;
      row.sequence = std::stoi(f[0]);
      row.sample = std::stoi(f[1]);
      row.update = std::stoi(f[2]);
      row.objective = std::stod(f[3]);
      row.energies.push_back(std::stod(f[4]));
      if (!f[5].empty()) row.energies.push_back(std::stod(f[5]));
      row.targets.push_back(std::stod(f[6]));
      if (!f[7].empty()) row.targets.push_back(std::stod(f[7]));
      rows.push_back(std::move(row));
    }
  }
  return result;
}

std::string spectrum_csv_text(const std::string& molecule, double r_angstrom,
                              Encoding e) {
  MoleculeTable table = molecule_table(molecule);
  Geometry geom = Geometry::diatomic(molecule, r_angstrom);
  PauliSum h = qubit_hamiltonian(geom, e);
  Spectrum sp = fci_spectrum(h, build_observables(table.n_spatial, e));
  std::ostringstream out;
  out << "level,energy,n,sz,s_squared\n";
  for (std::size_t i = 0; i < sp.levels.size(); ++i)
    out << i << ',' << format_double(sp.levels[i].energy) << ','
        << format_double(sp.levels[i].n_particles) << ','
        << format_double(sp.levels[i].sz) << ','
        << format_double(sp.levels[i].s_squared) << '\n';
  return out.str();
}

}  // namespace vqx
