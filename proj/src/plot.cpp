#include "vqx/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vqx {
namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string esc(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '&')
      out += "&amp;";
    else if (ch == '<')
      out += "&lt;";
    else if (ch == '>')
      out += "&gt;";
    else
      out += ch;
  }
  return out;
}

std::string f2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

void save(const std::string& path, const std::string& text,
          std::vector<std::string>& written) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << text;
  written.push_back(path);
}

}  // namespace

std::string render_line_plot(const std::string& title,
                             const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<PlotSeries>& series) {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool any = false;
  auto take = [&](double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return;
    if (!any) {
      xmin = xmax = x;
      ymin = ymax = y;
      any = true;
      return;
    }
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (const auto& s : series) {
    for (const auto& p : s.points) take(p[0], p[1]);
    for (const auto& w : s.whiskers) {
      take(w[0], w[1]);
      take(w[0], w[2]);
    }
  }
  if (!any) throw std::invalid_argument("no finite data to plot");
  if (xmax == xmin) {
    double pad = std::max(1.0, std::abs(xmin)) * 0.1;
    xmin -= pad;
    xmax += pad;
  }
  if (ymax == ymin) {
    double pad = std::max(1.0, std::abs(ymin)) * 0.1;
    ymin -= pad;
    ymax += pad;
  }
  double ypad = (ymax - ymin) * 0.05;
  ymin -= ypad;
  ymax += ypad;
  double xpad = (xmax - xmin) * 0.02;
  xmin -= xpad;
  xmax += xpad;

  const double W = 760, H = 480, L = 78, R = 175, T = 46, B = 56;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
      << "\">\n";
  svg << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R
      << "\" height=\"" << H - T - B
      << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    double xv = xmin + i * (xmax - xmin) / 5.0;
    double yv = ymin + i * (ymax - ymin) / 5.0;
    svg << "<line x1=\"" << f2(px(xv)) << "\" y1=\"" << f2(H - B)
        << "\" x2=\"" << f2(px(xv)) << "\" y2=\"" << f2(H - B + 5)
        << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << f2(px(xv)) << "\" y=\"" << f2(H - B + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">"
        << tick_label(xv) << "</text>\n";
    svg << "<line x1=\"" << f2(L - 5) << "\" y1=\"" << f2(py(yv))
        << "\" x2=\"" << f2(L) << "\" y2=\"" << f2(py(yv))
        << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << f2(L - 8) << "\" y=\"" << f2(py(yv) + 4)
        << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">"
        << tick_label(yv) << "</text>\n";
  }

  svg << "<text x=\"" << f2((L + W - R) / 2.0) << "\" y=\"" << f2(T - 16)
      << "\" font-size=\"15\" text-anchor=\"middle\" font-family=\"sans-serif\">"
      << esc(title) << "</text>\n";
  svg << "<text x=\"" << f2((L + W - R) / 2.0) << "\" y=\"" << f2(H - 14)
      << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">"
      << esc(x_label) << "</text>\n";
  svg << "<text transform=\"translate(20," << f2((T + H - B) / 2.0)
      << ") rotate(-90)\" font-size=\"13\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\">"
      << esc(y_label) << "</text>\n";

  for (const auto& s : series)
    for (const auto& w : s.whiskers) {
      if (!std::isfinite(w[0]) || !std::isfinite(w[1]) || !std::isfinite(w[2]))
        continue;
      double x = px(w[0]), lo = py(w[1]), hi = py(w[2]);
      svg << "<line x1=\"" << f2(x) << "\" y1=\"" << f2(lo) << "\" x2=\""
          << f2(x) << "\" y2=\"" << f2(hi) << "\" stroke=\"" << s.color
          << "\" stroke-width=\"1\" opacity=\"0.7\"/>\n";
      for (double yy : {lo, hi})
        svg << "<line x1=\"" << f2(x - 3) << "\" y1=\"" << f2(yy)
            << "\" x2=\"" << f2(x + 3) << "\" y2=\"" << f2(yy)
            << "\" stroke=\"" << s.color
            << "\" stroke-width=\"1\" opacity=\"0.7\"/>\n";
    }

  for (const auto& s : series) {
    std::vector<std::array<double, 2>> pts;
    for (const auto& p : s.points)
      if (std::isfinite(p[0]) && std::isfinite(p[1])) pts.push_back(p);
    if (pts.empty()) continue;
    if (pts.size() == 1) {
      svg << "<circle cx=\"" << f2(px(pts[0][0])) << "\" cy=\""
          << f2(py(pts[0][1])) << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
      continue;
    }
    svg << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.5\"";
    if (s.dashed) svg << " stroke-dasharray=\"6,4\"";
    svg << " points=\"";
    for (const auto& p : pts) svg << f2(px(p[0])) << ',' << f2(py(p[1])) << ' ';
    svg << "\"/>\n";
    if (!s.dashed && pts.size() <= 40)
      for (const auto& p : pts)
        svg << "<circle cx=\"" << f2(px(p[0])) << "\" cy=\"" << f2(py(p[1]))
            << "\" r=\"2.3\" fill=\"" << s.color << "\"/>\n";
  }

  double lx = W - R + 14;
  double ly = T + 12;
  for (const auto& s : series) {
    svg << "<line x1=\"" << f2(lx) << "\" y1=\"" << f2(ly - 4) << "\" x2=\""
        << f2(lx + 22) << "\" y2=\"" << f2(ly - 4) << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"";
    if (s.dashed) svg << " stroke-dasharray=\"6,4\"";
    svg << "/>\n";
    svg << "<text x=\"" << f2(lx + 28) << "\" y=\"" << f2(ly)
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << esc(s.label)
        << "</text>\n";
    ly += 18;
  }

  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::string> write_plots(const SweepResult& result,
                                     const std::string& out_dir) {
  if (result.records.empty())
    throw std::runtime_error("no records to plot");
  std::filesystem::create_directories(out_dir);
  const RunConfig& cfg = result.config;
  MoleculeTable table = molecule_table(cfg.molecule);
  int case_id = result.records.front().case_id;
  std::string tag = "case " + std::to_string(case_id) + " (" + cfg.molecule +
                    ", " + cfg.method + (cfg.constraints ? "+constraints" : "") +
                    (cfg.tabu ? "+tabu" : "") + ")";
  std::vector<std::string> written;

  std::map<std::pair<int, double>, std::vector<const RunRecord*>> cells;
  std::set<double> rs;
  std::set<int> states;
  for (const auto& rec : result.records) {
    cells[{rec.state, rec.r}].push_back(&rec);
    rs.insert(rec.r);
    states.insert(rec.state);
  }

  std::vector<PlotSeries> energy_series, accuracy_series;
  for (int s : states) {
    const std::string& label = table.states.at(std::size_t(s)).label;
    const char* color = kPalette[s % kPaletteSize];
    PlotSeries mean_e{label, color, false, {}, {}};
    PlotSeries exact_e{label + " exact", color, true, {}, {}};
    PlotSeries mean_a{label, color, false, {}, {}};
    for (double r : rs) {
      auto it = cells.find({s, r});
      if (it == cells.end()) continue;
      double se = 0, sa = 0;
      double emin = it->second.front()->energy, emax = emin;
      double amin = it->second.front()->accuracy, amax = amin;
      for (const RunRecord* rec : it->second) {
        se += rec->energy;
        sa += rec->accuracy;
        emin = std::min(emin, rec->energy);
        emax = std::max(emax, rec->energy);
        amin = std::min(amin, rec->accuracy);
        amax = std::max(amax, rec->accuracy);
      }
      double n = double(it->second.size());
      mean_e.points.push_back({r, se / n});
      mean_e.whiskers.push_back({r, emin, emax});
      exact_e.points.push_back({r, it->second.front()->e_fci});
      mean_a.points.push_back({r, sa / n});
      mean_a.whiskers.push_back({r, amin, amax});
    }
    energy_series.push_back(std::move(mean_e));
    energy_series.push_back(std::move(exact_e));
    accuracy_series.push_back(std::move(mean_a));
  }

  save(out_dir + "/dissociation_case" + std::to_string(case_id) + ".svg",
       render_line_plot("Dissociation, " + tag, "bond length (Angstrom)",
                        "energy (Hartree)", energy_series),
       written);
  save(out_dir + "/accuracy_case" + std::to_string(case_id) + ".svg",
       render_line_plot("Accuracy, " + tag, "bond length (Angstrom)",
                        "log10 |E - E_exact| (Hartree)", accuracy_series),
       written);

  if (!result.traces.empty()) {
    std::vector<std::pair<double, std::string>> keys;
    for (const auto& [key, rows] : result.traces)
      if (!rows.empty()) keys.emplace_back(std::stod(key), key);
    std::sort(keys.begin(), keys.end());
    std::set<std::size_t> chosen = {0, keys.size() / 2, keys.size() - 1};
    for (std::size_t idx : chosen) {
      const auto& [rv, key] = keys[idx];
      (void)rv;
      const auto& rows = result.traces.at(key);
      std::map<int, PlotSeries> per_seq;
      for (const auto& row : rows) {
        if (row.sample != 0) continue;
        auto [it, fresh] = per_seq.try_emplace(row.sequence);
        PlotSeries& ps = it->second;
        if (fresh) {
          if (cfg.method == "vqe")
            ps.label = table.states.at(std::size_t(row.sequence)).label;
          else
            ps.label = "group " + std::to_string(row.sequence + 1);
          ps.color = kPalette[row.sequence % kPaletteSize];
        }
        double floor = 0.0;
        if (cfg.method == "vqe") {
          floor = row.targets.at(0);
        } else {
          for (std::size_t k = 0; k < row.targets.size(); ++k)
            floor += cfg.ssvqe_weights.at(k) * row.targets[k];
        }
        ps.points.push_back({double(row.update), row.objective - floor});
      }
      std::vector<PlotSeries> conv_series;
      for (auto& [seq, ps] : per_seq) conv_series.push_back(std::move(ps));
      if (conv_series.empty()) continue;
      save(out_dir + "/convergence_case" + std::to_string(case_id) + "_" +
               key + ".svg",
           render_line_plot("Convergence, " + tag + ", r = " + key +
                                " A, sample 0",
                            "accepted update",
                            "objective - exact minimum (Hartree)",
                            conv_series),
           written);
    }
  }
  return written;
}

}  // namespace vqx
