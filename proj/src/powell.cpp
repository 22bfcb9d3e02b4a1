#include "vqx/powell.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vqx {
namespace {

double checked_eval(const Objective& f, const std::vector<double>& x) {
  double v = f(x);
  if (std::isnan(v)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "objective returned NaN at theta = [";
    for (size_t i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x[i];
    msg << "]";
    throw std::runtime_error(msg.str());
  }
  return v;
}

struct LineFunction {
  const Objective& f;
  const std::vector<double>& origin;
  const std::vector<double>& dir;
  mutable std::vector<double> scratch;

  double operator()(double t) const {
    scratch = origin;
    for (size_t i = 0; i < scratch.size(); ++i) scratch[i] += t * dir[i];
    return checked_eval(f, scratch);
  }
};

struct Bracket {
  double a = 0.0, b = 0.0, c = 0.0;
  double fb = 0.0;
};

// March t = +/- step, 2 step, 4 step, ... until the value rises; when both
// first probes rise, keep the (-step, 0, +step) bracket around the origin.
Bracket bracket_minimum(const LineFunction& g, double f0, double step,
                        int max_expansions) {
  double fpos = g(step);
  double sign = 1.0;
  double f_cur = fpos;
  if (fpos > f0) {
    double fneg = g(-step);
    if (fneg > f0) return {-step, 0.0, step, f0};
    sign = -1.0;
    f_cur = fneg;
  }
  double t_prev = 0.0, f_prev = f0;
  double t_cur = sign * step;
  for (int i = 0; i < max_expansions; ++i) {
    double t_next = 2.0 * t_cur;
    double f_next = g(t_next);
    if (f_next >= f_cur) return {t_prev, t_cur, t_next, f_cur};
    t_prev = t_cur;
    f_prev = f_cur;
    t_cur = t_next;
    f_cur = f_next;
  }
  (void)f_prev;
  return {t_prev, t_cur, 2.0 * t_cur, f_cur};
}

// Brent minimization inside a bracket; returns argmin, stores the value.
double brent(const LineFunction& g, const Bracket& br, double tol,
             double* fmin) {
  constexpr double kGold = 0.3819660112501051;
  constexpr double kZeps = 1e-12;
  double a = std::min(br.a, br.c), b = std::max(br.a, br.c);
  double x = br.b, w = br.b, v = br.b;
  double fx = br.fb, fw = br.fb, fv = br.fb;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    double xm = 0.5 * (a + b);
    double tol1 = tol * std::abs(x) + kZeps;
    double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
    bool use_golden = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      double etemp = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
        use_golden = false;
      }
    }
    if (use_golden) {
      e = (x >= xm) ? a - x : b - x;
      d = kGold * e;
    }
    double u = (std::abs(d) >= tol1) ? x + d : x + std::copysign(tol1, d);
    double fu = g(u);
    if (fu <= fx) {
      if (u >= x)
        a = x;
      else
        b = x;
      v = w;
      w = x;
      x = u;
      fv = fw;
      fw = fx;
      fx = fu;
    } else {
      if (u < x)
        a = u;
      else
        b = u;
      if (fu <= fw || w == x) {
        v = w;
        w = u;
        fv = fw;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  *fmin = fx;
  return x;
}

}  // namespace

PowellResult powell_minimize(const Objective& f, std::vector<double> theta0,
                             const PowellOptions& options,
                             const UpdateHook& on_update) {
  size_t n = theta0.size();
  PowellResult res;
  res.theta = std::move(theta0);
  res.value = checked_eval(f, res.theta);
  if (n == 0) {
    res.converged = true;
    return res;
  }

  std::vector<std::vector<double>> dirs = options.initial_directions;
  if (dirs.empty()) {
    dirs.assign(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) dirs[i][i] = 1.0;
  }
  if (dirs.size() != n)
    throw std::invalid_argument("direction count must match dimension");
  for (const auto& d : dirs)
    if (d.size() != n)
      throw std::invalid_argument("direction length must match dimension");

  // Line-minimize from the current point; on improvement, move and record
  // one accepted update. Returns the achieved decrease.
  auto line_minimize = [&](const std::vector<double>& dir) -> double {
    LineFunction g{f, res.theta, dir, {}};
    Bracket br = bracket_minimum(g, res.value, options.initial_step,
                                 options.max_bracket_expansions);
    double fmin = 0.0;
    double tmin = brent(g, br, options.line_search_tolerance, &fmin);
    if (!(fmin < res.value)) return 0.0;
    double previous = res.value;
    for (size_t i = 0; i < n; ++i) res.theta[i] += tmin * dir[i];
    res.value = checked_eval(f, res.theta);
    ++res.updates;
    res.trace.push_back({res.updates, res.value, res.theta});
    if (on_update) on_update(res.trace.back());
    return previous - res.value;
  };

  auto square = [](double z) { return z * z; };

  while (true) {
    double f0 = res.value;
    std::vector<double> x0 = res.theta;
    double biggest_drop = 0.0;
    size_t biggest_k = 0;
    for (size_t k = 0; k < n; ++k) {
      double drop = line_minimize(dirs[k]);
      if (drop > biggest_drop) {
        biggest_drop = drop;
        biggest_k = k;
      }
      if (res.updates >= options.max_updates) return res;
    }
    double fn = res.value;
    if (2.0 * (f0 - fn) <=
        options.value_tolerance * (std::abs(f0) + std::abs(fn)) + 1e-14) {
      res.converged = true;
      return res;
    }

    // Powell's direction-replacement test on the extrapolated point.
    std::vector<double> extrapolated(n), swept(n);
    for (size_t i = 0; i < n; ++i) {
      swept[i] = res.theta[i] - x0[i];
      extrapolated[i] = 2.0 * res.theta[i] - x0[i];
    }
    double fe = checked_eval(f, extrapolated);
    if (fe < f0) {
      double t = 2.0 * (f0 - 2.0 * fn + fe) * square(f0 - fn - biggest_drop) -
                 biggest_drop * square(f0 - fe);
      if (t < 0.0) {
        line_minimize(swept);
        if (res.updates >= options.max_updates) return res;
        dirs[biggest_k] = dirs[n - 1];
        dirs[n - 1] = swept;
      }
    }
  }
}

}  // namespace vqx
