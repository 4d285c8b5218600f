#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace vlf {

struct ScalarMax {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of f on [a, b].
/// Assumes f is unimodal on the bracket; stops once the bracket width falls
/// below rel_tol * (|a| + |b|) + 1e-300.
template <typename F>
ScalarMax golden_section_max(F&& f, double a, double b, double rel_tol = 1e-13,
                             int max_iter = 300) {
  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > rel_tol * (std::fabs(a) + std::fabs(b)) + 1e-300; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? ScalarMax{c, fc} : ScalarMax{d, fd};
}

/// Maximum of f on [a, b] for functions that may have a few local maxima
/// (e.g. piecewise-smooth objectives with kinks): a uniform scan seeds
/// golden-section refinements around every local peak of the scan.
template <typename F>
ScalarMax scan_golden_max(F&& f, double a, double b, int scan_points = 256,
                          double rel_tol = 1e-13) {
  if (scan_points < 3) scan_points = 3;
  std::vector<double> xs(scan_points), fs(scan_points);
  for (int i = 0; i < scan_points; ++i) {
    xs[i] = a + (b - a) * static_cast<double>(i) / (scan_points - 1);
    fs[i] = f(xs[i]);
  }
  ScalarMax best{xs[0], fs[0]};
  for (int i = 0; i < scan_points; ++i) {
    const bool left_ok = (i == 0) || fs[i] >= fs[i - 1];
    const bool right_ok = (i == scan_points - 1) || fs[i] >= fs[i + 1];
    if (!(left_ok && right_ok)) continue;
    const double lo = xs[i == 0 ? 0 : i - 1];
    const double hi = xs[i == scan_points - 1 ? scan_points - 1 : i + 1];
    ScalarMax local = golden_section_max(f, lo, hi, rel_tol);
    if (local.value > best.value) best = local;
    if (fs[i] > best.value) best = {xs[i], fs[i]};
  }
  return best;
}

}  // namespace vlf
