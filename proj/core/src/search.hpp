#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace hqvp::detail {

/// Golden-section search for a maximum of a unimodal f on [a, b]; returns the
/// best value seen, which includes both ends.
template <typename F>
double golden_max(F&& f, double a, double b, double tol = 1e-13) {
  constexpr double inv_phi = 0.6180339887498949;
  double best = std::max(f(a), f(b));
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > tol * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
    best = std::max({best, f1, f2});
  }
  return std::max({best, f1, f2});
}

/// Maximum of f over [t0, t1]: uniform samples, then golden refinement around
/// every sampled local maximum.
template <typename F>
double sampled_max(F&& f, double t0, double t1, std::size_t samples) {
  samples = std::max<std::size_t>(samples, 3);
  std::vector<double> ts(samples);
  std::vector<double> vs(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    ts[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(samples - 1);
    vs[k] = f(ts[k]);
  }
  double best = vs[0];
  for (std::size_t k = 0; k < samples; ++k) {
    best = std::max(best, vs[k]);
    const bool left_ok = k == 0 || vs[k] >= vs[k - 1];
    const bool right_ok = k + 1 == samples || vs[k] >= vs[k + 1];
    if (!left_ok || !right_ok) continue;
    const double a = ts[k == 0 ? 0 : k - 1];
    const double b = ts[k + 1 == samples ? k : k + 1];
    if (b > a) best = std::max(best, golden_max(f, a, b));
  }
  return best;
}

template <typename F>
double sampled_min(F&& f, double t0, double t1, std::size_t samples) {
  return -sampled_max([&](double t) { return -f(t); }, t0, t1, samples);
}

}  // namespace hqvp::detail
