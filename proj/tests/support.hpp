#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "salpeter/salpeter.hpp"

namespace salpeter::testing_support {

// Uniform draws from a fixed-seed engine.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

// g(x) of psi'' + g psi = 0 for the Salpeter or Schroedinger radial equation.
inline Complex g_of(const PotentialParams& p, const MassConfig& m, Kinematics kin, Complex E,
                    double x) {
  const Complex u = E - potentials::value_at(p, x);
  if (kin == Kinematics::NonRelativistic) return 2.0 * m.mu() * u;
  return 2.0 * m.mu() * (u + u * u / (2.0 * m.m_tilde()));
}

struct Residual {
  double max_relative = 0.0;
  double at_x = 0.0;
};

// Relative residual |psi'' + g psi| / (|psi''| + |g psi| + alpha |psi'|) with
// five-point differences, on `points` nodes over [x0, x1].
inline Residual ode_residual(const std::function<Complex(double)>& psi, const PotentialParams& p,
                             const MassConfig& m, Kinematics kin, Complex E, double x0,
                             double x1, int points, double h) {
  Residual r;
  for (int i = 0; i < points; ++i) {
    const double x = x0 + (x1 - x0) * i / double(points - 1);
    const Complex f0 = psi(x), fp1 = psi(x + h), fm1 = psi(x - h), fp2 = psi(x + 2 * h),
                  fm2 = psi(x - 2 * h);
    const Complex d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    const Complex d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    const Complex gp = g_of(p, m, kin, E, x) * f0;
    const double scale = std::abs(d2) + std::abs(gp) + std::abs(p.alpha) * std::abs(d1);
    if (scale == 0.0) continue;
    const double rel = std::abs(d2 + gp) / scale;
    if (rel > r.max_relative) r = {rel, x};
  }
  return r;
}

// Sign changes of Re psi on a uniform grid, ignoring tiny values.
inline int count_nodes(const std::function<Complex(double)>& psi, double x0, double x1, int points) {
  int nodes = 0;
  double prev = 0.0, peak = 0.0;
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) {
    v[i] = psi(x0 + (x1 - x0) * i / double(points - 1)).real();
    peak = std::max(peak, std::abs(v[i]));
  }
  for (double y : v) {
    if (std::abs(y) < 1e-9 * peak) continue;
    if (prev != 0.0 && (y > 0) != (prev > 0)) ++nodes;
    prev = y;
  }
  return nodes;
}

}  // namespace salpeter::testing_support
