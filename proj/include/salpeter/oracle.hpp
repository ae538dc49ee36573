#pragma once

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <utility>
#include <vector>

#include "salpeter/error.hpp"
#include "salpeter/potentials.hpp"
#include "salpeter/types.hpp"

// Independent numerical eigenvalues of the s-wave equation psi'' + g(x; E) psi = 0,
// g = 2 mu [u + u^2/(2 m_tilde)], u = E - V(x) (Salpeter) or g = 2 mu (E - V) (linear).
namespace salpeter::oracle {

struct Options {
  double x_max_alpha = 25.0;   // domain length in units of 1/alpha
  double h_alpha = 0.01;       // shooting step in units of 1/alpha
  double fd_h_alpha = 0.005;   // coarsest finite-difference step
  double fd_target = 1e-6;     // absolute accuracy target of fd_eigenvalues
  double root_rel_tol = 1e-12; // bisection stop
  double frobenius_delta_alpha = 1e-8;
  int threads = 0;             // 0: hardware concurrency
};

struct EffectiveProblem {
  PotentialParams params;
  MassConfig masses;
  Kinematics kinematics = Kinematics::Salpeter;
  double x_left = 0.0;
  double x_max = 0.0;
  double h = 0.0;
  bool singular_left = false;
  double frobenius_r = 1.0;
  // RK4 mesh: nodes x[i], midpoints, and V sampled at both
  std::vector<double> x, v_node, v_mid;

  double g_of(double V, double E) const {
    const double u = E - V;
    if (kinematics == Kinematics::NonRelativistic) return 2.0 * masses.mu() * u;
    return 2.0 * masses.mu() * (u + u * u / (2.0 * masses.m_tilde()));
  }

  double g(double xx, double E) const {
    return g_of(potentials::value_at(params, xx).real(), E);
  }

  // Far-field decay rate (V -> 0).
  double kappa(double E) const {
    const double g0 = g_of(0.0, E);
    return g0 < 0.0 ? std::sqrt(-g0) : 0.0;
  }
};

inline EffectiveProblem make_effective_problem(const PotentialParams& p, const MassConfig& m,
                                               Kinematics kin = Kinematics::Salpeter,
                                               const Options& o = {}) {
  p.validate();
  if (p.regime != Regime::Real)
    throw Error(ErrorCode::RegimeMismatch, "the oracle handles regime Real only");
  if (!(p.alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  if (!(o.h_alpha > 0.0) || !(o.x_max_alpha > 0.0))
    throw Error(ErrorCode::InvalidArgument, "grid settings must be positive");
  if (o.h_alpha > 0.05) throw Error(ErrorCode::StepTooCoarse, "alpha h must be <= 0.05");
  EffectiveProblem ep{p, m, kin};
  ep.h = o.h_alpha / p.alpha;
  ep.x_left = p.q >= 1.0 ? std::log(p.q) / p.alpha : 0.0;
  ep.x_max = ep.x_left + o.x_max_alpha / p.alpha;
  ep.singular_left = p.q >= 1.0;
  if (ep.singular_left) {
    // indicial equation r (r - 1) + c = 0 at the pole
    const double c = kin == Kinematics::Salpeter
                         ? m.mu() * p.V0 * p.V0 / (m.m_tilde() * p.q * p.q * p.alpha * p.alpha)
                         : 0.0;
    if (1.0 - 4.0 * c < 0.0)
      throw Error(ErrorCode::NoBoundState, "attractive 1/x^2 singularity: no ground state");
    ep.frobenius_r = 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * c));
  }
  double xx = ep.x_left + (ep.singular_left ? o.frobenius_delta_alpha / p.alpha : 0.0);
  ep.x.push_back(xx);
  while (xx < ep.x_max) {
    double step = ep.h;
    if (ep.singular_left) step = std::min(step, 0.01 * (xx - ep.x_left));
    step = std::min(step, ep.x_max - xx);
    if (step <= 0.0) break;
    xx += step;
    ep.x.push_back(xx);
  }
  ep.v_node.resize(ep.x.size());
  ep.v_mid.resize(ep.x.size());
  for (std::size_t i = 0; i < ep.x.size(); ++i) {
    ep.v_node[i] = potentials::value_at(p, ep.x[i]).real();
    if (i + 1 < ep.x.size())
      ep.v_mid[i] = potentials::value_at(p, 0.5 * (ep.x[i] + ep.x[i + 1])).real();
  }
  return ep;
}

struct ShootResult {
  double mismatch = 0.0;
  int nodes = 0;
  double mean_w_over_mtilde = 0.0;
};

// Outward RK4 from the left boundary; mismatch of the decaying log-derivative
// psi' + kappa psi at x_max, scaled by the running maximum of |psi|.
inline ShootResult shoot(const EffectiveProblem& ep, double E) {
  const std::size_t N = ep.x.size();
  double y0, y1;
  if (ep.singular_left) {
    const double d = ep.x[0] - ep.x_left, r = ep.frobenius_r;
    y0 = std::pow(d, r);
    y1 = r * std::pow(d, r - 1.0);
  } else {
    y0 = 0.0;
    y1 = 1.0;
  }
  const double alpha = ep.params.alpha;
  double run_max = std::abs(y0);
  double x_turn = ep.x[0];
  std::vector<double> crossings;
  std::vector<double> w_psi2(N, 0.0), psi2(N, 0.0);  // |V - E| psi^2 h and psi^2 h
  for (std::size_t i = 0; i + 1 < N; ++i) {
    const double h = ep.x[i + 1] - ep.x[i];
    const double g0 = ep.g_of(ep.v_node[i], E);
    const double gm = ep.g_of(ep.v_mid[i], E);
    const double g1 = ep.g_of(ep.v_node[i + 1], E);
    if (g0 > 0.0) x_turn = ep.x[i];
    if (h * std::sqrt(std::abs(g0)) > 0.5)
      throw Error(ErrorCode::StepTooCoarse, "step too coarse for the local wavenumber");
    const double k10 = y1, k11 = -g0 * y0;
    const double k20 = y1 + 0.5 * h * k11, k21 = -gm * (y0 + 0.5 * h * k10);
    const double k30 = y1 + 0.5 * h * k21, k31 = -gm * (y0 + 0.5 * h * k20);
    const double k40 = y1 + h * k31, k41 = -g1 * (y0 + h * k30);
    const double n0 = y0 + h / 6.0 * (k10 + 2.0 * k20 + 2.0 * k30 + k40);
    const double n1 = y1 + h / 6.0 * (k11 + 2.0 * k21 + 2.0 * k31 + k41);
    if (!std::isfinite(n0) || !std::isfinite(n1))
      throw Error(ErrorCode::Overflow, "non-finite shooting solution");
    if ((n0 > 0.0) != (y0 > 0.0) && y0 != 0.0 && n0 != 0.0) crossings.push_back(ep.x[i + 1]);
    y0 = n0;
    y1 = n1;
    run_max = std::max(run_max, std::abs(y0));
    psi2[i + 1] = y0 * y0 * h;
    w_psi2[i + 1] = std::abs(ep.v_node[i + 1] - E) * psi2[i + 1];
    const double big = std::max(std::abs(y0), std::abs(y1) / alpha);
    if (big > 1e100) {
      y0 /= big;
      y1 /= big;
      run_max /= big;
      for (std::size_t j = 0; j <= i + 1; ++j) {
        psi2[j] /= big * big;
        w_psi2[j] /= big * big;
      }
    }
  }
  if (ep.g_of(ep.v_node[N - 1], E) > 0.0) x_turn = ep.x[N - 1];
  ShootResult res;
  const double kap = ep.kappa(E);
  res.mismatch = (y1 + kap * y0) / (alpha * std::max(run_max, 1e-300));
  for (double c : crossings)
    if (c <= x_turn) ++res.nodes;
  // weight only the bound part: up to a few decay lengths past the turning point
  const double x_cut = x_turn + 3.0 / std::max(kap, alpha);
  double wsum = 0.0, norm = 0.0;
  for (std::size_t j = 0; j < N && ep.x[j] <= x_cut; ++j) {
    wsum += w_psi2[j];
    norm += psi2[j];
  }
  res.mean_w_over_mtilde = norm > 0.0 ? wsum / norm / ep.masses.m_tilde() : 0.0;
  return res;
}

inline double shooting_mismatch(const PotentialParams& p, const MassConfig& m, double E,
                                const Options& o = {}) {
  return shoot(make_effective_problem(p, m, Kinematics::Salpeter, o), E).mismatch;
}

struct Level {
  double energy = 0.0;
  int nodes = 0;
  double mean_w_over_mtilde = 0.0;
};

inline int thread_count(const Options& o) {
  if (o.threads > 0) return o.threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

// Trial energies: uniform in sqrt(-E) plus geometric points toward the upper end.
inline std::vector<double> scan_grid(double lo, double hi, int points) {
  std::vector<double> E;
  if (hi <= 0.0) {
    const double a = std::sqrt(-lo), b = std::sqrt(-hi);
    for (int i = 1; i <= points; ++i) {
      const double k = a + (b - a) * double(i) / (points + 1);
      E.push_back(-k * k);
    }
    for (int j = 1; j <= 12; ++j) E.push_back(hi - (hi - lo) * std::pow(10.0, -0.5 * j - 1.0));
  } else {
    for (int i = 1; i <= points; ++i) E.push_back(lo + (hi - lo) * double(i) / (points + 1));
  }
  std::sort(E.begin(), E.end());
  E.erase(std::unique(E.begin(), E.end()), E.end());
  return E;
}

inline std::vector<Level> scan_levels(const EffectiveProblem& ep, double lo, double hi,
                                      int scan_points, const Options& o = {}) {
  if (scan_points < 100) throw Error(ErrorCode::InvalidArgument, "scan_points must be >= 100");
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "empty energy window");
  const auto E = scan_grid(lo, hi, scan_points);
  std::vector<double> mis(E.size());
  std::vector<std::exception_ptr> errs(E.size());
  const int T = std::min<int>(thread_count(o), int(E.size()));
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < T; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < E.size(); i += T) {
          try {
            mis[i] = shoot(ep, E[i]).mismatch;
          } catch (...) {
            errs[i] = std::current_exception();
          }
        }
      });
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  std::vector<Level> out;
  for (std::size_t i = 0; i + 1 < E.size(); ++i) {
    if ((mis[i] > 0.0) == (mis[i + 1] > 0.0)) continue;
    double a = E[i], b = E[i + 1], fa = mis[i];
    for (int it = 0; it < 200 && (b - a) > o.root_rel_tol * std::max(std::abs(a), 1e-300); ++it) {
      const double c = 0.5 * (a + b);
      const double fc = shoot(ep, c).mismatch;
      if ((fc > 0.0) == (fa > 0.0)) {
        a = c;
        fa = fc;
      } else {
        b = c;
      }
    }
    const double root = 0.5 * (a + b);
    const auto r = shoot(ep, root);
    out.push_back({root, r.nodes, r.mean_w_over_mtilde});
  }
  return out;
}

// Roots of the shooting mismatch in [lo, hi], sorted ascending.
inline std::vector<double> salpeter_levels(const PotentialParams& p, const MassConfig& m,
                                           std::pair<double, double> window, int scan_points,
                                           const Options& o = {}) {
  const auto ep = make_effective_problem(p, m, Kinematics::Salpeter, o);
  std::vector<double> out;
  for (const auto& l : scan_levels(ep, window.first, window.second, scan_points, o))
    out.push_back(l.energy);
  return out;
}

// The physical binding window (-(m1 + m2), 0).
inline std::pair<double, double> binding_window(const MassConfig& m) { return {-m.total(), 0.0}; }

// ---- finite differences for the linear problem ----

namespace detail {

// Number of eigenvalues below lambda of the symmetric tridiagonal (d, e).
inline int sturm_count(const std::vector<double>& d, double e, double lambda) {
  int count = 0;
  double piv = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    piv = d[i] - lambda - (i == 0 ? 0.0 : e * e / piv);
    if (piv == 0.0) piv = -1e-300;
    if (piv < 0.0) ++count;
  }
  return count;
}

inline std::vector<double> lowest_eigenvalues(const PotentialParams& p, double mu, int count,
                                              double x_left, double length, double h) {
  const int N = int(std::llround(length / h));
  std::vector<double> d(N - 1);
  const double off = -1.0 / (2.0 * mu * h * h);
  double lo = std::numeric_limits<double>::max(), hi = -lo;
  for (int i = 1; i < N; ++i) {
    d[i - 1] = 1.0 / (mu * h * h) + potentials::value_at(p, x_left + i * h).real();
    lo = std::min(lo, d[i - 1] - 2.0 * std::abs(off));
    hi = std::max(hi, d[i - 1] + 2.0 * std::abs(off));
  }
  std::vector<double> out;
  for (int k = 0; k < count; ++k) {
    double a = lo, b = hi;
    for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
      const double c = 0.5 * (a + b);
      if (sturm_count(d, off, c) > k)
        b = c;
      else
        a = c;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace detail

struct FdReport {
  std::vector<double> energies;        // finest Richardson estimate
  std::vector<double> convergence;     // |R(h/2, h/4) - R(h, h/2)| per level
};

// Lowest eigenvalues of -psi''/(2 mu) + V psi = E psi with Dirichlet ends,
// Richardson-extrapolated on h, h/2, h/4.
inline FdReport fd_eigenvalues_report(const PotentialParams& p, double mu, int count,
                                      const Options& o = {}) {
  p.validate();
  if (p.regime != Regime::Real)
    throw Error(ErrorCode::RegimeMismatch, "the oracle handles regime Real only");
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
  if (!(mu > 0.0) || !(p.alpha > 0.0))
    throw Error(ErrorCode::InvalidArgument, "mu and alpha must be positive");
  const double x_left = p.q >= 1.0 ? std::log(p.q) / p.alpha : 0.0;
  const double L = o.x_max_alpha / p.alpha;
  const double h = o.fd_h_alpha / p.alpha;
  const auto e1 = detail::lowest_eigenvalues(p, mu, count, x_left, L, h);
  const auto e2 = detail::lowest_eigenvalues(p, mu, count, x_left, L, h / 2.0);
  const auto e4 = detail::lowest_eigenvalues(p, mu, count, x_left, L, h / 4.0);
  FdReport rep;
  for (int k = 0; k < count; ++k) {
    const double r1 = (4.0 * e2[k] - e1[k]) / 3.0;
    const double r2 = (4.0 * e4[k] - e2[k]) / 3.0;
    rep.energies.push_back(r2);
    rep.convergence.push_back(std::abs(r2 - r1));
    if (std::abs(r2 - r1) > 10.0 * o.fd_target)
      throw Error(ErrorCode::NotConverged, "two-grid difference exceeds 10x target");
  }
  return rep;
}

inline std::vector<double> fd_eigenvalues(const PotentialParams& p, double mu, int count,
                                          const Options& o = {}) {
  return fd_eigenvalues_report(p, mu, count, o).energies;
}

}  // namespace salpeter::oracle
