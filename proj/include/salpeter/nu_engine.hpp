#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "salpeter/error.hpp"
#include "salpeter/polynomial.hpp"
#include "salpeter/types.hpp"

// Nikiforov-Uvarov reduction of
//   psi'' + (tau_tilde/sigma) psi' + (sigma_tilde/sigma^2) psi = 0.
namespace salpeter::nu {

struct NuProblem {
  Poly2 sigma;
  Poly2 sigma_tilde;
  Poly2 tau_tilde;

  static NuProblem make(const Poly2& sigma, const Poly2& sigma_tilde, const Poly2& tau_tilde) {
    if (sigma.is_zero()) throw Error(ErrorCode::InvalidArgument, "sigma must be nonzero");
    if (tau_tilde[2] != Complex{})
      throw Error(ErrorCode::InvalidArgument, "tau_tilde must have degree <= 1");
    return {sigma, sigma_tilde, tau_tilde};
  }
};

struct NuSolution {
  Complex k;
  Poly2 pi;
  Poly2 tau;
  Complex lambda;
  Branch sign;
};

inline constexpr double kPerfectSquareTol = 1e-10;

// (sigma' - tau_tilde)/2
inline Poly2 half_shift(const NuProblem& p) {
  return 0.5 * (p.sigma.derivative() - p.tau_tilde);
}

// Radicand of pi(s) as a quadratic in s: h^2 - sigma_tilde + k sigma.
inline Poly2 radicand(const NuProblem& p, Complex k) {
  const Poly2 h = half_shift(p);
  return multiply_linear(h, h) - p.sigma_tilde + k * p.sigma;
}

namespace detail {

// Roots of a x^2 + b x + c, stable form.
inline std::vector<Complex> quadratic_roots(Complex a, Complex b, Complex c) {
  const Complex disc = std::sqrt(b * b - 4.0 * a * c);
  const Complex sgn = (std::real(std::conj(b) * disc) >= 0.0) ? 1.0 : -1.0;
  const Complex qq = -0.5 * (b + sgn * disc);
  if (qq == Complex{}) return {Complex{}, Complex{}};
  return {qq / a, c / qq};
}

}  // namespace detail

// Values of k making the radicand a perfect square in s, with multiplicity.
inline std::vector<Complex> candidate_k(const NuProblem& p) {
  const Poly2 r0 = radicand(p, 0.0);
  const Poly2& sg = p.sigma;
  if (r0[2] == Complex{} && r0[1] == Complex{} && sg[2] == Complex{} && sg[1] == Complex{})
    throw Error(ErrorCode::DegenerateRadicand, "radicand independent of s for every k");
  // disc(k) = (B0 + k s1)^2 - 4 (A0 + k s2)(C0 + k s0)
  const Complex c2 = sg[1] * sg[1] - 4.0 * sg[2] * sg[0];
  const Complex c1 = 2.0 * r0[1] * sg[1] - 4.0 * (r0[2] * sg[0] + sg[2] * r0[0]);
  const Complex c0 = r0[1] * r0[1] - 4.0 * r0[2] * r0[0];
  const double scale = std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale == 0.0)
    throw Error(ErrorCode::DegenerateRadicand, "radicand is a perfect square for every k");
  if (std::abs(c2) > 1e-14 * scale) return detail::quadratic_roots(c2, c1, c0);
  if (std::abs(c1) > 1e-14 * scale) return {-c0 / c1};
  return {};
}

inline NuSolution solve_with_k(const NuProblem& p, Complex k, Branch sign,
                               bool admissible_only = false) {
  const Poly2 r = radicand(p, k);
  const double scale = std::max(r.max_abs(), 1e-300);
  const Complex disc = r[1] * r[1] - 4.0 * r[2] * r[0];
  if (std::abs(disc) > kPerfectSquareTol * scale * scale)
    throw Error(ErrorCode::NotPerfectSquare, "radicand is not a perfect square for this k");
  // linear root l(s) with l^2 = r
  Poly2 root;
  if (std::abs(r[2]) > 1e-14 * scale) {
    const Complex sa = std::sqrt(r[2]);
    if (std::abs(r[2]) >= std::abs(r[0])) {
      root = Poly2(r[1] / (2.0 * sa), sa);
    } else {
      // square root of the larger end coefficient; sign still fixed by sqrt(r[2])
      const Complex s0 = std::sqrt(r[0]);
      root = Poly2(s0, r[1] / (2.0 * s0));
      if (std::real(std::conj(root[1]) * sa) < 0.0) root = -1.0 * root;
    }
  } else {
    root = Poly2(std::sqrt(r[0]));
  }
  const Complex pm = (sign == Branch::Plus) ? 1.0 : -1.0;
  NuSolution sol;
  sol.k = k;
  sol.pi = half_shift(p) + pm * root;
  sol.tau = p.tau_tilde + 2.0 * sol.pi;
  sol.lambda = k + sol.pi[1];
  sol.sign = sign;
  if (admissible_only && sol.tau[1].real() >= 0.0)
    throw Error(ErrorCode::AdmissibilityFailure, "Re tau' >= 0");
  return sol;
}

inline Complex quantized_lambda(const NuSolution& sol, const Poly2& sigma, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
  const double nd = n;
  return -nd * sol.tau[1] - 0.5 * nd * (nd - 1.0) * (2.0 * sigma[2]);
}

// f(s) = s^s_power (1 - edge_q s)^edge_power exp(exp_rate s)
struct FactorRecord {
  Complex s_power;
  Complex edge_power;
  Complex edge_q;
  Complex exp_rate;

  Complex operator()(Complex s) const {
    Complex v = std::pow(s, s_power) * std::exp(exp_rate * s);
    if (edge_q != Complex{}) v *= std::pow(1.0 - edge_q * s, edge_power);
    return v;
  }
};

struct WeightAndPhi {
  FactorRecord rho;
  FactorRecord phi;
};

// sigma = c s (1 - q s) or sigma = c s.
inline WeightAndPhi weight_and_phi(const NuSolution& sol, const NuProblem& p) {
  const Poly2& sg = p.sigma;
  const double scale = sg.max_abs();
  if (std::abs(sg[0]) > 1e-14 * scale || std::abs(sg[1]) <= 1e-14 * scale)
    throw Error(ErrorCode::UnsupportedSigmaShape, "sigma must be c s (1 - q s) or c s");
  const Complex c = sg[1];
  const Poly2& t = sol.tau;
  const Poly2& pi = sol.pi;
  WeightAndPhi out;
  if (std::abs(sg[2]) <= 1e-14 * scale) {
    out.rho = {t[0] / c - 1.0, 0.0, 0.0, t[1] / c};
    out.phi = {pi[0] / c, 0.0, 0.0, pi[1] / c};
    return out;
  }
  const Complex q = -sg[2] / c;
  out.rho = {t[0] / c - 1.0, -(t[1] + q * t[0]) / (q * c) - 1.0, q, 0.0};
  out.phi = {pi[0] / c, -(pi[1] + q * pi[0]) / (q * c), q, 0.0};
  return out;
}

// Automatic selection: Re tau' < 0 and a bounded phi at s -> 0; then the most
// negative Re tau'; then the smallest |lambda|.
inline NuSolution solve(const NuProblem& p) {
  auto ks = candidate_k(p);
  if (ks.size() == 2 && std::abs(ks[0] - ks[1]) <= 1e-14 * std::max(1.0, std::abs(ks[0])))
    ks.pop_back();
  std::vector<NuSolution> ok;
  for (Complex k : ks) {
    for (Branch b : {Branch::Plus, Branch::Minus}) {
      NuSolution s;
      try {
        s = solve_with_k(p, k, b);
      } catch (const Error&) {
        continue;
      }
      if (s.tau[1].real() >= 0.0) continue;
      try {
        if (weight_and_phi(s, p).phi.s_power.real() < 0.0) continue;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::UnsupportedSigmaShape) throw;
      }
      ok.push_back(s);
    }
  }
  if (ok.empty()) throw Error(ErrorCode::AdmissibilityFailure, "no admissible (k, sign) pair");
  constexpr double tie = 1e-12;
  auto close = [](double a, double b) {
    return std::abs(a - b) <= tie * std::max({1.0, std::abs(a), std::abs(b)});
  };
  double best_tau = ok[0].tau[1].real();
  for (const auto& s : ok) best_tau = std::min(best_tau, s.tau[1].real());
  std::vector<NuSolution> top;
  for (const auto& s : ok)
    if (close(s.tau[1].real(), best_tau)) top.push_back(s);
  double best_lambda = std::abs(top[0].lambda);
  for (const auto& s : top) best_lambda = std::min(best_lambda, std::abs(s.lambda));
  std::optional<NuSolution> pick;
  for (const auto& s : top) {
    if (!close(std::abs(s.lambda), best_lambda)) continue;
    if (pick && (std::abs(pick->pi[0] - s.pi[0]) > tie * (1.0 + std::abs(s.pi[0])) ||
                 std::abs(pick->pi[1] - s.pi[1]) > tie * (1.0 + std::abs(s.pi[1]))))
      throw Error(ErrorCode::AmbiguousBranch, "several admissible branches tie");
    if (!pick) pick = s;
  }
  return *pick;
}

// The hypergeometric-type problem of the generalized Hulthen case in s = exp(-alpha x).
inline NuProblem hulthen_problem(Complex eps, Complex eps1, Complex eps2_sq, Complex eps3,
                                 Complex q) {
  const Poly2 sigma(0.0, 1.0, -q);
  const Poly2 tau_tilde(1.0, -q);
  const Poly2 sigma_tilde(-eps * eps, eps1 + eps3 + 2.0 * q * eps * eps,
                          eps2_sq - q * q * eps * eps - q * eps1 - q * eps3);
  return NuProblem::make(sigma, sigma_tilde, tau_tilde);
}

// The q = 0 (exponential) problem.
inline NuProblem exponential_problem(Complex eps, Complex eps1, Complex eps2_sq, Complex eps3) {
  return NuProblem::make(Poly2(0.0, 1.0), Poly2(-eps * eps, eps1 + eps3, eps2_sq), Poly2(1.0));
}

}  // namespace salpeter::nu
