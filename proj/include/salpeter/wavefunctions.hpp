#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "salpeter/error.hpp"
#include "salpeter/potentials.hpp"
#include "salpeter/quadrature.hpp"
#include "salpeter/special_functions.hpp"
#include "salpeter/spectra.hpp"
#include "salpeter/types.hpp"

namespace salpeter::wavefunctions {

// P_n^(rho, nu)(1 - 2 q s) stored as coefficients in powers of s.
struct JacobiPoly {
  int n = 0;
  Complex rho_param, nu_param, q;
  std::vector<Complex> coeffs;

  Complex operator()(Complex s) const {
    Complex v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * s + *it;
    return v;
  }
};

// (1/n!) s^-a (1 - q s)^-b d^n/ds^n [s^(n+a) (1 - q s)^(n+b)], a = 2 eps, b = nu,
// expanded by the Leibniz rule.
inline JacobiPoly rodrigues_polynomial(int n, Complex eps, Complex nu, Complex q) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
  JacobiPoly P{n, 2.0 * eps, nu, q, std::vector<Complex>(n + 1, 0.0)};
  const Complex a = 2.0 * eps;
  for (int j = 0; j <= n; ++j) {
    const Complex lead = special::binomial(double(n), j) * special::falling(double(n) + a, j) *
                         special::falling(double(n) + nu, n - j) * std::pow(-q, n - j);
    // times s^(n-j) (1 - q s)^j
    for (int i = 0; i <= j; ++i)
      P.coeffs[n - j + i] += lead * special::binomial(double(j), i) * std::pow(-q, i);
  }
  const double nf = special::factorial(n);
  for (auto& c : P.coeffs) c /= nf;
  return P;
}

enum class Shape { Jacobi, Confluent };

struct WaveFunction {
  int n = 0;
  Regime regime = Regime::Real;
  Kinematics kinematics = Kinematics::Salpeter;
  Branch branch = Branch::Plus;
  Shape shape = Shape::Jacobi;
  Complex energy;
  Complex eps_exponent;
  Complex edge_exponent;
  JacobiPoly jacobi;
  Complex norm = 1.0;
  Complex alpha_eff;  // s = exp(-alpha_eff x)
  Complex q_eff;
  // q = 0: y = 1F1(a; c; rate s), extra factor exp(-rate s / 2)
  Complex kummer_a, kummer_c, kummer_rate;
  // physical s-range is [0, s_upper]
  double s_upper = 1.0;

  Complex s_of(double x) const { return std::exp(-alpha_eff * x); }

  // Unnormalized psi as a function of s (principal powers).
  Complex shape_s(Complex s) const {
    if (shape == Shape::Confluent)
      return std::pow(s, eps_exponent) * std::exp(-0.5 * kummer_rate * s) *
             special::confluent_1f1(kummer_a, kummer_c, kummer_rate * s);
    return std::pow(s, eps_exponent) * std::pow(1.0 - q_eff * s, edge_exponent) * jacobi(s);
  }

  Complex psi_s(Complex s) const { return norm * shape_s(s); }

  // log(1 - q s(x)) continuous in x. For imaginary alpha, s runs around the unit circle
  // and the principal log would jump where 1 - q s crosses the negative axis.
  Complex log_edge(double x) const {
    const Complex s = s_of(x);
    if (alpha_eff.real() != 0.0 || std::abs(q_eff) <= 1.0) return std::log(1.0 - q_eff * s);
    // |q| > 1: 1 - q s = (-q s)(1 - 1/(q s)), the second factor stays in the right half plane
    const Complex base = std::log(-q_eff) + std::log(1.0 - 1.0 / q_eff);
    const double turns = std::round((std::log(1.0 - q_eff) - base).imag() / (2.0 * std::numbers::pi));
    return base + Complex(0.0, 2.0 * std::numbers::pi * turns) - alpha_eff * x +
           std::log(1.0 - 1.0 / (q_eff * s)) - std::log(1.0 - 1.0 / q_eff);
  }

  // psi at x with branches continuous along the physical axis.
  Complex operator()(double x) const {
    const Complex s = s_of(x);
    const Complex ls = -alpha_eff * x;
    if (shape == Shape::Confluent)
      return norm * std::exp(eps_exponent * ls - 0.5 * kummer_rate * s) *
             special::confluent_1f1(kummer_a, kummer_c, kummer_rate * s);
    return norm * std::exp(eps_exponent * ls + edge_exponent * log_edge(x)) * jacobi(s);
  }
};

// Start of the physical x-domain (pole position for real q > 1).
inline double domain_start(const PotentialParams& p) {
  if (p.regime == Regime::Real && p.q > 1.0) return std::log(p.q) / p.alpha;
  return 0.0;
}

inline WaveFunction assemble(const PotentialParams& p, const MassConfig& m,
                             const spectra::BoundState& state, Branch branch) {
  if (state.regime != p.regime)
    throw Error(ErrorCode::RegimeMismatch, "bound state from a different regime");
  const spectra::Effective e = spectra::effective(p);
  WaveFunction wf;
  wf.n = state.n;
  wf.regime = p.regime;
  wf.kinematics = state.kinematics;
  wf.branch = branch;
  wf.energy = state[branch].energy;
  wf.eps_exponent = state[branch].eps;
  wf.alpha_eff = e.alpha;
  wf.q_eff = e.q;
  if (p.regime == Regime::Real && p.q > 1.0) wf.s_upper = 1.0 / p.q;

  if (p.q == 0.0) {
    if (state.kinematics != Kinematics::Salpeter)
      throw Error(ErrorCode::InvalidArgument, "q = 0 is Salpeter only");
    const auto d = spectra::dimensionless(p, m, wf.energy);
    const Complex eps2 = std::sqrt(d.eps2_sq);
    wf.shape = Shape::Confluent;
    wf.kummer_c = 1.0 + 2.0 * wf.eps_exponent;
    wf.kummer_a = 0.5 + wf.eps_exponent + I * (d.eps1 + d.eps3) / (2.0 * eps2);
    wf.kummer_rate = 2.0 * I * eps2;
    wf.edge_exponent = 0.0;
    return wf;
  }

  Complex b;
  if (state.kinematics == Kinematics::NonRelativistic)
    b = e.q;
  else
    b = spectra::root_b(e, m, spectra::regime_root(p, m));
  wf.edge_exponent = (b + e.q) / (2.0 * e.q);
  wf.jacobi = rodrigues_polynomial(state.n, wf.eps_exponent, b / e.q, e.q);
  return wf;
}

// ---- normalization ----

// Integral of s^(A-1) (1 - q s)^B' over the physical s-range.
inline Complex edge_integral(Complex A, Complex Bp, Complex q, double s_upper) {
  if (A.real() <= 0.0)
    throw Error(ErrorCode::ConvergenceViolation, "s-exponent not integrable at s = 0");
  if (q == Complex(1.0)) {
    if ((Bp + 1.0).real() <= 0.0)
      throw Error(ErrorCode::ConvergenceViolation, "edge exponent not integrable at s = 1");
    return special::beta_fn(A, Bp + 1.0);
  }
  if (s_upper < 1.0) return std::pow(q, -A) * special::beta_fn(A, Bp + 1.0);
  return special::gauss_2f1(A, -Bp, A + 1.0, q) * special::beta_fn(A, 1.0);
}

// Bilinear integral of shape_s^2 over s from the double Jacobi sum.
inline Complex closed_form_square_integral(const WaveFunction& wf) {
  if (wf.shape != Shape::Jacobi)
    throw Error(ErrorCode::InvalidArgument, "closed form needs the Jacobi shape");
  const int n = wf.n;
  const Complex eps2 = 2.0 * wf.eps_exponent, nu = wf.jacobi.nu_param, q = wf.q_eff;
  auto fact = [](int k) { return special::factorial(k); };
  Complex total = 0.0;
  for (int p = 0; p <= n; ++p) {
    const double sp = ((n + p) % 2 == 0) ? 1.0 : -1.0;
    const Complex Ap = sp * std::pow(q, n - p) *
                       special::rising(double(p) + nu + 1.0, n - p) *
                       special::falling(double(n) + eps2, p) / (fact(p) * fact(n - p));
    for (int r = 0; r <= n; ++r) {
      const double sr = (r % 2 == 0) ? 1.0 : -1.0;
      const Complex Br = sr * std::pow(q, r) *
                         special::rising(double(n) + eps2 + nu + 1.0, r) *
                         special::rising(eps2 + double(r) + 1.0, n - r) / (fact(r) * fact(n - r));
      const Complex A = double(n) + eps2 + double(r - p) + 1.0;
      const Complex Bp = double(p) + nu + 1.0;
      total += Ap * Br * edge_integral(A, Bp, q, wf.s_upper);
    }
  }
  return total;
}

struct NormalizationReport {
  Complex norm;
  std::optional<Complex> closed_form;  // integral of shape^2 from the double sum
  std::optional<Complex> pt_integral;  // integral of conj(shape(-s)) shape(s)
  int nu = 1;
  double pt_phase = 0.0;
};

// Pseudo-norm over the physical s-range [0, 1]; the integrand behaves as s^(2 Re eps) at 0.
inline Complex pt_integral(const WaveFunction& wf) {
  if (!(2.0 * wf.eps_exponent.real() > -1.0))
    throw Error(ErrorCode::ConvergenceViolation, "pseudo-norm not integrable at s = 0");
  auto f = [&](double s) { return std::conj(wf.shape_s(-s)) * wf.shape_s(s); };
  quadrature::Options o;
  o.abs_tol = 1e-13;
  o.rel_tol = 1e-11;
  return quadrature::integrate(f, 0.0, 1.0, o).value;
}

inline NormalizationReport normalization_constant(const WaveFunction& wf) {
  NormalizationReport rep;
  if (wf.regime == Regime::Real) {
    if (wf.shape != Shape::Jacobi)
      throw Error(ErrorCode::InvalidArgument, "no closed-form norm for the exponential case");
    const Complex J = closed_form_square_integral(wf);
    rep.closed_form = J;
    if (!(J.real() > 0.0))
      throw Error(ErrorCode::NormSquaredNegative, "squared norm is not positive");
    rep.norm = 1.0 / std::sqrt(J.real());
    return rep;
  }
  try {
    rep.closed_form = closed_form_square_integral(wf);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonConvergent && e.code() != ErrorCode::ParameterPole &&
        e.code() != ErrorCode::ConvergenceViolation)
      throw;
  }
  const Complex pt = pt_integral(wf);
  rep.pt_integral = pt;
  if (std::abs(pt) == 0.0 || !std::isfinite(std::abs(pt)))
    throw Error(ErrorCode::NormSquaredNegative, "PT norm vanishes");
  rep.nu = pt.real() >= 0.0 ? 1 : -1;
  rep.pt_phase = std::arg(pt);
  rep.norm = 1.0 / std::sqrt(std::abs(pt));
  return rep;
}

inline WaveFunction normalized(WaveFunction wf) {
  wf.norm = normalization_constant(wf).norm;
  return wf;
}

inline std::vector<Complex> evaluate_on_grid(const WaveFunction& wf, std::span<const double> xs,
                                             double x_left = 0.0) {
  std::vector<Complex> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (!(x >= x_left)) throw Error(ErrorCode::InvalidArgument, "x outside the physical domain");
    const Complex s = wf.s_of(x);
    if (wf.shape == Shape::Jacobi &&
        std::abs(1.0 - wf.q_eff * s) < potentials::kPoleTolerance * (1.0 + std::abs(wf.q_eff))) {
      // psi itself vanishes at the pole when the edge exponent is positive
      if (wf.edge_exponent.real() > 0.0) {
        out.push_back(0.0);
        continue;
      }
      throw Error(ErrorCode::PoleOnGrid, "grid point on a pole");
    }
    out.push_back(wf(x));
  }
  return out;
}

}  // namespace salpeter::wavefunctions
