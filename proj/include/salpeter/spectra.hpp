#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "salpeter/error.hpp"
#include "salpeter/potentials.hpp"
#include "salpeter/types.hpp"

// Closed-form s-wave energies of the Salpeter equation (hbar = c = 1).
namespace salpeter::spectra {

// Sign of b = sqrt(q^2 - 4 eps2^2) used by the reduction.
enum class RootBranch { Principal, Negated };

inline constexpr double kRealTolerance = 1e-10;

inline bool is_real_energy(Complex E) {
  return std::abs(E.imag()) <= kRealTolerance * (1.0 + std::abs(E));
}

struct Effective {
  Complex V0, alpha, q;
};

inline Effective effective(const PotentialParams& p) {
  return {p.V0_eff(), p.alpha_eff(), p.q_eff()};
}

struct DimensionlessParams {
  Complex eps, eps1, eps2_sq, eps3;
  Complex eps_nr_sq, eps1_nr;
};

inline DimensionlessParams dimensionless(const PotentialParams& p, const MassConfig& m,
                                         Complex E) {
  const Effective e = effective(p);
  const Complex a = e.alpha * e.alpha / (2.0 * m.mu());
  DimensionlessParams d;
  d.eps1 = e.V0 / a;
  d.eps2_sq = d.eps1 * d.eps1 * a / (2.0 * m.m_tilde());
  d.eps3 = e.V0 * E / (a * m.m_tilde());
  d.eps = std::sqrt(-(E + E * E / (2.0 * m.m_tilde())) / a);
  const double a_nr = 2.0 * m.mu() / (p.alpha * p.alpha);
  d.eps_nr_sq = a_nr * E;
  d.eps1_nr = a_nr * p.V0;
  return d;
}

struct EnergyPair {
  Complex plus;
  Complex minus;
  Complex operator[](Branch b) const { return b == Branch::Plus ? plus : minus; }
};

// E = P (1 +- sqrt(R)); Plus is the upper root.
inline EnergyPair label_pair(Complex P, Complex sqrtR) {
  const double sgn = (P.real() < 0.0) ? -1.0 : 1.0;
  return {P * (1.0 + sgn * sqrtR), P * (1.0 - sgn * sqrtR)};
}

// ---- generic reduction with effective (possibly complex) parameters ----

inline Complex root_b(const Effective& e, const MassConfig& m, RootBranch rb) {
  const Complex a = e.alpha * e.alpha / (2.0 * m.mu());
  const Complex eps2_sq = e.V0 * e.V0 / (2.0 * m.m_tilde() * a);
  const Complex b = std::sqrt(e.q * e.q - 4.0 * eps2_sq);
  return rb == RootBranch::Principal ? b : -b;
}

inline Complex nu_D(const Effective& e, Complex b, int n) {
  const double k = 2.0 * n + 1.0;
  return e.q + e.q * k * k + 2.0 * k * b;
}

inline Complex nu_C(const Effective& e, Complex b, int n) { return b + e.q * (2.0 * n + 1.0); }

// Binding energies from lambda = lambda_n after squaring out eps.
inline EnergyPair nu_energy_pair(const Effective& e, const MassConfig& m, int n,
                                 RootBranch rb = RootBranch::Principal) {
  const double mt = m.m_tilde();
  const Complex a = e.alpha * e.alpha / (2.0 * m.mu());
  const Complex D = nu_D(e, root_b(e, m, rb), n);
  const Complex P = e.V0 / (2.0 * e.q) - mt;
  const Complex r = e.V0 / a;
  const Complex bracket = r * r - 0.5 * r * D + D * D / 16.0;
  const Complex R = 1.0 - (2.0 * mt * a / e.q) * bracket / (P * P * D);
  return label_pair(P, std::sqrt(R));
}

// eps fixed by lambda = lambda_n at energy E; its sign separates normalizable roots.
inline Complex nu_eps(const Effective& e, const MassConfig& m, int n, Complex E,
                      RootBranch rb = RootBranch::Principal) {
  const Complex a = e.alpha * e.alpha / (2.0 * m.mu());
  const Complex b = root_b(e, m, rb);
  const Complex C = nu_C(e, b, n);
  if (std::abs(C) < 1e-300) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
  const Complex eps13 = e.V0 / a + e.V0 * E / (a * m.m_tilde());
  return (eps13 - nu_D(e, b, n) / 4.0) / C;
}

// Nonrelativistic limit of the same reduction (eps2 = eps3 = 0, b = q).
inline Complex nu_eps_nr_value(const Effective& e, double mu, int n) {
  const Complex eps1 = 2.0 * mu * e.V0 / (e.alpha * e.alpha);
  const double np1 = n + 1.0;
  return (eps1 - e.q * np1 * np1) / (2.0 * e.q * np1);
}

inline Complex nu_energy_nonrelativistic(const Effective& e, double mu, int n) {
  const Complex eps = nu_eps_nr_value(e, mu, n);
  return -e.alpha * e.alpha * eps * eps / (2.0 * mu);
}

// Exponential (q = 0) reduction: single energy, linear in the quantization.
inline Complex exponential_energy_general(Complex alpha, const MassConfig& m, int n) {
  const double mt = m.m_tilde();
  const Complex a = alpha * alpha / (2.0 * m.mu());
  const Complex w = std::sqrt(2.0 * mt / a);
  const double k = 2.0 * n + 1.0;
  const Complex u = (w * w - k * k) / (2.0 * I * k * w);
  return mt * (u - 1.0);
}

inline Complex exponential_eps(Complex alpha, const MassConfig& m, int n, Complex E) {
  const double mt = m.m_tilde();
  const Complex a = alpha * alpha / (2.0 * m.mu());
  const Complex w = std::sqrt(2.0 * mt / a);
  return (-I * (1.0 + E / mt) * w - (2.0 * n + 1.0)) / 2.0;
}

// ---- auxiliary combinations ----

struct SpectralAuxiliaries {
  Complex b, C, D;
  Complex xi, xi_tilde, kappa;
  Complex varsigma, varsigma_tilde;
  Complex c, d;
  std::array<double, 2> chi_sq{};
  double beta = std::numeric_limits<double>::quiet_NaN();
};

inline Complex xi_of(double V0, double alpha, double q, int n) {
  const double k = 2.0 * n + 1.0;
  const Complex root = std::sqrt(Complex(q * q * alpha * alpha - V0 * V0));
  return q * alpha * (q * alpha + q * alpha * k * k + 2.0 * k * root);
}

inline Complex kappa_of(double V0, double alpha, double q, int n) {
  return std::sqrt(Complex(alpha * alpha * q * q - V0 * V0)) + q * alpha * (2.0 * n + 1.0);
}

inline Complex xi_tilde_of(double V0, double alpha, int n) {
  const double k = 2.0 * n + 1.0;
  return alpha * (alpha + alpha * k * k - 2.0 * k * std::sqrt(Complex(alpha * alpha - V0 * V0)));
}

inline double varsigma_of(double V0, double alpha, double q, int n) {
  const double k = 2.0 * n + 1.0;
  return q * q * alpha * alpha * (1.0 + k * k) +
         2.0 * q * alpha * k * std::sqrt(q * q * alpha * alpha + V0 * V0);
}

inline double varsigma_tilde_of(double V0, double alpha, double q, int n) {
  const double k = 2.0 * n + 1.0;
  return q * q * alpha * alpha * (1.0 + k * k) -
         2.0 * q * alpha * k * std::sqrt(q * q * alpha * alpha + V0 * V0);
}

// Both roots of the critical chi^2 (m_tilde = 2m).
inline std::array<double, 2> chi_sq_of(double V0, double q, double m) {
  const double P = V0 / (2.0 * q) - 2.0 * m;
  const double base = 2.0 * m * V0 / q + P * P;
  const double root = P * std::sqrt(std::max(0.0, P * P + 4.0 * m * V0 / q));
  return {2.0 * q * q * (base + root), 2.0 * q * q * (base - root)};
}

// Root of b^2 that continues the regime's closed form. In ComplexV0Q the closed form
// carries b = i sqrt(q^2 - 4 |eps2^2|), which is the negated principal root once b^2 > 0.
inline RootBranch regime_root(const PotentialParams& p, const MassConfig& m) {
  if (p.regime == Regime::AllComplex) return RootBranch::Negated;
  if (p.regime == Regime::ComplexV0Q) {
    const Complex b = root_b(effective(p), m, RootBranch::Principal);
    if ((b * b).real() > 0.0) return RootBranch::Negated;
  }
  return RootBranch::Principal;
}

inline SpectralAuxiliaries auxiliaries(const PotentialParams& p, const MassConfig& m, int n) {
  const Effective e = effective(p);
  SpectralAuxiliaries x;
  const double V0 = p.V0, al = p.alpha, q = p.q;
  if (q != 0.0) {
    x.b = root_b(e, m, regime_root(p, m));
    x.C = nu_C(e, x.b, n);
    x.D = nu_D(e, x.b, n);
    x.beta = 2.0 * m.mu() * V0 / (q * al * al);
    x.chi_sq = chi_sq_of(V0, q, 0.5 * m.m_tilde());
  }
  x.xi = xi_of(V0, al, q, n);
  x.kappa = kappa_of(V0, al, q, n);
  x.xi_tilde = xi_tilde_of(V0, al, n);
  x.varsigma = varsigma_of(V0, al, q, n);
  x.varsigma_tilde = varsigma_tilde_of(V0, al, q, n);
  x.c = std::sqrt(Complex(q * q + V0 * V0 / (al * al)));
  x.d = std::sqrt(Complex(q * q - V0 * V0 / (al * al)));
  return x;
}

// ---- named closed forms ----

namespace detail {

inline void require_n(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 0");
}

inline void require_regime(const PotentialParams& p, Regime r) {
  if (p.regime != r)
    throw Error(ErrorCode::RegimeMismatch, "expected regime " + std::string(to_string(r)));
}

inline void require_real_pair(const EnergyPair& e) {
  if (!is_real_energy(e.plus) || !is_real_energy(e.minus))
    throw Error(ErrorCode::ComplexSpectrum, "energy radicand is negative");
}

// P{1 +- sqrt(1 - sgn (2 m V0)^2 [1 - sgn y + y^2/4] / (X P^2))}, y = X/(2 m q V0),
// expanded so V0 -> 0 stays finite.
inline EnergyPair equal_mass_form(double V0, double q, double m, Complex X, double sgn) {
  const Complex P = V0 / (2.0 * q) - 2.0 * m;
  const Complex num = 4.0 * m * m * V0 * V0 - sgn * 2.0 * m * V0 * X / q + X * X / (4.0 * q * q);
  const Complex R = 1.0 - sgn * num / (X * P * P);
  return label_pair(P, std::sqrt(R));
}

inline void require_bound_real(const PotentialParams& p, const MassConfig& m) {
  if (p.q == 0.0) throw Error(ErrorCode::InvalidArgument, "q must be nonzero");
  if (p.V0 == 0.0) throw Error(ErrorCode::NoBoundState, "zero coupling");
  const double a = p.alpha * p.alpha / (2.0 * m.mu());
  const double b_sq = p.q * p.q - 2.0 * p.V0 * p.V0 / (m.m_tilde() * a);
  if (b_sq < 0.0) throw Error(ErrorCode::NoBoundState, "q^2 below the coupling bound");
}

}  // namespace detail

inline EnergyPair salpeter_energy_general(const PotentialParams& p, const MassConfig& m, int n) {
  detail::require_n(n);
  detail::require_regime(p, Regime::Real);
  detail::require_bound_real(p, m);
  const auto e = nu_energy_pair(effective(p), m, n);
  detail::require_real_pair(e);
  return e;
}

inline EnergyPair salpeter_energy_equal_mass(const PotentialParams& p, double m, int n) {
  detail::require_n(n);
  detail::require_regime(p, Regime::Real);
  detail::require_bound_real(p, MassConfig::equal(m));
  const auto e = detail::equal_mass_form(p.V0, p.q, m, xi_of(p.V0, p.alpha, p.q, n), 1.0);
  detail::require_real_pair(e);
  return e;
}

// q = -1; prefactor -(V0/2 + 2m), i.e. the equal-mass form at q = -1.
inline EnergyPair woods_saxon_energy(const PotentialParams& p, double m, int n) {
  detail::require_n(n);
  detail::require_regime(p, Regime::Real);
  if (p.q != -1.0) throw Error(ErrorCode::InvalidArgument, "Woods-Saxon needs q = -1");
  if (p.alpha * p.alpha < p.V0 * p.V0)
    throw Error(ErrorCode::NoBoundState, "alpha^2 < V0^2");
  const double V0 = p.V0;
  const Complex xt = xi_tilde_of(V0, p.alpha, n);
  const Complex P = -(V0 / 2.0 + 2.0 * m);
  const Complex num = 4.0 * m * m * V0 * V0 + 2.0 * m * V0 * xt + xt * xt / 4.0;
  const Complex R = 1.0 - num / (xt * (V0 / 2.0 + 2.0 * m) * (V0 / 2.0 + 2.0 * m));
  return label_pair(P, std::sqrt(R));
}

inline Complex exponential_energy(Complex alpha, double m, int n) {
  detail::require_n(n);
  const double k = 2.0 * n + 1.0;
  return I * k * alpha / 2.0 - 2.0 * m - I * 2.0 * m * m / (k * alpha);
}

inline double exponential_energy_imaginary_alpha(double alpha_I, double m, int n) {
  detail::require_n(n);
  if (!(alpha_I > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha_I must be positive");
  const double k = 2.0 * n + 1.0;
  return -m * (2.0 + k * alpha_I / (2.0 * m) + 2.0 * m / (k * alpha_I));
}

inline EnergyPair complex_alpha_energy_raw(const PotentialParams& p, double m, int n) {
  return detail::equal_mass_form(p.V0, p.q, m, varsigma_of(p.V0, p.alpha, p.q, n), -1.0);
}

inline EnergyPair complex_alpha_energy(const PotentialParams& p, double m, int n) {
  detail::require_n(n);
  detail::require_regime(p, Regime::ComplexAlpha);
  const auto e = complex_alpha_energy_raw(p, m, n);
  detail::require_real_pair(e);
  return e;
}

inline EnergyPair complex_v0q_energy_raw(const PotentialParams& p, double m, int n) {
  return detail::equal_mass_form(p.V0, p.q, m, xi_of(p.V0, p.alpha, p.q, n), 1.0);
}

inline EnergyPair complex_v0q_energy(const PotentialParams& p, double m, int n) {
  detail::require_n(n);
  detail::require_regime(p, Regime::ComplexV0Q);
  const auto e = complex_v0q_energy_raw(p, m, n);
  detail::require_real_pair(e);
  return e;
}

inline EnergyPair all_complex_energy(const PotentialParams& p, double m, int n) {
  detail::require_n(n);
  detail::require_regime(p, Regime::AllComplex);
  return detail::equal_mass_form(p.V0, p.q, m, varsigma_tilde_of(p.V0, p.alpha, p.q, n), -1.0);
}

// Nonrelativistic formula values without the bound-state gate.
inline Complex nonrelativistic_formula(const PotentialParams& p, double mu, int n) {
  const double np1 = n + 1.0, al = p.alpha, q = p.q;
  if (p.regime == Regime::ComplexAlpha) {
    const double t = (2.0 * mu * p.V0 + q * al * al * np1 * np1) / np1;
    return t * t / (8.0 * mu * q * q * al * al);
  }
  const double beta = 2.0 * mu * p.V0 / (q * al * al);
  const double t = np1 - beta / np1;
  return -al * al / (8.0 * mu) * t * t;
}

inline Complex nonrelativistic_energy(const PotentialParams& p, double mu, int n) {
  detail::require_n(n);
  if (p.q == 0.0) throw Error(ErrorCode::InvalidArgument, "q must be nonzero");
  if (p.regime != Regime::Real && p.regime != Regime::ComplexAlpha)
    throw Error(ErrorCode::RegimeMismatch, "nonrelativistic formula needs Real or ComplexAlpha");
  if (p.regime == Regime::Real) {
    const double beta = 2.0 * mu * p.V0 / (p.q * p.alpha * p.alpha);
    if (!(beta > 0.0) || !(n + 1.0 < std::sqrt(beta)))
      throw Error(ErrorCode::NoBoundState, "level fails n + 1 < sqrt(beta)");
  }
  return nonrelativistic_formula(p, mu, n);
}

// ---- per-level classification ----

struct BranchState {
  Complex energy;
  Complex eps;
  bool physical = false;
};

struct BoundState {
  int n = 0;
  Regime regime = Regime::Real;
  Kinematics kinematics = Kinematics::Salpeter;
  EnergyPair energy;
  std::array<BranchState, 2> branches{};  // Plus, Minus
  SpectralAuxiliaries aux;

  const BranchState& operator[](Branch b) const { return branches[b == Branch::Plus ? 0 : 1]; }

  std::optional<Branch> physical_branch() const {
    if (branches[0].physical) return Branch::Plus;
    if (branches[1].physical) return Branch::Minus;
    return std::nullopt;
  }
};

inline BoundState bound_state(const PotentialParams& p, const MassConfig& m, int n,
                              Kinematics kin = Kinematics::Salpeter) {
  detail::require_n(n);
  p.validate();
  BoundState s;
  s.n = n;
  s.regime = p.regime;
  s.kinematics = kin;
  s.aux = auxiliaries(p, m, n);
  const Effective e = effective(p);
  const RootBranch rb = regime_root(p, m);

  if (kin == Kinematics::NonRelativistic) {
    if (p.q == 0.0) throw Error(ErrorCode::InvalidArgument, "q must be nonzero");
    const Complex E = p.regime == Regime::Real || p.regime == Regime::ComplexAlpha
                          ? nonrelativistic_formula(p, m.mu(), n)
                          : nu_energy_nonrelativistic(e, m.mu(), n);
    const Complex eps = nu_eps_nr_value(e, m.mu(), n);
    s.energy = {E, E};
    const bool phys = p.regime == Regime::Real ? (eps.real() > 0.0 && E.real() < 0.0)
                                               : is_real_energy(E);
    s.branches = {BranchState{E, eps, phys}, BranchState{E, eps, false}};
    return s;
  }

  if (p.q == 0.0) {
    const Complex E = exponential_energy_general(e.alpha, m, n);
    s.energy = {E, E};
    const Complex eps = exponential_eps(e.alpha, m, n, E);
    s.branches = {BranchState{E, eps, false}, BranchState{E, eps, false}};
    return s;
  }

  switch (p.regime) {
    case Regime::Real:
      detail::require_bound_real(p, m);
      s.energy = nu_energy_pair(e, m, n);
      break;
    case Regime::ComplexAlpha:
    case Regime::ComplexV0Q:
    case Regime::AllComplex:
      if (!m.equal_masses())
        throw Error(ErrorCode::InvalidArgument, "complex regimes are equal-mass only");
      s.energy = p.regime == Regime::ComplexAlpha ? complex_alpha_energy_raw(p, m.m1(), n)
                 : p.regime == Regime::ComplexV0Q
                     ? complex_v0q_energy_raw(p, m.m1(), n)
                     : all_complex_energy(p, m.m1(), n);
      break;
  }
  for (int i = 0; i < 2; ++i) {
    const Complex E = i == 0 ? s.energy.plus : s.energy.minus;
    const Complex eps = nu_eps(e, m, n, E, rb);
    bool phys = is_real_energy(E);
    if (p.regime == Regime::Real)
      phys = phys && E.real() < 0.0 && E.real() > -m.total() && eps.real() > 0.0;
    s.branches[i] = {E, eps, phys};
  }
  return s;
}

// Literal critical-coupling bound on n (count of real-energy levels).
struct CriticalBound {
  std::array<double, 2> chi_sq{};
  std::array<bool, 2> admissible{};
  std::optional<double> n_max;
  bool existence = false;
  int count = 0;
};

inline CriticalBound critical_level_bound(const PotentialParams& p, const MassConfig& m) {
  detail::require_regime(p, Regime::Real);
  if (p.q == 0.0) throw Error(ErrorCode::InvalidArgument, "q must be nonzero");
  const double q = p.q, al = p.alpha, V0 = p.V0;
  if (q * q * al * al < V0 * V0) throw Error(ErrorCode::NoBoundState, "q^2 alpha^2 < V0^2");
  CriticalBound cb;
  cb.chi_sq = chi_sq_of(V0, q, 0.5 * m.m_tilde());
  const double inner = std::sqrt(q * q * al * al - V0 * V0);
  for (int i = 0; i < 2; ++i) {
    const double diff = cb.chi_sq[i] - V0 * V0;
    cb.admissible[i] = diff >= -1e-12 * (1.0 + V0 * V0);
    if (!cb.admissible[i]) continue;
    const double nm = (std::sqrt(std::max(0.0, diff)) - inner) / (2.0 * q * al) - 0.5;
    if (!cb.n_max || nm > *cb.n_max) cb.n_max = nm;
    if (q * al + inner <= std::sqrt(std::max(0.0, diff)) * (1.0 + 1e-12)) cb.existence = true;
  }
  if (cb.n_max && cb.existence)
    cb.count = std::max(0, int(std::floor(*cb.n_max + 1e-12)) + 1);
  return cb;
}

// Number of normalizable levels: n whose closed-form state is physical.
inline int level_count(const PotentialParams& p, const MassConfig& m) {
  detail::require_regime(p, Regime::Real);
  if (p.q == 0.0) throw Error(ErrorCode::InvalidArgument, "q must be nonzero");
  if (p.V0 == 0.0) return 0;
  detail::require_bound_real(p, m);
  const Effective e = effective(p);
  const double a = p.alpha * p.alpha / (2.0 * m.mu());
  const double bound =
      std::abs(p.V0) / a * std::max(1.0, std::abs(1.0 - m.total() / m.m_tilde()));
  int count = 0;
  for (int n = 0; n < 1'000'000; ++n) {
    const Complex D = nu_D(e, root_b(e, m, RootBranch::Principal), n);
    if (std::abs(D) / 4.0 > bound) break;
    const auto s = bound_state(p, m, n);
    if (s.physical_branch()) ++count;
  }
  return count;
}

inline std::vector<BoundState> spectrum(const PotentialParams& p, const MassConfig& m, int n_max,
                                        Kinematics kin = Kinematics::Salpeter) {
  std::vector<BoundState> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(bound_state(p, m, n, kin));
  return out;
}

}  // namespace salpeter::spectra
