#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>

#include "salpeter/error.hpp"
#include "salpeter/types.hpp"

namespace salpeter {

// Constituent masses with the derived reduced mass mu, eta and m_tilde.
class MassConfig {
 public:
  MassConfig(double m1, double m2) : m1_(m1), m2_(m2) {
    if (!(m1 > 0.0) || !(m2 > 0.0) || !std::isfinite(m1) || !std::isfinite(m2))
      throw Error(ErrorCode::InvalidArgument, "masses must be positive and finite");
    if (m1 == m2) {
      mu_ = 0.5 * m1;
      m_tilde_ = 2.0 * m1;
    } else {
      const double p = m1 * m2;
      mu_ = p / (m1 + m2);
      m_tilde_ = p * mu_ / (p - 3.0 * mu_ * mu_);
    }
    eta_ = std::cbrt(m_tilde_ * mu_ * mu_);
  }

  static MassConfig equal(double m) { return {m, m}; }

  double m1() const { return m1_; }
  double m2() const { return m2_; }
  double mu() const { return mu_; }
  double eta() const { return eta_; }
  double m_tilde() const { return m_tilde_; }
  double total() const { return m1_ + m2_; }
  bool equal_masses() const { return m1_ == m2_; }

  friend bool operator==(const MassConfig&, const MassConfig&) = default;

 private:
  double m1_, m2_, mu_, eta_, m_tilde_;
};

// Real base values; the regime decides which of them carry a factor i.
struct PotentialParams {
  double V0 = 0.0;
  double alpha = 1.0;
  double q = 1.0;
  Regime regime = Regime::Real;

  static PotentialParams make(double V0, double alpha, double q,
                              Regime regime = Regime::Real) {
    PotentialParams p{V0, alpha, q, regime};
    p.validate();
    return p;
  }

  void validate() const {
    if (!std::isfinite(V0) || !std::isfinite(alpha) || !std::isfinite(q))
      throw Error(ErrorCode::InvalidArgument, "parameters must be finite");
    if (alpha == 0.0) throw Error(ErrorCode::InvalidArgument, "alpha must be nonzero");
    if (q == 0.0 && regime != Regime::Real)
      throw Error(ErrorCode::InvalidArgument, "q = 0 is only allowed in regime Real");
  }

  bool imaginary_alpha() const {
    return regime == Regime::ComplexAlpha || regime == Regime::AllComplex;
  }
  bool imaginary_v0q() const {
    return regime == Regime::ComplexV0Q || regime == Regime::AllComplex;
  }

  Complex V0_eff() const { return imaginary_v0q() ? I * V0 : Complex(V0); }
  Complex alpha_eff() const { return imaginary_alpha() ? I * alpha : Complex(alpha); }
  Complex q_eff() const { return imaginary_v0q() ? I * q : Complex(q); }

  friend bool operator==(const PotentialParams&, const PotentialParams&) = default;
};

namespace potentials {

inline constexpr double kPoleTolerance = 1e-10;

// V at any real x (negative x allowed for reflection checks).
inline Complex value_at(const PotentialParams& p, double x) {
  const Complex t = std::exp(-p.alpha_eff() * x);
  const Complex q = p.q_eff();
  const Complex den = 1.0 - q * t;
  if (std::abs(den) < kPoleTolerance * (1.0 + std::abs(q)))
    throw Error(ErrorCode::PoleAtX, "potential pole at x = " + std::to_string(x));
  return -p.V0_eff() * t / den;
}

inline Complex evaluate(const PotentialParams& p, double x) {
  if (!(x >= 0.0)) throw Error(ErrorCode::InvalidArgument, "x must be >= 0");
  return value_at(p, x);
}

// Trigonometric and hyperbolic closed forms of the complex regimes.
inline Complex closed_form(const PotentialParams& p, double x) {
  const double V0 = p.V0, a = p.alpha, q = p.q;
  switch (p.regime) {
    case Regime::Real:
      return -V0 * std::exp(-a * x) / (1.0 - q * std::exp(-a * x));
    case Regime::ComplexAlpha: {
      const double c = std::cos(a * x), s = std::sin(a * x);
      return V0 * Complex(q - c, s) / (q * q - 2.0 * q * c + 1.0);
    }
    case Regime::ComplexV0Q: {
      // cosh - sinh and 2 cosh^2 - sinh(2 a x) - 1, taken as exponentials to avoid cancellation
      const double e1 = std::exp(-a * x), e2 = e1 * e1;
      return V0 * Complex(q * e2, -e1) / (1.0 + q * q * e2);
    }
    case Regime::AllComplex: {
      const double c = std::cos(a * x), s = std::sin(a * x);
      return V0 * Complex(q - s, -c) / (q * q - 2.0 * q * s + 1.0);
    }
  }
  return {};
}

enum class DegenerateForm { Exponential, StandardHulthen, WoodsSaxon, Generic };

inline std::string_view to_string(DegenerateForm f) {
  switch (f) {
    case DegenerateForm::Exponential: return "Exponential";
    case DegenerateForm::StandardHulthen: return "StandardHulthen";
    case DegenerateForm::WoodsSaxon: return "WoodsSaxon";
    case DegenerateForm::Generic: return "Generic";
  }
  return "Generic";
}

inline DegenerateForm degenerate_form(const PotentialParams& p, double snap_tol = 0.0) {
  if (p.regime != Regime::Real)
    throw Error(ErrorCode::RegimeMismatch, "degenerate_form needs regime Real");
  if (std::abs(p.q) <= snap_tol) return DegenerateForm::Exponential;
  if (std::abs(p.q - 1.0) <= snap_tol) return DegenerateForm::StandardHulthen;
  if (std::abs(p.q + 1.0) <= snap_tol) return DegenerateForm::WoodsSaxon;
  return DegenerateForm::Generic;
}

// Shifted linear form for small alpha x.
inline Complex short_range_expansion(const PotentialParams& p, double x, int order) {
  if (p.regime != Regime::Real)
    throw Error(ErrorCode::RegimeMismatch, "short_range_expansion needs regime Real");
  if (order != 0 && order != 1)
    throw Error(ErrorCode::InvalidArgument, "order must be 0 or 1");
  if (p.q == 1.0) throw Error(ErrorCode::DegenerateShift, "q = 1 has no finite shift");
  const double d = p.q - 1.0;
  double v = p.V0 / d;
  if (order == 1) v += p.V0 * p.alpha * x / (d * d);
  return v;
}

enum class SymmetryVerdict { Hermitian, PTSymmetric, PPseudoHermitian, None };

inline std::string_view to_string(SymmetryVerdict v) {
  switch (v) {
    case SymmetryVerdict::Hermitian: return "Hermitian";
    case SymmetryVerdict::PTSymmetric: return "PTSymmetric";
    case SymmetryVerdict::PPseudoHermitian: return "PPseudoHermitian";
    case SymmetryVerdict::None: return "None";
  }
  return "None";
}

struct SymmetryReport {
  SymmetryVerdict verdict = SymmetryVerdict::None;
  double hermitian_residual = std::numeric_limits<double>::quiet_NaN();
  double pt_residual = std::numeric_limits<double>::quiet_NaN();
  double pseudo_residual = std::numeric_limits<double>::quiet_NaN();
};

// Centre of the parity reflection for the pseudo-Hermitian check:
// x -> 2c - x with c = pi/(2 alpha).
inline double pseudo_reflection(const PotentialParams& p, double x) {
  return std::numbers::pi / p.alpha - x;
}

inline SymmetryReport check_pt_symmetry(const PotentialParams& p,
                                        std::span<const double> grid, double tol) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty grid");
  auto sample = [&](double x) {
    try {
      return value_at(p, x);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PoleAtX)
        throw Error(ErrorCode::PoleOnGrid, e.detail());
      throw;
    }
  };
  SymmetryReport r;
  double herm = 0.0, pt = 0.0, pseudo = 0.0;
  for (double x : grid) herm = std::max(herm, std::abs(sample(x).imag()));
  r.hermitian_residual = herm;
  if (herm < tol) {
    r.verdict = SymmetryVerdict::Hermitian;
    return r;
  }
  for (double x : grid) {
    const Complex v = sample(x);
    pt = std::max(pt, std::abs(v - std::conj(sample(-x))));
    pseudo = std::max(pseudo, std::abs(v - std::conj(sample(pseudo_reflection(p, x)))));
  }
  r.pt_residual = pt;
  r.pseudo_residual = pseudo;
  if (pt < tol)
    r.verdict = SymmetryVerdict::PTSymmetric;
  else if (pseudo < tol)
    r.verdict = SymmetryVerdict::PPseudoHermitian;
  return r;
}

}  // namespace potentials
}  // namespace salpeter
