#pragma once

#include <complex>
#include <optional>
#include <string_view>

namespace salpeter {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};

// Which of V0, alpha, q carry a factor i.
enum class Regime { Real, ComplexAlpha, ComplexV0Q, AllComplex };

// Energy branches: Plus is the upper (less bound) root, Minus the lower one.
enum class Branch { Plus, Minus };

enum class Kinematics { Salpeter, NonRelativistic };

constexpr std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Real: return "Real";
    case Regime::ComplexAlpha: return "ComplexAlpha";
    case Regime::ComplexV0Q: return "ComplexV0Q";
    case Regime::AllComplex: return "AllComplex";
  }
  return "Real";
}

inline std::optional<Regime> regime_from_string(std::string_view s) {
  if (s == "Real") return Regime::Real;
  if (s == "ComplexAlpha") return Regime::ComplexAlpha;
  if (s == "ComplexV0Q") return Regime::ComplexV0Q;
  if (s == "AllComplex") return Regime::AllComplex;
  return std::nullopt;
}

constexpr std::string_view to_string(Branch b) {
  return b == Branch::Plus ? "Plus" : "Minus";
}

constexpr std::string_view to_string(Kinematics k) {
  return k == Kinematics::Salpeter ? "Salpeter" : "NonRelativistic";
}

}  // namespace salpeter
