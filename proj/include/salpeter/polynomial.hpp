#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "salpeter/types.hpp"

namespace salpeter {

// c[0] + c[1] s + c[2] s^2
struct Poly2 {
  std::array<Complex, 3> c{};

  Poly2() = default;
  Poly2(Complex c0, Complex c1 = 0.0, Complex c2 = 0.0) : c{c0, c1, c2} {}

  Complex operator[](std::size_t i) const { return c[i]; }
  Complex& operator[](std::size_t i) { return c[i]; }

  Complex operator()(Complex s) const { return c[0] + s * (c[1] + s * c[2]); }

  Poly2 derivative() const { return {c[1], 2.0 * c[2], 0.0}; }

  int degree() const {
    for (int i = 2; i >= 0; --i)
      if (c[i] != Complex{}) return i;
    return -1;
  }

  bool is_zero() const { return degree() < 0; }

  double max_abs() const {
    return std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])});
  }

  friend Poly2 operator+(const Poly2& a, const Poly2& b) {
    return {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]};
  }
  friend Poly2 operator-(const Poly2& a, const Poly2& b) {
    return {a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2]};
  }
  friend Poly2 operator*(Complex k, const Poly2& a) {
    return {k * a.c[0], k * a.c[1], k * a.c[2]};
  }
  // Only valid when the product stays within degree 2.
  friend Poly2 multiply_linear(const Poly2& a, const Poly2& b) {
    return {a.c[0] * b.c[0], a.c[0] * b.c[1] + a.c[1] * b.c[0],
            a.c[1] * b.c[1]};
  }
};

}  // namespace salpeter
