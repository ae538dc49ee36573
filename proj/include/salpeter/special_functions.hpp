#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "salpeter/error.hpp"
#include "salpeter/types.hpp"

namespace salpeter::special {

inline bool is_nonpositive_integer(Complex z, double tol = 1e-13) {
  if (std::abs(z.imag()) > tol) return false;
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) <= tol * std::max(1.0, std::abs(r));
}

namespace detail {

// Lanczos g = 7, 9 terms.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(z) for Re z >= 0.5 (some branch; only exponentiated).
inline Complex log_gamma_right(Complex z) {
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + double(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace detail

// A logarithm of Gamma(z); exp(log_gamma(z)) == Gamma(z).
inline Complex log_gamma(Complex z) {
  if (is_nonpositive_integer(z))
    throw Error(ErrorCode::ParameterPole, "Gamma pole");
  if (z.real() < 0.5)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * z)) -
           detail::log_gamma_right(1.0 - z);
  return detail::log_gamma_right(z);
}

inline Complex gamma(Complex z) {
  if (is_nonpositive_integer(z))
    throw Error(ErrorCode::ParameterPole, "Gamma pole");
  if (z.real() < 0.5)
    return std::numbers::pi /
           (std::sin(std::numbers::pi * z) * std::exp(detail::log_gamma_right(1.0 - z)));
  return std::exp(detail::log_gamma_right(z));
}

// 1/Gamma(z), zero at the poles.
inline Complex rgamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5)
    return std::sin(std::numbers::pi * z) * std::exp(detail::log_gamma_right(1.0 - z)) /
           std::numbers::pi;
  return std::exp(-detail::log_gamma_right(z));
}

inline Complex rising(Complex a, int n) {
  Complex r = 1.0;
  for (int k = 0; k < n; ++k) r *= a + double(k);
  return r;
}

inline Complex falling(Complex a, int n) {
  Complex r = 1.0;
  for (int k = 0; k < n; ++k) r *= a - double(k);
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// Generalized binomial C(x, k) for integer k >= 0.
inline Complex binomial(Complex x, int k) { return falling(x, k) / factorial(k); }

inline Complex beta_fn(Complex x, Complex y) {
  if (is_nonpositive_integer(x) || is_nonpositive_integer(y))
    throw Error(ErrorCode::ParameterPole, "Beta argument at a Gamma pole");
  if (y == Complex(1.0)) return 1.0 / x;
  if (x == Complex(1.0)) return 1.0 / y;
  if (is_nonpositive_integer(x + y)) return 0.0;
  return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

// ---- Jacobi polynomials P_n^(a,b)(z) ----

// Binomial-sum form.
inline Complex jacobi_binomial_form(int n, Complex a, Complex b, Complex z) {
  Complex sum = 0.0;
  for (int p = 0; p <= n; ++p)
    sum += binomial(double(n) + a, p) * binomial(double(n) + b, n - p) *
           std::pow((z - 1.0) / 2.0, n - p) * std::pow((z + 1.0) / 2.0, p);
  return sum;
}

// Gamma-ratio form; throws ParameterPole when a Gamma argument is singular.
inline Complex jacobi_gamma_form(int n, Complex a, Complex b, Complex z) {
  const Complex nab = double(n) + a + b;
  for (int r = 0; r <= n; ++r)
    if (is_nonpositive_integer(nab + double(r) + 1.0) ||
        is_nonpositive_integer(a + double(r) + 1.0))
      throw Error(ErrorCode::ParameterPole, "Jacobi Gamma-ratio form singular");
  // Gamma(nab + r + 1) / Gamma(a + r + 1) carried from r = 0 by exact factor updates.
  // The alternating sum cancels strongly, so it is accumulated in extended precision.
  using LC = std::complex<long double>;
  const LC w = (LC(z) - 1.0L) / 2.0L, A(a), N(nab);
  LC ratio = 1.0L, sum = 0.0L, wr = 1.0L;
  for (int r = 0; r <= n; ++r) {
    sum += LC(binomial(double(n), r)) * ratio * wr;
    ratio *= (N + static_cast<long double>(r) + 1.0L) / (A + static_cast<long double>(r) + 1.0L);
    wr *= w;
  }
  return std::exp(log_gamma(double(n) + a + 1.0) - log_gamma(a + 1.0)) / factorial(n) *
         Complex(sum);
}

inline Complex jacobi_recurrence(int n, Complex a, Complex b, Complex z) {
  if (n == 0) return 1.0;
  Complex p0 = 1.0;
  Complex p1 = (a - b) / 2.0 + (a + b + 2.0) * z / 2.0;
  for (int k = 1; k < n; ++k) {
    const Complex s = 2.0 * double(k) + a + b;
    const Complex lead = 2.0 * double(k + 1) * (double(k) + a + b + 1.0) * s;
    if (std::abs(double(k) + a + b + 1.0) < 1e-12 || std::abs(s) < 1e-12)
      throw Error(ErrorCode::ParameterPole, "Jacobi recurrence denominator vanishes");
    const Complex p2 =
        ((s + 1.0) * ((s + 2.0) * s * z + a * a - b * b) * p1 -
         2.0 * (double(k) + a) * (double(k) + b) * (s + 2.0) * p0) /
        lead;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

inline Complex jacobi_eval(int n, Complex a, Complex b, Complex z) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative Jacobi degree");
  try {
    return jacobi_recurrence(n, a, b, z);
  } catch (const Error&) {
    return jacobi_binomial_form(n, a, b, z);
  }
}

// The two finite sums for P_n^(2eps, nu)(1 - 2 q s) in powers of s and (1 - q s).
inline std::pair<Complex, Complex> jacobi_shifted_sum_forms(int n, Complex eps, Complex nu,
                                                            Complex q, Complex s) {
  const Complex rho = 2.0 * eps;
  const Complex nd = double(n);
  Complex by_p = 0.0;
  for (int p = 0; p <= n; ++p) {
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    by_p += sign * std::pow(q, n - p) * rgamma(double(p) + nu + 1.0) *
            rgamma(nd + rho - double(p) + 1.0) / (factorial(p) * factorial(n - p)) *
            std::pow(s, n - p) * std::pow(1.0 - q * s, p);
  }
  by_p *= (n % 2 == 0 ? 1.0 : -1.0) * gamma(nd + rho + 1.0) * gamma(nd + nu + 1.0);

  Complex by_r = 0.0;
  for (int r = 0; r <= n; ++r) {
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    by_r += sign * std::pow(q, r) * gamma(nd + rho + nu + double(r) + 1.0) *
            rgamma(rho + double(r) + 1.0) / (factorial(r) * factorial(n - r)) * std::pow(s, r);
  }
  by_r *= gamma(nd + rho + 1.0) * rgamma(nd + rho + nu + 1.0);
  return {by_p, by_r};
}

// ---- hypergeometric series ----

inline constexpr double kSeriesTolerance = 1e-14;
inline constexpr int kSeriesCap = 2'000'000;

namespace detail {

inline Complex terminating_2f1(int m, Complex other, Complex c, Complex z) {
  // -m is the nonpositive integer parameter
  Complex term = 1.0, sum = 1.0;
  for (int k = 0; k < m; ++k) {
    if (std::abs(c + double(k)) < 1e-13)
      throw Error(ErrorCode::ParameterPole, "2F1 with c a pole inside the terminating sum");
    term *= (double(k - m)) * (other + double(k)) / ((c + double(k)) * double(k + 1)) * z;
    sum += term;
  }
  return sum;
}

inline Complex series_2f1(Complex a, Complex b, Complex c, Complex z) {
  const double az = std::abs(z);
  const int kmin = int(2.0 * (std::abs(a) + std::abs(b) + std::abs(c))) + 2;
  Complex term = 1.0, sum = 1.0;
  for (int k = 0; k < kSeriesCap; ++k) {
    term *= (a + double(k)) * (b + double(k)) / ((c + double(k)) * double(k + 1)) * z;
    sum += term;
    if (term == Complex{}) return sum;
    if (k >= kmin) {
      const double r = std::abs((a + double(k + 1)) * (b + double(k + 1)) /
                                ((c + double(k + 1)) * double(k + 2))) * az;
      const double rho = std::max(r, az);
      if (rho < 1.0 && std::abs(term) * rho / (1.0 - rho) < kSeriesTolerance * std::abs(sum))
        return sum;
    }
  }
  throw Error(ErrorCode::NonConvergent, "2F1 series did not converge");
}

inline int nonpositive_int_value(Complex z) { return -int(std::round(z.real())); }

}  // namespace detail

inline Complex gauss_2f1(Complex a, Complex b, Complex c, Complex z) {
  if (is_nonpositive_integer(a))
    return detail::terminating_2f1(detail::nonpositive_int_value(a), b, c, z);
  if (is_nonpositive_integer(b))
    return detail::terminating_2f1(detail::nonpositive_int_value(b), a, c, z);
  if (is_nonpositive_integer(c)) throw Error(ErrorCode::ParameterPole, "2F1 with c a pole");
  if (z == Complex{}) return 1.0;
  const double az = std::abs(z);
  if (az > 1.0 + 1e-15) throw Error(ErrorCode::NonConvergent, "2F1 needs |z| <= 1");
  if (z == Complex(1.0)) {
    if ((c - a - b).real() <= 0.0)
      throw Error(ErrorCode::NonConvergent, "2F1 at z = 1 needs Re(c - a - b) > 0");
    return std::exp(log_gamma(c) + log_gamma(c - a - b) - log_gamma(c - a) - log_gamma(c - b));
  }
  if (az <= 0.5) return detail::series_2f1(a, b, c, z);
  if (z.real() < 0.5) {
    // Pfaff transformation onto |w| < 1.
    const Complex w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * detail::series_2f1(a, c - b, c, w);
  }
  if (az >= 1.0 - 1e-15 && (c - a - b).real() <= 0.0)
    throw Error(ErrorCode::NonConvergent, "2F1 on |z| = 1 needs Re(c - a - b) > 0");
  const Complex s = c - a - b;
  if (std::abs(1.0 - z) < 0.9 && !is_nonpositive_integer(s, 1e-6) &&
      !is_nonpositive_integer(-s, 1e-6)) {
    // Connection onto 1 - z.
    const Complex w = 1.0 - z;
    const Complex t1 = std::exp(log_gamma(c) + log_gamma(s) - log_gamma(c - a) - log_gamma(c - b));
    const Complex t2 =
        std::exp(log_gamma(c) + log_gamma(-s) - log_gamma(a) - log_gamma(b));
    return t1 * detail::series_2f1(a, b, 1.0 - s, w) +
           std::pow(w, s) * t2 * detail::series_2f1(c - a, c - b, s + 1.0, w);
  }
  return detail::series_2f1(a, b, c, z);
}

inline Complex confluent_1f1(Complex a, Complex c, Complex z) {
  if (is_nonpositive_integer(c)) throw Error(ErrorCode::ParameterPole, "1F1 with c a pole");
  Complex term = 1.0, sum = 1.0;
  const int m = is_nonpositive_integer(a) ? detail::nonpositive_int_value(a) : -1;
  const int kmin = int(2.0 * (std::abs(a) + std::abs(c) + std::abs(z))) + 2;
  for (int k = 0; k < kSeriesCap; ++k) {
    if (k == m) return sum;
    term *= (a + double(k)) / ((c + double(k)) * double(k + 1)) * z;
    sum += term;
    if (term == Complex{}) return sum;
    if (k >= kmin) {
      const double rho =
          std::abs((a + double(k + 1)) / ((c + double(k + 1)) * double(k + 2)) * z);
      if (rho < 1.0 && std::abs(term) * rho / (1.0 - rho) < kSeriesTolerance * std::abs(sum))
        return sum;
    }
  }
  throw Error(ErrorCode::NonConvergent, "1F1 series did not converge");
}

}  // namespace salpeter::special
