#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace salpeter;
using salpeter::testing_support::Draw;

namespace {

bool close(Complex a, Complex b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

bool poly_close(const Poly2& a, const Poly2& b, double tol = 1e-12) {
  for (int i = 0; i < 3; ++i)
    if (!close(a[i], b[i], tol)) return false;
  return true;
}

// pi^2 + (tau_tilde - sigma') pi + sigma_tilde - k sigma must vanish identically.
Poly2 defining_residual(const nu::NuProblem& p, const nu::NuSolution& s) {
  Poly2 lhs = multiply_linear(s.pi, s.pi) + multiply_linear(p.tau_tilde - p.sigma.derivative(), s.pi);
  return lhs + p.sigma_tilde - s.k * p.sigma;
}

}  // namespace

TEST(NuEngine, HulthenExampleRoots) {
  const auto prob = nu::hulthen_problem(1.0, 2.0, 0.0, 1.0, 1.0);
  auto ks = nu::candidate_k(prob);
  ASSERT_EQ(ks.size(), 2u);
  std::sort(ks.begin(), ks.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  EXPECT_NEAR(ks[0].real(), 2.0, 1e-12);
  EXPECT_NEAR(ks[1].real(), 4.0, 1e-12);
}

TEST(NuEngine, ExponentialRoots) {
  const Complex eps = 0.7, tau_hat = 1.3, eps2 = 0.4;
  const auto prob = nu::exponential_problem(eps, tau_hat, eps2 * eps2, 0.0);
  auto ks = nu::candidate_k(prob);
  ASSERT_EQ(ks.size(), 2u);
  const Complex kp = tau_hat + 2.0 * I * eps2 * eps, km = tau_hat - 2.0 * I * eps2 * eps;
  const bool direct = close(ks[0], kp) && close(ks[1], km);
  const bool swapped = close(ks[0], km) && close(ks[1], kp);
  EXPECT_TRUE(direct || swapped);
}

TEST(NuEngine, ExponentialTauAndLambda) {
  const Complex eps = 0.7, eps2 = 0.4;
  const auto prob = nu::exponential_problem(eps, 1.3, eps2 * eps2, 0.0);
  bool found = false;
  for (Complex k : nu::candidate_k(prob)) {
    for (Branch b : {Branch::Plus, Branch::Minus}) {
      const auto s = nu::solve_with_k(prob, k, b);
      if (!poly_close(s.pi, Poly2(eps, -I * eps2))) continue;
      found = true;
      EXPECT_TRUE(poly_close(s.tau, Poly2(1.0 + 2.0 * eps, -2.0 * I * eps2)));
      EXPECT_TRUE(close(nu::quantized_lambda(s, prob.sigma, 3), 6.0 * I * eps2));
      const auto wp = nu::weight_and_phi(s, prob);
      EXPECT_TRUE(close(wp.phi.s_power, eps));
      EXPECT_TRUE(close(wp.phi.exp_rate, -I * eps2));
    }
  }
  EXPECT_TRUE(found);
}

TEST(NuEngine, TrivialProblem) {
  // sigma_tilde = 0 and tau_tilde = sigma': the radicand is k sigma.
  const Poly2 sigma(0.0, 1.0, -0.5);
  const auto prob = nu::NuProblem::make(sigma, Poly2(0.0), sigma.derivative());
  const auto ks = nu::candidate_k(prob);
  ASSERT_FALSE(ks.empty());
  for (Complex k : ks) EXPECT_LT(std::abs(k), 1e-14);
  const auto s = nu::solve_with_k(prob, 0.0, Branch::Plus);
  EXPECT_LT(s.pi.max_abs(), 1e-14);
  EXPECT_TRUE(poly_close(s.tau, prob.tau_tilde));
  EXPECT_LT(std::abs(s.lambda), 1e-14);
}

TEST(NuEngine, SigmaTildeEqualSigma) {
  // sigma_tilde = sigma shifts the radicand to (k - 1) sigma.
  const Poly2 sigma(0.0, 1.0, -0.5);
  const auto prob = nu::NuProblem::make(sigma, sigma, sigma.derivative());
  for (Complex k : nu::candidate_k(prob)) EXPECT_LT(std::abs(k - 1.0), 1e-14);
  const auto s = nu::solve_with_k(prob, 1.0, Branch::Plus);
  EXPECT_LT(s.pi.max_abs(), 1e-14);
  EXPECT_LT(std::abs(s.lambda - 1.0), 1e-14);
  EXPECT_THROW(nu::solve_with_k(prob, 0.0, Branch::Plus), Error);
}

TEST(NuEngine, DegenerateRadicand) {
  const auto prob = nu::NuProblem::make(Poly2(1.0), Poly2(2.0), Poly2(0.0));
  try {
    nu::candidate_k(prob);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateRadicand);
  }
}

TEST(NuEngine, RejectsNonSquareK) {
  const auto prob = nu::hulthen_problem(1.0, 2.0, 0.0, 1.0, 1.0);
  try {
    nu::solve_with_k(prob, 3.0, Branch::Plus);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPerfectSquare);
  }
}

TEST(NuEngine, LambdaNExample) {
  // q = 1, eps = 1, b = 1: tau' = -5, sigma'' = -2.
  const auto prob = nu::hulthen_problem(1.0, 2.0, 0.0, 1.0, 1.0);
  const auto s = nu::solve(prob);
  EXPECT_NEAR(s.tau[1].real(), -5.0, 1e-12);
  EXPECT_NEAR(nu::quantized_lambda(s, prob.sigma, 2).real(), 12.0, 1e-12);
  EXPECT_EQ(nu::quantized_lambda(s, prob.sigma, 0), Complex(0.0));
}

// Near 2 q eps = b the s^2 coefficient of the radicand almost vanishes; pi must still
// carry full precision.
TEST(NuEngine, NearlyConstantRadicand) {
  const double q = 1.0, eps = 0.4, b = 2.0 * q * eps + 1e-7;
  const double eps1 = 3.0, eps3 = 0.2, eps2_sq = (q * q - b * b) / 4.0;
  const auto prob = nu::hulthen_problem(eps, eps1, eps2_sq, eps3, q);
  const Complex k = eps1 + eps3 + b * eps;
  const Poly2 half(-eps, 0.5 * (2.0 * q * eps - b));
  const Poly2 a = nu::solve_with_k(prob, k, Branch::Plus).pi;
  const Poly2 c = nu::solve_with_k(prob, k, Branch::Minus).pi;
  const Poly2 up = Poly2(0.0, -0.5 * q) + half, down = Poly2(0.0, -0.5 * q) - half;
  EXPECT_TRUE((poly_close(a, up, 1e-14) && poly_close(c, down, 1e-14)) ||
              (poly_close(a, down, 1e-14) && poly_close(c, up, 1e-14)));
}

TEST(NuEngine, HulthenWeightAndPhi) {
  const double eps = 0.8, q = 1.3, eps2 = 0.3;
  const double b = std::sqrt(q * q - 4.0 * eps2 * eps2);
  const auto prob = nu::hulthen_problem(eps, 1.1, eps2 * eps2, 0.4, q);
  const auto s = nu::solve(prob);
  const auto wp = nu::weight_and_phi(s, prob);
  EXPECT_TRUE(close(wp.rho.s_power, 2.0 * eps));
  EXPECT_TRUE(close(wp.rho.edge_power, b / q));
  EXPECT_TRUE(close(wp.phi.s_power, eps));
  EXPECT_TRUE(close(wp.phi.edge_power, (b + q) / (2.0 * q)));
}

TEST(NuEngine, AdmissibilityFlag) {
  const auto prob = nu::hulthen_problem(0.8, 1.1, 0.09, 0.4, 1.3);
  int failures = 0;
  for (Complex k : nu::candidate_k(prob))
    for (Branch b : {Branch::Plus, Branch::Minus}) {
      try {
        nu::solve_with_k(prob, k, b, true);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::AdmissibilityFailure);
        ++failures;
      }
    }
  EXPECT_GT(failures, 0);
  EXPECT_LT(failures, 4);
}

TEST(NuEngine, UnsupportedSigma) {
  const auto prob = nu::NuProblem::make(Poly2(1.0, 0.0, 1.0), Poly2(0.0, 1.0), Poly2(0.0, -1.0));
  for (Complex k : nu::candidate_k(prob)) {
    const auto s = nu::solve_with_k(prob, k, Branch::Plus);
    EXPECT_THROW(nu::weight_and_phi(s, prob), Error);
  }
}

// Property: every candidate k and sign solve the defining quadratic identity,
// and lambda_n reproduces -n tau' - n(n-1) sigma''/2.
TEST(NuEngineProperty, DefiningIdentityOnRandomProblems) {
  Draw d(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const Poly2 sigma(0.0, d.uniform(0.5, 2.0), d.uniform(-2.0, 2.0));
    const Poly2 tau_tilde(d.uniform(-2, 2), d.uniform(-2, 2));
    const Poly2 sigma_tilde(d.uniform(-3, 3), d.uniform(-3, 3), d.uniform(-3, 3));
    const auto prob = nu::NuProblem::make(sigma, sigma_tilde, tau_tilde);
    for (Complex k : nu::candidate_k(prob)) {
      for (Branch b : {Branch::Plus, Branch::Minus}) {
        const auto s = nu::solve_with_k(prob, k, b);
        const Poly2 r = defining_residual(prob, s);
        const double scale = 1.0 + sigma_tilde.max_abs() + std::abs(k) * sigma.max_abs();
        EXPECT_LT(r.max_abs(), 1e-10 * scale);
        EXPECT_TRUE(close(s.lambda, s.k + s.pi.derivative()[0]));
        const int n = d.integer(0, 6);
        const Complex ln = nu::quantized_lambda(s, sigma, n);
        EXPECT_TRUE(close(ln, -double(n) * s.tau[1] - 0.5 * n * (n - 1.0) * 2.0 * sigma[2]));
      }
    }
  }
}
