#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace salpeter::quadrature {

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Piece {
  double a, b;
  T value;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

template <class T, class F>
Piece<T> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    // keep nodes strictly inside on very short pieces near a singular endpoint
    const double lo = std::max(c - dx, std::nextafter(a, b));
    const double hi = std::min(c + dx, std::nextafter(b, a));
    const T fsum = f(lo) + f(hi);
    kron += fsum * kWgk[j];
    if (j % 2 == 1) gauss += fsum * kWg[j / 2];
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace detail

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_intervals = 20000;
  // Geometric refinement 2^-k, k = 1..grading_levels, toward each singular point.
  int grading_levels = 40;
  std::vector<double> singular_points{};
};

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod quadrature over [a, b] with geometric grading toward
// both ends and any interior singular points.
template <class F>
auto integrate(F f, double a, double b, const Options& opt = {}) {
  using T = decltype(f(a));
  std::vector<double> cuts = {a, b};
  for (double s : opt.singular_points)
    if (s > a && s < b) cuts.push_back(s);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> nodes;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double l = cuts[i], r = cuts[i + 1], len = r - l;
    nodes.push_back(l);
    for (int k = opt.grading_levels; k >= 1; --k) nodes.push_back(l + len * std::ldexp(1.0, -k));
    for (int k = 2; k <= opt.grading_levels; ++k) nodes.push_back(r - len * std::ldexp(1.0, -k));
  }
  nodes.push_back(b);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  std::priority_queue<detail::Piece<T>> heap;
  Result<T> res;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i + 1] > nodes[i])) continue;
    auto p = detail::gk15<T>(f, nodes[i], nodes[i + 1]);
    res.value += p.value;
    res.error += p.error;
    heap.push(p);
  }
  while (!heap.empty()) {
    if (res.error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(res.value))) {
      res.converged = true;
      break;
    }
    if (int(heap.size()) >= opt.max_intervals) break;
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    auto left = detail::gk15<T>(f, worst.a, mid);
    auto right = detail::gk15<T>(f, mid, worst.b);
    res.value += left.value + right.value - worst.value;
    res.error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Recompute the totals to shed accumulated cancellation error.
  T total{};
  double err = 0.0;
  res.intervals = int(heap.size());
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  res.value = total;
  res.error = err;
  if (err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) res.converged = true;
  return res;
}

}  // namespace salpeter::quadrature
