#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "leocov/errors.hpp"

namespace leocov::quadrature {

struct Options {
  double abs_tol = 1e-9;
  double rel_tol = 0.0;
  int max_subdivisions = 4000;
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 tables).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for Kronrod nodes 1, 3, 5 and the centre node 7.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Interval& other) const { return error < other.error; }
};

template <typename F>
Interval kronrod15(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod over [breakpoints.front(), breakpoints.back()].
// Interior breakpoints seed the initial partition. Bisects the worst interval until
// the summed error estimate is <= max(abs_tol, rel_tol |value|); throws
// NumericalError carrying the achieved error when max_subdivisions runs out.
template <typename F>
Result integrate(F&& f, std::span<const double> breakpoints, const Options& opts = {}) {
  if (breakpoints.size() < 2) throw DomainError("integrate needs at least two breakpoints");
  std::priority_queue<detail::Interval> heap;
  Result res;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] < breakpoints[i]) throw DomainError("breakpoints must be nondecreasing");
    if (breakpoints[i + 1] == breakpoints[i]) continue;
    auto iv = detail::kronrod15(f, breakpoints[i], breakpoints[i + 1]);
    res.evaluations += 15;
    res.value += iv.value;
    res.abs_error += iv.error;
    heap.push(iv);
  }

  auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(res.value)); };
  int subdivisions = 0;
  while (!heap.empty() && res.abs_error > target()) {
    if (subdivisions >= opts.max_subdivisions) {
      throw NumericalError("quadrature did not converge: achieved error " + std::to_string(res.abs_error) +
                               " > tolerance " + std::to_string(target()),
                           res.abs_error);
    }
    const detail::Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::kronrod15(f, worst.a, mid);
    const auto right = detail::kronrod15(f, mid, worst.b);
    res.evaluations += 30;
    res.value += left.value + right.value - worst.value;
    res.abs_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }

  // Re-sum from the partition so the running-update drift does not leak into the result.
  res.intervals = static_cast<int>(heap.size());
  double value = 0.0;
  double error = 0.0;
  std::vector<detail::Interval> parts;
  parts.reserve(heap.size());
  while (!heap.empty()) {
    parts.push_back(heap.top());
    heap.pop();
  }
  std::sort(parts.begin(), parts.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  for (const auto& p : parts) {
    value += p.value;
    error += p.error;
  }
  res.value = value;
  res.abs_error = error;
  return res;
}

template <typename F>
Result integrate(F&& f, double a, double b, const Options& opts = {}) {
  const std::array<double, 2> ends = {a, b};
  return integrate(std::forward<F>(f), std::span<const double>(ends), opts);
}

}  // namespace leocov::quadrature
