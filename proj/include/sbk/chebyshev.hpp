#pragma once

// Chebyshev polynomials of the second kind U_n on the complex plane.
//
// The three-term recursion is the canonical evaluator. Forward recursion is
// stable enough in double precision for the degrees (n <~ 200) and arguments
// (|z| <~ 10) used by the heat-kernel series; the trigonometric form exists
// only as an independent oracle on the open interval (-1, 1).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

#include "sbk/errors.hpp"

namespace sbk {

class ChebDegree {
 public:
  constexpr ChebDegree() = default;
  explicit ChebDegree(std::int64_t n) : n_(n) {
    if (n < 0) throw DomainError("ChebDegree: degree must be non-negative");
  }
  [[nodiscard]] constexpr std::int64_t value() const noexcept { return n_; }

 private:
  std::int64_t n_ = 0;
};

/// U_n(z) via U_{k+1} = 2 z U_k - U_{k-1}, U_0 = 1, U_1 = 2z.
template <typename T>
[[nodiscard]] T u_eval(ChebDegree degree, T z) {
  const std::int64_t n = degree.value();
  T prev{1};
  if (n == 0) return prev;
  T cur = T{2} * z;
  for (std::int64_t k = 1; k < n; ++k) {
    T next = T{2} * z * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// sin((n+1) acos x) / sin(acos x); only defined on the open interval.
[[nodiscard]] inline double u_eval_trig(ChebDegree degree, double x) {
  if (!(std::abs(x) < 1.0)) {
    throw DomainError("u_eval_trig: requires -1 < x < 1");
  }
  const double theta = std::acos(x);
  return std::sin(static_cast<double>(degree.value() + 1) * theta) / std::sin(theta);
}

/// Growth bound |U_n(z)| <= (3 max(1, |z|))^n.
[[nodiscard]] inline double u_bound(ChebDegree degree, std::complex<double> z) {
  const double base = 3.0 * std::max(1.0, std::abs(z));
  return std::pow(base, static_cast<double>(degree.value()));
}

}  // namespace sbk
