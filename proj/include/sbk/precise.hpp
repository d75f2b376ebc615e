#pragma once

// Adaptive-precision direct summation of the SU(2) heat-kernel character
// series at a real half-trace. Used where double precision cannot resolve the
// value: near -I the alternating series cancels to ~exp(-2 pi^2 / t), far
// below double rounding for t <~ 0.5.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "sbk/dunkl.hpp"
#include "sbk/errors.hpp"

namespace sbk {

/// Enclosure [mid - radius, mid + radius] of the exact series value. The
/// `positive` flag is decided in extended precision, so it stays meaningful
/// when mid underflows double.
struct CertifiedValue {
  double mid = 0.0;
  double radius = 0.0;
  bool positive = false;
  unsigned digits = 0;
  std::size_t terms_used = 0;
  std::string decimal;  // mid to 25 significant digits

  [[nodiscard]] double lower() const noexcept { return mid - radius; }
  [[nodiscard]] double upper() const noexcept { return mid + radius; }
};

namespace detail {

/// log of the dominating term (m+1) e^{-m(m+2)t/8} C^m.
inline double log_dominating_term(std::size_t m, double t, double log_c) noexcept {
  const double md = static_cast<double>(m);
  return std::log(md + 1.0) - md * (md + 2.0) * t / 8.0 + md * log_c;
}

}  // namespace detail

[[nodiscard]] inline CertifiedValue heat_kernel_su2_certified(double half_trace, Planck t,
                                                              double rel_accuracy = 1e-9) {
  using boost::multiprecision::mpfr_float;
  const double tv = t.value();
  const double log_c = std::log(3.0 * std::max(1.0, std::abs(half_trace)));

  // Dominating series sum, used to scale the rounding bound.
  double dominating_sum = 0.0;
  for (std::size_t m = 0;; ++m) {
    const double b = std::exp(detail::log_dominating_term(m, tv, log_c));
    dominating_sum += b;
    if (m > 4 && b < 1e-30 * dominating_sum) break;
    if (m > 1'000'000) throw ConvergenceError("heat_kernel_su2_certified: dominating sum");
  }

  const double expected_decades =
      std::abs(half_trace) <= 1.0 ? 2.0 * std::numbers::pi * std::numbers::pi / (tv * std::log(10.0))
                                  : 0.0;
  unsigned digits = 30 + static_cast<unsigned>(std::ceil(expected_decades));

  const unsigned saved = mpfr_float::default_precision();
  struct Restore {
    unsigned p;
    ~Restore() { mpfr_float::default_precision(p); }
  } restore{saved};

  for (int attempt = 0; attempt < 8; ++attempt, digits *= 2) {
    mpfr_float::default_precision(digits);
    const mpfr_float h(half_trace);
    const mpfr_float tt(tv);
    mpfr_float u_prev(0), u(1), sum(0);
    std::size_t n = 0;
    mpfr_float tail(0);
    const mpfr_float target_rel(1e-3 * rel_accuracy);
    for (;; ++n) {
      const mpfr_float nn(static_cast<double>(n));
      sum += (nn + 1) * exp(-nn * (nn + 2) * tt / 8) * u;
      const mpfr_float next = 2 * h * u - u_prev;
      u_prev = u;
      u = next;

      const double lb1 = detail::log_dominating_term(n + 1, tv, log_c);
      const double lb2 = detail::log_dominating_term(n + 2, tv, log_c);
      const double ratio = std::exp(lb2 - lb1);
      if (ratio < 1.0) {
        tail = exp(mpfr_float(lb1)) / (1.0 - ratio) * (1.0 + 1e-12);
        if (tail <= target_rel * abs(sum)) break;
      }
      if (n > 100'000) throw ConvergenceError("heat_kernel_su2_certified: term cap");
    }
    const mpfr_float nn(static_cast<double>(n + 2));
    const mpfr_float ulp = pow(mpfr_float(10), -static_cast<int>(digits) + 1);
    const mpfr_float err = tail + 16 * nn * nn * ulp * mpfr_float(dominating_sum);
    if (err <= rel_accuracy * abs(sum) || attempt == 7) {
      const double mid = static_cast<double>(sum);
      CertifiedValue out;
      out.mid = mid;
      out.radius = static_cast<double>(err) * (1.0 + 1e-12) +
                   std::abs(mid) * std::numeric_limits<double>::epsilon();
      out.positive = sum - err > 0;
      out.digits = digits;
      out.terms_used = n + 1;
      out.decimal = sum.str(25, std::ios_base::scientific);
      return out;
    }
  }
  throw ConvergenceError("heat_kernel_su2_certified: precision escalation failed");
}

}  // namespace sbk
