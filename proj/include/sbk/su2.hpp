#pragma once

// Lie-side kernels for K = SU(2), G = SL(2,C): characters, the heat-kernel
// character series with certified truncation, and the A/B/C kernels.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>

#include "sbk/chebyshev.hpp"
#include "sbk/dunkl.hpp"
#include "sbk/errors.hpp"
#include "sbk/precise.hpp"
#include "sbk/series.hpp"
#include "sbk/su2_group.hpp"

namespace sbk {

/// chi_u(A) = U_{2u}(Tr(A)/2), valid on all of M(2,C).
[[nodiscard]] inline cplx character(HalfInteger u, const Mat2C& m) {
  return u_eval(ChebDegree(u.twice()), m.half_trace());
}

inline constexpr std::size_t kHeatKernelTermCap = 100'000;

/// rho_t(A) = sum_n (n+1) e^{-n(n+2)t/8} U_n(Tr(A)/2).
///
/// With C = 3 max(1, |Tr(A)/2|) every term is dominated by
/// B_m = (m+1) e^{-m(m+2)t/8} C^m, whose ratio B_{m+1}/B_m decreases in m.
/// Once that ratio r drops below one the omitted tail after term n is at most
/// B_{n+1} / (1 - r); summation stops when this is <= tol.
[[nodiscard]] inline TruncatedSum heat_kernel_su2(const Mat2C& m, Planck t, double tol) {
  if (!(tol > 0.0)) throw DomainError("heat_kernel_su2: tol must be > 0");
  const double tv = t.value();
  const cplx h = m.half_trace();
  const double log_c = std::log(3.0 * std::max(1.0, std::abs(h)));

  TruncatedSum out;
  cplx u_prev{0.0};
  cplx u{1.0};
  for (std::size_t n = 0; n < kHeatKernelTermCap; ++n) {
    const double nd = static_cast<double>(n);
    const cplx term = (nd + 1.0) * std::exp(-nd * (nd + 2.0) * tv / 8.0) * u;
    if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) {
      throw ConvergenceError("heat_kernel_su2: non-finite term at n = " + std::to_string(n));
    }
    out.value += term;
    out.abs_sum += std::abs(term);
    out.terms_used = n + 1;

    const double lb1 = detail::log_dominating_term(n + 1, tv, log_c);
    const double ratio = std::exp(detail::log_dominating_term(n + 2, tv, log_c) - lb1);
    if (ratio < 1.0) {
      const double tail = std::exp(lb1) / (1.0 - ratio);
      if (tail <= tol) {
        out.tail_bound = tail;
        return out;
      }
    }
    const cplx next = 2.0 * h * u - u_prev;
    u_prev = u;
    u = next;
  }
  throw ConvergenceError("heat_kernel_su2: tolerance unreachable within the term cap");
}

[[nodiscard]] inline TruncatedSum heat_kernel_su2(const SU2Element& x, Planck t, double tol) {
  return heat_kernel_su2(x.matrix(), t, tol);
}

/// Heat kernel value used by the transform kernels. For arguments with an
/// exactly real half-trace (in particular every element of K) whose double
/// sum is not resolved to 1e-6 relative, the value is replaced by the
/// extended-precision direct summation; the returned tail_bound is then that
/// enclosure's radius.
[[nodiscard]] inline TruncatedSum heat_kernel_eval(const Mat2C& m, Planck t, double tol) {
  TruncatedSum s = heat_kernel_su2(m, t, tol);
  const cplx h = m.half_trace();
  if (h.imag() == 0.0) {
    const double noise = s.tail_bound + s.rounding_estimate();
    if (!(std::abs(s.value.real()) > 1e6 * noise)) {
      const CertifiedValue c = heat_kernel_su2_certified(h.real(), t);
      s.value = c.mid;
      s.tail_bound = std::min(s.tail_bound, c.radius);
    }
  }
  return s;
}

inline constexpr double kPositivityImagTolerance = 1e-12;

/// rho_t(x) for x in K; asserted real and strictly positive.
[[nodiscard]] inline double heat_kernel_on_group(const SU2Element& x, Planck t, double tol) {
  const TruncatedSum s = heat_kernel_eval(x.matrix(), t, tol);
  if (std::abs(s.value.imag()) > kPositivityImagTolerance || !(s.value.real() > 0.0)) {
    throw InvariantError("heat_kernel_on_group: rho_t(x) not real positive at x = " +
                         x.matrix().to_string());
  }
  return s.value.real();
}

inline constexpr double kLieTruncationTol = 1e-14;

struct LieKernelValue {
  cplx value{};
  double max_tail_bound = 0.0;
};

/// A_t(g,x) = rho_t(x^{-1} g) / rho_t(x)^{1/2}
/// B_t(g,x) = rho_t(x^{-1} g) / rho_t(x)
/// C_t(g,x) = rho_t(x^{-1} g)
[[nodiscard]] inline LieKernelValue kernel_lie_eval(KernelVersion version, const SL2CElement& g,
                                                    const SU2Element& x, Planck t,
                                                    double tol = kLieTruncationTol) {
  const SL2CElement xg = compose(embed(inverse(x)), g);
  const TruncatedSum top = heat_kernel_eval(xg.matrix(), t, tol);
  LieKernelValue out{top.value, top.tail_bound};
  if (version == KernelVersion::C) return out;

  const TruncatedSum at_x = heat_kernel_eval(x.matrix(), t, tol);
  if (std::abs(at_x.value.imag()) > kPositivityImagTolerance || !(at_x.value.real() > 0.0)) {
    throw InvariantError("kernel_lie: rho_t(x) not real positive at x = " +
                         x.matrix().to_string());
  }
  const double rho_x = at_x.value.real();
  out.max_tail_bound = std::max(out.max_tail_bound, at_x.tail_bound);
  out.value = version == KernelVersion::A ? top.value / std::sqrt(rho_x) : top.value / rho_x;
  return out;
}

[[nodiscard]] inline cplx kernel_lie(KernelVersion version, const SL2CElement& g,
                                     const SU2Element& x, Planck t,
                                     double tol = kLieTruncationTol) {
  return kernel_lie_eval(version, g, x, t, tol).value;
}

}  // namespace sbk
