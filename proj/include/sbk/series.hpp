#pragma once

#include <complex>
#include <cstddef>
#include <limits>

namespace sbk {

/// A partial sum together with a rigorous bound on the omitted tail.
///
/// `tail_bound` covers truncation only. Floating-point rounding of the
/// retained terms is estimated separately by `rounding_estimate()`, which
/// scales with the sum of term magnitudes (cancellation shows up there).
struct TruncatedSum {
  std::complex<double> value{};
  double tail_bound = 0.0;
  std::size_t terms_used = 0;
  double abs_sum = 0.0;  // sum of |term| over the retained terms

  [[nodiscard]] double rounding_estimate() const noexcept {
    return 4.0 * static_cast<double>(terms_used + 2) *
           std::numeric_limits<double>::epsilon() * abs_sum;
  }
};

}  // namespace sbk
