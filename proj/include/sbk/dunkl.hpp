#pragma once

// Coxeter-side kernels: the Dunkl kernel E_mu (rank one with general mu, or
// mu = 0 in any dimension), the analytically continued heat kernel rho, and
// the three Segal-Bargmann kernels A, B, C.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sbk/errors.hpp"
#include "sbk/series.hpp"

namespace sbk {

using cplx = std::complex<double>;

class Multiplicity {
 public:
  explicit Multiplicity(double mu) : mu_(mu) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
      throw DomainError("Multiplicity: mu must be finite and >= 0");
    }
  }
  [[nodiscard]] double value() const noexcept { return mu_; }
  [[nodiscard]] bool is_zero() const noexcept { return mu_ == 0.0; }

 private:
  double mu_;
};

/// Planck's constant t > 0.
class Planck {
 public:
  explicit Planck(double t) : t_(t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("Planck: t must be finite and > 0");
  }
  [[nodiscard]] double value() const noexcept { return t_; }

 private:
  double t_;
};

enum class KernelVersion { A, B, C };

[[nodiscard]] inline const char* to_string(KernelVersion v) noexcept {
  switch (v) {
    case KernelVersion::A: return "A";
    case KernelVersion::B: return "B";
    case KernelVersion::C: return "C";
  }
  return "?";
}

/// A point of C^N. Squares and products are bilinear (no conjugation).
class ComplexPoint {
 public:
  explicit ComplexPoint(std::vector<cplx> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw DomainError("ComplexPoint: dimension must be >= 1");
  }
  ComplexPoint(std::initializer_list<cplx> coords) : ComplexPoint(std::vector<cplx>(coords)) {}

  static ComplexPoint real(std::span<const double> xs) {
    return ComplexPoint(std::vector<cplx>(xs.begin(), xs.end()));
  }
  static ComplexPoint real(std::initializer_list<double> xs) {
    return real(std::span<const double>(xs.begin(), xs.size()));
  }
  static ComplexPoint zero(std::size_t dim) { return ComplexPoint(std::vector<cplx>(dim)); }

  [[nodiscard]] std::size_t dim() const noexcept { return coords_.size(); }
  [[nodiscard]] const cplx& operator[](std::size_t i) const noexcept { return coords_[i]; }
  [[nodiscard]] std::span<const cplx> coords() const noexcept { return coords_; }

  [[nodiscard]] bool is_real() const noexcept {
    for (const auto& c : coords_) {
      if (c.imag() != 0.0) return false;
    }
    return true;
  }

  [[nodiscard]] ComplexPoint conj() const {
    std::vector<cplx> out(coords_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::conj(coords_[i]);
    return ComplexPoint(std::move(out));
  }

  [[nodiscard]] ComplexPoint scaled(double s) const {
    std::vector<cplx> out(coords_);
    for (auto& c : out) c *= s;
    return ComplexPoint(std::move(out));
  }

  /// z . w = sum_i z_i w_i
  [[nodiscard]] friend cplx dot(const ComplexPoint& z, const ComplexPoint& w) {
    if (z.dim() != w.dim()) throw UsageError("ComplexPoint: dimension mismatch");
    cplx s{};
    for (std::size_t i = 0; i < z.dim(); ++i) s += z[i] * w[i];
    return s;
  }
  [[nodiscard]] cplx square() const { return dot(*this, *this); }

  /// ||z||^2 = sum |z_i|^2
  [[nodiscard]] double norm_sq() const noexcept {
    double s = 0.0;
    for (const auto& c : coords_) s += std::norm(c);
    return s;
  }

  [[nodiscard]] std::string to_string() const {
    std::string out = "(";
    char buf[64];
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.17g%+.17gi", i ? ", " : "", coords_[i].real(),
                    coords_[i].imag());
      out += buf;
    }
    return out + ")";
  }

 private:
  std::vector<cplx> coords_;
};

struct DunklSeriesOptions {
  double rel_tol = 1e-16;
  std::size_t max_terms = 10'000;
};

/// Rank-one Dunkl kernel as a function of the product p = z w:
///   E_mu(z, w) = sum_n p^n / gamma_mu(n),
///   gamma_mu(2m)   = 2^{2m} m! (mu + 1/2)_m,
///   gamma_mu(2m+1) = 2^{2m+1} m! (mu + 1/2)_{m+1}.
/// Consecutive coefficients satisfy gamma(n+1)/gamma(n) = n + 1 + 2mu[n even],
/// so every later term ratio is at most |p|/(n+2) and the tail after term n is
/// bounded by |term_{n+1}| / (1 - |p|/(n+2)).
[[nodiscard]] inline TruncatedSum dunkl_series_rank1(cplx p, Multiplicity mu,
                                                     DunklSeriesOptions opts = {}) {
  constexpr double eps = 2.220446049250313e-16;
  const double mu2 = 2.0 * mu.value();
  const double abs_p = std::abs(p);
  TruncatedSum out;
  cplx term{1.0};
  for (std::size_t n = 0; n < opts.max_terms; ++n) {
    out.value += term;
    out.abs_sum += std::abs(term);
    out.terms_used = n + 1;
    const double step = static_cast<double>(n + 1) + ((n % 2 == 0) ? mu2 : 0.0);
    const cplx next = term * p / step;
    const double ratio = abs_p / static_cast<double>(n + 2);
    if (ratio < 1.0) {
      const double tail = std::abs(next) / (1.0 - ratio);
      const double scale = std::max(std::abs(out.value), eps * out.abs_sum);
      if (tail <= opts.rel_tol * scale) {
        out.tail_bound = tail;
        return out;
      }
    }
    term = next;
  }
  throw ConvergenceError("dunkl_series_rank1: term cap reached for |p| = " + std::to_string(abs_p));
}

/// E_mu(z, w). mu = 0 uses the closed form exp(z . w) in any dimension;
/// mu > 0 requires N = 1.
[[nodiscard]] inline cplx dunkl_kernel(const ComplexPoint& z, const ComplexPoint& w,
                                       Multiplicity mu, DunklSeriesOptions opts = {}) {
  if (z.dim() != w.dim()) throw UsageError("dunkl_kernel: dimension mismatch");
  if (mu.is_zero()) return std::exp(dot(z, w));
  if (z.dim() != 1) {
    throw RankError("dunkl_kernel: mu > 0 is only supported in rank one (N = 1)");
  }
  return dunkl_series_rank1(z[0] * w[0], mu, opts).value;
}

/// Finite-difference rank-one Dunkl operator
///   T_mu f(x) = f'(x) + mu (f(x) - f(-x)) / x
/// with a central difference of step h for f'.
template <typename F>
[[nodiscard]] auto dunkl_operator_apply(F&& f, Multiplicity mu, double x, double h) {
  if (x == 0.0) throw DomainError("dunkl_operator_apply: x must be nonzero");
  if (!(h > 0.0)) throw DomainError("dunkl_operator_apply: step h must be > 0");
  const auto derivative = (f(x + h) - f(x - h)) / (2.0 * h);
  return derivative + mu.value() * (f(x) - f(-x)) / x;
}

/// rho_{mu,t}(z, w) = exp(-(z^2 + w^2)/2t) E_mu(z/sqrt t, w/sqrt t).
[[nodiscard]] inline cplx heat_kernel_rho(const ComplexPoint& z, const ComplexPoint& w,
                                          Multiplicity mu, Planck t) {
  const double tv = t.value();
  const double inv_sqrt_t = 1.0 / std::sqrt(tv);
  return std::exp(-(z.square() + w.square()) / (2.0 * tv)) *
         dunkl_kernel(z.scaled(inv_sqrt_t), w.scaled(inv_sqrt_t), mu);
}

/// sigma_t(q) = exp(-q^2 / 2t) for real q; independent of mu.
[[nodiscard]] inline double sigma(const ComplexPoint& q, Planck t) {
  if (!q.is_real()) throw DomainError("sigma: q must be real");
  return std::exp(-q.square().real() / (2.0 * t.value()));
}

/// Segal-Bargmann kernels for z in C^N, q in R^N:
///   A(z,q) = exp(-z^2/2t - q^2/4t) E_mu(z/sqrt t, q/sqrt t)
///   B(z,q) = rho(z,q) / rho(0,q)
///   C(z,q) = rho(z,q)
[[nodiscard]] inline cplx kernel(KernelVersion version, const ComplexPoint& z,
                                 const ComplexPoint& q, Multiplicity mu, Planck t) {
  if (!q.is_real()) throw DomainError("kernel: q must be real");
  switch (version) {
    case KernelVersion::A: {
      const double tv = t.value();
      const double inv_sqrt_t = 1.0 / std::sqrt(tv);
      return std::exp(-z.square() / (2.0 * tv) - q.square() / (4.0 * tv)) *
             dunkl_kernel(z.scaled(inv_sqrt_t), q.scaled(inv_sqrt_t), mu);
    }
    case KernelVersion::B:
      return heat_kernel_rho(z, q, mu, t) / heat_kernel_rho(ComplexPoint::zero(z.dim()), q, mu, t);
    case KernelVersion::C:
      return heat_kernel_rho(z, q, mu, t);
  }
  throw UsageError("kernel: unknown version");
}

}  // namespace sbk
