#pragma once

// SU(2), its complexification SL(2,C), and the ambient M(2,C).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>

#include "sbk/errors.hpp"

namespace sbk {

using cplx = std::complex<double>;

struct Mat2C {
  cplx a11{}, a12{}, a21{}, a22{};

  static constexpr Mat2C identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2C diag(cplx d1, cplx d2) noexcept { return {d1, 0.0, 0.0, d2}; }

  [[nodiscard]] cplx trace() const noexcept { return a11 + a22; }
  [[nodiscard]] cplx det() const noexcept { return a11 * a22 - a12 * a21; }
  [[nodiscard]] cplx half_trace() const noexcept { return 0.5 * trace(); }

  [[nodiscard]] Mat2C adjoint() const noexcept {
    return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
  }

  friend Mat2C operator*(const Mat2C& x, const Mat2C& y) noexcept {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend Mat2C operator*(cplx s, const Mat2C& x) noexcept {
    return {s * x.a11, s * x.a12, s * x.a21, s * x.a22};
  }
  friend Mat2C operator+(const Mat2C& x, const Mat2C& y) noexcept {
    return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
  }

  /// Largest entrywise modulus of x - y.
  [[nodiscard]] friend double max_abs_diff(const Mat2C& x, const Mat2C& y) noexcept {
    return std::max({std::abs(x.a11 - y.a11), std::abs(x.a12 - y.a12), std::abs(x.a21 - y.a21),
                     std::abs(x.a22 - y.a22)});
  }

  [[nodiscard]] std::string to_string() const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "[[%.17g%+.17gi, %.17g%+.17gi], [%.17g%+.17gi, %.17g%+.17gi]]",
                  a11.real(), a11.imag(), a12.real(), a12.imag(), a21.real(), a21.imag(),
                  a22.real(), a22.imag());
    return buf;
  }
};

inline constexpr double kGroupTolerance = 1e-12;

/// x = [[a, b], [-conj(b), conj(a)]] with |a|^2 + |b|^2 = 1.
class SU2Element {
 public:
  SU2Element(cplx a, cplx b) : a_(a), b_(b) {
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kGroupTolerance) {
      throw InvariantError("SU2Element: |a|^2 + |b|^2 must equal 1");
    }
  }

  static SU2Element identity() { return {1.0, 0.0}; }
  static SU2Element minus_identity() { return {-1.0, 0.0}; }
  /// diag(e^{i tau/2}, e^{-i tau/2})
  static SU2Element diagonal(double tau) { return {std::polar(1.0, 0.5 * tau), 0.0}; }

  [[nodiscard]] cplx a() const noexcept { return a_; }
  [[nodiscard]] cplx b() const noexcept { return b_; }

  [[nodiscard]] Mat2C matrix() const noexcept { return {a_, b_, -std::conj(b_), std::conj(a_)}; }

  /// 2 Re(a); exactly real by construction.
  [[nodiscard]] double trace() const noexcept { return 2.0 * a_.real(); }

 private:
  cplx a_, b_;
};

/// det(m) = 1 within kGroupTolerance.
class SL2CElement {
 public:
  explicit SL2CElement(const Mat2C& m) : m_(m) {
    if (std::abs(m.det() - 1.0) > kGroupTolerance) {
      throw InvariantError("SL2CElement: determinant must equal 1");
    }
  }

  static SL2CElement identity() { return SL2CElement(Mat2C::identity()); }

  [[nodiscard]] const Mat2C& matrix() const noexcept { return m_; }

 private:
  Mat2C m_;
};

[[nodiscard]] inline SU2Element inverse(const SU2Element& x) { return {std::conj(x.a()), -x.b()}; }

/// Adjugate; exact inverse because det = 1.
[[nodiscard]] inline SL2CElement inverse(const SL2CElement& g) {
  const Mat2C& m = g.matrix();
  return SL2CElement(Mat2C{m.a22, -m.a12, -m.a21, m.a11});
}

[[nodiscard]] inline SU2Element compose(const SU2Element& x, const SU2Element& y) {
  return {x.a() * y.a() - x.b() * std::conj(y.b()), x.a() * y.b() + x.b() * std::conj(y.a())};
}

[[nodiscard]] inline SL2CElement compose(const SL2CElement& g, const SL2CElement& h) {
  return SL2CElement(g.matrix() * h.matrix());
}

[[nodiscard]] inline SL2CElement embed(const SU2Element& x) { return SL2CElement(x.matrix()); }

/// exp(M) for traceless M: M^2 = -det(M) I, so exp(M) = cosh(s) I + sinh(s)/s M
/// with s^2 = -det(M). det(exp M) = 1 exactly in exact arithmetic.
[[nodiscard]] inline SL2CElement exp_traceless(cplx m11, cplx m12, cplx m21) {
  const Mat2C m{m11, m12, m21, -m11};
  const cplx s = std::sqrt(-m.det());
  const cplx c = std::cosh(s);
  const cplx sinhc = std::abs(s) < 1e-8 ? cplx(1.0) + s * s / 6.0 : std::sinh(s) / s;
  return SL2CElement(c * Mat2C::identity() + sinhc * m);
}

/// Non-negative half-integer u, stored as 2u.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  static HalfInteger from_twice(int twice_u) {
    if (twice_u < 0) throw DomainError("HalfInteger: 2u must be >= 0");
    HalfInteger h;
    h.twice_ = twice_u;
    return h;
  }
  [[nodiscard]] constexpr int twice() const noexcept { return twice_; }
  [[nodiscard]] constexpr double value() const noexcept { return 0.5 * twice_; }
  [[nodiscard]] constexpr int dimension() const noexcept { return twice_ + 1; }
  [[nodiscard]] constexpr double casimir() const noexcept { return value() * (value() + 1.0); }

 private:
  int twice_ = 0;
};

/// tau = 2 acos(Re a) in [0, 2 pi].
[[nodiscard]] inline double conjugacy_angle(const SU2Element& x) {
  double re = x.a().real();
  if (std::abs(re) > 1.0 + kGroupTolerance) {
    throw InvariantError("conjugacy_angle: |Re(a)| exceeds 1");
  }
  re = std::clamp(re, -1.0, 1.0);
  return 2.0 * std::acos(re);
}

}  // namespace sbk
