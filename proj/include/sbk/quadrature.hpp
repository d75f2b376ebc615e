#pragma once

// Quadrature rules for the measures the transforms integrate against:
//   omega_{mu,t}: c |q|^{2mu} dq on R (or c dq per coordinate on R^N, mu = 0),
//                 normalized so that the integral of exp(-q^2/2t) is 1;
//   m_{mu,t}:     exp(-q^2/t) d omega_{mu,t};
//   haar:         normalized Haar measure on SU(2).

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "sbk/dunkl.hpp"
#include "sbk/errors.hpp"
#include "sbk/su2_group.hpp"

namespace sbk {

enum class MeasureKind { omega, m, haar };

struct MeasureTag {
  MeasureKind kind = MeasureKind::haar;
  double mu = 0.0;
  double t = 0.0;

  [[nodiscard]] std::string to_string() const {
    switch (kind) {
      case MeasureKind::omega: return "omega(mu=" + std::to_string(mu) + ",t=" + std::to_string(t) + ")";
      case MeasureKind::m: return "m(mu=" + std::to_string(mu) + ",t=" + std::to_string(t) + ")";
      case MeasureKind::haar: return "haar";
    }
    return "?";
  }
};

template <typename Node>
struct QuadratureRule {
  std::vector<Node> nodes;
  std::vector<double> weights;
  MeasureTag measure;

  [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }

  template <typename F>
  [[nodiscard]] auto integrate(F&& f) const {
    using R = decltype(f(nodes.front()));
    // Kahan summation.
    R acc{};
    R comp{};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const R y = weights[i] * f(nodes[i]) - comp;
      const R next = acc + y;
      comp = (next - acc) - y;
      acc = next;
    }
    return acc;
  }
};

using RealRule = QuadratureRule<ComplexPoint>;
using HaarRule = QuadratureRule<SU2Element>;

namespace detail {

struct GaussRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch nodes of the monic recurrence p_{k+1} = x p_k - beta_k p_{k-1}
/// (alpha_k = 0). Eigenvalues of the symmetric Jacobi matrix.
inline std::vector<double> jacobi_nodes(const std::vector<double>& beta, int order) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(order - 1);
  for (int k = 1; k < order; ++k) sub(k - 1) = std::sqrt(beta[static_cast<std::size_t>(k)]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("jacobi_nodes: eigensolver failed");
  std::vector<double> nodes(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return nodes;
}

/// Gauss rule for |x|^{2mu} e^{-x^2}. Recurrence coefficients of the
/// generalized Hermite weight: beta_k = k/2 + mu (k odd), k/2 (k even).
///
/// Returned weights are lambda_i e^{x_i^2}, i.e. the rule for the bare
/// weight |x|^{2mu} applied to integrands of the form f(x) e^{-x^2}. They
/// are computed from Christoffel sums of orthonormal polynomials carried with
/// the factor e^{-x^2/2}, which keeps full relative accuracy at the outer
/// nodes where lambda_i itself underflows.
inline GaussRule1D generalized_hermite(double mu, int order) {
  std::vector<double> beta(static_cast<std::size_t>(order + 1));
  beta[0] = std::tgamma(mu + 0.5);
  for (int k = 1; k <= order; ++k) {
    beta[static_cast<std::size_t>(k)] = 0.5 * k + ((k % 2 == 1) ? mu : 0.0);
  }
  GaussRule1D rule;
  rule.nodes = jacobi_nodes(beta, order);
  rule.weights.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    double prev = 0.0;
    double cur = std::exp(-0.5 * x * x) / std::sqrt(beta[0]);
    double christoffel = cur * cur;
    for (int k = 0; k + 1 < order; ++k) {
      const double next = (x * cur - (k > 0 ? std::sqrt(beta[static_cast<std::size_t>(k)]) * prev : 0.0)) /
                          std::sqrt(beta[static_cast<std::size_t>(k + 1)]);
      prev = cur;
      cur = next;
      christoffel += cur * cur;
    }
    rule.weights[i] = 1.0 / christoffel;
  }
  return rule;
}

/// Gauss-Legendre on [-1, 1]. Eigenvalue nodes are polished by Newton steps
/// on P_n; weights are 2 / ((1 - x^2) P_n'(x)^2).
inline GaussRule1D gauss_legendre(int order) {
  std::vector<double> beta(static_cast<std::size_t>(order + 1));
  beta[0] = 2.0;
  for (int k = 1; k <= order; ++k) {
    const double kd = k;
    beta[static_cast<std::size_t>(k)] = kd * kd / (4.0 * kd * kd - 1.0);
  }
  const double n = order;
  auto legendre = [order, n](double x, double& dp) {
    double p_prev = 1.0, p = x;
    for (int k = 1; k < order; ++k) {
      const double kd = k;
      const double p_next = ((2.0 * kd + 1.0) * x * p - kd * p_prev) / (kd + 1.0);
      p_prev = p;
      p = p_next;
    }
    dp = n * (x * p - p_prev) / (x * x - 1.0);
    return p;
  };
  GaussRule1D rule;
  rule.nodes = jacobi_nodes(beta, order);
  rule.weights.resize(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double x = rule.nodes[i];
    double dp = 0.0;
    for (int it = 0; it < 3; ++it) x -= legendre(x, dp) / dp;
    (void)legendre(x, dp);
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

inline RealRule real_rule(MeasureKind kind, Multiplicity mu, Planck t, int order, std::size_t dim) {
  if (order < 2 || order % 2 != 0) throw DomainError("omega_rule: order must be even and >= 2");
  if (order > 256) throw DomainError("omega_rule: order must be <= 256");
  if (dim < 1) throw DomainError("omega_rule: dimension must be >= 1");
  if (!mu.is_zero() && dim != 1) throw RankError("omega_rule: mu > 0 requires dimension 1");

  const double tv = t.value();
  const GaussRule1D base = generalized_hermite(mu.value(), order);
  const double scale = std::sqrt(2.0 * tv);  // q = sqrt(2t) x

  // Normalize so that sum_i w_i exp(-q_i^2 / 2t) = 1 per coordinate.
  double mass = 0.0;
  for (std::size_t i = 0; i < base.nodes.size(); ++i) {
    mass += base.weights[i] * std::exp(-base.nodes[i] * base.nodes[i]);
  }
  std::vector<double> q1(base.nodes.size()), w1(base.nodes.size());
  for (std::size_t i = 0; i < base.nodes.size(); ++i) {
    q1[i] = scale * base.nodes[i];
    w1[i] = base.weights[i] / mass;
    if (kind == MeasureKind::m) w1[i] *= std::exp(-q1[i] * q1[i] / tv);
  }

  RealRule rule;
  rule.measure = {kind, mu.value(), tv};
  std::size_t total = 1;
  for (std::size_t d = 0; d < dim; ++d) total *= q1.size();
  rule.nodes.reserve(total);
  rule.weights.reserve(total);
  std::vector<std::size_t> idx(dim, 0);
  std::vector<double> coords(dim);
  for (std::size_t k = 0; k < total; ++k) {
    double w = 1.0;
    for (std::size_t d = 0; d < dim; ++d) {
      coords[d] = q1[idx[d]];
      w *= w1[idx[d]];
    }
    rule.nodes.push_back(ComplexPoint::real(coords));
    rule.weights.push_back(w);
    for (std::size_t d = 0; d < dim; ++d) {
      if (++idx[d] < q1.size()) break;
      idx[d] = 0;
    }
  }
  return rule;
}

}  // namespace detail

inline constexpr int kDefaultQuadOrder = 64;
inline constexpr int kDefaultHaarResolution = 16;

/// Generalized Gauss-Hermite rule for d omega_{mu,t}: exact for
/// p(q) |q|^{2mu} exp(-q^2/2t) with deg p <= 2 order - 1 (per coordinate).
[[nodiscard]] inline RealRule omega_rule(Multiplicity mu, Planck t, int order = kDefaultQuadOrder,
                                         std::size_t dim = 1) {
  return detail::real_rule(MeasureKind::omega, mu, t, order, dim);
}

/// Rule for d m_{mu,t} = exp(-q^2/t) d omega_{mu,t}.
[[nodiscard]] inline RealRule m_rule(Multiplicity mu, Planck t, int order = kDefaultQuadOrder,
                                     std::size_t dim = 1) {
  return detail::real_rule(MeasureKind::m, mu, t, order, dim);
}

/// Euler-angle product rule for normalized Haar measure on SU(2):
///   a = cos(theta/2) e^{i phi}, b = sin(theta/2) e^{i psi},
///   d_H x = (1 / 8 pi^2) sin(theta) d theta d phi d psi.
/// Gauss-Legendre in cos(theta) (resolution nodes), trapezoidal in phi
/// (2 resolution nodes) and psi (resolution nodes).
[[nodiscard]] inline HaarRule haar_rule(int resolution = kDefaultHaarResolution) {
  if (resolution < 4) throw DomainError("haar_rule: resolution must be >= 4");
  const detail::GaussRule1D gl = detail::gauss_legendre(resolution);
  const int n_phi = 2 * resolution;
  const int n_psi = resolution;
  const double two_pi = 2.0 * std::numbers::pi;

  HaarRule rule;
  rule.measure = {MeasureKind::haar, 0.0, 0.0};
  rule.nodes.reserve(static_cast<std::size_t>(resolution * n_phi * n_psi));
  rule.weights.reserve(rule.nodes.capacity());
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double c = gl.nodes[i];  // cos(theta)
    const double cos_half = std::sqrt(0.5 * (1.0 + c));
    const double sin_half = std::sqrt(0.5 * (1.0 - c));
    const double w_theta = 0.5 * gl.weights[i];
    for (int j = 0; j < n_phi; ++j) {
      const double phi = two_pi * j / n_phi;
      for (int k = 0; k < n_psi; ++k) {
        const double psi = two_pi * k / n_psi;
        const cplx a = std::polar(cos_half, phi);
        const cplx b = std::polar(sin_half, psi);
        rule.nodes.emplace_back(a, b);
        rule.weights.push_back(w_theta / (n_phi * n_psi));
      }
    }
  }
  return rule;
}

/// |sum_i w_i f(x_i) - sum_i w_i f(c x_i)|: left-invariance residual.
template <typename F>
[[nodiscard]] double haar_invariance_check(const HaarRule& rule, const SU2Element& c, F&& f) {
  using R = decltype(f(rule.nodes.front()));
  R plain{}, shifted{};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    plain += rule.weights[i] * f(rule.nodes[i]);
    shifted += rule.weights[i] * f(compose(c, rule.nodes[i]));
  }
  return std::abs(plain - shifted);
}

/// CSV dump: one row per node, coordinates then weight.
inline void write_csv(std::ostream& os, const RealRule& rule) {
  os << "# measure=" << rule.measure.to_string() << "\n";
  const std::size_t dim = rule.nodes.empty() ? 1 : rule.nodes.front().dim();
  for (std::size_t d = 0; d < dim; ++d) os << "q" << d << ",";
  os << "weight\n";
  char buf[64];
  for (std::size_t i = 0; i < rule.size(); ++i) {
    for (std::size_t d = 0; d < dim; ++d) {
      std::snprintf(buf, sizeof buf, "%.17g,", rule.nodes[i][d].real());
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", rule.weights[i]);
    os << buf;
  }
}

inline void write_csv(std::ostream& os, const HaarRule& rule) {
  os << "# measure=haar\nre_a,im_a,re_b,im_b,weight\n";
  char buf[160];
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto& x = rule.nodes[i];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", x.a().real(), x.a().imag(),
                  x.b().real(), x.b().imag(), rule.weights[i]);
    os << buf;
  }
}

}  // namespace sbk
