#pragma once

// Identity sweeps, integral transforms and reproducing-kernel checks for the
// Coxeter-side kernels.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "sbk/dunkl.hpp"
#include "sbk/errors.hpp"
#include "sbk/quadrature.hpp"
#include "sbk/random.hpp"
#include "sbk/report.hpp"
#include "sbk/sample_spec.hpp"

namespace sbk {

namespace detail {

inline std::string describe_mu_t(double mu, double t) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "mu=%.17g t=%.17g", mu, t);
  return buf;
}

inline ComplexPoint draw_complex_point(CounterRng& rng, std::size_t dim, double re, double im,
                                       double scale) {
  std::vector<cplx> c(dim);
  for (auto& v : c) {
    const double x = rng.uniform(-re, re);
    const double y = rng.uniform(-im, im);
    v = scale * cplx(x, y);
  }
  return ComplexPoint(std::move(c));
}

inline ComplexPoint draw_real_point(CounterRng& rng, std::size_t dim, double half, double scale) {
  std::vector<double> c(dim);
  for (auto& v : c) v = scale * rng.uniform(-half, half);
  return ComplexPoint::real(c);
}

inline void check_rule(const RealRule& rule, MeasureKind kind, Multiplicity mu, Planck t) {
  if (rule.measure.kind != kind || rule.measure.mu != mu.value() || rule.measure.t != t.value()) {
    throw UsageError("quadrature rule measure " + rule.measure.to_string() +
                     " does not match the requested transform");
  }
}

}  // namespace detail

/// Evaluates the seven Version A/B/C relations at every sample of the grid:
///   B(z,q) = A(z,q)/A(0,q)
///   rho(z,q) = C(z,q) = A(0,q) A(z,q)
///   sigma(q) = rho(0,q) = A(0,q)^2
///   C_t(2z,q) = A_{2t}(2z,0) A_{t/2}(z,q)
///   A(z,q) = C(z,q)/C(0,q)^{1/2}
///   B(z,q) = C(z,q)/C(0,q)
///   sigma(q) = rho(0,q) = C(0,q)
[[nodiscard]] inline IdentityReport verify_coxeter_identities(const SampleSpec& spec) {
  IdentityReport report;
  report.config = spec;
  report.identities.reserve(7);
  auto& id_b_a = report.add_identity("B_from_A", "B(z,q) = A(z,q) / A(0,q)");
  auto& id_c_a = report.add_identity("C_from_A", "rho(z,q) = C(z,q) = A(0,q) A(z,q)");
  auto& id_s_a = report.add_identity("sigma_from_A", "sigma(q) = rho(0,q) = A(0,q)^2");
  auto& id_dbl = report.add_identity("C_doubling", "C_t(2z,q) = A_2t(2z,0) A_t/2(z,q)");
  auto& id_a_c = report.add_identity("A_from_C", "A(z,q) = C(z,q) / C(0,q)^(1/2)");
  auto& id_b_c = report.add_identity("B_from_C", "B(z,q) = C(z,q) / C(0,q)");
  auto& id_s_c = report.add_identity("sigma_from_C", "sigma(q) = rho(0,q) = C(0,q)");

  const std::size_t dim = spec.dim;
  const ComplexPoint zero = ComplexPoint::zero(dim);
  for (std::size_t mi = 0; mi < spec.mu_list.size(); ++mi) {
    const Multiplicity mu(spec.mu_list[mi]);
    for (std::size_t ti = 0; ti < spec.t_list.size(); ++ti) {
      const Planck t(spec.t_list[ti]);
      const Planck t2(2.0 * t.value());
      const Planck th(0.5 * t.value());
      const double root_t = std::sqrt(t.value());
      CounterRng rng(spec.seed, 0x1000 + mi * spec.t_list.size() + ti);
      for (std::size_t s = 0; s < spec.samples; ++s) {
        rng.seek(s * 4 * dim);
        const ComplexPoint z = detail::draw_complex_point(rng, dim, spec.z_re, spec.z_im, root_t);
        const ComplexPoint q = detail::draw_real_point(rng, dim, spec.q_half, root_t);
        auto where = [&] {
          return detail::describe_mu_t(mu.value(), t.value()) + " z=" + z.to_string() +
                 " q=" + q.to_string();
        };
        try {
          const cplx a_zq = kernel(KernelVersion::A, z, q, mu, t);
          const cplx a_0q = kernel(KernelVersion::A, zero, q, mu, t);
          const cplx b_zq = kernel(KernelVersion::B, z, q, mu, t);
          const cplx c_zq = kernel(KernelVersion::C, z, q, mu, t);
          const cplx c_0q = kernel(KernelVersion::C, zero, q, mu, t);
          const cplx rho_zq = heat_kernel_rho(z, q, mu, t);
          const cplx rho_0q = heat_kernel_rho(zero, q, mu, t);
          const double sig = sigma(q, t);

          const ComplexPoint z2 = z.scaled(2.0);
          const cplx c_2z = kernel(KernelVersion::C, z2, q, mu, t);
          const cplx a_2t = kernel(KernelVersion::A, z2, zero, mu, t2);
          const cplx a_half = kernel(KernelVersion::A, z, q, mu, th);

          id_b_a.add(relative_residual(b_zq, a_zq / a_0q), where);
          id_c_a.add(std::max(relative_residual(rho_zq, a_0q * a_zq),
                              relative_residual(c_zq, a_0q * a_zq)),
                     where);
          id_s_a.add(std::max(relative_residual(sig, a_0q * a_0q),
                              relative_residual(rho_0q, a_0q * a_0q)),
                     where);
          id_dbl.add(relative_residual(c_2z, a_2t * a_half), where);
          id_a_c.add(relative_residual(a_zq, c_zq / std::sqrt(c_0q)), where);
          id_b_c.add(relative_residual(b_zq, c_zq / c_0q), where);
          id_s_c.add(std::max(relative_residual(sig, rho_0q), relative_residual(sig, c_0q)),
                     where);
        } catch (const std::exception& e) {
          throw ConvergenceError(std::string(e.what()) + " at " + where());
        }
      }
    }
  }
  return report;
}

/// Quadrature value of the Version A/B/C transform of psi at z. Versions A
/// and C integrate against omega_{mu,t}, Version B against m_{mu,t}.
template <typename Psi>
[[nodiscard]] cplx transform_apply(KernelVersion version, Psi&& psi, const ComplexPoint& z,
                                   Multiplicity mu, Planck t, const RealRule& rule) {
  detail::check_rule(rule, version == KernelVersion::B ? MeasureKind::m : MeasureKind::omega, mu, t);
  cplx acc{};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    acc += rule.weights[i] * kernel(version, z, rule.nodes[i], mu, t) * cplx(psi(rule.nodes[i]));
  }
  return acc;
}

/// Compares C psi against A (M psi) with M = multiplication by exp(-q^2/4t)
/// at every grid point.
template <typename Psi>
[[nodiscard]] IdentityReport factorization_check(Psi&& psi, const std::vector<ComplexPoint>& z_grid,
                                                 Multiplicity mu, Planck t, const RealRule& rule,
                                                 const std::string& label = "psi") {
  IdentityReport report;
  report.config = {{"mu", mu.value()}, {"t", t.value()}, {"function", label},
                   {"grid_points", z_grid.size()}, {"quad_nodes", rule.size()}};
  auto& stats = report.add_identity("C_equals_A_M", "C psi = A (M psi), M psi(q) = exp(-q^2/4t) psi(q)");
  const double tv = t.value();
  auto m_psi = [&](const ComplexPoint& q) {
    return std::exp(-q.square().real() / (4.0 * tv)) * cplx(psi(q));
  };
  for (const auto& z : z_grid) {
    const cplx lhs = transform_apply(KernelVersion::C, psi, z, mu, t, rule);
    const cplx rhs = transform_apply(KernelVersion::A, m_psi, z, mu, t, rule);
    stats.add(relative_residual(lhs, rhs), [&] {
      return detail::describe_mu_t(mu.value(), tv) + " f=" + label + " z=" + z.to_string();
    });
  }
  return report;
}

/// Range-space reproducing kernel of Version A or C:
///   L_V(z, w) = int d omega(q) conj(K_V(z,q)) K_V(w,q),
/// conjugate-linear in z, so that L_C(z, w) = c rho_{mu,2t}(z*, w).
[[nodiscard]] inline cplx gram_kernel(KernelVersion version, const ComplexPoint& z,
                                      const ComplexPoint& w, Multiplicity mu, Planck t,
                                      const RealRule& rule) {
  if (version == KernelVersion::B) throw UsageError("gram_kernel: version must be A or C");
  detail::check_rule(rule, MeasureKind::omega, mu, t);
  cplx acc{};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    acc += rule.weights[i] * std::conj(kernel(version, z, rule.nodes[i], mu, t)) *
           kernel(version, w, rule.nodes[i], mu, t);
  }
  return acc;
}

/// Closed form the Gram kernel must be proportional to:
///   C: rho_{mu,2t}(z*, w);  A: E_mu(z*/sqrt t, w/sqrt t).
[[nodiscard]] inline cplx gram_reference(KernelVersion version, const ComplexPoint& z,
                                         const ComplexPoint& w, Multiplicity mu, Planck t) {
  if (version == KernelVersion::C) return heat_kernel_rho(z.conj(), w, mu, Planck(2.0 * t.value()));
  if (version == KernelVersion::A) {
    const double s = 1.0 / std::sqrt(t.value());
    return dunkl_kernel(z.conj().scaled(s), w.scaled(s), mu);
  }
  throw UsageError("gram_reference: version must be A or C");
}

struct GramConsistency {
  cplx mean_ratio{};
  double spread = 0.0;  // max_k |r_k - mean| / |mean|
  std::size_t pairs = 0;
};

[[nodiscard]] inline GramConsistency gram_consistency(
    KernelVersion version, const std::vector<std::pair<ComplexPoint, ComplexPoint>>& pairs,
    Multiplicity mu, Planck t, const RealRule& rule) {
  std::vector<cplx> ratios;
  ratios.reserve(pairs.size());
  for (const auto& [z, w] : pairs) {
    ratios.push_back(gram_kernel(version, z, w, mu, t, rule) / gram_reference(version, z, w, mu, t));
  }
  GramConsistency out;
  out.pairs = ratios.size();
  if (ratios.empty()) return out;
  for (const auto& r : ratios) out.mean_ratio += r;
  out.mean_ratio /= static_cast<double>(ratios.size());
  for (const auto& r : ratios) {
    out.spread = std::max(out.spread, std::abs(r - out.mean_ratio) / std::abs(out.mean_ratio));
  }
  return out;
}

using GramMatrix = Eigen::MatrixXcd;

[[nodiscard]] inline GramMatrix gram_matrix(KernelVersion version,
                                            const std::vector<ComplexPoint>& points,
                                            Multiplicity mu, Planck t, const RealRule& rule) {
  const auto n = static_cast<Eigen::Index>(points.size());
  GramMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const cplx v = gram_kernel(version, points[static_cast<std::size_t>(i)],
                                 points[static_cast<std::size_t>(j)], mu, t, rule);
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return g;
}

struct ContractionCheck {
  double min_eigenvalue = 0.0;  // of (G_A - G_C) / ||G_A||_2
  double max_eigenvalue_a = 0.0;
};

/// Contractive inclusion of the C-space into the A-space is equivalent to
/// L_A - L_C being a positive kernel; on a finite point set that is
/// G_A - G_C >= 0.
[[nodiscard]] inline ContractionCheck contraction_check(const std::vector<ComplexPoint>& points,
                                                        Multiplicity mu, Planck t,
                                                        const RealRule& rule) {
  const GramMatrix ga = gram_matrix(KernelVersion::A, points, mu, t, rule);
  const GramMatrix gc = gram_matrix(KernelVersion::C, points, mu, t, rule);
  Eigen::SelfAdjointEigenSolver<GramMatrix> sa(ga, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<GramMatrix> sd(ga - gc, Eigen::EigenvaluesOnly);
  ContractionCheck out;
  out.max_eigenvalue_a = sa.eigenvalues().maxCoeff();
  out.min_eigenvalue = sd.eigenvalues().minCoeff() / out.max_eigenvalue_a;
  return out;
}

struct BoundCheck {
  double c = 0.0;  // measured Gram constant L_C(0,0) / rho_{2t}(0,0)
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::size_t count = 0;
  std::string worst_point;
};

/// For kernel sections f_w = L_C(w, .) checks
///   |f_w(z)| <= c^{1/2} exp(|Im z|^2 / 2t) ||f_w||,  ||f_w||^2 = L_C(w, w)
/// and reports the largest ratio of the two sides.
[[nodiscard]] inline BoundCheck pointwise_bound_check(const std::vector<ComplexPoint>& z_grid,
                                                      const std::vector<ComplexPoint>& w_list,
                                                      Multiplicity mu, Planck t,
                                                      const RealRule& rule) {
  if (z_grid.empty() || w_list.empty()) throw UsageError("pointwise_bound_check: empty grid");
  const std::size_t dim = z_grid.front().dim();
  const ComplexPoint zero = ComplexPoint::zero(dim);
  BoundCheck out;
  out.c = (gram_kernel(KernelVersion::C, zero, zero, mu, t, rule) /
           gram_reference(KernelVersion::C, zero, zero, mu, t))
              .real();
  double sum = 0.0;
  for (const auto& w : w_list) {
    const double norm_w = std::sqrt(gram_kernel(KernelVersion::C, w, w, mu, t, rule).real());
    for (const auto& z : z_grid) {
      double y2 = 0.0;
      for (std::size_t i = 0; i < dim; ++i) y2 += z[i].imag() * z[i].imag();
      const double fz = std::abs(gram_kernel(KernelVersion::C, w, z, mu, t, rule));
      const double bound = std::sqrt(out.c) * std::exp(y2 / (2.0 * t.value())) * norm_w;
      const double ratio = fz / bound;
      sum += ratio;
      ++out.count;
      if (out.count == 1 || ratio > out.max_ratio) {
        out.max_ratio = ratio;
        out.worst_point = detail::describe_mu_t(mu.value(), t.value()) + " z=" + z.to_string() +
                          " w=" + w.to_string();
      }
    }
  }
  out.mean_ratio = sum / static_cast<double>(out.count);
  return out;
}

}  // namespace sbk
