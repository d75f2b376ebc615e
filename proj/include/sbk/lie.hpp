#pragma once

// Identity sweeps, transforms and the doubling counterexample for SU(2).

#include <nlohmann/json.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include "sbk/dunkl.hpp"
#include "sbk/errors.hpp"
#include "sbk/precise.hpp"
#include "sbk/quadrature.hpp"
#include "sbk/random.hpp"
#include "sbk/report.hpp"
#include "sbk/sample_spec.hpp"
#include "sbk/su2.hpp"
#include "sbk/su2_group.hpp"

namespace sbk {

/// Haar-uniform draw (uniform point on S^3, Shoemake's construction).
[[nodiscard]] inline SU2Element random_su2(CounterRng& rng) {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  const double u3 = rng.uniform();
  const double two_pi = 2.0 * std::numbers::pi;
  return {std::polar(std::sqrt(1.0 - u1), two_pi * u2), std::polar(std::sqrt(u1), two_pi * u3)};
}

/// exp(M) for traceless M with entries uniform in the box |Re|, |Im| <= scale.
[[nodiscard]] inline SL2CElement random_sl2c(CounterRng& rng, double scale) {
  auto draw = [&] { return cplx(rng.uniform(-scale, scale), rng.uniform(-scale, scale)); };
  const cplx m11 = draw();
  const cplx m12 = draw();
  const cplx m21 = draw();
  return exp_traceless(m11, m12, m21);
}

/// Evaluates the six Version A/B/C relations on K = SU(2):
///   B(g,x) = A(g,x)/A(e,x);  C(g,x) = A(e,x) A(g,x);  rho(x) = A(e,x)^2;
///   A(g,x) = C(g,x)/C(e,x)^{1/2};  B(g,x) = C(g,x)/C(e,x);  rho(x) = C(e,x).
[[nodiscard]] inline IdentityReport verify_lie_identities(const SampleSpec& spec) {
  IdentityReport report;
  report.config = spec;
  report.identities.reserve(6);
  auto& id_b_a = report.add_identity("B_from_A", "B(g,x) = A(g,x) / A(e,x)");
  auto& id_c_a = report.add_identity("C_from_A", "C(g,x) = A(e,x) A(g,x)");
  auto& id_r_a = report.add_identity("rho_from_A", "rho(x) = A(e,x)^2");
  auto& id_a_c = report.add_identity("A_from_C", "A(g,x) = C(g,x) / C(e,x)^(1/2)");
  auto& id_b_c = report.add_identity("B_from_C", "B(g,x) = C(g,x) / C(e,x)");
  auto& id_r_c = report.add_identity("rho_from_C", "rho(x) = C(e,x)");

  const SL2CElement e = SL2CElement::identity();
  const double tol = spec.truncation_tol;
  for (std::size_t ti = 0; ti < spec.t_list.size(); ++ti) {
    const Planck t(spec.t_list[ti]);
    CounterRng rng(spec.seed, 0x2000 + ti);
    for (std::size_t s = 0; s < spec.samples; ++s) {
      rng.seek(s * 16);
      const SU2Element x = random_su2(rng);
      const SL2CElement g = random_sl2c(rng, spec.g_scale);
      auto where = [&] {
        char buf[40];
        std::snprintf(buf, sizeof buf, "t=%.17g", t.value());
        return std::string(buf) + " x=" + x.matrix().to_string() + " g=" + g.matrix().to_string();
      };
      try {
        const LieKernelValue a_g = kernel_lie_eval(KernelVersion::A, g, x, t, tol);
        const LieKernelValue a_e = kernel_lie_eval(KernelVersion::A, e, x, t, tol);
        const LieKernelValue b_g = kernel_lie_eval(KernelVersion::B, g, x, t, tol);
        const LieKernelValue c_g = kernel_lie_eval(KernelVersion::C, g, x, t, tol);
        const LieKernelValue c_e = kernel_lie_eval(KernelVersion::C, e, x, t, tol);
        const TruncatedSum rho = heat_kernel_eval(x.matrix(), t, tol);
        for (double tb : {a_g.max_tail_bound, a_e.max_tail_bound, b_g.max_tail_bound,
                          c_g.max_tail_bound, c_e.max_tail_bound, rho.tail_bound}) {
          report.max_tail_bound = std::max(report.max_tail_bound, tb);
        }
        id_b_a.add(relative_residual(b_g.value, a_g.value / a_e.value), where);
        id_c_a.add(relative_residual(c_g.value, a_e.value * a_g.value), where);
        id_r_a.add(relative_residual(rho.value, a_e.value * a_e.value), where);
        id_a_c.add(relative_residual(a_g.value, c_g.value / std::sqrt(c_e.value)), where);
        id_b_c.add(relative_residual(b_g.value, c_g.value / c_e.value), where);
        id_r_c.add(relative_residual(rho.value, c_e.value), where);
      } catch (const std::exception& ex) {
        throw ConvergenceError(std::string(ex.what()) + " at " + where());
      }
    }
  }
  return report;
}

/// Quadrature value of the Lie-side transform at g:
///   A, C: int d_H x K(g,x) psi(x);   B: int rho_t(x) d_H x B(g,x) psi(x).
template <typename Psi>
[[nodiscard]] cplx transform_apply_lie(KernelVersion version, Psi&& psi, const SL2CElement& g,
                                       Planck t, const HaarRule& rule,
                                       double tol = kLieTruncationTol) {
  if (rule.measure.kind != MeasureKind::haar) {
    throw UsageError("transform_apply_lie: rule must be the Haar rule");
  }
  cplx acc{};
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const SU2Element& x = rule.nodes[i];
    double w = rule.weights[i];
    if (version == KernelVersion::B) w *= heat_kernel_on_group(x, t, tol);
    acc += w * kernel_lie(version, g, x, t, tol) * cplx(psi(x));
  }
  return acc;
}

struct CounterexampleOptions {
  std::uint64_t seed = 20240601;
  std::size_t sweep_samples = 200;
  double g_scale = 1.0;
  double truncation_tol = 1e-14;
};

struct CounterexampleReport {
  double t = 0.0;
  CertifiedValue rho_I, rho_negI;            // at t
  CertifiedValue rho_half_I, rho_half_negI;  // at t/2
  double q_pos_lower = 0.0, q_pos_upper = 0.0;  // rho_t(I) rho_{t/2}(I)^{1/2}
  double q_neg_lower = 0.0, q_neg_upper = 0.0;  // rho_t(-I) rho_{t/2}(-I)^{1/2}
  double gap_lower = 0.0;                       // certified lower bound of q_pos - q_neg
  double residual_at_I = 0.0;                   // doubling relation at (X, G) = (I, I)
  double residual_at_negI = 0.0;                // at (X, G) = (-I, -I)
  ResidualStats sweep;                          // random (X, G) sweep
  bool positivity_certified = false;
  bool inequality_certified = false;
  bool gap_certified = false;
  std::optional<double> contrast_max_residual;  // six-identity sweep at the same t

  [[nodiscard]] bool reproduced() const noexcept {
    return positivity_certified && inequality_certified && gap_certified;
  }
};

inline constexpr double kCounterexampleGapThreshold = 1e-6;

/// Relative residual of C_t(G^2, X) = A_{2t}(G^2, I) A_{t/2}(G, X).
[[nodiscard]] inline double doubling_residual(const SL2CElement& g, const SU2Element& x, Planck t,
                                              double tol = kLieTruncationTol) {
  const SL2CElement g2 = compose(g, g);
  const cplx lhs = kernel_lie(KernelVersion::C, g2, x, t, tol);
  const cplx rhs = kernel_lie(KernelVersion::A, g2, SU2Element::identity(), Planck(2.0 * t.value()), tol) *
                   kernel_lie(KernelVersion::A, g, x, Planck(0.5 * t.value()), tol);
  return relative_residual(lhs, rhs);
}

[[nodiscard]] inline CounterexampleReport counterexample_report(Planck t,
                                                                const CounterexampleOptions& opts = {}) {
  CounterexampleReport r;
  r.t = t.value();
  const Planck th(0.5 * t.value());
  r.rho_I = heat_kernel_su2_certified(1.0, t);
  r.rho_negI = heat_kernel_su2_certified(-1.0, t);
  r.rho_half_I = heat_kernel_su2_certified(1.0, th);
  r.rho_half_negI = heat_kernel_su2_certified(-1.0, th);

  r.positivity_certified = r.rho_negI.positive && r.rho_half_negI.positive;
  r.inequality_certified = r.positivity_certified && r.rho_negI.upper() < r.rho_I.lower();

  // Monotone interval propagation; all factors are positive when certified.
  auto safe_sqrt = [](double v) { return std::sqrt(std::max(v, 0.0)); };
  r.q_pos_lower = r.rho_I.lower() * safe_sqrt(r.rho_half_I.lower());
  r.q_pos_upper = r.rho_I.upper() * safe_sqrt(r.rho_half_I.upper());
  r.q_neg_lower = std::max(r.rho_negI.lower(), 0.0) * safe_sqrt(r.rho_half_negI.lower());
  r.q_neg_upper = r.rho_negI.upper() * safe_sqrt(r.rho_half_negI.upper());
  constexpr double slack = 1.0 - 4.0 * 2.220446049250313e-16;
  r.gap_lower = (r.q_pos_lower * slack - r.q_neg_upper / slack);
  r.gap_certified = r.gap_lower > kCounterexampleGapThreshold;

  const SU2Element id = SU2Element::identity();
  const SU2Element neg = SU2Element::minus_identity();
  r.residual_at_I = doubling_residual(embed(id), id, t, opts.truncation_tol);
  r.residual_at_negI = doubling_residual(embed(neg), neg, t, opts.truncation_tol);

  r.sweep.id = "doubling_sweep";
  r.sweep.formula = "C_t(G^2,X) = A_2t(G^2,I) A_t/2(G,X)";
  CounterRng rng(opts.seed, 0x3000);
  for (std::size_t s = 0; s < opts.sweep_samples; ++s) {
    rng.seek(s * 16);
    const SU2Element x = random_su2(rng);
    const SL2CElement g = random_sl2c(rng, opts.g_scale);
    r.sweep.add(doubling_residual(g, x, t, opts.truncation_tol),
                [&] { return "x=" + x.matrix().to_string() + " g=" + g.matrix().to_string(); });
  }
  return r;
}

inline nlohmann::json to_json(const CertifiedValue& v) {
  return {{"value", v.mid},     {"radius", v.radius}, {"decimal", v.decimal},
          {"positive", v.positive}, {"digits", v.digits}, {"terms_used", v.terms_used}};
}

inline nlohmann::json to_json(const CounterexampleReport& r) {
  nlohmann::json j = {
      {"t", r.t},
      {"rho_I", to_json(r.rho_I)},
      {"rho_negI", to_json(r.rho_negI)},
      {"rho_half_I", to_json(r.rho_half_I)},
      {"rho_half_negI", to_json(r.rho_half_negI)},
      {"q_pos", {{"lower", r.q_pos_lower}, {"upper", r.q_pos_upper}}},
      {"q_neg", {{"lower", r.q_neg_lower}, {"upper", r.q_neg_upper}}},
      {"gap_lower", r.gap_lower},
      {"doubling_residual_at_I", r.residual_at_I},
      {"doubling_residual_at_negI", r.residual_at_negI},
      {"doubling_sweep",
       {{"eq_ref", r.sweep.formula},
        {"max_residual", r.sweep.max_residual},
        {"mean_residual", r.sweep.mean_residual()},
        {"count", r.sweep.count},
        {"worst_point", r.sweep.worst_point}}},
      {"positivity_certified", r.positivity_certified},
      {"inequality_certified", r.inequality_certified},
      {"gap_certified", r.gap_certified},
      {"reproduced", r.reproduced()}};
  if (r.contrast_max_residual) j["identity_suite_max_residual"] = *r.contrast_max_residual;
  return j;
}

}  // namespace sbk
