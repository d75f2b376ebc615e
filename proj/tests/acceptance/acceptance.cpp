// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <boost/multiprecision/mpfr.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "sbk/sbk.hpp"

namespace {

using namespace sbk;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

constexpr std::uint64_t kSeed = 20240601;

// 1. Coxeter identity suite.
Outcome coxeter_identities() {
  const auto start = Clock::now();
  double worst = 0.0;
  std::string where;
  auto sweep = [&](std::vector<double> mus, std::size_t dim) {
    SampleSpec spec;
    spec.seed = kSeed;
    spec.samples = 500;
    spec.mu_list = std::move(mus);
    spec.t_list = {0.25, 1.0, 4.0};
    spec.dim = dim;
    const IdentityReport r = verify_coxeter_identities(spec);
    for (const auto& s : r.identities) {
      if (s.max_residual >= worst) {
        worst = s.max_residual;
        where = s.id + " " + s.worst_point;
      }
    }
  };
  sweep({0.0, 0.5, 1.0, 2.3}, 1);
  sweep({0.0}, 2);
  sweep({0.0}, 3);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  return {worst <= 1e-11 && secs <= 30.0,
          "max residual " + sci(worst) + " (tol 1e-11), " + sci(secs) + " s (limit 30 s); worst " +
              where};
}

// 2. Lie identity suite.
Outcome lie_identities() {
  const auto start = Clock::now();
  SampleSpec spec;
  spec.seed = kSeed;
  spec.samples = 200;
  spec.t_list = {0.5, 1.0, 2.0};
  const IdentityReport r = verify_lie_identities(spec);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  return {r.max_residual() <= 1e-10 && r.max_tail_bound <= 1e-13 && secs <= 60.0,
          "max residual " + sci(r.max_residual()) + " (tol 1e-10), max tail bound " +
              sci(r.max_tail_bound) + " (tol 1e-13), " + sci(secs) + " s (limit 60 s)"};
}

// 3. Counterexample reproduction, contrasted with the identity suite.
Outcome counterexample() {
  bool pass = true;
  std::string detail;
  for (double tv : {0.25, 1.0, 4.0}) {
    CounterexampleOptions opts;
    opts.seed = kSeed;
    CounterexampleReport r = counterexample_report(Planck(tv), opts);
    SampleSpec spec;
    spec.seed = kSeed;
    spec.samples = 200;
    spec.t_list = {tv};
    r.contrast_max_residual = verify_lie_identities(spec).max_residual();
    // Direct double summation to terms < 1e-16 as an independent check of rho_t(I).
    const TruncatedSum direct = heat_kernel_su2(Mat2C::identity(), Planck(tv), 1e-16);
    const bool oracle_ok = std::abs(direct.value.real() - r.rho_I.mid) <=
                           r.rho_I.radius + direct.tail_bound + direct.rounding_estimate();
    const bool ok = r.reproduced() && r.residual_at_negI > 1e-3 && *r.contrast_max_residual <= 1e-10 &&
                    oracle_ok;
    pass = pass && ok;
    detail += " t=" + sci(tv) + ": rho(-I)=" + r.rho_negI.decimal + " < rho(I)=" + r.rho_I.decimal +
              ", gap>=" + sci(r.gap_lower) + ", doubling residual at (-I,-I) " +
              sci(r.residual_at_negI) + " vs identity suite " + sci(*r.contrast_max_residual) + ";";
  }
  return {pass, detail};
}

// 4. Chebyshev growth bound and trigonometric oracle.
Outcome chebyshev() {
  CounterRng rng(kSeed, 0x8000);
  std::size_t violations = 0;
  double max_ratio = 0.0;
  for (int s = 0; s < 200; ++s) {
    const cplx z = std::polar(5.0 * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
    for (int n = 0; n <= 60; ++n) {
      const double ratio = std::abs(u_eval(ChebDegree(n), z)) / u_bound(ChebDegree(n), z);
      max_ratio = std::max(max_ratio, ratio);
      if (ratio > 1.0) ++violations;
    }
  }
  double max_rel = 0.0;
  for (int s = 0; s < 200; ++s) {
    const double x = rng.uniform(-0.999, 0.999);
    for (int n = 0; n <= 60; ++n) {
      const double trig = u_eval_trig(ChebDegree(n), x);
      const double rec = u_eval(ChebDegree(n), x);
      max_rel = std::max(max_rel, std::abs(rec - trig) / std::max(1.0, std::abs(trig)));
    }
  }
  return {violations == 0 && max_rel <= 1e-10,
          std::to_string(violations) + " bound violations (max ratio " + sci(max_ratio) +
              "), recursion vs trig " + sci(max_rel) + " (tol 1e-10)"};
}

// 5. Dunkl kernel eigenrelation and mu -> 0 limit.
Outcome dunkl_pinning() {
  CounterRng rng(kSeed, 0x8100);
  double worst_residual = 0.0;
  double min_ratio = 1e300, max_ratio = 0.0;
  double worst_limit = 0.0;
  for (double mu : {0.5, 1.0, 2.3}) {
    for (int s = 0; s < 50; ++s) {
      const double x = rng.uniform(0.2, 1.5);
      const double y = rng.uniform(0.5, 1.5);
      auto f = [&](double u) {
        return dunkl_kernel(ComplexPoint{u}, ComplexPoint{y}, Multiplicity(mu)).real();
      };
      const double target = y * f(x);
      const double r3 = std::abs(dunkl_operator_apply(f, Multiplicity(mu), x, 1e-3) - target);
      const double r4 = std::abs(dunkl_operator_apply(f, Multiplicity(mu), x, 1e-4) - target);
      worst_residual = std::max(worst_residual, r4);
      min_ratio = std::min(min_ratio, r3 / r4);
      max_ratio = std::max(max_ratio, r3 / r4);
      const cplx lim = dunkl_series_rank1(cplx(x * y), Multiplicity(1e-12)).value;
      worst_limit = std::max(worst_limit, std::abs(lim - std::exp(x * y)));
    }
  }
  const bool pass = worst_residual <= 1e-6 && min_ratio >= 50.0 && max_ratio <= 200.0 &&
                    worst_limit <= 1e-10;
  return {pass, "eigen residual " + sci(worst_residual) + " (tol 1e-6), Richardson ratio in [" +
                    sci(min_ratio) + ", " + sci(max_ratio) + "] (want [50, 200]), mu->0 " +
                    sci(worst_limit) + " (tol 1e-10)"};
}

// 6. Operator factorization C = A M.
Outcome factorization() {
  double worst = 0.0;
  std::string where;
  auto run = [&](double muv, std::size_t dim) {
    for (double tv : {0.25, 1.0, 4.0}) {
      const Multiplicity mu(muv);
      const Planck t(tv);
      const RealRule rule = omega_rule(mu, t, dim == 1 ? kDefaultQuadOrder : 24, dim);
      CounterRng rng(kSeed, 0x8200);
      std::vector<ComplexPoint> grid;
      for (int s = 0; s < 20; ++s) {
        std::vector<cplx> c(dim);
        for (auto& x : c) x = std::sqrt(tv) * cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        grid.emplace_back(std::move(c));
      }
      for (const char* name : {"one", "cubic", "trig"}) {
        const IdentityReport r =
            factorization_check(real_test_function(name, kSeed), grid, mu, t, rule, name);
        if (r.max_residual() >= worst) {
          worst = r.max_residual();
          where = r.identities.front().worst_point;
        }
      }
    }
  };
  for (double mu : {0.0, 0.5, 1.0, 2.3}) run(mu, 1);
  run(0.0, 2);
  run(0.0, 3);
  return {worst <= 1e-11, "max residual " + sci(worst) + " (tol 1e-11); worst " + where};
}

// 7. Reproducing-kernel consistency and pointwise bound.
Outcome rkhs() {
  double worst_spread = 0.0;
  double worst_ratio = 0.0;
  for (double muv : {0.0, 0.5, 1.0, 2.3}) {
    for (double tv : {0.25, 1.0, 4.0}) {
      const Multiplicity mu(muv);
      const Planck t(tv);
      const RealRule rule = omega_rule(mu, t);
      CounterRng rng(kSeed, 0x8300);
      const double rt = std::sqrt(tv);
      auto draw = [&] { return ComplexPoint{rt * cplx(rng.uniform(-1, 1), rng.uniform(-1, 1))}; };
      std::vector<std::pair<ComplexPoint, ComplexPoint>> pairs;
      for (int s = 0; s < 30; ++s) {
        ComplexPoint z = draw();
        pairs.emplace_back(std::move(z), draw());
      }
      worst_spread = std::max(worst_spread, gram_consistency(KernelVersion::C, pairs, mu, t, rule).spread);
      std::vector<ComplexPoint> z_grid, w_list;
      for (int s = 0; s < 100; ++s) z_grid.push_back(draw());
      for (int s = 0; s < 5; ++s) w_list.push_back(draw());
      worst_ratio = std::max(worst_ratio, pointwise_bound_check(z_grid, w_list, mu, t, rule).max_ratio);
    }
  }
  return {worst_spread <= 1e-7 && worst_ratio <= 1.0 + 1e-8,
          "Gram/rho_2t spread " + sci(worst_spread) + " (tol 1e-7), bound ratio " +
              sci(worst_ratio) + " (limit 1 + 1e-8)"};
}

// Independent direct summation in double until |term| < 1e-16 past the
// point where the dominating terms decrease.
cplx heat_kernel_direct(const Mat2C& m, double t) {
  const cplx h = m.half_trace();
  const double log_c = std::log(3.0 * std::max(1.0, std::abs(h)));
  cplx sum{}, u_prev{}, u{1.0};
  for (int n = 0;; ++n) {
    const cplx term = (n + 1.0) * std::exp(-n * (n + 2.0) * t / 8.0) * u;
    sum += term;
    if (std::abs(term) < 1e-16 && detail::log_dominating_term(n + 1, t, log_c) < std::log(1e-16)) {
      return sum;
    }
    const cplx next = 2.0 * h * u - u_prev;
    u_prev = u;
    u = next;
  }
}

// Same series in 60-digit arithmetic, free of double rounding.
cplx heat_kernel_multiprecision(const Mat2C& m, double t) {
  using mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<60>>;
  const cplx h = m.half_trace();
  const mp hr = h.real(), hi = h.imag();
  const double log_c = std::log(3.0 * std::max(1.0, std::abs(h)));
  mp sr = 0, si = 0, ur_prev = 0, ui_prev = 0, ur = 1, ui = 0;
  for (int n = 0;; ++n) {
    const mp w = mp(n + 1) * exp(-mp(n) * mp(n + 2) * mp(t) / 8);
    sr += w * ur;
    si += w * ui;
    if (detail::log_dominating_term(n + 1, t, log_c) < std::log(1e-30)) break;
    const mp nr = 2 * (hr * ur - hi * ui) - ur_prev;
    const mp ni = 2 * (hr * ui + hi * ur) - ui_prev;
    ur_prev = ur;
    ui_prev = ui;
    ur = nr;
    ui = ni;
  }
  return {sr.convert_to<double>(), si.convert_to<double>()};
}

// 8. Truncation certification.
Outcome truncation() {
  CounterRng rng(kSeed, 0x8400);
  std::size_t violations = 0, mp_violations = 0, checks = 0;
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const SL2CElement g = random_sl2c(rng, 1.0);
    for (double tv : {0.5, 1.0, 2.0}) {
      const cplx direct = heat_kernel_direct(g.matrix(), tv);
      const cplx exact = heat_kernel_multiprecision(g.matrix(), tv);
      for (double tol : {1e-4, 1e-8, 1e-12}) {
        const TruncatedSum ts = heat_kernel_su2(g.matrix(), Planck(tv), tol);
        const double err = std::abs(ts.value - direct);
        ++checks;
        if (err > ts.tail_bound) ++violations;
        if (std::abs(ts.value - exact) > ts.tail_bound + ts.rounding_estimate()) ++mp_violations;
        worst = std::max(worst, err / ts.tail_bound);
      }
    }
  }
  return {violations == 0 && mp_violations == 0,
          std::to_string(violations) + "/" + std::to_string(checks) +
              " errors vs direct summation above tail bound (max error/bound " + sci(worst) +
              "); " + std::to_string(mp_violations) +
              " errors vs 60-digit sum above tail bound + rounding estimate"};
}

// 9. Haar rule and convolution eigenvalues.
Outcome haar() {
  const HaarRule rule = haar_rule();
  const double mass = rule.integrate([](const SU2Element&) { return 1.0; });
  CounterRng rng(kSeed, 0x8500);
  double invariance = 0.0;
  for (int s = 0; s < 20; ++s) {
    const SU2Element c = random_su2(rng);
    const SU2Element d = random_su2(rng);
    invariance = std::max(invariance, haar_invariance_check(rule, c, [&](const SU2Element& x) {
      const Mat2C m = d.matrix() * x.matrix();
      return std::exp(m.a11 + 0.5 * m.a12 * std::conj(m.a21));
    }));
  }
  double ortho = 0.0;
  for (int u2 = 0; u2 <= 6; ++u2) {
    for (int v2 = 0; v2 <= 6; ++v2) {
      const cplx ip = rule.integrate([&](const SU2Element& x) {
        return std::conj(character(HalfInteger::from_twice(u2), x.matrix())) *
               character(HalfInteger::from_twice(v2), x.matrix());
      });
      ortho = std::max(ortho, std::abs(ip - cplx(u2 == v2 ? 1.0 : 0.0)));
    }
  }
  double conv = 0.0;
  for (int u2 = 0; u2 <= 4; ++u2) {
    const HalfInteger u = HalfInteger::from_twice(u2);
    const GroupFunction chi = group_test_function("chi" + std::to_string(u2));
    for (double tv : {0.5, 1.0, 2.0}) {
      for (int s = 0; s < 3; ++s) {
        const SL2CElement g = random_sl2c(rng, 0.5);
        const cplx lhs = transform_apply_lie(KernelVersion::C, chi, g, Planck(tv), rule);
        const cplx rhs = std::exp(-u.casimir() * tv / 2.0) * character(u, g.matrix());
        conv = std::max(conv, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
      }
    }
  }
  const double mass_err = std::abs(mass - 1.0);
  return {mass_err <= 1e-14 && invariance <= 1e-7 && ortho <= 1e-8 && conv <= 1e-7,
          "mass error " + sci(mass_err) + " (tol 1e-14), invariance " + sci(invariance) +
              " (tol 1e-7), orthonormality " + sci(ortho) + " (tol 1e-8), convolution " +
              sci(conv) + " (tol 1e-7)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"coxeter identity suite", coxeter_identities},
      {"lie identity suite", lie_identities},
      {"counterexample reproduction", counterexample},
      {"chebyshev growth bound", chebyshev},
      {"dunkl kernel pinning", dunkl_pinning},
      {"operator factorization", factorization},
      {"reproducing kernel consistency", rkhs},
      {"truncation certification", truncation},
      {"haar and harmonic sanity", haar},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
