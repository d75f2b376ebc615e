#include <gtest/gtest.h>

#include <cmath>

#include "sbk/coxeter.hpp"
#include "sbk/test_functions.hpp"

namespace {

using sbk::ComplexPoint;
using sbk::KernelVersion;
using sbk::Multiplicity;
using sbk::Planck;
using cplx = std::complex<double>;

TEST(CoxeterIdentities, SmallSweepPasses) {
  sbk::SampleSpec spec;
  spec.samples = 50;
  spec.mu_list = {0.0, 0.5, 2.3};
  spec.t_list = {0.25, 4.0};
  const auto report = sbk::verify_coxeter_identities(spec);
  ASSERT_EQ(report.identities.size(), 7u);
  for (const auto& s : report.identities) {
    EXPECT_EQ(s.count, 300u);
    EXPECT_LE(s.max_residual, 1e-11) << s.id << " worst at " << s.worst_point;
    EXPECT_FALSE(s.worst_point.empty());
  }
}

TEST(CoxeterIdentities, HigherDimensionAtMuZero) {
  sbk::SampleSpec spec;
  spec.samples = 30;
  spec.dim = 3;
  EXPECT_TRUE(sbk::verify_coxeter_identities(spec).within(1e-11));
  spec.mu_list = {1.0};
  EXPECT_THROW((void)sbk::verify_coxeter_identities(spec), std::exception);
}

TEST(CoxeterIdentities, DeterministicForFixedSeed) {
  sbk::SampleSpec spec;
  spec.samples = 20;
  spec.mu_list = {1.0};
  const auto a = sbk::verify_coxeter_identities(spec);
  const auto b = sbk::verify_coxeter_identities(spec);
  EXPECT_EQ(sbk::to_json(a, 1e-10).dump(), sbk::to_json(b, 1e-10).dump());
  spec.seed += 1;
  EXPECT_NE(sbk::to_json(a, 1e-10).dump(),
            sbk::to_json(sbk::verify_coxeter_identities(spec), 1e-10).dump());
}

TEST(CoxeterTransforms, FactorizationHolds) {
  for (double mu : {0.0, 1.0}) {
    const Multiplicity m(mu);
    const Planck t(1.0);
    const auto rule = sbk::omega_rule(m, t);
    std::vector<ComplexPoint> grid;
    for (int i = 0; i < 5; ++i) grid.push_back(ComplexPoint{cplx(-1.0 + 0.5 * i, 0.3 * i - 0.6)});
    for (const auto& name : sbk::real_test_function_names()) {
      const auto report =
          sbk::factorization_check(sbk::real_test_function(name), grid, m, t, rule, name);
      EXPECT_LE(report.max_residual(), 1e-11) << name;
    }
  }
}

TEST(CoxeterTransforms, TransformOfOneIsClosedForm) {
  // A_t 1 (z) = int A(z,q) d omega(q) = exp(-z^2/2t) int e^{-q^2/4t} E(z/sqrt t, q/sqrt t)
  // and C_t 1 = int rho(z, q) d omega(q) = 1 (heat semigroup preserves constants).
  const Multiplicity mu(0.5);
  const Planck t(0.7);
  const auto rule = sbk::omega_rule(mu, t);
  const ComplexPoint z{cplx(0.4, -0.3)};
  auto one = [](const ComplexPoint&) { return 1.0; };
  EXPECT_NEAR(std::abs(sbk::transform_apply(KernelVersion::C, one, z, mu, t, rule) - 1.0), 0.0,
              1e-12);
  EXPECT_THROW((void)sbk::transform_apply(KernelVersion::B, one, z, mu, t, rule), sbk::UsageError);
  const auto mrule = sbk::m_rule(mu, t);
  EXPECT_NO_THROW((void)sbk::transform_apply(KernelVersion::B, one, z, mu, t, mrule));
}

TEST(CoxeterGram, ProportionalToDoubledHeatKernel) {
  sbk::CounterRng rng(21, 1);
  for (double mu : {0.0, 1.0, 2.3}) {
    const Multiplicity m(mu);
    const Planck t(1.0);
    const auto rule = sbk::omega_rule(m, t);
    std::vector<std::pair<ComplexPoint, ComplexPoint>> pairs;
    for (int s = 0; s < 10; ++s) {
      pairs.emplace_back(ComplexPoint{cplx(rng.uniform(-1, 1), rng.uniform(-1, 1))},
                         ComplexPoint{cplx(rng.uniform(-1, 1), rng.uniform(-1, 1))});
    }
    EXPECT_LE(sbk::gram_consistency(KernelVersion::C, pairs, m, t, rule).spread, 1e-7);
    EXPECT_LE(sbk::gram_consistency(KernelVersion::A, pairs, m, t, rule).spread, 1e-7);
  }
}

TEST(CoxeterGram, ContractionAndPointwiseBound) {
  const Multiplicity mu(1.0);
  const Planck t(1.0);
  const auto rule = sbk::omega_rule(mu, t);
  std::vector<ComplexPoint> pts;
  for (int i = 0; i < 6; ++i) pts.push_back(ComplexPoint{cplx(-1.0 + 0.4 * i, 0.2 * i - 0.5)});
  EXPECT_GE(sbk::contraction_check(pts, mu, t, rule).min_eigenvalue, -1e-10);
  const auto bound = sbk::pointwise_bound_check(pts, {ComplexPoint{0.3}, pts[2]}, mu, t, rule);
  EXPECT_LE(bound.max_ratio, 1.0 + 1e-8);
  EXPECT_GT(bound.c, 0.0);
}

}  // namespace
