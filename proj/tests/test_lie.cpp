#include <gtest/gtest.h>

#include <cmath>

#include "sbk/lie.hpp"
#include "sbk/quadrature.hpp"
#include "sbk/test_functions.hpp"

namespace {

using sbk::KernelVersion;
using sbk::Planck;
using sbk::SL2CElement;
using sbk::SU2Element;
using cplx = std::complex<double>;

TEST(LieIdentities, SmallSweepPasses) {
  sbk::SampleSpec spec;
  spec.samples = 30;
  spec.t_list = {0.5, 2.0};
  const auto report = sbk::verify_lie_identities(spec);
  ASSERT_EQ(report.identities.size(), 6u);
  EXPECT_LE(report.max_residual(), 1e-10);
  EXPECT_LE(report.max_tail_bound, 1e-13);
}

TEST(LieTransforms, ConvolutionEigenvalues) {
  const auto rule = sbk::haar_rule();
  sbk::CounterRng rng(31, 1);
  for (int u2 = 0; u2 <= 4; ++u2) {
    const auto u = sbk::HalfInteger::from_twice(u2);
    const auto chi = sbk::group_test_function("chi" + std::to_string(u2));
    for (double t : {0.5, 1.0}) {
      const SL2CElement g = sbk::random_sl2c(rng, 0.4);
      const cplx lhs = sbk::transform_apply_lie(KernelVersion::C, chi, g, Planck(t), rule);
      const cplx rhs = std::exp(-u.casimir() * t / 2.0) * sbk::character(u, g.matrix());
      EXPECT_LE(std::abs(lhs - rhs), 1e-7 * (1.0 + std::abs(rhs))) << "u2=" << u2 << " t=" << t;
    }
  }
  EXPECT_THROW((void)sbk::group_test_function("psi"), sbk::UsageError);
}

TEST(Counterexample, CertifiedAtUnitTime) {
  sbk::CounterexampleOptions opts;
  opts.sweep_samples = 20;
  const auto r = sbk::counterexample_report(Planck(1.0), opts);
  EXPECT_TRUE(r.positivity_certified);
  EXPECT_TRUE(r.inequality_certified);
  EXPECT_TRUE(r.gap_certified);
  EXPECT_TRUE(r.reproduced());
  EXPECT_LT(r.rho_negI.mid, r.rho_I.mid);
  EXPECT_GT(r.residual_at_negI, 1e-3);
  const auto j = sbk::to_json(r);
  EXPECT_TRUE(j.at("reproduced").get<bool>());
  EXPECT_GT(j.at("rho_I").at("value").get<double>(), j.at("rho_negI").at("value").get<double>());
}

}  // namespace
