#include <gtest/gtest.h>

#include <Eigen/SVD>
#include <map>

#include "dkg/angular.hpp"
#include "dkg/multipliers.hpp"
#include "angular_oracle.hpp"
#include "helpers.hpp"

using namespace dkg;

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST(SphereQuadrature, ExactForHarmonicProducts) {
  const int L = 8;
  auto q = SphereQuadrature::make(L);
  const int nh = (L + 1) * (L + 1);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(nh, nh);
  std::vector<double> y(nh);
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    real_sph_harmonics(L, q.nodes[i], y.data());
    Eigen::Map<Eigen::VectorXd> v(y.data(), nh);
    gram += q.weights[i] * v * v.transpose();
  }
  EXPECT_LE((gram - Eigen::MatrixXd::Identity(nh, nh)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Angular, RadialIsDegreeZero) {
  GridSpec g(16, 2 * kPi);
  AngularTransformPlan plan(g, 8);
  Field f = test::fourier_profile(g, [](double r) { return std::exp(-0.3 * r * r); }, [](const Vec3&) { return 1.0; });
  EXPECT_LE(test::max_abs_diff(angular_projector(f, 1, plan), f), 1e-12);
  for (int N : {2, 4}) EXPECT_LE(test::max_abs(angular_projector(f, N, plan)), 1e-12);
  EXPECT_LE(plan.truncated_fraction(f), 1e-12);
}

// The profile must vanish near Nyquist: the outermost shells are not
// inversion symmetric, so parity no longer separates degrees there.
TEST(Angular, SingleDegreeTwo) {
  GridSpec g(16, 2 * kPi);
  AngularTransformPlan plan(g, 8);
  auto y20 = [](const Vec3& u) { return 3 * u[2] * u[2] - 1; };
  Field f = test::fourier_profile(g, [](double r) { return r * r * std::exp(-0.6 * r * r); }, y20);
  Field phys = to_physical(f);
  EXPECT_LE(test::max_abs_diff(angular_projector(phys, 2, plan), phys), 1e-12 * test::max_abs(phys));
  EXPECT_LE(test::max_abs(angular_projector(phys, 1, plan)), 1e-12 * test::max_abs(phys));
  EXPECT_LE(test::max_abs(angular_projector(phys, 4, plan)), 1e-12 * test::max_abs(phys));
}

TEST(Angular, CommutesWithLittlewoodPaley) {
  GridSpec g(16, 2 * kPi);
  AngularTransformPlan plan(g, 16);
  Field f = test::random_field(g, 4, 31, 6.0);
  for (int N : angular_blocks(plan))
    for (double lam : {1.0, 2.0, 4.0, 8.0}) {
      Field a = angular_projector(littlewood_paley(f, lam), N, plan);
      Field b = littlewood_paley(angular_projector(f, N, plan), lam);
      EXPECT_LE(test::max_abs_diff(a, b), 1e-9 * test::max_abs(f));
    }
}

TEST(Angular, MatchesIndependentShellOracle) {
  GridSpec g(16, 2 * kPi);
  const int L = 8;
  AngularTransformPlan plan(g, L);
  Field f = test::random_field(g, 1, 37, 5.0);
  for (int N : angular_blocks(plan)) {
    auto w = [&](int l) { return l > L ? 0.0 : angular_weight(l, N, DyadicProfile::sharp()); };
    Field a = plan.filter(f, w), b = test::oracle_degree_filter(f, L, w);
    EXPECT_LE(test::rel_l2(a, b), 1e-8) << "N=" << N;
  }
}

TEST(Angular, PartitionAndErrors) {
  GridSpec g(8, 2 * kPi);
  AngularTransformPlan plan(g, 8);
  Field f = test::random_field(g, 1, 41);
  Field sum = plan.filter(f, [&](int l) { return l > 8 ? 1.0 : 0.0; });
  for (int l = 0; l <= 8; ++l) sum += plan.filter(f, [&](int k) { return k == l ? 1.0 : 0.0; });
  EXPECT_LE(test::max_abs_diff(sum, f), 1e-12 * test::max_abs(f));
  EXPECT_THROW(angular_projector(f, 8, plan), UsageError);
  EXPECT_THROW(angular_projector(f, 3, plan), UsageError);
  Field c = f;
  c.carrier = {0.5, 0, 0};
  EXPECT_THROW(plan.filter(c, [](int) { return 1.0; }), UsageError);
  EXPECT_THROW(plan.filter(test::random_field(GridSpec(8, 3.0), 1, 1), [](int) { return 1.0; }), UsageError);
}
