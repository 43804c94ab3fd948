#include <gtest/gtest.h>

#include <cmath>

#include "stochorder/risk.hpp"
#include "support/generators.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace stochorder;
using namespace stochorder::testing;

namespace {

// ES_p = int_0^inf Q(1 - (1-p) e^{-u}) e^{-u} du, truncated where 1 - t stops
// being representable; 10^4 trapezoid panels.
double es_by_quadrature(const ParamDist& d, double p) {
  const double upper = std::log((1 - p) / 1e-15);
  return simpson([&](double u) { return quantile_right(d, 1 - (1 - p) * std::exp(-u)) * std::exp(-u); },
                   0.0, upper, 10000);
}

}  // namespace

TEST(Es, UniformFourPoints) {
  EXPECT_EQ(es(U({"0", "1", "2", "3"}), R("1/2")), R("5/2"));
  EXPECT_EQ(brute_es(U({"0", "1", "2", "3"}), R("1/2")), R("5/2"));
}

TEST(Es, LevelZeroIsMean) {
  Gen g(suite_seed() + 10);
  for (int i = 0; i < 200; ++i) {
    DiscreteDist d = g.discrete();
    EXPECT_EQ(es(d, Rational{0}), mean(d));
  }
  EXPECT_DOUBLE_EQ(es(ParamDist(Exponential{2.0}), 0.0), 0.5);
  EXPECT_DOUBLE_EQ(es(ParamDist(Normal{1.0, 3.0}), 0.0), 1.0);
}

TEST(Es, DomainErrors) {
  EXPECT_THROW(es(U({"0", "1"}), Rational{1}), InputError);
  EXPECT_THROW(es(U({"0", "1"}), Rational{-1, 2}), InputError);
  EXPECT_THROW(es(ParamDist(Normal{0, 1}), 1.0), InputError);
}

TEST(Es, NormalClosedFormAgainstQuadrature) {
  const double frozen = 2.3378027922014144;
  ParamDist n(Normal{0, 1});
  EXPECT_NEAR(es_by_quadrature(n, 0.975), frozen, 1e-7);
  EXPECT_NEAR(es(n, 0.975), frozen, 1e-9);
  EXPECT_NEAR(es(ParamDist(Normal{1, 2}), 0.975), 1 + 2 * frozen, 1e-8);
}

TEST(Es, OtherClosedFormsAgainstQuadrature) {
  for (double p : {0.1, 0.5, 0.9, 0.99}) {
    for (const ParamDist& d : {ParamDist(Exponential{2.0}), ParamDist(LogNormal{0.0, 0.5}),
                               ParamDist(Normal{-1.0, 0.3}), ParamDist(LogNormal{0.2, 1.0})}) {
      EXPECT_NEAR(es(d, p), es_by_quadrature(d, p), 1e-7) << "p=" << p;
    }
  }
  // Frozen from the quadrature oracle above.
  EXPECT_NEAR(es(ParamDist(Exponential{2.0}), 0.9), 1.6512925464970229, 1e-12);
  EXPECT_NEAR(es(ParamDist(LogNormal{0.0, 0.5}), 0.9), 2.4616412793186075, 1e-9);
}

TEST(Es, FiniteParametricMatchDiscrete) {
  for (const char* p : {"0", "1/10", "3/10", "7/10", "9/10"}) {
    EXPECT_NEAR(es(ParamDist(Bernoulli{0.3}), to_double(R(p))), to_double(es(D({{"0", "7/10"}, {"1", "3/10"}}), R(p))), 1e-15);
    EXPECT_DOUBLE_EQ(es(ParamDist(PointMass{2.0}), to_double(R(p))), 2.0);
  }
}

TEST(Phi, Envelopes) {
  PhiEnvelope line(DiscreteDist::point(R("3")));
  ASSERT_EQ(line.breakpoints().size(), 2u);
  EXPECT_EQ(line.breakpoints()[0].value, 3);
  EXPECT_EQ(line.breakpoints()[1].value, 0);

  PhiEnvelope u(U({"0", "1"}));
  ASSERT_EQ(u.breakpoints().size(), 3u);
  EXPECT_EQ(u.breakpoints()[0].p, 0);
  EXPECT_EQ(u.breakpoints()[0].value, R("1/2"));
  EXPECT_EQ(u.breakpoints()[1].p, R("1/2"));
  EXPECT_EQ(u.breakpoints()[1].value, R("1/2"));
  EXPECT_EQ(u.breakpoints()[2].p, 1);
  EXPECT_EQ(u.breakpoints()[2].value, 0);
  EXPECT_EQ(u.slope(0), 0);
  EXPECT_EQ(u.slope(1), -1);
  EXPECT_DOUBLE_EQ(phi(ParamDist(Normal{0, 1}), 1.0), 0.0);
}

TEST(Phi, DifferenceIsQuantileIntegral) {
  Gen g(suite_seed() + 11);
  for (int i = 0; i < 200; ++i) {
    DiscreteDist d = g.discrete();
    Rational q{g.integer(0, 30), 30}, p{g.integer(0, 30), 30};
    if (q > p) std::swap(p, q);
    EXPECT_EQ(phi(d, p) - phi(d, q), -(brute_integrated_quantile(d, p) - brute_integrated_quantile(d, q)));
  }
}

TEST(StopLoss, Examples) {
  ParamDist e(Exponential{1.0});
  EXPECT_NEAR(stop_loss(e, 0.0), 1.0, 1e-15);
  // Oracle: int_1^inf (x - 1) e^{-x} dx by Simpson on [1, 60].
  const double oracle = simpson([](double x) { return (x - 1) * std::exp(-x); }, 1.0, 60.0, 20000);
  const double frozen = 0.36787944117144233;
  EXPECT_NEAR(oracle, frozen, 1e-10);
  EXPECT_NEAR(stop_loss(e, 1.0), frozen, 1e-15);
  EXPECT_EQ(stop_loss(U({"0", "2"}), R("1")), R("1/2"));
}

TEST(StopLoss, NormalAndLogNormalAgainstQuadrature) {
  const double n_oracle = simpson([](double x) { return (x - 0.5) * std_normal_pdf(x); }, 0.5, 14.0, 20000);
  EXPECT_NEAR(n_oracle, 0.19779655740130603, 1e-10);
  EXPECT_NEAR(stop_loss(ParamDist(Normal{0, 1}), 0.5), 0.19779655740130603, 1e-12);
  // Lognormal: integrate over the Gaussian generator.
  const double sigma = 0.4, d = 1.1;
  const double ln_oracle = simpson(
      [&](double z) { return std::max(std::exp(0.1 + sigma * z) - d, 0.0) * std_normal_pdf(z); },
      -12.0, 12.0, 200000);
  EXPECT_NEAR(stop_loss(ParamDist(LogNormal{0.1, sigma}), d), ln_oracle, 1e-8);
  EXPECT_NEAR(stop_loss(ParamDist(Bernoulli{0.25}), 0.5), 0.125, 1e-15);
}

TEST(RegularLevels, Examples) {
  DiscreteDist u = U({"0", "1"});
  EXPECT_TRUE(is_regular_level(u, R("1/2")));
  EXPECT_EQ(tail_mean_at_level(u, R("1/2")), 1);
  EXPECT_EQ(es(u, R("1/2")), 1);
  EXPECT_FALSE(is_regular_level(u, R("1/4")));
  DiscreteDist pt = DiscreteDist::point(R("7"));
  EXPECT_FALSE(is_regular_level(pt, R("1/3")));
  EXPECT_EQ(tail_mean_at_level(pt, R("1/3")), 7);
}

// --- properties -------------------------------------------------------------------

TEST(RiskProperties, EsMonotoneAndConsistentWithPhi) {
  Gen g(suite_seed() + 12);
  for (int i = 0; i < 300; ++i) {
    DiscreteDist d = g.discrete();
    std::vector<Rational> levels;
    for (int k = 0; k < 24; ++k) levels.push_back(Rational{k, 24});
    const PhiEnvelope env(d);
    for (const auto& b : env.breakpoints()) {
      if (b.p < 1) levels.push_back(b.p);
    }
    std::sort(levels.begin(), levels.end());
    Rational prev = es(d, Rational{0});
    for (const auto& p : levels) {
      Rational v = es(d, p);
      EXPECT_GE(v, prev);
      EXPECT_EQ(v, brute_es(d, p));
      EXPECT_EQ(v, phi(d, p) / (1 - p));
      prev = v;
    }
  }
}

TEST(RiskProperties, PhiConcaveWithQuantileSlopes) {
  Gen g(suite_seed() + 13);
  for (int i = 0; i < 300; ++i) {
    DiscreteDist d = g.discrete();
    PhiEnvelope env(d);
    const auto& bp = env.breakpoints();
    EXPECT_EQ(bp.front().value, mean(d));
    EXPECT_EQ(bp.back().value, 0);
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
      EXPECT_EQ(env.slope(k), (bp[k + 1].value - bp[k].value) / (bp[k + 1].p - bp[k].p));
      // Slope is -Q on the piece; test at its midpoint.
      EXPECT_EQ(env.slope(k), -quantile_right(d, (bp[k].p + bp[k + 1].p) / 2));
      if (k) EXPECT_LE(env.slope(k), env.slope(k - 1));
    }
  }
}

TEST(RiskProperties, StopLossConvexNonincreasingVanishing) {
  Gen g(suite_seed() + 14);
  for (int i = 0; i < 300; ++i) {
    DiscreteDist d = g.discrete();
    std::vector<Rational> ts;
    for (int k = -20; k <= 20; ++k) ts.push_back(Rational{k, 4});
    for (std::size_t k = 0; k + 2 < ts.size(); ++k) {
      Rational a = stop_loss(d, ts[k]), b = stop_loss(d, ts[k + 1]), c = stop_loss(d, ts[k + 2]);
      EXPECT_GE(a, b);
      EXPECT_LE(2 * b, a + c);  // equally spaced points
      EXPECT_EQ(a, brute_stop_loss(d, ts[k]));
    }
    EXPECT_EQ(stop_loss(d, d.max()), 0);
  }
}

TEST(RiskProperties, UniformSubsetBound) {
  // Small exhaustive version; the acceptance suite goes to n = 12.
  Gen g(suite_seed() + 15);
  for (int n = 1; n <= 8; ++n) {
    std::vector<Rational> pts;
    for (int k = 0; k < n; ++k) pts.push_back(g.half_lattice(-3, 3));
    DiscreteDist d = DiscreteDist::uniform(pts);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      Rational sum{0};
      int k = 0;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) {
          sum += pts[static_cast<std::size_t>(i)];
          ++k;
        }
      }
      if (k == n) continue;  // level 0: ES_0 = mean = the full average
      EXPECT_GE(es(d, Rational{n - k, n}), sum / k);
    }
  }
}

TEST(RiskProperties, TailMeanAtRegularLevels) {
  Gen g(suite_seed() + 16);
  for (int i = 0; i < 300; ++i) {
    DiscreteDist d = g.discrete();
    Rational cum{0};
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
      cum += d.atoms()[k].prob;
      ASSERT_TRUE(is_regular_level(d, cum));
      EXPECT_EQ(es(d, cum), tail_mean_at_level(d, cum));
    }
  }
}
