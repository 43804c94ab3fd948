#include <gtest/gtest.h>

#include "stochorder/coupling.hpp"
#include "stochorder/dependence.hpp"
#include "stochorder/orders.hpp"
#include "stochorder/simplex.hpp"
#include "support/generators.hpp"
#include "support/helpers.hpp"

using namespace stochorder;
using namespace stochorder::testing;

TEST(Simplex, SmallSystems) {
  // x + y = 1, x - y = 1/2  ->  x = 3/4, y = 1/4
  lp::EqualitySystem s{2, {{1, 1}, {1, -1}}, {1, R("1/2")}};
  auto r = lp::find_feasible_point(s);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.x[0], R("3/4"));
  EXPECT_EQ(r.x[1], R("1/4"));
  // x + y = 1, x + y = 2: infeasible.
  lp::EqualitySystem bad{2, {{1, 1}, {1, 1}}, {1, 2}};
  EXPECT_FALSE(lp::find_feasible_point(bad).feasible);
  // x - y = -1 needs y >= 1.
  lp::EqualitySystem neg{2, {{1, -1}}, {-1}};
  auto rn = lp::find_feasible_point(neg);
  ASSERT_TRUE(rn.feasible);
  EXPECT_EQ(rn.x[0] - rn.x[1], -1);
  EXPECT_GE(rn.x[0], 0);
  // Redundant rows are fine.
  lp::EqualitySystem red{3, {{1, 1, 1}, {2, 2, 2}, {1, 0, 0}}, {1, 2, R("1/3")}};
  EXPECT_TRUE(lp::find_feasible_point(red).feasible);
}

TEST(Synth, SupermartingaleExamples) {
  SynthResult a = synth_supermartingale(U({"0", "1"}), U({"-1/2", "1/2"}));
  ASSERT_TRUE(a.feasible);
  EXPECT_TRUE(verify_coupling(*a.coupling, U({"0", "1"}), U({"-1/2", "1/2"}), CouplingMode::supermartingale));

  SynthResult b = synth_supermartingale(DiscreteDist::point(R("0")), U({"-1", "1"}));
  ASSERT_TRUE(b.feasible);
  EXPECT_EQ(b.coupling->pi[0][0], R("1/2"));
  EXPECT_EQ(b.coupling->pi[0][1], R("1/2"));

  SynthResult c = synth_supermartingale(U({"0", "1"}), DiscreteDist::point(R("1")));
  EXPECT_FALSE(c.feasible);
  ASSERT_TRUE(c.certificate.has_value());
  EXPECT_FALSE(c.certificate->holds);
  EXPECT_FALSE(c.coupling.has_value());
}

TEST(Synth, MartingaleExamples) {
  DiscreteDist x = U({"0", "2"}), y = U({"-1", "3"});
  SynthResult r = synth_martingale(x, y);
  ASSERT_TRUE(r.feasible);
  // Hand-solved: rows sum to 1/2, columns to 1/2, zero drift per row, which
  // forces pi(0,-1) = 3/8 and hence the rest.
  const auto& pi = r.coupling->pi;
  EXPECT_EQ(pi[0][0], R("3/8"));
  EXPECT_EQ(pi[0][1], R("1/8"));
  EXPECT_EQ(pi[1][0], R("1/8"));
  EXPECT_EQ(pi[1][1], R("3/8"));

  SynthResult id = synth_martingale(x, x);
  ASSERT_TRUE(id.feasible);
  EXPECT_EQ(id.coupling->pi[0][0], R("1/2"));
  EXPECT_EQ(id.coupling->pi[0][1], 0);

  SynthResult no = synth_martingale(U({"-1", "1"}), DiscreteDist::point(R("0")));
  EXPECT_FALSE(no.feasible);
  EXPECT_FALSE(no.certificate->holds);
}

TEST(Synth, VerifyRejectsPerturbation) {
  DiscreteDist x = U({"0", "2"}), y = U({"-1", "3"});
  Coupling c = *synth_martingale(x, y).coupling;
  c.pi[0][0] += R("1/1000");
  c.pi[1][1] -= R("1/1000");  // total mass unchanged, marginals broken
  EXPECT_FALSE(verify_coupling(c, x, y, CouplingMode::martingale));
}

TEST(Synth, HandBuiltBernoulliCoupling) {
  DiscreteDist w = U({"0", "1"});
  DiscreteDist y = D({{"-1/2", "1/4"}, {"1/2", "1/2"}, {"3/2", "1/4"}});
  Coupling c{w.atoms(), y.atoms(), {{R("1/4"), R("1/4"), 0}, {0, R("1/4"), R("1/4")}}};
  EXPECT_TRUE(verify_coupling(c, w, y, CouplingMode::supermartingale));
  EXPECT_TRUE(verify_coupling(c, w, y, CouplingMode::martingale));
}

TEST(Synth, ResourceGuard) {
  std::vector<Rational> big;
  for (int k = 0; k < 101; ++k) big.push_back(Rational{k});
  DiscreteDist x = DiscreteDist::uniform(big);
  EXPECT_THROW(synth_supermartingale(x, x), ResourceLimit);
}

// --- properties -------------------------------------------------------------------

TEST(CouplingProperties, StrassenEquivalenceSmall) {
  Gen g(suite_seed() + 40);
  for (int i = 0; i < 150; ++i) {
    DiscreteDist x = g.discrete(5);
    DiscreteDist y = i % 3 == 0 ? g.shift(x, -g.half_lattice(0, 1)) : i % 3 == 1 ? g.spread(x) : g.discrete(5);
    SynthResult s = synth_supermartingale(x, y);
    SynthResult m = synth_martingale(x, y);
    EXPECT_EQ(s.feasible, check_ssd(x, y).holds);
    EXPECT_EQ(m.feasible, check_cx(x, y).holds);
    for (const auto* r : {&s, &m}) {
      if (!r->feasible) continue;
      const CouplingMode mode = r == &s ? CouplingMode::supermartingale : CouplingMode::martingale;
      EXPECT_TRUE(verify_coupling(*r->coupling, x, y, mode));
      JointDist j = r->coupling->to_joint();
      EXPECT_TRUE(cond_classic(j).holds);
      EXPECT_TRUE(cond_new(j).holds);
      EXPECT_EQ(joint_marginal_w(j), x);
      EXPECT_EQ(joint_sum(j), y);
    }
    // Feasibility survives a common location shift.
    Rational b = g.half_lattice(-3, 3);
    EXPECT_EQ(synth_supermartingale(g.shift(x, b), g.shift(y, b)).feasible, s.feasible);
  }
}

TEST(CouplingProperties, Deterministic) {
  Gen g(suite_seed() + 41);
  for (int i = 0; i < 20; ++i) {
    DiscreteDist x = g.discrete(5);
    DiscreteDist y = g.spread(x);
    auto a = synth_martingale(x, y), b = synth_martingale(x, y);
    ASSERT_TRUE(a.feasible);
    EXPECT_EQ(a.coupling->pi, b.coupling->pi);
  }
}
