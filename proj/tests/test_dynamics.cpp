#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "sixv/dynamics.hpp"
#include "support.hpp"

using namespace sixv;
using oracle::default_params;
using oracle::to_law;

namespace {

Law law_of(std::initializer_list<std::tuple<std::vector<Pos>, std::size_t, Rational>> entries)
{
  Law law;
  for (const auto& [pos, lumped, p] : entries) law[LumpedOutcome{pos, lumped}] = p;
  return law;
}

}  // namespace

TEST(Kernel, SingleParticle)
{
  const Params p = default_params();
  EXPECT_EQ(one_particle_kernel(0, 0, p), Rational(1, 2));
  EXPECT_EQ(one_particle_kernel(0, 1, p), Rational(3, 8));
  EXPECT_EQ(one_particle_kernel(0, 2, p), Rational(3, 32));
  EXPECT_EQ(one_particle_kernel(3, 2, p), Rational(0));
}

TEST(Kernel, TailIsGeometric)
{
  const Params p = default_params();
  for (Pos z = 1; z < 12; ++z) {
    Rational tail = 1;
    for (Pos w = 0; w <= z; ++w) tail -= one_particle_kernel(0, w, p);
    // 1 - sum_{w <= z} p(0, w) = (1 - b1) b2^z
    EXPECT_EQ(tail, Rational(1, 2) * pow(Rational(1, 4), static_cast<std::uint64_t>(z)));
  }
}

TEST(ForwardStep, SingleParticleLumpedAtTwo)
{
  const auto dist = forward_step_distribution(LocationConfig({0}), default_params(), 2);
  EXPECT_EQ(dist.direction, Direction::forward);
  EXPECT_EQ(dist.total(), 1);
  EXPECT_EQ(to_law(dist), law_of({{{0}, 0, Rational(1, 2)},
                                  {{1}, 0, Rational(3, 8)},
                                  {{2}, 0, Rational(3, 32)},
                                  {{}, 1, Rational(1, 32)}}));
}

TEST(ForwardStep, MatchesOracleTwoParticles)
{
  const auto dist = forward_step_distribution(LocationConfig({0, 1}), default_params(), 1);
  EXPECT_EQ(to_law(dist), law_of({{{0}, 1, Rational(1, 4)},
                                  {{0, 1}, 0, Rational(1, 4)},
                                  {{1}, 1, Rational(1, 2)}}));
}

TEST(ForwardStep, MatchesOracleThreeParticles)
{
  const auto dist = forward_step_distribution(LocationConfig({0, 2, 3}), default_params(), 4);
  EXPECT_EQ(to_law(dist), law_of({{{0, 2}, 1, Rational(1, 32)},
                                  {{0, 2, 3}, 0, Rational(1, 8)},
                                  {{0, 2, 4}, 0, Rational(3, 32)},
                                  {{0, 3}, 1, Rational(1, 16)},
                                  {{0, 3, 4}, 0, Rational(3, 16)},
                                  {{1, 2}, 1, Rational(3, 128)},
                                  {{1, 2, 3}, 0, Rational(3, 32)},
                                  {{1, 2, 4}, 0, Rational(9, 128)},
                                  {{1, 3}, 1, Rational(3, 64)},
                                  {{1, 3, 4}, 0, Rational(9, 64)},
                                  {{2, 3}, 1, Rational(1, 32)},
                                  {{2, 3, 4}, 0, Rational(3, 32)}}));
}

TEST(ReversedStep, MatchesOracle)
{
  const auto dist = reversed_step_distribution(ReversedConfig({3, 1}), default_params(), 0);
  EXPECT_EQ(dist.direction, Direction::reversed);
  EXPECT_EQ(to_law(dist), law_of({{{3}, 1, Rational(1, 16)},
                                  {{3, 1}, 0, Rational(1, 4)},
                                  {{3, 0}, 0, Rational(3, 16)},
                                  {{2}, 1, Rational(3, 64)},
                                  {{2, 1}, 0, Rational(3, 16)},
                                  {{2, 0}, 0, Rational(9, 64)},
                                  {{1}, 1, Rational(1, 32)},
                                  {{1, 0}, 0, Rational(3, 32)}}));
}

TEST(ForwardStep, EmptyConfig)
{
  const auto dist = forward_step_distribution(LocationConfig{}, default_params(), 3);
  ASSERT_EQ(dist.support.size(), 1u);
  EXPECT_EQ(dist.support[0].prob, 1);
  EXPECT_TRUE(dist.support[0].state.positions.empty());
}

TEST(ForwardStep, ParticlesAlreadyBeyondBoundary)
{
  const auto dist = forward_step_distribution(LocationConfig({0, 5, 6}), default_params(), 2);
  EXPECT_EQ(dist.total(), 1);
  for (const auto& o : dist.support) EXPECT_GE(o.state.lumped, 2u);
}

TEST(Steps, AgreeWithTransferOracle)
{
  std::mt19937_64 rng(2024);
  const std::vector<Params> all{default_params(), Params::from_b1_b2(Rational(1, 4), Rational(1, 2)),
                                Params::from_b1_b2(Rational(1, 3), Rational(1, 6)),
                                oracle::inhomogeneous_fixture()};
  for (const auto& p : all) {
    for (int trial = 0; trial < 60; ++trial) {
      const auto xs = oracle::random_subset(rng, -1, 6, 1 + rng() % 4);
      const Pos R = xs.back() - 1 + static_cast<Pos>(rng() % 4);
      EXPECT_EQ(to_law(forward_step_distribution(LocationConfig(xs), p, R)),
                oracle::transfer_forward(xs, p, R));
      const auto ys = oracle::descending(xs);
      const Pos L = ys.back() + 1 - static_cast<Pos>(rng() % 4);
      EXPECT_EQ(to_law(reversed_step_distribution(ReversedConfig(ys), p, L)),
                oracle::transfer_reversed(ys, p, L));
    }
  }
}

TEST(Steps, ReversedIsForwardMirror)
{
  std::mt19937_64 rng(7);
  const Params p = oracle::inhomogeneous_fixture();
  for (int trial = 0; trial < 100; ++trial) {
    const auto ys = oracle::descending(oracle::random_subset(rng, -2, 7, 1 + rng() % 4));
    const Pos L = ys.back() - static_cast<Pos>(rng() % 3);
    std::vector<Pos> neg;
    for (Pos y : ys) neg.push_back(-y);
    Law mirrored;
    for (const auto& [s, w] : to_law(forward_step_distribution(LocationConfig(neg), p.mirrored(), -L))) {
      LumpedOutcome back{{}, s.lumped};
      for (Pos v : s.positions) back.positions.push_back(-v);
      mirrored[back] += w;
    }
    EXPECT_EQ(to_law(reversed_step_distribution(ReversedConfig(ys), p, L)), mirrored);
  }
}

TEST(Steps, LumpingIsAMarginal)
{
  std::mt19937_64 rng(99);
  const Params p = oracle::inhomogeneous_fixture();
  for (int trial = 0; trial < 50; ++trial) {
    const auto xs = oracle::random_subset(rng, 0, 5, 1 + rng() % 3);
    const Pos R = xs.back();
    const Pos wider = R + 1 + static_cast<Pos>(rng() % 3);
    Law folded;
    for (const auto& [s, w] : to_law(forward_step_distribution(LocationConfig(xs), p, wider))) {
      LumpedOutcome f{{}, s.lumped};
      for (Pos v : s.positions) (v <= R ? f.positions.push_back(v) : void(++f.lumped));
      folded[f] += w;
    }
    EXPECT_EQ(folded, to_law(forward_step_distribution(LocationConfig(xs), p, R)));
  }
}

TEST(Steps, HomogeneousSiteMapAgrees)
{
  const Params flat = default_params();
  std::map<Pos, Rational> same;
  for (Pos s = -3; s <= 8; ++s) same[s] = Rational(1, 4);
  const Params mapped = Params::inhomogeneous(2, same, Rational(1, 4));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto xs = oracle::random_subset(rng, 0, 6, 1 + rng() % 4);
    EXPECT_EQ(to_law(forward_step_distribution(LocationConfig(xs), flat, 7)),
              to_law(forward_step_distribution(LocationConfig(xs), mapped, 7)));
  }
}

TEST(Sampler, OrderPreserved)
{
  const Params p = oracle::inhomogeneous_fixture();
  Rng rng(1, 0);
  std::vector<Pos> xs{0, 1, 2, 5};
  std::vector<Pos> ys{5, 2, 1, 0};
  for (int s = 0; s < 500; ++s) {
    xs = sample_forward_step(xs, p, rng);
    ys = sample_reversed_step(ys, p, rng);
    ASSERT_NO_THROW(LocationConfig{xs});
    ASSERT_NO_THROW(ReversedConfig{ys});
  }
}

TEST(Sampler, SameSeedSameTrajectory)
{
  const Params p = default_params();
  Rng a(42, 3), b(42, 3), c(42, 4);
  std::vector<Pos> xa{0, 1}, xb{0, 1}, xc{0, 1};
  bool differs = false;
  for (int s = 0; s < 50; ++s) {
    xa = sample_forward_step(xa, p, a);
    xb = sample_forward_step(xb, p, b);
    xc = sample_forward_step(xc, p, c);
    EXPECT_EQ(xa, xb);
    differs = differs || xa != xc;
  }
  EXPECT_TRUE(differs);
}

TEST(Sampler, FrequenciesMatchExactLaw)
{
  const Params p = Params::from_b1_b2(Rational(1, 3), Rational(1, 6));
  const std::vector<Pos> xs{0, 1, 3};
  const Pos R = 4;
  const Law exact = to_law(forward_step_distribution(LocationConfig(xs), p, R));
  std::map<LumpedOutcome, long> counts;
  const long n = 200000;
  Rng rng(8, 0);
  for (long i = 0; i < n; ++i) {
    LumpedOutcome s{{}, 0};
    for (Pos v : sample_forward_step(xs, p, rng)) (v <= R ? s.positions.push_back(v) : void(++s.lumped));
    ++counts[s];
  }
  for (const auto& [state, prob] : exact) {
    const double pr = prob.get_d();
    const double sd = std::sqrt(pr * (1 - pr) / n);
    EXPECT_NEAR(static_cast<double>(counts[state]) / n, pr, 4 * sd + 1e-12);
  }
  for (const auto& [state, c] : counts) EXPECT_TRUE(exact.count(state)) << c;
}

TEST(Sampler, ReversedChiSquareAgainstExact)
{
  const Params p = oracle::inhomogeneous_fixture();
  const std::vector<Pos> ys{5, 3, 2};
  const Pos L = 0;
  const Law exact = to_law(reversed_step_distribution(ReversedConfig(ys), p, L));
  std::map<LumpedOutcome, long> counts;
  const long n = 100000;
  Rng rng(9, 1);
  for (long i = 0; i < n; ++i) {
    LumpedOutcome s{{}, 0};
    for (Pos v : sample_reversed_step(ys, p, rng)) (v >= L ? s.positions.push_back(v) : void(++s.lumped));
    ++counts[s];
  }
  double chi2 = 0;
  for (const auto& [state, prob] : exact) {
    const double e = prob.get_d() * n;
    const double d = counts[state] - e;
    chi2 += d * d / e;
  }
  const double dof = static_cast<double>(exact.size() - 1);
  EXPECT_LT(chi2, dof + 5 * std::sqrt(2 * dof));
}
