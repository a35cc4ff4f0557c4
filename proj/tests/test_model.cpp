#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "sixv/model.hpp"
#include "support.hpp"

using namespace sixv;

TEST(Rational, ParsesFractionsAndIntegers)
{
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational(" 7/21 "), Rational(1, 3));
  EXPECT_EQ(to_string(parse_rational("6/8")), "3/4");
  EXPECT_EQ(to_string(Rational(2)), "2/1");
}

TEST(Rational, RejectsGarbage)
{
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("0.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/2/3"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(Rational, Pow)
{
  EXPECT_EQ(pow(Rational(1, 2), 0), Rational(1));
  EXPECT_EQ(pow(Rational(2, 3), 5), Rational(32, 243));
}

TEST(Params, HomogeneousDerivesB1)
{
  const Params p = Params::homogeneous(2, Rational(1, 4));
  EXPECT_EQ(p.b1_at(17), Rational(1, 2));
  EXPECT_EQ(p.b2_at(-4), Rational(1, 4));
  EXPECT_TRUE(p.is_homogeneous());
  EXPECT_EQ(p, Params::from_b1_b2(Rational(1, 2), Rational(1, 4)));
}

TEST(Params, RejectsOutOfRange)
{
  EXPECT_THROW(Params::homogeneous(2, Rational(1, 2)), std::invalid_argument);
  EXPECT_THROW(Params::homogeneous(2, Rational(0)), std::invalid_argument);
  EXPECT_THROW(Params::homogeneous(Rational(1, 2), Rational(1)), std::invalid_argument);
  EXPECT_THROW(Params::homogeneous(Rational(-1), Rational(1, 4)), std::invalid_argument);
  EXPECT_THROW(Params::from_b1_b2(Rational(1), Rational(1, 4)), std::invalid_argument);
}

TEST(Params, SiteMapsMustShareQ)
{
  EXPECT_NO_THROW(Params::from_site_maps({{3, Rational(1, 4)}}, {{3, Rational(1, 2)}},
                                         Rational(1, 3), Rational(2, 3)));
  EXPECT_THROW(Params::from_site_maps({{3, Rational(1, 5)}}, {{3, Rational(1, 2)}},
                                      Rational(1, 3), Rational(2, 3)),
               std::invalid_argument);
}

TEST(Params, InhomogeneousLookupFallsBack)
{
  const Params p = oracle::inhomogeneous_fixture();
  EXPECT_FALSE(p.is_homogeneous());
  EXPECT_EQ(p.b2_at(1), Rational(1, 3));
  EXPECT_EQ(p.b1_at(1), Rational(1, 6));
  EXPECT_EQ(p.b2_at(100), Rational(1, 4));
  EXPECT_EQ(p.b2_at(-3), Rational(1, 4));
  EXPECT_DOUBLE_EQ(p.b2_approx(1), 1.0 / 3.0);
}

TEST(Params, MirrorMovesSites)
{
  const Params p = oracle::inhomogeneous_fixture();
  const Params m = p.mirrored();
  for (Pos s = -2; s <= 7; ++s) EXPECT_EQ(m.b2_at(-s), p.b2_at(s));
  EXPECT_EQ(m.mirrored(), p);
}

TEST(Config, LocationMustIncrease)
{
  EXPECT_NO_THROW(LocationConfig({-3, 0, 5}));
  EXPECT_THROW(LocationConfig({0, 0}), std::invalid_argument);
  EXPECT_THROW(LocationConfig({2, 1}), std::invalid_argument);
  EXPECT_NO_THROW(ReversedConfig({5, 0, -3}));
  EXPECT_THROW(ReversedConfig({0, 1}), std::invalid_argument);
}

TEST(Config, OccupationExample)
{
  const OccupationConfig g = to_occupation(LocationConfig({1, 7}), Window{0, 5});
  EXPECT_EQ(g.bits(), (std::vector<std::uint8_t>{0, 1, 0, 0, 0, 0}));
  EXPECT_EQ(g.escaped_right(), 1u);
  EXPECT_EQ(g.particle_count(), 2u);
  EXPECT_EQ(g.at(-10), 0);
  EXPECT_EQ(g.at(1), 1);
  EXPECT_THROW(g.at(6), std::out_of_range);
  EXPECT_THROW(to_location(g), std::invalid_argument);
  EXPECT_THROW(to_occupation(LocationConfig({-1, 2}), Window{0, 5}), std::invalid_argument);
}

TEST(Config, EmptyRoundTrip)
{
  const OccupationConfig g = to_occupation(LocationConfig{}, Window{0, 3});
  EXPECT_EQ(g.particle_count(), 0u);
  EXPECT_TRUE(to_location(g).empty());
}

TEST(Config, RandomRoundTrip)
{
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng() % 7;
    const Pos lo = static_cast<Pos>(rng() % 5) - 2;
    const Window w{lo, lo + 9};
    const LocationConfig x(oracle::random_subset(rng, w.lo, w.hi, n));
    const OccupationConfig g = to_occupation(x, w);
    EXPECT_EQ(to_location(g), x);
    EXPECT_EQ(g.particle_count(), n);
  }
}

TEST(Config, HeightIsMonotoneWithUnitSteps)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Window w{0, 11};
    const OccupationConfig g =
        to_occupation(LocationConfig(oracle::random_subset(rng, 0, 11, rng() % 8)), w);
    EXPECT_EQ(height(g, -1), 0u);
    for (Pos x = w.lo; x < w.hi; ++x) {
      EXPECT_LE(height(g, x), height(g, x + 1));
      EXPECT_LE(height(g, x + 1), height(g, x) + 1);
    }
    EXPECT_THROW(height(g, w.hi + 1), std::out_of_range);
  }
}

TEST(Config, HeightCountsAtOrLeft)
{
  const OccupationConfig g = to_occupation(LocationConfig({0, 2, 3}), Window{0, 4});
  EXPECT_EQ(height(g, 0), 1u);
  EXPECT_EQ(height(g, 1), 1u);
  EXPECT_EQ(height(g, 2), 2u);
  EXPECT_EQ(height(g, 4), 3u);
}

TEST(VertexWeights, TableAndSiteLookup)
{
  const Params p = oracle::default_params();
  EXPECT_EQ(vertex_weight(VertexType::I, p, 0), Rational(1));
  EXPECT_EQ(vertex_weight(VertexType::II, p, 0), Rational(1));
  EXPECT_EQ(vertex_weight(VertexType::III, p, 0), Rational(1, 4));
  EXPECT_EQ(vertex_weight(VertexType::IV, p, 0), Rational(3, 4));
  EXPECT_EQ(vertex_weight(VertexType::V, p, 0), Rational(1, 2));
  EXPECT_EQ(vertex_weight(VertexType::VI, p, 0), Rational(1, 2));

  const Params inh = oracle::inhomogeneous_fixture();
  EXPECT_EQ(vertex_weight(VertexType::III, inh, 1), Rational(1, 3));
  EXPECT_EQ(vertex_weight(VertexType::VI, inh, 1), Rational(5, 6));
  EXPECT_EQ(vertex_weight(VertexType::III, inh, 1) + vertex_weight(VertexType::IV, inh, 1), 1);
}
