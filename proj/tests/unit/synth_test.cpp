#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "vocbench/calibration.hpp"
#include "vocbench/errors.hpp"
#include "vocbench/synth.hpp"
#include "vocbench/threshold.hpp"
#include "vocbench/voc.hpp"

namespace vocbench {
namespace {

using Atom = ConfidenceDistribution::Atom;

void expect_atoms_near(const ConfidenceDistribution& d, const std::vector<Atom>& expected) {
  ASSERT_EQ(d.atoms().size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_NEAR(d.atoms()[i].confidence, expected[i].confidence, 1e-12) << i;
    EXPECT_NEAR(d.atoms()[i].mass, expected[i].mass, 1e-12) << i;
  }
}

TEST(Distribution, Validation) {
  EXPECT_THROW(ConfidenceDistribution({}), DataError);
  EXPECT_THROW(ConfidenceDistribution({{0.5, 0.5}}), DataError);
  EXPECT_THROW(ConfidenceDistribution({{0.5, 0.5}, {0.5, 0.5}}), DataError);
  EXPECT_THROW(ConfidenceDistribution({{1.5, 1.0}}), DataError);
  EXPECT_THROW(ConfidenceDistribution({{0.5, 1.5}, {0.7, -0.5}}), DataError);
  const ConfidenceDistribution d({{0.8, 0.5}, {0.4, 0.5}});
  EXPECT_EQ(d.atoms().front().confidence, 0.4);
  EXPECT_NEAR(d.mean_confidence(), 0.6, 1e-15);
}

TEST(Realize, PopulationSingleAtom) {
  const auto d = realize(ConfidenceDistribution({{0.7, 1.0}}), RealizeMode::population);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.total_weight(), 1.0, 1e-15);
  EXPECT_NEAR(accuracy(d), 0.7, 1e-15);
  const auto r = d.input_order();
  EXPECT_TRUE(r[0].correct());
  EXPECT_NEAR(r[0].weight, 0.7, 1e-15);
  EXPECT_FALSE(r[1].correct());
  EXPECT_NEAR(r[1].weight, 0.3, 1e-15);
}

TEST(Realize, PopulationDropsZeroWeights) {
  const auto d = realize(ConfidenceDistribution({{1.0, 0.5}, {0.0, 0.5}}), RealizeMode::population);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_EQ(accuracy(d), 0.5);
}

TEST(Realize, PopulationIsCalibrated) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto dist = testing::random_distribution(rng);
    const auto d = realize(dist, RealizeMode::population);
    EXPECT_NEAR(accuracy(d), dist.mean_confidence(), 1e-12);
    EXPECT_NEAR(d.total_weight(), 1.0, 1e-12);
    EXPECT_NEAR(ece(d), 0.0, 1e-12);
  }
}

TEST(Realize, SampleMatchesAccuracyAndIsDeterministic) {
  const ConfidenceDistribution dist({{0.6, 1.0}});
  const auto a = realize(dist, RealizeMode::sample, 100000, 42);
  EXPECT_EQ(a.size(), 100000u);
  EXPECT_NEAR(accuracy(a), 0.6, 0.01);
  const auto b = realize(dist, RealizeMode::sample, 100000, 42);
  EXPECT_EQ(a.input_order(), b.input_order());
  const auto c = realize(dist, RealizeMode::sample, 100000, 43);
  EXPECT_NE(a.input_order(), c.input_order());
}

TEST(Realize, SampleNeedsPositiveSize) {
  EXPECT_THROW((void)realize(preset("m1"), RealizeMode::sample, 0, 1), DataError);
}

TEST(Polarize, Examples) {
  expect_atoms_near(polarize(preset("m1"), 0.6, 1.0, 0.8, 0.4), {{0.4, 0.5}, {0.8, 0.5}});
  expect_atoms_near(polarize(preset("m1"), 0.6, 0.5, 0.8, 0.4), {{0.4, 0.25}, {0.6, 0.5}, {0.8, 0.25}});
  expect_atoms_near(polarize(preset("m1"), 0.6, 1.0, 1.0, 0.5), {{0.5, 0.8}, {1.0, 0.2}});
}

TEST(Polarize, MergesIntoExistingAtoms) {
  const ConfidenceDistribution d({{0.4, 0.5}, {0.6, 0.5}});
  expect_atoms_near(polarize(d, 0.6, 1.0, 0.8, 0.4), {{0.4, 0.75}, {0.8, 0.25}});
}

TEST(Polarize, Errors) {
  const auto m1 = preset("m1");
  EXPECT_THROW((void)polarize(m1, 0.5, 1.0, 0.8, 0.4), DataError);  // no atom at 0.5
  EXPECT_THROW((void)polarize(m1, 0.6, 1.5, 0.8, 0.4), DataError);
  EXPECT_THROW((void)polarize(m1, 0.6, 0.0, 0.8, 0.4), DataError);
  EXPECT_THROW((void)polarize(m1, 0.6, 1.0, 0.6, 0.4), DataError);
  EXPECT_THROW((void)polarize(m1, 0.6, 1.0, 0.8, 0.7), DataError);
  EXPECT_THROW((void)polarize(m1, 0.6, 1.0, 1.2, 0.4), DataError);
}

TEST(PushUp, Examples) {
  expect_atoms_near(push_up(preset("m1"), 0.6, 0.5, 0.8), {{0.6, 0.5}, {0.8, 0.5}});
  expect_atoms_near(push_up(preset("m1"), 0.6, 1.0, 0.9), {{0.9, 1.0}});
  EXPECT_NEAR(push_up(preset("m1"), 0.6, 0.5, 0.8).mean_confidence(), 0.7, 1e-15);
}

TEST(PushUp, Errors) {
  const auto m1 = preset("m1");
  EXPECT_THROW((void)push_up(m1, 0.6, 0.5, 0.5), DataError);
  EXPECT_THROW((void)push_up(m1, 0.6, 1.5, 0.8), DataError);
  EXPECT_THROW((void)push_up(m1, 0.6, 0.0, 0.8), DataError);
  EXPECT_THROW((void)push_up(m1, 0.3, 0.5, 0.8), DataError);
}

TEST(Presets, AtomsAndDiscrimination) {
  expect_atoms_near(preset("m1"), {{0.6, 1.0}});
  expect_atoms_near(preset("m2"), {{0.4, 0.5}, {0.8, 0.5}});
  expect_atoms_near(preset("m3"), {{0.2, 0.5}, {1.0, 0.5}});
  const std::vector<double> expected{0.01, 0.05, 0.17};
  const std::vector<std::string> names{"m1", "m2", "m3"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto d = realize(preset(names[i]), RealizeMode::population);
    EXPECT_NEAR(accuracy(d), 0.6, 1e-12) << names[i];
    EXPECT_NEAR(discrimination(d).discrimination, expected[i], 1e-12) << names[i];
  }
  EXPECT_THROW((void)preset("m4"), DataError);
}

TEST(Presets, PolarizedModelsDominate) {
  const auto c1 = omega_aware_voc(realize(preset("m1"), RealizeMode::population));
  const auto c2 = omega_aware_voc(realize(preset("m2"), RealizeMode::population));
  const auto c3 = omega_aware_voc(realize(preset("m3"), RealizeMode::population));
  EXPECT_TRUE(dominates(c2, c1).holds);
  EXPECT_TRUE(dominates(c3, c2).holds);
  EXPECT_FALSE(dominates(c1, c2).holds);
}

// ---- properties --------------------------------------------------------------

TEST(SynthProperties, PolarizeConservesMassAndMean) {
  std::mt19937_64 rng(6);
  int applied = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto dist = testing::random_distribution(rng);
    const auto& atoms = dist.atoms();
    const auto& a = atoms[testing::uniform_index(rng, atoms.size())];
    const double lo = a.confidence * testing::uniform01(rng);
    const double hi = a.confidence + (1.0 - a.confidence) * testing::uniform01(rng);
    if (!(lo < a.confidence && a.confidence < hi)) continue;
    const double f = 0.05 + 0.95 * testing::uniform01(rng);
    const auto p = polarize(dist, a.confidence, f, hi, lo);
    ++applied;
    double mass = 0;
    for (const auto& x : p.atoms()) mass += x.mass;
    EXPECT_NEAR(mass, 1.0, 1e-12);
    EXPECT_NEAR(p.mean_confidence(), dist.mean_confidence(), 1e-12);
    EXPECT_GE(discrimination(realize(p, RealizeMode::population)).discrimination,
              discrimination(realize(dist, RealizeMode::population)).discrimination - 1e-12);
  }
  EXPECT_GT(applied, 200);
}

TEST(SynthProperties, PolarizedPopulationDominatesOnTheLine) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto dist = testing::random_distribution(rng);
    const auto& a = dist.atoms()[testing::uniform_index(rng, dist.atoms().size())];
    const double lo = a.confidence * testing::uniform01(rng);
    const double hi = a.confidence + (1.0 - a.confidence) * testing::uniform01(rng);
    if (!(lo < a.confidence && a.confidence < hi)) continue;
    const auto p = polarize(dist, a.confidence, 0.05 + 0.95 * testing::uniform01(rng), hi, lo);
    const auto before = omega_aware_voc(realize(dist, RealizeMode::population));
    const auto after = omega_aware_voc(realize(p, RealizeMode::population));
    EXPECT_TRUE(dominates(after, before, {}, 1e-12).holds) << trial;
  }
}

TEST(SynthProperties, PushUpRaisesMeanAndMassConserved) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto dist = testing::random_distribution(rng);
    const auto& a = dist.atoms()[testing::uniform_index(rng, dist.atoms().size())];
    if (a.confidence >= 1.0) continue;
    const double target = a.confidence + (1.0 - a.confidence) * (0.01 + 0.99 * testing::uniform01(rng));
    if (!(target > a.confidence) || target > 1.0) continue;
    const double delta = a.mass * (0.01 + 0.99 * testing::uniform01(rng));
    const auto p = push_up(dist, a.confidence, delta, target);
    double mass = 0;
    for (const auto& x : p.atoms()) mass += x.mass;
    EXPECT_NEAR(mass, 1.0, 1e-12);
    EXPECT_NEAR(p.mean_confidence(), dist.mean_confidence() + delta * (target - a.confidence), 1e-12);
  }
}

}  // namespace
}  // namespace vocbench
