#include <gtest/gtest.h>

#include "gpdact/error.hpp"
#include "gpdact/thermal.hpp"

namespace gpdact {
namespace {

TEST(Encryption, CyclicExamples) {
  Cipher z2(named_groupoid("Z/2"));
  auto t = z2.encrypt(1, 1);
  EXPECT_EQ(t.ciphertext, 0u);
  EXPECT_EQ(t.heat, 1u);
  EXPECT_GE(t.stage_trace.size(), 4u);
  EXPECT_EQ(t.stage_trace.front().step, "input");

  Cipher z4(named_groupoid("Z/4"));
  t = z4.encrypt(1, 2);
  EXPECT_EQ(t.ciphertext, 3u);
  EXPECT_EQ(t.heat, 2u);
}

TEST(Encryption, IdentityKey) {
  Cipher c(named_groupoid("D4"));
  for (MorId g = 0; g < 8; ++g) {
    const auto t = c.encrypt(g, 0);
    EXPECT_EQ(t.ciphertext, g);
    EXPECT_EQ(t.heat, 0u);
  }
}

TEST(Encryption, ModularOracle) {
  // Z/n elements are residues, so g g' is (g + g') mod n.
  for (std::size_t n = 2; n <= 5; ++n) {
    Cipher c(named_groupoid("Z/" + std::to_string(n)));
    for (MorId g = 0; g < n; ++g)
      for (MorId k = 0; k < n; ++k) {
        const auto t = c.encrypt(g, k);
        EXPECT_EQ(t.ciphertext, (g + k) % n);
        EXPECT_EQ(t.heat, k);
        EXPECT_EQ(c.decrypt(t.ciphertext, k), g);
      }
  }
}

TEST(Encryption, S3RoundTrip) {
  Cipher c(named_groupoid("S3"));
  for (MorId g = 0; g < 6; ++g)
    for (MorId k = 0; k < 6; ++k) EXPECT_EQ(c.decrypt(c.encrypt(g, k).ciphertext, k), g);
}

TEST(Encryption, DistributionIsUniform) {
  Cipher c(named_groupoid("Z/3"));
  EXPECT_EQ(c.ciphertext_distribution(0), (std::vector<std::uint64_t>{1, 1, 1}));
  EXPECT_EQ(c.ciphertext_distribution(1), c.ciphertext_distribution(2));
}

TEST(Encryption, InvalidElements) {
  Cipher c(named_groupoid("Z/2"));
  EXPECT_THROW(c.encrypt(2, 0), Error);
  EXPECT_THROW(c.decrypt(5, 0), Error);
}

TEST(Decoherence, NoEnvironmentAlwaysRetrieves) {
  const auto cs = build_delta(named_groupoid("Q8"));
  for (ObjId i = 0; i < 8; ++i) EXPECT_TRUE(decoherence_trial(cs, i, {}).retrieval_success);
  EXPECT_TRUE(decoherence_trial(cs, 3, {multiplication_op(0)}).retrieval_success);
}

TEST(Decoherence, FixedMultiplicationFails) {
  const auto cs = build_delta(named_groupoid("Z/3"));
  EXPECT_FALSE(decoherence_trial(cs, 0, {multiplication_op(1)}).retrieval_success);
  // k then k^-1 undoes the perturbation
  EXPECT_TRUE(decoherence_trial(cs, 0, {multiplication_op(1), multiplication_op(2)}).retrieval_success);
}

TEST(Decoherence, ExactRate) {
  for (const char* name : {"Z/2", "Z/5", "S3", "Q8"}) {
    const auto cs = build_delta(named_groupoid(name));
    const auto t = decoherence_exact(cs);
    const std::size_t n = cs.group->morphism_count();
    EXPECT_EQ(t.trials, n * n) << name;
    EXPECT_EQ(t.successes, n) << name;
  }
}

TEST(Decoherence, SampledIsDeterministic) {
  const auto cs = build_delta(named_groupoid("Z/4"));
  const auto a = decoherence_sampled(cs, 400, 11);
  const auto b = decoherence_sampled(cs, 400, 11);
  EXPECT_EQ(a.successes, b.successes);
  EXPECT_GT(a.successes, 0u);
  EXPECT_LT(a.successes, 400u);
}

TEST(Landauer, HeatAlphabet) {
  Cipher z2(named_groupoid("Z/2"));
  auto r = landauer_report(z2, z2.encrypt(1, 1));
  EXPECT_EQ(r.heat_alphabet, 2u);
  EXPECT_DOUBLE_EQ(r.heat_bits, 1.0);
  EXPECT_TRUE(r.hiding);
  EXPECT_TRUE(all_pass(r.checks));
  ASSERT_EQ(r.factors.size(), 2u);
  EXPECT_EQ(r.factors[1].kind, "thermal");

  Cipher z4(named_groupoid("Z/4"));
  r = landauer_report(z4, z4.encrypt(3, 0));
  EXPECT_EQ(r.heat_alphabet, 4u);
  EXPECT_EQ(r.factors[1].value, z4.group()->morphism_label(0));
}

}  // namespace
}  // namespace gpdact
