#include <gtest/gtest.h>

#include <random>

#include "gpdact/error.hpp"
#include "gpdact/quantize.hpp"

namespace gpdact {
namespace {

TEST(QSpan, IdentityAndDagger) {
  auto h = hom_profunctor(named_groupoid("S3"));
  const NatMatrix id = q_span(identity_span(h));
  EXPECT_EQ(id.entries, IntMatrix::Identity(6, 6));
  std::mt19937_64 rng(3);
  auto c = canonical_cells(named_groupoid("Z/3"));
  const Span2 s = random_natural_span(c.loop, c.loop, rng, 3, 0.5);
  EXPECT_EQ(q_span(dagger(s)).entries, q_span(s).entries.transpose());
}

TEST(QSpan, MuOfZ2) {
  auto c = canonical_cells(named_groupoid("Z/2"));
  const NatMatrix m = q_span(c.mu);
  ASSERT_EQ(m.entries.rows(), 4);
  ASSERT_EQ(m.entries.cols(), 2);
  // row (r, l) has a single 1 in column r + l mod 2
  for (Eigen::Index i = 0; i < 4; ++i) {
    const auto [r, l] = c.loop->factors()->rep(m.rows[i]);
    for (Eigen::Index j = 0; j < 2; ++j)
      EXPECT_EQ(m.entries(i, j), static_cast<std::int64_t>(m.cols[j] == (r + l) % 2));
  }
}

TEST(QSpan, VerticalOnRandomPairs) {
  std::mt19937_64 rng(17);
  for (const char* name : {"Z/2", "Z/2+Z/2"}) {
    auto h = hom_profunctor(skeletalize(named_groupoid(name)).groupoid);
    for (int i = 0; i < 100; ++i) {
      const Span2 a = random_natural_span(h, h, rng, 3, 0.6);
      const Span2 b = random_natural_span(h, h, rng, 3, 0.6);
      const auto r = check_q_vertical(a, b);
      EXPECT_TRUE(r.pass) << r.witness;
    }
  }
  auto c = canonical_cells(named_groupoid("Z/3"));
  EXPECT_TRUE(check_q_vertical(c.mu_dagger, c.mu).pass);
}

TEST(QSpan, Naturality) {
  const auto cs = build_delta(named_groupoid("Z/2"));
  EXPECT_TRUE(check_q_naturality(cs.delta).pass);
  EXPECT_TRUE(check_q_naturality(identity_span(cs.a.loop)).pass);
  auto h = hom_profunctor(named_groupoid("Z/2"));
  const Span2 bad = make_span_unchecked(h, h, {{0, 1, 1}});
  const auto r = check_q_naturality(bad);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.witness.empty());
}

TEST(SigmaPi, TrivialMiddle) {
  const auto r = sigma_pi_check(set_profunctor(2), set_profunctor(3, "T"));
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
  EXPECT_EQ(r.orbit_pairs, 6u);
  EXPECT_EQ(r.stabilizer_orders, (std::vector<std::size_t>{1}));
}

TEST(SigmaPi, FullStabilizerAverages) {
  auto z2 = named_groupoid("Z/2");
  auto u = coset_profunctor(z2, {{0, 1}});
  ASSERT_EQ(u->element_count(), 1u);
  auto s = boundary_left(z2);
  const RationalVector v = sigma_value(s, u, 0, 0, 0);
  EXPECT_EQ(v, (RationalVector{Rational(1, 2), Rational(1, 2)}));
  const auto r = sigma_pi_check(s, u);
  for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
  EXPECT_EQ(r.stabilizer_orders, (std::vector<std::size_t>{2}));
}

TEST(SigmaPi, S3OrdersTwoAndThree) {
  auto s3 = named_groupoid("S3");
  std::vector<MorId> two{0}, three{0};
  for (MorId g = 1; g < 6; ++g) {
    if (s3->order(g) == 2 && two.size() < 2) two.push_back(g);
    if (s3->order(g) == 3) three.push_back(g);
  }
  ASSERT_EQ(three.size(), 3u);
  auto u = coset_profunctor(s3, {two, three});
  EXPECT_EQ(u->element_count(), 5u);
  for (auto s : {boundary_left(s3), hom_profunctor(s3)}) {
    const auto r = sigma_pi_check(s, u);
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
    EXPECT_EQ(r.stabilizer_orders, (std::vector<std::size_t>{2, 3}));
  }
}

TEST(Characters, SmallTables) {
  const auto z2 = character_table(named_groupoid("Z/2"));
  EXPECT_NEAR(std::abs(z2.table(0, 0) - 1.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(z2.table(0, 1) - 1.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(z2.table(1, 0) - 1.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(z2.table(1, 1) + 1.0), 0, 1e-15);
  EXPECT_LE(orthonormality_deviation(character_table(named_groupoid("Z/3"))), 1e-12);
  EXPECT_LE(orthonormality_deviation(character_table(named_groupoid("Z/2xZ/2"))), 1e-12);
  try {
    character_table(named_groupoid("S3"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonAbelian);
  }
}

TEST(Characters, MutuallyUnbiased) {
  for (int n = 2; n <= 8; ++n) EXPECT_LE(check_mub(named_groupoid("Z/" + std::to_string(n))), 1e-12) << n;
  auto t = character_table(named_groupoid("Z/3"));
  t.table(1, 1) *= 1.2;
  EXPECT_GT(mub_deviation(t), 0.1);
}

TEST(Teleport, QubitBasisState) {
  ComplexVector s(2);
  s << 1, 0;
  const auto r = teleportation_simulation(named_groupoid("Z/2"), s);
  ASSERT_EQ(r.branches.size(), 4u);
  for (const auto& b : r.branches) {
    EXPECT_NEAR(b.fidelity, 1.0, 1e-12);
    EXPECT_NEAR(b.probability, 0.25, 1e-12);
  }
}

TEST(Teleport, QubitCorrectionsArePaulis) {
  auto z2 = named_groupoid("Z/2");
  const auto t = character_table(z2);
  Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity(), X, Z;
  X << 0, 1, 1, 0;
  Z << 1, 0, 0, -1;
  // outcomes Phi+, Phi-, Psi+, Psi- in (a, k) order
  const Eigen::Matrix2cd expect[2][2] = {{I, Z}, {X, Z * X}};
  for (MorId a = 0; a < 2; ++a)
    for (std::size_t k = 0; k < 2; ++k) {
      const ComplexMatrix c = correction(z2, t, a, k);
      // equal up to a global phase
      const Complex ph = (c.adjoint() * expect[a][k]).trace() / 2.0;
      EXPECT_NEAR(std::abs(ph), 1.0, 1e-12);
      EXPECT_LE((c * ph - expect[a][k]).norm(), 1e-12);
    }
  ComplexVector psi_minus(4);
  psi_minus << 0, 1, -1, 0;
  psi_minus /= std::sqrt(2.0);
  EXPECT_NEAR(std::norm(bell_state(z2, t, 1, 1).dot(psi_minus)), 1.0, 1e-12);
}

TEST(Teleport, SeededRandomStates) {
  std::mt19937_64 rng(2024);
  for (int n = 2; n <= 4; ++n) {
    auto g = named_groupoid("Z/" + std::to_string(n));
    for (int i = 0; i < 100; ++i) {
      const auto r = teleportation_simulation(g, random_state(n, rng));
      EXPECT_GE(r.min_fidelity, 1.0 - 1e-12);
      EXPECT_LE(r.max_probability_error, 1e-12);
    }
  }
  ComplexVector uniform = ComplexVector::Constant(3, 1.0 / std::sqrt(3.0));
  EXPECT_TRUE(all_pass(teleportation_simulation(named_groupoid("Z/3"), uniform).checks));
}

TEST(Teleport, RejectsBadInput) {
  ComplexVector s(2);
  s << 1, 1;
  EXPECT_THROW(teleportation_simulation(named_groupoid("Z/2"), s), Error);
  ComplexVector s6 = ComplexVector::Constant(6, 1.0 / std::sqrt(6.0));
  EXPECT_THROW(teleportation_simulation(named_groupoid("S3"), s6), Error);
}

TEST(DenseCode, AllMessages) {
  for (int n : {2, 3, 4}) {
    const auto r = dense_coding_simulation(named_groupoid("Z/" + std::to_string(n)));
    EXPECT_EQ(r.messages, static_cast<std::size_t>(n * n));
    EXPECT_EQ(r.decoded, r.messages);
    EXPECT_LE(r.max_deviation, 1e-12);
  }
  const auto id = dense_coding_simulation(named_groupoid("Z/2"), 0, 0);
  EXPECT_EQ(id.decoded, 1u);
}

}  // namespace
}  // namespace gpdact
