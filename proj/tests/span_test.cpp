#include <gtest/gtest.h>

#include <random>

#include "gpdact/error.hpp"
#include "gpdact/span.hpp"

namespace gpdact {
namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::Unsupported;
}

TEST(Span, NaturalityOnHom) {
  auto h = hom_profunctor(named_groupoid("Z/2"));
  EXPECT_NO_THROW(make_span(h, h, {{0, 0, 1}, {1, 1, 1}}));
  EXPECT_EQ(kind_of([&] { make_span(h, h, {{0, 1, 1}}); }), ErrorKind::NaturalityViolation);
  EXPECT_NO_THROW(make_span(h, h, {{0, 1, 1}, {1, 0, 1}}));
  EXPECT_EQ(make_span(h, h, {}).support_size(), 0u);
}

TEST(Span, StageMismatch) {
  auto h = hom_profunctor(named_groupoid("Z/2+Z/2"));
  EXPECT_EQ(kind_of([&] { make_span(h, h, {{0, 2, 1}}); }), ErrorKind::StageMismatch);
}

TEST(Span, VerticalSumsOverMiddle) {
  auto a = set_profunctor(1);
  auto m = set_profunctor(2);
  auto b = set_profunctor(1);
  auto sigma = make_span(a, m, {{0, 0, 1}, {0, 1, 1}});
  auto tau = make_span(m, b, {{0, 0, 1}, {1, 0, 1}});
  EXPECT_EQ(vertical_compose(sigma, tau).at(0, 0), 2u);
  EXPECT_TRUE(equals(vertical_compose(sigma, identity_span(m)), sigma));
}

TEST(Span, PermutationsCompose) {
  auto p = set_profunctor(3);
  auto cyc = make_span(p, p, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  auto twice = vertical_compose(cyc, cyc);
  EXPECT_EQ(twice.at(0, 2), 1u);
  EXPECT_TRUE(equals(vertical_compose(twice, cyc), identity_span(p)));
  EXPECT_TRUE(is_unitary(cyc).unitary);
}

TEST(Span, DuplicatedEntryIsNotUnitary) {
  auto p = set_profunctor(2);
  auto s = make_span(p, p, {{0, 0, 2}, {1, 1, 1}});
  auto check = is_unitary(s);
  EXPECT_FALSE(check.unitary);
  EXPECT_NE(check.witness.find(": 4 vs 1"), std::string::npos) << check.witness;
}

TEST(Span, TrivialMiddleIsEntrywiseProduct) {
  auto a = set_profunctor(2);
  auto b = set_profunctor(2);
  auto sigma = make_span(a, a, {{0, 1, 2}, {1, 1, 1}});
  auto tau = make_span(b, b, {{0, 0, 3}, {1, 0, 1}});
  auto h = horizontal_compose(sigma, tau);
  // (s,u) indices are row-major
  EXPECT_EQ(h.at(0 * 2 + 0, 1 * 2 + 0), 6u);
  EXPECT_EQ(h.at(1 * 2 + 1, 1 * 2 + 0), 1u);
  EXPECT_EQ(h.support_size(), 4u);
}

TEST(Span, IdentityTimesIdentityOnFreeMiddle) {
  auto g = named_groupoid("S3+Z/2");
  auto l = boundary_left(g);
  auto r = boundary_right(g);
  auto h = horizontal_compose(identity_span(l), identity_span(r));
  EXPECT_TRUE(equals(h, identity_span(compose_profunctors(l, r))));
  auto hh = horizontal_compose(identity_span(r), identity_span(l));
  EXPECT_TRUE(equals(hh, identity_span(compose_profunctors(r, l))));
}

TEST(Span, StabilizerMultiplicityOnNonFreeMiddle) {
  // Z/2 acting trivially on both sides of the middle: summing over all
  // middle morphisms counts each class |Stab| = 2 times.
  auto z2 = named_groupoid("Z/2");
  auto one = trivial_groupoid();
  auto s = Profunctor::make(one, z2, {0}, {"s"}, {0, 0}, {0});
  auto u = Profunctor::make(z2, one, {0}, {"u"}, {0}, {0, 0});
  auto h = horizontal_compose(identity_span(s), identity_span(u));
  EXPECT_EQ(h.at(0, 0), 2u);
}

TEST(Span, DaggerIsInvolutiveAndReverses) {
  std::mt19937_64 rng(7);
  auto g = named_groupoid("Z/3");
  auto h = hom_profunctor(g);
  auto a = random_natural_span(h, h, rng, 3);
  auto b = random_natural_span(h, h, rng, 3);
  EXPECT_TRUE(equals(dagger(dagger(a)), a));
  EXPECT_TRUE(equals(dagger(vertical_compose(a, b)), vertical_compose(dagger(b), dagger(a))));
  EXPECT_FALSE(naturality_witness(a).has_value());
}

TEST(Span, InterchangeLaw) {
  std::mt19937_64 rng(11);
  for (const char* name : {"Z/2", "Z/3", "S3", "Z/2+Z/2"}) {
    auto g = named_groupoid(name);
    auto l = boundary_left(g);
    auto r = boundary_right(g);
    for (int trial = 0; trial < 5; ++trial) {
      auto s1 = random_natural_span(l, l, rng);
      auto s2 = random_natural_span(l, l, rng);
      auto t1 = random_natural_span(r, r, rng);
      auto t2 = random_natural_span(r, r, rng);
      auto lhs = horizontal_compose(vertical_compose(s1, s2), vertical_compose(t1, t2));
      auto rhs = vertical_compose(horizontal_compose(s1, t1), horizontal_compose(s2, t2));
      EXPECT_TRUE(equals(lhs, rhs)) << name;
    }
  }
}

TEST(Span, UnitorsAndAssociatorAreUnitary) {
  auto g = named_groupoid("D4+Z/3");
  auto l = boundary_left(g);
  auto r = boundary_right(g);
  EXPECT_TRUE(is_unitary(left_unitor(r)).unitary);
  EXPECT_TRUE(is_unitary(right_unitor(r)).unitary);
  EXPECT_TRUE(is_unitary(left_unitor(l)).unitary);
  EXPECT_TRUE(is_unitary(right_unitor(l)).unitary);
  auto a = associator(r, l, r);
  EXPECT_TRUE(is_unitary(a).unitary);
  EXPECT_FALSE(naturality_witness(a).has_value());
  EXPECT_FALSE(naturality_witness(left_unitor(r)).has_value());
}

TEST(Span, CompareReportsWitness) {
  auto h = hom_profunctor(named_groupoid("Z/2"));
  auto d = compare(identity_span(h), zero_span(h, h));
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->s, 0u);
  EXPECT_EQ(d->t, 0u);
  EXPECT_EQ(d->left, 1u);
}

}  // namespace
}  // namespace gpdact
