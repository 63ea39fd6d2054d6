#include <gtest/gtest.h>

#include "gpdact/error.hpp"
#include "gpdact/profunctor.hpp"

namespace gpdact {
namespace {

TEST(Profunctor, HomOfCyclicTwo) {
  auto p = hom_profunctor(named_groupoid("Z/2"));
  EXPECT_EQ(p->stage_count(), 1u);
  EXPECT_EQ(p->stage(0, 0).size(), 2u);
  EXPECT_EQ(p->left(1, 0), 1u);
  EXPECT_EQ(p->right(1, 1), 0u);
}

TEST(Profunctor, HomOfUnionHasNoCrossStages) {
  auto p = hom_profunctor(named_groupoid("Z/2+Z/2"));
  EXPECT_EQ(p->stage(0, 0).size(), 2u);
  EXPECT_EQ(p->stage(1, 1).size(), 2u);
  EXPECT_TRUE(p->stage(0, 1).empty());
  EXPECT_TRUE(p->stage(1, 0).empty());
}

TEST(Profunctor, Boundaries) {
  auto z2 = named_groupoid("Z/2");
  auto l = boundary_left(z2);
  auto r = boundary_right(z2);
  EXPECT_EQ(l->element_count(), 2u);
  EXPECT_EQ(l->left(1, 0), 1u);
  EXPECT_EQ(l->left(1, 1), 0u);
  EXPECT_EQ(r->right(0, 1), 1u);
  auto u = boundary_left(named_groupoid("Z/2+Z/2"));
  EXPECT_EQ(u->stage(0, 0).size(), 2u);
  EXPECT_EQ(u->stage(1, 0).size(), 2u);
  EXPECT_EQ(boundary_right(trivial_groupoid())->element_count(), 1u);

  GroupoidSpec spec;
  spec.objects = {"a", "b"};
  spec.morphisms = {{"ia", "a", "a"}, {"ib", "b", "b"}, {"f", "a", "b"}, {"g", "b", "a"}};
  spec.compose = {{"ia", "ia", "ia"}, {"ib", "ib", "ib"}, {"ia", "f", "f"}, {"f", "ib", "f"}, {"ib", "g", "g"},
                  {"g", "ia", "g"},   {"f", "g", "ia"},   {"g", "f", "ib"}};
  auto g = validate_groupoid(spec);
  try {
    boundary_left(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSkeletal);
  }
}

TEST(Profunctor, BubbleHasOneClassPerMorphism) {
  for (const char* name : {"Z/2", "Z/4", "S3", "Q8", "Z/2+Z/3"}) {
    auto g = named_groupoid(name);
    auto bubble = compose_profunctors(boundary_left(g), boundary_right(g));
    EXPECT_EQ(bubble->element_count(), g->morphism_count()) << name;
  }
}

TEST(Profunctor, HomIsUnitUpToCardinality) {
  auto g = named_groupoid("S3+Z/2");
  auto h = hom_profunctor(g);
  auto hh = compose_profunctors(h, h);
  for (StageId st = 0; st < h->stage_count(); ++st) EXPECT_EQ(hh->stage(st).size(), h->stage(st).size());
}

TEST(Profunctor, TrivialMiddleIsCartesian) {
  auto a = set_profunctor(3);
  auto b = set_profunctor(4);
  auto c = compose_profunctors(a, b);
  EXPECT_EQ(c->element_count(), 12u);
  EXPECT_EQ(c->label(0), "(0,0)");
}

TEST(Profunctor, CompositionIsMemoized) {
  auto g = named_groupoid("Z/3");
  auto l = boundary_left(g);
  auto r = boundary_right(g);
  EXPECT_EQ(compose_profunctors(l, r), compose_profunctors(l, r));
  EXPECT_EQ(boundary_left(g), l);
}

TEST(Profunctor, AssociativeUpToCardinality) {
  auto g = named_groupoid("Z/4");
  auto l = boundary_left(g);
  auto r = boundary_right(g);
  auto a = compose_profunctors(compose_profunctors(r, l), r);
  auto b = compose_profunctors(r, compose_profunctors(l, r));
  ASSERT_EQ(a->stage_count(), b->stage_count());
  for (StageId st = 0; st < a->stage_count(); ++st) EXPECT_EQ(a->stage(st).size(), b->stage(st).size());
}

TEST(Profunctor, Tensor) {
  auto z2 = named_groupoid("Z/2");
  auto h = hom_profunctor(z2);
  auto t = tensor_profunctors(h, h);
  auto hp = hom_profunctor(product(z2, z2));
  ASSERT_EQ(t->element_count(), hp->element_count());
  // Same element order, same actions.
  for (ElemId e = 0; e < t->element_count(); ++e) {
    for (MorId m = 0; m < 4; ++m) {
      EXPECT_EQ(t->left(m, e), hp->left(m, e));
      EXPECT_EQ(t->right(e, m), hp->right(e, m));
    }
  }
  auto unit = set_profunctor(1);
  EXPECT_EQ(tensor_profunctors(h, unit)->element_count(), h->element_count());
}

TEST(Profunctor, RejectsNonFunctorialAction) {
  auto z2 = named_groupoid("Z/2");
  auto one = trivial_groupoid();
  // 1 -> Z/2 with two elements where the generator acts trivially on one and
  // swaps... nothing: lands outside the element range instead.
  EXPECT_THROW(Profunctor::make(one, z2, {0, 0}, {"a", "b"}, {0, 1, 1, 1}, {0, 1}), Error);
}

}  // namespace
}  // namespace gpdact
