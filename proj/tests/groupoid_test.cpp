#include <gtest/gtest.h>

#include "gpdact/error.hpp"
#include "gpdact/groupoid.hpp"

namespace gpdact {
namespace {

GroupoidSpec two_bits_spec() {
  GroupoidSpec spec;
  spec.objects = {"0", "1"};
  spec.morphisms = {{"(0,0)", "0", "0"}, {"(1,1)", "0", "0"}, {"(0,1)", "1", "1"}, {"(1,0)", "1", "1"}};
  spec.compose = {{"(0,0)", "(0,0)", "(0,0)"}, {"(0,0)", "(1,1)", "(1,1)"}, {"(1,1)", "(0,0)", "(1,1)"},
                  {"(1,1)", "(1,1)", "(0,0)"}, {"(0,1)", "(0,1)", "(0,1)"}, {"(0,1)", "(1,0)", "(1,0)"},
                  {"(1,0)", "(0,1)", "(1,0)"}, {"(1,0)", "(1,0)", "(0,1)"}};
  return spec;
}

void expect_axioms(const Groupoid& g) {
  const std::size_t n = g.morphism_count();
  for (MorId f = 0; f < n; ++f) {
    EXPECT_EQ(g.inverse(g.inverse(f)), f);
    for (MorId h = 0; h < n; ++h) {
      if (!g.composable(f, h)) continue;
      for (MorId k = 0; k < n; ++k)
        if (g.composable(h, k)) EXPECT_EQ(g.compose(g.compose(f, h), k), g.compose(f, g.compose(h, k)));
    }
  }
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::Unsupported;
}

TEST(Groupoid, CyclicTwo) {
  auto g = named_groupoid("Z/2");
  EXPECT_EQ(g->object_count(), 1u);
  EXPECT_EQ(g->morphism_count(), 2u);
  EXPECT_EQ(g->identity(0), 0u);
  EXPECT_EQ(g->inverse(1), 1u);
  EXPECT_EQ(g->compose(1, 1), 0u);
}

TEST(Groupoid, TwoBitsFromSpec) {
  auto g = validate_groupoid(two_bits_spec(), "two-bits");
  EXPECT_EQ(g->object_count(), 2u);
  EXPECT_EQ(g->morphism_count(), 4u);
  EXPECT_TRUE(g->skeletal());
  expect_axioms(*g);
}

TEST(Groupoid, OverriddenCompositeLosesInverse) {
  GroupoidSpec spec;
  spec.objects = {"*"};
  spec.morphisms = {{"0", "*", "*"}, {"1", "*", "*"}};
  spec.compose = {{"0", "0", "0"}, {"0", "1", "1"}, {"1", "0", "1"}, {"1", "1", "1"}};
  EXPECT_EQ(kind_of([&] { validate_groupoid(spec); }), ErrorKind::MissingInverse);
}

TEST(Groupoid, MissingCompositeNamed) {
  auto spec = two_bits_spec();
  spec.compose.pop_back();
  try {
    validate_groupoid(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingComposite);
    EXPECT_NE(std::string(e.what()).find("(1,0)"), std::string::npos);
  }
}

TEST(Groupoid, NonAssociativeTableRejected) {
  // A Latin square with a two-sided identity that is not associative.
  const std::vector<std::vector<std::size_t>> t = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_EQ(kind_of([&] { group_as_groupoid(t); }), ErrorKind::NotAGroup);
}

TEST(Groupoid, CayleyTables) {
  EXPECT_EQ(kind_of([] { group_as_groupoid({{0, 0}, {0, 0}}); }), ErrorKind::NotAGroup);
  auto s3 = named_groupoid("S3");
  EXPECT_EQ(s3->morphism_count(), 6u);
  EXPECT_FALSE(s3->is_abelian());
  expect_axioms(*s3);
  for (const auto& name : catalog_group_names()) {
    auto g = named_groupoid(name);
    expect_axioms(*g);
    EXPECT_TRUE(g->is_group()) << name;
  }
}

TEST(Groupoid, CatalogOrders) {
  EXPECT_EQ(named_groupoid("Q8")->morphism_count(), 8u);
  EXPECT_FALSE(named_groupoid("Q8")->is_abelian());
  EXPECT_FALSE(named_groupoid("D4")->is_abelian());
  EXPECT_TRUE(named_groupoid("Z2xZ2")->is_abelian());
  auto q8 = named_groupoid("Q8");
  std::size_t order4 = 0;
  for (MorId f = 0; f < 8; ++f) order4 += q8->order(f) == 4;
  EXPECT_EQ(order4, 6u);
  auto d4 = named_groupoid("D4");
  std::size_t involutions = 0;
  for (MorId f = 0; f < 8; ++f) involutions += d4->order(f) == 2;
  EXPECT_EQ(involutions, 5u);
}

TEST(Groupoid, Discrete) {
  auto d = discrete_groupoid({"0", "1"});
  EXPECT_EQ(d->object_count(), 2u);
  EXPECT_EQ(d->morphism_count(), 2u);
  EXPECT_EQ(kind_of([] { discrete_groupoid({}); }), ErrorKind::EmptySet);
}

TEST(Groupoid, ProductCounts) {
  auto z2 = named_groupoid("Z/2");
  auto klein = product(z2, z2);
  EXPECT_EQ(klein->morphism_count(), 4u);
  for (MorId f = 0; f < 4; ++f) EXPECT_EQ(klein->compose(f, f), 0u);
  EXPECT_EQ(product(z2, trivial_groupoid())->morphism_count(), 2u);
  auto two = discrete_groupoid({"a", "b"});
  auto p = product(two, z2);
  EXPECT_EQ(p->object_count(), 2u);
  EXPECT_EQ(p->morphism_count(), 4u);
  expect_axioms(*p);
}

TEST(Groupoid, DisjointUnion) {
  auto u = named_groupoid("Z/2+Z/2");
  EXPECT_EQ(u->object_count(), 2u);
  EXPECT_EQ(u->morphism_count(), 4u);
  EXPECT_TRUE(u->hom(0, 1).empty());
  EXPECT_EQ(named_groupoid("Z/2+Z/3")->morphism_count(), 5u);
}

TEST(Groupoid, Skeletalize) {
  GroupoidSpec spec;
  spec.objects = {"a", "b"};
  spec.morphisms = {{"ia", "a", "a"}, {"ib", "b", "b"}, {"f", "a", "b"}, {"g", "b", "a"}};
  spec.compose = {{"ia", "ia", "ia"}, {"ib", "ib", "ib"}, {"ia", "f", "f"}, {"f", "ib", "f"}, {"ib", "g", "g"},
                  {"g", "ia", "g"},   {"f", "g", "ia"},   {"g", "f", "ib"}};
  auto g = validate_groupoid(spec);
  EXPECT_FALSE(g->skeletal());
  auto sk = skeletalize(g);
  EXPECT_EQ(sk.groupoid->object_count(), 1u);
  EXPECT_EQ(sk.groupoid->morphism_count(), 1u);
  EXPECT_EQ(sk.object_map[1], 0u);
  EXPECT_EQ(sk.transport[1], 2u);
  auto again = skeletalize(sk.groupoid);
  EXPECT_EQ(again.groupoid, sk.groupoid);

  auto u = named_groupoid("Z/2+Z/2");
  EXPECT_EQ(skeletalize(u).groupoid, u);
}

}  // namespace
}  // namespace gpdact
