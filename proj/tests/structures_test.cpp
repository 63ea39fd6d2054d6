#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "gpdact/error.hpp"
#include "gpdact/structures.hpp"

namespace gpdact {
namespace {

std::string failures(const std::vector<CheckResult>& checks) {
  std::string out;
  for (const auto& c : checks)
    if (!c.pass) out += c.name + ": " + c.witness + "\n";
  return out;
}

TEST(Canonical, CellsAreUnitaryWhereExpected) {
  auto c = canonical_cells(named_groupoid("S3"));
  EXPECT_EQ(c.bubble->element_count(), 6u);
  // the middle of the loop is trivial, so every pair survives
  EXPECT_EQ(c.loop->element_count(), 36u);
  // each morphism has six factorizations
  const Span2 mm = vertical_compose(c.mu_dagger, c.mu);
  for (ElemId f = 0; f < 6; ++f) EXPECT_EQ(mm.row(f).at(0).m, 6u);
  // eps keeps only the identity bubble
  EXPECT_EQ(c.epsilon.support_size(), 1u);
  for (MorId m = 0; m < 6; ++m) EXPECT_EQ(c.bubble_morphism(c.bubble_element(m)), m);
}

TEST(Canonical, SnakesOnCatalog) {
  for (const auto& name : catalog_group_names()) {
    const auto checks = check_topological_axioms(named_groupoid(name));
    EXPECT_EQ(checks.size(), 6u);
    EXPECT_TRUE(all_pass(checks)) << name << "\n" << failures(checks);
  }
}

TEST(Canonical, SnakesOnUnionsAndProducts) {
  for (const char* name : {"Z/2+Z/3", "S3+Z/1"}) {
    const auto checks = check_topological_axioms(named_groupoid(name));
    EXPECT_TRUE(all_pass(checks)) << name << "\n" << failures(checks);
  }
  const auto checks = check_topological_axioms(product(named_groupoid("Z/2"), named_groupoid("Z/3")));
  EXPECT_TRUE(all_pass(checks)) << failures(checks);
}

TEST(Canonical, CorruptedMuFailsASnake) {
  auto c = canonical_cells(named_groupoid("Z/3"));
  std::vector<Triple> doubled;
  for (ElemId e = 0; e < c.loop->element_count(); ++e)
    for (const auto& [t, m] : c.mu.row(e)) doubled.emplace_back(e, t, 2 * m);
  c.mu = make_span(c.loop, c.hom, doubled);
  c.mu_dagger = dagger(c.mu);
  const auto checks = check_topological_axioms(c);
  EXPECT_FALSE(all_pass(checks));
  for (const auto& r : checks)
    if (!r.pass) EXPECT_NE(r.witness.find(" vs "), std::string::npos);
}

TEST(Controlled, CurryRoundTrip) {
  std::mt19937_64 rng(7);
  for (const char* name : {"Z/3", "S3", "Z/2+Z/3"}) {
    auto g = skeletalize(named_groupoid(name)).groupoid;
    auto c = canonical_cells(g);
    auto s = set_profunctor({"s0", "s1"});
    for (int trial = 0; trial < 20; ++trial) {
      ControlledData data;
      for (ObjId x = 0; x < g->object_count(); ++x) {
        auto end = g->hom(x, x);
        for (std::size_t st = 0; st < 2; ++st)
          data.entries.push_back({st, end[rng() % end.size()], rng() % 2, 1 + rng() % 2});
      }
      const Span2 sigma = controlled_span(c, s, data);
      EXPECT_EQ(logical_state_violations(c, s, sigma), 0u);
      const Span2 curried = curry_controlled(c, s, sigma);
      EXPECT_TRUE(equals(uncurry_controlled(c, s, curried), sigma)) << name;
      // reading the data back and rebuilding gives the same operation
      EXPECT_TRUE(equals(controlled_span(c, s, curried_data(c, s, curried)), sigma)) << name;
    }
  }
}

TEST(Controlled, CurriedDataMatchesInput) {
  auto g = named_groupoid("Z/3");
  auto c = canonical_cells(g);
  auto s = set_profunctor({"s0", "s1"});
  ControlledData data;
  data.entries.push_back({0, 1, 1, 1});
  data.entries.push_back({1, 2, 0, 1});
  const auto back = curried_data(c, s, curry_controlled(c, s, controlled_span(c, s, data)));
  std::set<std::tuple<std::size_t, MorId, std::size_t, Mult>> a, b;
  for (const auto& e : data.entries) a.emplace(e.s, e.k, e.s_next, e.m);
  for (const auto& e : back.entries) b.emplace(e.s, e.k, e.s_next, e.m);
  EXPECT_EQ(a, b);
}

TEST(Controlled, ClassificationCounts) {
  // Z/2, |S| = 1: relational subsets of End x S x S have 2^2 elements.
  std::uint64_t visited = 0, blind = 0;
  const auto n = classify_controlled(named_groupoid("Z/2"), 1, ControlledMode::Relational, 1000000,
                                     [&](const ControlledOp& op) {
                                       ++visited;
                                       if (!(op.tags & kMicrostatePerturbed)) ++blind;
                                     });
  EXPECT_EQ(n, 4u);
  EXPECT_EQ(visited, 4u);
  EXPECT_EQ(blind, 2u);
  EXPECT_EQ(count_controlled(named_groupoid("Z/2+Z/2"), 2, ControlledMode::Function), 16u * 16u);
  EXPECT_THROW(classify_controlled(named_groupoid("S3"), 3, ControlledMode::Relational, 1000000,
                                   [](const ControlledOp&) {}),
               Error);
}

TEST(Controlled, TagsForReadout) {
  auto g = named_groupoid("Z/1+Z/1");
  ControlledData copy;
  copy.entries.push_back({0, g->identity(0), 0, 1});
  copy.entries.push_back({0, g->identity(1), 1, 1});
  const auto tags = controlled_tags(g, 2, copy);
  EXPECT_TRUE(tags & kLogicalReadout);
  EXPECT_TRUE(tags & kLogicalControl);
  EXPECT_FALSE(tags & kMicrostatePerturbed);
}

TEST(Complementary, CatalogPasses) {
  for (const auto& name : catalog_group_names()) {
    const auto cs = build_delta(named_groupoid(name), false);
    const auto checks = check_complementary(cs);
    EXPECT_TRUE(all_pass(checks)) << name << "\n" << failures(checks);
  }
}

TEST(Complementary, NonInjectiveTableFails) {
  const auto cs = build_delta(named_groupoid("Z/4"), false);
  const Span2 bad = delta_from_table(cs.a, cs.b, {0, 0, 2, 3});
  EXPECT_FALSE(all_pass(check_complementary(cs.a, cs.b, bad)));
}

TEST(Complementary, ChaseReturnsToStart) {
  const auto cs = build_delta(named_groupoid("S3"));
  const auto steps = element_chase(cs, 3, 4);
  ASSERT_GE(steps.size(), 3u);
  EXPECT_EQ(steps.front().support, steps.back().support);
  EXPECT_EQ(steps.front().support.size(), 1u);
  // after transposing, the element is a single pair again
  const std::size_t half = (steps.size() - 1) / 2;
  EXPECT_EQ(steps[half].support.size(), 1u) << steps[half].step;
}

TEST(Communication, ClosedFormAndChain) {
  for (const char* name : {"Z/2", "Z/3", "S3", "Z/2xZ/2"}) {
    const auto cm = build_lambda(build_delta(named_groupoid(name)), false);
    const auto checks = check_communication(cm);
    EXPECT_TRUE(all_pass(checks)) << name << "\n" << failures(checks);
  }
}

TEST(Communication, DenseCoding) {
  for (const char* name : {"Z/2", "Z/3", "S3"}) {
    const auto cm = build_lambda(build_delta(named_groupoid(name)), false);
    const auto checks = check_dense_coding(cm);
    EXPECT_TRUE(all_pass(checks)) << name << "\n" << failures(checks);
  }
}

TEST(Communication, NonUnitaryLambdaIsRejected) {
  const auto cm = build_lambda(build_delta(named_groupoid("Z/2")), false);
  std::vector<Triple> entries;
  for (ElemId e = 0; e < cm.lambda.src()->element_count(); ++e)
    for (const auto& [t, m] : cm.lambda.row(e)) entries.emplace_back(e, t, e == 0 ? 2 * m : m);
  const Span2 bad = make_span(cm.lambda.src(), cm.lambda.tgt(), entries);
  EXPECT_FALSE(all_pass(check_dense_coding(cm, bad)));
  EXPECT_FALSE(is_unitary(bad).unitary);
}

}  // namespace
}  // namespace gpdact
