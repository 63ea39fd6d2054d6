#include <gtest/gtest.h>

#include "gpdact/error.hpp"
#include "gpdact/io.hpp"

namespace gpdact {
namespace {

std::string fixture(const std::string& name) { return read_file(std::string(GPDACT_FIXTURES) + "/" + name); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::Unsupported;
}

TEST(Io, TwoBitsFile) {
  const auto text = fixture("two_bits.json");
  EXPECT_EQ(detect_format(text), "groupoid");
  auto g = parse_groupoid(text);
  EXPECT_EQ(g->object_count(), 2u);
  EXPECT_EQ(g->morphism_count(), 4u);
  // the writer's output parses back to the same groupoid
  EXPECT_TRUE(same_groupoid(parse_groupoid(groupoid_to_json(*g)), g));
}

TEST(Io, GroupoidForms) {
  EXPECT_EQ(parse_groupoid("\"Z/2+Z/3\"")->object_count(), 2u);
  EXPECT_EQ(parse_groupoid(R"({"group": "Q8"})")->morphism_count(), 8u);
  EXPECT_EQ(parse_groupoid(R"({"cayley": [[0,1],[1,0]], "labels": ["e","a"]})")->morphism_label(1), "a");
  EXPECT_EQ(kind_of([] { parse_groupoid(R"({"group": "Z/2", "extra": 1})"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_groupoid("{"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_groupoid(R"({"cayley": [[0,1],[1,1]]})"); }), ErrorKind::NotAGroup);
}

TEST(Io, ProfunctorLiteral) {
  auto p = parse_profunctor(fixture("flip_set.json"));
  EXPECT_EQ(p->element_count(), 2u);
  EXPECT_EQ(p->right(0, 1), 1u);
  EXPECT_EQ(parse_profunctor(R"({"builtin": "bubble", "groupoid": "S3"})")->element_count(), 6u);
  // missing action entries are rejected
  EXPECT_THROW(parse_profunctor(R"({"source": "Z/2", "target": "1",
      "elements": [{"label": "a", "stage": ["*", "*"]}], "left": [["id","a","a"]]})"),
               Error);
}

TEST(Io, SpanFile) {
  const auto text = fixture("swap_z2.json");
  EXPECT_EQ(detect_format(text), "span");
  const Span2 s = parse_span(text);
  EXPECT_EQ(s.support_size(), 2u);
  EXPECT_TRUE(is_unitary(s).unitary);
  // dropping one entry breaks naturality
  EXPECT_EQ(kind_of([] {
              parse_span(R"({"source": {"builtin": "hom", "groupoid": "Z/2"},
                             "target": {"builtin": "hom", "groupoid": "Z/2"},
                             "entries": [[["*","*"], "0", "1", 1]]})");
            }),
            ErrorKind::NaturalityViolation);
  EXPECT_TRUE(equals(parse_span(R"({"cell": "mu", "groupoid": "Z/2"})"), canonical_cells(named_groupoid("Z/2")).mu));
}

TEST(Io, TermFile) {
  const auto tf = parse_term_file(fixture("snake.json"));
  EXPECT_EQ(to_sexpr(tf.term), "(v mu_dag (dag mu_dag))");
  const Span2 v = evaluate_term(tf.term, tf.bindings);
  // mu then mu^dag on hom(Z/3): every morphism has three factorizations
  for (ElemId f = 0; f < 3; ++f) EXPECT_EQ(v.row(f).at(0).m, 3u);
}

TEST(Io, GoldenMatrixDump) {
  const auto c = canonical_cells(named_groupoid("Z/2"));
  EXPECT_EQ(dump_matrix(q_span(c.mu)) + "\n", fixture("golden_mu_z2.json"));
  const std::string r = dump_matrix({"a"}, {"x", "y"}, std::vector<RationalVector>{{Rational(1, 2), Rational(3)}});
  EXPECT_NE(r.find("\"1/2\""), std::string::npos);
  EXPECT_NE(r.find("\"3\""), std::string::npos);
}

}  // namespace
}  // namespace gpdact
