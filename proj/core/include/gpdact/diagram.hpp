#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gpdact/span.hpp"

namespace gpdact {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Composition tree of named cells. Vertical children run first to last in
/// time; horizontal children follow 1-morphism composition order and nest to
/// the right: (h a b c) = (h a (h b c)).
struct Term {
  enum class Kind { Leaf, Vertical, Horizontal, Dagger };
  Kind kind = Kind::Leaf;
  std::string name;                    // leaves only
  std::shared_ptr<const Span2> value;  // inline leaf value; otherwise resolved by name
  std::vector<TermPtr> children;
};

using Bindings = std::map<std::string, Span2>;

TermPtr leaf(std::string name);
TermPtr leaf(std::string name, Span2 value);
TermPtr vert(std::vector<TermPtr> children);
TermPtr horiz(std::vector<TermPtr> children);
TermPtr dag(TermPtr child);

/// Folds the tree. Failures carry the path of the failing node, e.g.
/// "at /v[2]/h[1]: TypeMismatch: ...".
Span2 evaluate_term(const TermPtr& term, const Bindings& bindings = {});

/// s-expression form: leaves print their name.
std::string to_sexpr(const TermPtr& term);
/// Grammar: term := NAME | "(" ("v" | "h") term+ ")" | "(" "dag" term ")".
TermPtr parse_term(const std::string& text);

/// Builds a vertical chain of cells over a word of 1-morphisms (atoms). The
/// 1-morphism of a word is its right-nested composite (a (b (c ...))).
/// Cells are typed on the canonical composite of the subword they act on,
/// or on a two-block grouping (compose(M1, M2)) when blocks are given;
/// associators and identity whiskers are inserted automatically.
class Diagram {
 public:
  /// `input_blocks` lets the whole diagram start from a grouped composite.
  explicit Diagram(std::vector<ProfunctorPtr> word, std::vector<std::size_t> input_blocks = {});

  const std::vector<ProfunctorPtr>& word() const { return word_; }
  ProfunctorPtr composite() const { return canonical(word_); }

  /// Replaces atoms [pos, pos + len) using `cell`.
  Diagram& apply(std::size_t pos, std::size_t len, const TermPtr& cell, std::vector<ProfunctorPtr> result,
                 std::vector<std::size_t> domain_blocks = {}, std::vector<std::size_t> codomain_blocks = {});
  /// Inserts an identity 1-morphism (hom) before atom `pos`, or after the last atom.
  Diagram& insert_identity(std::size_t pos);
  /// Removes the hom atom at `pos` with a unitor.
  Diagram& remove_identity(std::size_t pos);
  /// Ends the diagram on a grouped composite.
  Diagram& finish(std::vector<std::size_t> output_blocks);
  /// Starts a named group of steps; used for stepwise equalities.
  Diagram& mark(std::string label);

  const std::vector<TermPtr>& steps() const { return steps_; }
  /// Step index where each mark starts.
  const std::vector<std::pair<std::string, std::size_t>>& marks() const { return marks_; }
  TermPtr term() const { return vert(steps_); }
  TermPtr term(std::size_t first, std::size_t last) const;
  Span2 evaluate() const { return evaluate_term(term()); }

  static ProfunctorPtr canonical(const std::vector<ProfunctorPtr>& atoms);
  /// canonical(a ++ b) => compose(canonical(a), canonical(b))
  static TermPtr split(const std::vector<ProfunctorPtr>& a, const std::vector<ProfunctorPtr>& b);

 private:
  std::vector<ProfunctorPtr> word_;
  std::vector<TermPtr> steps_;
  std::vector<std::pair<std::string, std::size_t>> marks_;
};

/// Identity-cell leaf on a profunctor.
TermPtr id_leaf(const ProfunctorPtr& p);

/// Pushes a single element through a list of steps; returns the support
/// after every step (element, multiplicity).
using Distribution = std::vector<std::pair<ElemId, Mult>>;
std::vector<Distribution> trace_element(const std::vector<Span2>& steps, ElemId start);

}  // namespace gpdact
