#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "gpdact/profunctor.hpp"

namespace gpdact {

using Mult = std::uint64_t;

struct SpanEntry {
  ElemId t;
  Mult m;
};

/// A natural-number-valued span sigma : S => T between parallel profunctors.
/// Rows are indexed by elements of S; each row is sorted by target element
/// and only holds nonzero multiplicities within the same stage.
class Span2 {
 public:
  Span2() = default;
  Span2(ProfunctorPtr src, ProfunctorPtr tgt);

  const ProfunctorPtr& src() const { return src_; }
  const ProfunctorPtr& tgt() const { return tgt_; }
  const std::vector<SpanEntry>& row(ElemId s) const { return rows_[s]; }
  Mult at(ElemId s, ElemId t) const;
  std::size_t support_size() const;
  std::vector<std::tuple<ElemId, ElemId, Mult>> entries() const;

  /// Adds to an entry without any checking; used by constructors and by
  /// mutation tests that need deliberately broken spans.
  void add_unchecked(ElemId s, ElemId t, Mult m);
  void set_unchecked(ElemId s, ElemId t, Mult m);

 private:
  ProfunctorPtr src_;
  ProfunctorPtr tgt_;
  std::vector<std::vector<SpanEntry>> rows_;
};

using Triple = std::tuple<ElemId, ElemId, Mult>;

/// Validates parallel typing, stages and naturality.
Span2 make_span(const ProfunctorPtr& s, const ProfunctorPtr& t, const std::vector<Triple>& entries);
/// Same typing checks, no naturality check.
Span2 make_span_unchecked(const ProfunctorPtr& s, const ProfunctorPtr& t, const std::vector<Triple>& entries);

/// First naturality violation, described, or nullopt.
std::optional<std::string> naturality_witness(const Span2& sigma);
void require_natural(const Span2& sigma);

Span2 identity_span(const ProfunctorPtr& p);
Span2 zero_span(const ProfunctorPtr& s, const ProfunctorPtr& t);

/// sigma : S => T, then tau : T => U.
Span2 vertical_compose(const Span2& sigma, const Span2& tau);
/// sigma : S => T over G -> H, tau : U => V over H -> J, giving
/// compose(S, U) => compose(T, V). Representative independence is checked
/// on every class; a violation throws WellDefinednessFailure.
Span2 horizontal_compose(const Span2& sigma, const Span2& tau);
Span2 dagger(const Span2& sigma);

struct Difference {
  ElemId s = npos;
  ElemId t = npos;
  Mult left = 0;
  Mult right = 0;
  std::string describe;
};

/// nullopt when equal; TypeMismatch when not parallel.
std::optional<Difference> compare(const Span2& a, const Span2& b);
bool equals(const Span2& a, const Span2& b);

struct UnitaryCheck {
  bool unitary = true;
  std::string witness;
};
/// Checks both sigma then dagger(sigma) and dagger(sigma) then sigma.
UnitaryCheck is_unitary(const Span2& sigma);

/// compose(hom(G), P) => P, [(f, p)] -> p.f
Span2 left_unitor(const ProfunctorPtr& p);
/// compose(P, hom(H)) => P, [(p, f)] -> f.p
Span2 right_unitor(const ProfunctorPtr& p);
/// compose(compose(S, T), U) => compose(S, compose(T, U))
Span2 associator(const ProfunctorPtr& s, const ProfunctorPtr& t, const ProfunctorPtr& u);

/// Random natural span: every orbit of stage-matched pairs under both
/// actions gets a multiplicity in [0, max_mult], zero with probability 1 - density.
Span2 random_natural_span(const ProfunctorPtr& s, const ProfunctorPtr& t, std::mt19937_64& rng, Mult max_mult = 2,
                          double density = 0.5);

/// Orbits of pairs (s, t) in matching stages under the joint actions.
std::vector<std::vector<std::pair<ElemId, ElemId>>> pair_orbits(const Profunctor& s, const Profunctor& t);

}  // namespace gpdact
