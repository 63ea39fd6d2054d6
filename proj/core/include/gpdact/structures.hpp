#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gpdact/diagram.hpp"

namespace gpdact {

/// Boundaries of a skeletal groupoid and the four canonical cells.
///   L = boundary_left(G)  : 1 -> G
///   R = boundary_right(G) : G -> 1
///   bubble = compose(L, R) : 1 -> 1, one element per morphism
///   loop   = compose(R, L) : G -> G
///   mu  : loop => hom(G),    mu((r, l), f)  = [f == l;r]
///   eps : bubble => hom(1),  eps([l, r], *) = [r;l is an identity]
struct CanonicalCells {
  GroupoidPtr g;
  ProfunctorPtr L, R, hom, unit, bubble, loop;
  Span2 mu, mu_dagger, epsilon, epsilon_dagger;

  /// Bubble element whose label r;l equals m.
  ElemId bubble_element(MorId m) const;
  MorId bubble_morphism(ElemId e) const;
};

CanonicalCells canonical_cells(const GroupoidPtr& g);

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;
};

bool all_pass(const std::vector<CheckResult>& checks);

/// The four snake composites of the ambidextrous adjunction between L and R.
/// which: 0, 1 on R; 2, 3 on L.
TermPtr snake_term(const CanonicalCells& c, int which);
/// Six equalities: each snake equals the identity, and the paired snakes agree.
std::vector<CheckResult> check_topological_axioms(const CanonicalCells& c);
std::vector<CheckResult> check_topological_axioms(const GroupoidPtr& g);

// ---------------------------------------------------------------------------
// Controlled operations on compose(R, S), S a free system 1 -> 1.

/// Data c_x(s, k, s') for each logical state x: the microstate r becomes
/// k;r for k in End(x) and the free system moves from s to s'.
struct ControlledData {
  struct Entry {
    std::size_t s;
    MorId k;
    std::size_t s_next;
    Mult m;
  };
  std::vector<Entry> entries;
};

/// sigma((r, s), (r', s')) = c(s, k, s') where r' = k;r, on compose(R, S).
Span2 controlled_span(const CanonicalCells& c, const ProfunctorPtr& s, const ControlledData& data);
/// compose(R, S) => compose(R, S)  to  S => compose(bubble, S)
Span2 curry_controlled(const CanonicalCells& c, const ProfunctorPtr& s, const Span2& sigma);
/// Inverse of curry_controlled.
Span2 uncurry_controlled(const CanonicalCells& c, const ProfunctorPtr& s, const Span2& curried);
/// Reads c back off a curried span.
ControlledData curried_data(const CanonicalCells& c, const ProfunctorPtr& s, const Span2& curried);
/// Entries of sigma that move between logical states (always 0 for valid spans).
std::size_t logical_state_violations(const CanonicalCells& c, const ProfunctorPtr& s, const Span2& sigma);

enum Phenomenon : std::uint32_t {
  kLogicalStatePreserved = 1u << 0,  // (1) logical states are robust
  kMicrostatePerturbed = 1u << 1,    // (2) microstates are not robust
  kLogicalControl = 1u << 2,         // (3) logical states control behaviour
  kMicrostateBlind = 1u << 3,        // (4), (6) no dependence on the microstate
  kLogicalReadout = 1u << 4,         // (5) logical state copied into S
};
std::vector<std::string> phenomenon_names(std::uint32_t tags);

struct ControlledOp {
  ControlledData data;
  std::uint32_t tags = 0;
};

enum class ControlledMode { Relational, Function };

/// Streams every 0/1 controlled operation for G and |S| = s_size.
/// Relational: any subset of S x End(x) x S per object. Function: every
/// function S -> End(x) x S per object. Throws CapExceeded when the count
/// exceeds `cap`. Returns the number of operations visited.
std::uint64_t classify_controlled(const GroupoidPtr& g, std::size_t s_size, ControlledMode mode, std::uint64_t cap,
                                  const std::function<void(const ControlledOp&)>& visit);
std::uint64_t count_controlled(const GroupoidPtr& g, std::size_t s_size, ControlledMode mode);
std::uint32_t controlled_tags(const GroupoidPtr& g, std::size_t s_size, const ControlledData& data);

// ---------------------------------------------------------------------------
// Complementary and communication structures.

/// delta : bubble(G) => bubble(|G|), g -> object g of |G|.
struct ComplementaryStructure {
  GroupoidPtr group;     // A
  GroupoidPtr discrete;  // B = |A|
  CanonicalCells a, b;
  Span2 delta;
};

ComplementaryStructure build_delta(const GroupoidPtr& group, bool verify = true);
/// delta built from an arbitrary table g -> object; used for mutation tests.
Span2 delta_from_table(const CanonicalCells& a, const CanonicalCells& b, const std::vector<ObjId>& table);

enum class Side { Left, Right };

/// Bends rho : bubble(A) => bubble(B). Right: compose(R_A, L_B) => itself.
/// Left: compose(R_B, L_A) => itself.
Diagram partial_transpose_diagram(const CanonicalCells& a, const CanonicalCells& b, const Span2& rho, Side side);
Span2 partial_transpose(const CanonicalCells& a, const CanonicalCells& b, const Span2& rho, Side side);
/// Inverse bend back to bubble(A) => bubble(B).
Span2 unbend(const CanonicalCells& a, const CanonicalCells& b, const Span2& bent, Side side);

/// Element chase of the right transpose followed by its inverse on
/// (g, delta(g')): labels after every step.
struct ChaseStep {
  std::string step;
  std::vector<std::string> support;  // "label" or "label x m"
};
std::vector<ChaseStep> element_chase(const ComplementaryStructure& cs, MorId g, MorId g2);

std::vector<CheckResult> check_complementary(const ComplementaryStructure& cs);
std::vector<CheckResult> check_complementary(const CanonicalCells& a, const CanonicalCells& b, const Span2& delta);

struct CommunicationStructure {
  ComplementaryStructure cs;
  GroupoidPtr d;  // B x A
  CanonicalCells dc;
  Span2 lambda;        // compose(bubble A, bubble B) => bubble D
  Span2 lambda_prime;  // compose(bubble B, L_D) => compose(bubble A, L_D)
  Diagram lambda_diagram;
  std::size_t delta_layer = 0;  // step index of the (delta, delta^dag) layer
  std::size_t iso_layer = 0;    // step index of the product isomorphism

  /// Element (g, delta(g')) of compose(bubble A, bubble B).
  ElemId input(MorId g, MorId g2) const;
  /// Element (delta(c), h) of bubble D.
  ElemId output(ObjId c, MorId h) const;
};

/// compose(bubble B, bubble A) => bubble(B x A), matched by labels.
Span2 bubble_product_iso(const CanonicalCells& b, const CanonicalCells& a, const CanonicalCells& d);

CommunicationStructure build_lambda(const ComplementaryStructure& cs, bool verify = true);
/// lambda' from an arbitrary lambda of the right type.
Span2 lambda_prime_of(const CommunicationStructure& cm, const Span2& lambda);
/// Unitarity of lambda and lambda', plus the four stepwise equalities.
std::vector<CheckResult> check_communication(const CommunicationStructure& cm);

/// Both sides of the dense-coding equation on [R_D] => [R_D, L_D, R_D].
struct DenseCodingSides {
  Span2 lhs, rhs;
};
DenseCodingSides dense_coding_sides(const CommunicationStructure& cm, const Span2& lambda);
std::vector<CheckResult> check_dense_coding(const CommunicationStructure& cm);
std::vector<CheckResult> check_dense_coding(const CommunicationStructure& cm, const Span2& lambda);

}  // namespace gpdact
