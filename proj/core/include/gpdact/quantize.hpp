#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include "gpdact/structures.hpp"

namespace gpdact {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using Rational = boost::rational<std::int64_t>;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Linearized 2-morphism. Rows are source elements and columns target
/// elements, both ordered by stage and then by element id, so a vertical
/// composite sigma then tau is the product Q(sigma) * Q(tau).
struct NatMatrix {
  std::vector<ElemId> rows, cols;
  std::vector<std::string> row_labels, col_labels;
  IntMatrix entries;
};

NatMatrix q_span(const Span2& sigma);

/// Q(sigma then tau) == Q(sigma) * Q(tau), compared exactly.
CheckResult check_q_vertical(const Span2& sigma, const Span2& tau);
/// Acting on basis vectors before or after Q(sigma) gives the same vector,
/// for every pair of morphisms acting on each element.
CheckResult check_q_naturality(const Span2& sigma);

/// Right H-set H -> 1 on the right cosets K;a of each listed subgroup K of the
/// group H. Subgroups are given by their elements. Used as fixtures with
/// prescribed stabilizers.
ProfunctorPtr coset_profunctor(const GroupoidPtr& h, const std::vector<std::vector<MorId>>& subgroups,
                               std::string name = "U");

/// Linear combination over a finite basis with exact rational coefficients.
using RationalVector = std::vector<Rational>;

struct SigmaPiReport {
  std::vector<CheckResult> checks;
  std::size_t orbit_pairs = 0;
  std::vector<std::size_t> stabilizer_orders;  // distinct, sorted
};

/// For s : G -> H and u : H -> J over a group H, compares the classes of
/// compose(s, u) with intertwiners between the H-orbits on every orbit pair,
/// using the stabilizer-averaged sigma and pi(L) = (L(u0), u0). Asserts both
/// inverse identities and representative independence in exact arithmetic.
SigmaPiReport sigma_pi_check(const ProfunctorPtr& s, const ProfunctorPtr& u);

/// sigma applied to the class of (s', u0 . h): the value L(u0) in the orbit
/// of s', indexed by element id of s. Exposed for hand-computed examples.
RationalVector sigma_value(const ProfunctorPtr& s, const ProfunctorPtr& u, ElemId s_elem, ElemId u0, MorId h);

/// chi_k(g) for an abelian group; row 0 is the trivial character.
struct CharacterTable {
  std::size_t order = 0;
  ComplexMatrix table;  // table(k, g)
  double tolerance = 1e-12;
};

/// Throws NonAbelian for nonabelian input.
CharacterTable character_table(const GroupoidPtr& group);
/// max |chi_a . chi_b / n - [a == b]|.
double orthonormality_deviation(const CharacterTable& t);
/// max over (g, k) of | |<e_g, chi_k / sqrt n>|^2 - 1/n |.
double mub_deviation(const CharacterTable& t);
double check_mub(const GroupoidPtr& group);

/// |g> -> |a g>.
ComplexMatrix translation(const GroupoidPtr& group, MorId a);
/// |g> -> chi_k(g) |g>.
ComplexMatrix phase(const CharacterTable& t, std::size_t k);
/// Bell-type state sum_g chi_k(g) |g>|a g> / sqrt n on two registers.
ComplexVector bell_state(const GroupoidPtr& group, const CharacterTable& t, MorId a, std::size_t k);
/// Correction applied after outcome (a, k): undo the translation, then the phase.
ComplexMatrix correction(const GroupoidPtr& group, const CharacterTable& t, MorId a, std::size_t k);

struct BranchResult {
  MorId a = 0;
  std::size_t k = 0;
  double probability = 0;
  double fidelity = 0;
};

struct TeleportReport {
  std::vector<BranchResult> branches;
  double min_fidelity = 1;
  double max_probability_error = 0;
  std::vector<CheckResult> checks;
};

/// Three registers: input, and the two halves of the resource state. The
/// first two are measured in the Bell-type basis, the third corrected.
/// Unnormalized on |state| != 1; NonAbelian on nonabelian input.
TeleportReport teleportation_simulation(const GroupoidPtr& group, const ComplexVector& state);
ComplexVector random_state(std::size_t n, std::mt19937_64& rng);

struct DenseCodeReport {
  std::size_t messages = 0;
  std::size_t decoded = 0;
  double max_deviation = 0;  // from the ideal 0/1 outcome distribution
  std::vector<CheckResult> checks;
};

/// Encodes each message (a, k) on one half of the resource state and decodes
/// it with a joint measurement in the Bell-type basis.
DenseCodeReport dense_coding_simulation(const GroupoidPtr& group);
/// Single message.
DenseCodeReport dense_coding_simulation(const GroupoidPtr& group, MorId a, std::size_t k);

}  // namespace gpdact
