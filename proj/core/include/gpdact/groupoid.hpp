#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace gpdact {

using ObjId = std::size_t;
using MorId = std::size_t;
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Unvalidated groupoid description, as read from a file or built in code.
struct GroupoidSpec {
  struct Morphism {
    std::string name;
    std::string source;
    std::string target;
  };
  struct Composite {
    std::string first;   // applied first
    std::string second;  // applied second
    std::string result;
  };
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<Composite> compose;
};

class Groupoid;
using GroupoidPtr = std::shared_ptr<const Groupoid>;

/// Finite groupoid with a total composition table.
///
/// `compose(f, g)` is diagrammatic: f first, then g. It is defined iff
/// tgt(f) == src(g). Instances are immutable once built; build them through
/// the free functions below, which validate every axiom exhaustively.
class Groupoid {
 public:
  std::size_t object_count() const { return object_labels_.size(); }
  std::size_t morphism_count() const { return src_.size(); }

  ObjId src(MorId f) const { return src_[f]; }
  ObjId tgt(MorId f) const { return tgt_[f]; }
  MorId identity(ObjId x) const { return identity_[x]; }
  MorId inverse(MorId f) const { return inverse_[f]; }
  bool composable(MorId f, MorId g) const { return tgt_[f] == src_[g]; }
  /// npos when not composable.
  MorId compose(MorId f, MorId g) const { return table_[f * morphism_count() + g]; }

  /// Morphisms a -> b, in increasing id order.
  std::span<const MorId> hom(ObjId a, ObjId b) const { return hom_[a * object_count() + b]; }

  bool skeletal() const { return skeletal_; }
  bool is_group() const { return object_count() == 1; }
  bool is_abelian() const;

  const std::string& object_label(ObjId x) const { return object_labels_[x]; }
  const std::string& morphism_label(MorId f) const { return morphism_labels_[f]; }
  std::optional<ObjId> find_object(const std::string& label) const;
  std::optional<MorId> find_morphism(const std::string& label) const;

  /// Order of a morphism in its endomorphism group (npos if not an endomorphism).
  std::size_t order(MorId f) const;

  /// Display name (e.g. "Z/4"); informational only.
  const std::string& name() const { return name_; }

  friend bool operator==(const Groupoid& a, const Groupoid& b);

 private:
  friend class GroupoidBuilder;
  std::string name_;
  std::vector<std::string> object_labels_;
  std::vector<std::string> morphism_labels_;
  std::vector<ObjId> src_;
  std::vector<ObjId> tgt_;
  std::vector<MorId> identity_;
  std::vector<MorId> inverse_;
  std::vector<MorId> table_;
  std::vector<std::vector<MorId>> hom_;
  bool skeletal_ = true;
};

/// Structural equality (same labels, same tables), used for typing checks.
bool same_groupoid(const Groupoid& a, const Groupoid& b);
bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b);

GroupoidPtr validate_groupoid(const GroupoidSpec& spec, std::string name = {});

/// `cayley[a][b]` is the product a·b (a applied after b). Element i is labelled
/// by `labels[i]` when given, otherwise by its index.
GroupoidPtr group_as_groupoid(const std::vector<std::vector<std::size_t>>& cayley,
                              std::vector<std::string> labels = {}, std::string name = {});

/// One object per element, identities only.
GroupoidPtr discrete_groupoid(const std::vector<std::string>& elements, std::string name = {});

GroupoidPtr trivial_groupoid();

/// Objects and morphisms are pairs; ids are row-major: (a, b) -> a * |second| + b.
GroupoidPtr product(const GroupoidPtr& first, const GroupoidPtr& second);

/// Objects and morphisms of `first` come first, then those of `second`.
GroupoidPtr disjoint_union(const GroupoidPtr& first, const GroupoidPtr& second);

struct Skeleton {
  GroupoidPtr groupoid;
  /// Original object -> representative object in `groupoid`.
  std::vector<ObjId> object_map;
  /// Original object -> chosen connecting morphism (representative -> object)
  /// in the original groupoid; the lexicographically least one.
  std::vector<MorId> transport;
};

Skeleton skeletalize(const GroupoidPtr& g);

/// Catalog: Z/n (n <= 16), Z/2xZ/2, S3, D4, Q8, plus "1" for the trivial group.
/// Accepts "Z/4", "Z4", "Z2xZ2", "Z/2xZ/2", "V4"; "A+B" builds a disjoint union.
GroupoidPtr named_groupoid(const std::string& name);

/// Names accepted by `named_groupoid` that the acceptance suite iterates over.
std::vector<std::string> catalog_group_names();

}  // namespace gpdact
