#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gpdact/groupoid.hpp"

namespace gpdact {

using ElemId = std::size_t;
using StageId = std::size_t;

class Profunctor;
using ProfunctorPtr = std::shared_ptr<const Profunctor>;

/// Bookkeeping for a composite built by compose_profunctors: every raw pair
/// (s, u) with its class, so cells on the factors can be lifted.
struct CompositeFactors {
  ProfunctorPtr first;   // S : G -> H
  ProfunctorPtr second;  // U : H -> J
  std::vector<std::pair<ElemId, ElemId>> raw;  // raw pairs (s, u)
  std::vector<ElemId> raw_class;               // raw index -> composite element
  std::vector<std::vector<std::size_t>> members;  // composite element -> raw indices, rep first
  std::vector<std::size_t> pair_index;         // s * |U| + u -> raw index or npos

  std::size_t raw_of(ElemId s, ElemId u) const { return pair_index[s * second_size + u]; }
  ElemId class_of(ElemId s, ElemId u) const {
    const std::size_t r = raw_of(s, u);
    return r == npos ? npos : raw_class[r];
  }
  std::pair<ElemId, ElemId> rep(ElemId c) const { return raw[members[c].front()]; }
  std::size_t second_size = 0;
};

/// A set-valued functor S : H^op x G -> Set between finite groupoids, stored
/// as explicit action tables. Stage (x, y) pairs a target object x of H with
/// a source object y of G. The left action is by H-morphisms h : x' -> x and
/// moves stage (x, y) to (x', y); the right action is by G-morphisms
/// g : y -> y' and moves (x, y) to (x, y').
class Profunctor {
 public:
  const GroupoidPtr& source() const { return source_; }
  const GroupoidPtr& target() const { return target_; }

  std::size_t element_count() const { return stage_of_.size(); }
  std::size_t stage_count() const { return stages_.size(); }
  StageId stage_id(ObjId target_obj, ObjId source_obj) const {
    return target_obj * source_->object_count() + source_obj;
  }
  ObjId stage_target(StageId st) const { return st / source_->object_count(); }
  ObjId stage_source(StageId st) const { return st % source_->object_count(); }
  StageId stage_of(ElemId e) const { return stage_of_[e]; }
  std::span<const ElemId> stage(StageId st) const { return stages_[st]; }
  std::span<const ElemId> stage(ObjId target_obj, ObjId source_obj) const {
    return stages_[stage_id(target_obj, source_obj)];
  }

  /// h . e, npos if tgt(h) is not the target object of e's stage.
  ElemId left(MorId h, ElemId e) const {
    return left_[h * element_count() + e];
  }
  /// e . g, npos if src(g) is not the source object of e's stage.
  ElemId right(ElemId e, MorId g) const {
    return right_[e * source_->morphism_count() + g];
  }

  const std::string& label(ElemId e) const { return labels_[e]; }
  std::optional<ElemId> find(const std::string& label) const;

  const std::string& name() const { return name_; }
  /// Present when built by compose_profunctors.
  const std::shared_ptr<const CompositeFactors>& factors() const { return factors_; }

  /// Raw construction; validates functoriality, commutation and stage typing.
  /// `left[h][e]` and `right[e][g]` use npos where undefined.
  static ProfunctorPtr make(GroupoidPtr source, GroupoidPtr target, std::vector<StageId> stage_of,
                            std::vector<std::string> labels, std::vector<ElemId> left, std::vector<ElemId> right,
                            std::string name = {}, std::shared_ptr<const CompositeFactors> factors = {});

  friend bool operator==(const Profunctor& a, const Profunctor& b);

 private:
  void validate() const;

  GroupoidPtr source_;
  GroupoidPtr target_;
  std::string name_;
  std::vector<StageId> stage_of_;
  std::vector<std::vector<ElemId>> stages_;
  std::vector<std::string> labels_;
  std::vector<ElemId> left_;
  std::vector<ElemId> right_;
  std::shared_ptr<const CompositeFactors> factors_;
};

/// Pointer equality first, then structure (groupoids, stages, actions).
bool same_profunctor(const ProfunctorPtr& a, const ProfunctorPtr& b);
/// Human-readable "name : G -> H".
std::string describe(const Profunctor& p);

/// Identity 1-morphism: stage (a, b) = Hom(a, b); element id = morphism id.
ProfunctorPtr hom_profunctor(const GroupoidPtr& g);

/// The boundary 1 -> G: stage (x, *) = End(x), h . l = h;l. Requires skeletal G.
/// Element id = morphism id.
ProfunctorPtr boundary_left(const GroupoidPtr& g);
/// The boundary G -> 1: stage (*, x) = End(x), r . g = r;g. Requires skeletal G.
ProfunctorPtr boundary_right(const GroupoidPtr& g);

/// A free system 1 -> 1 with `labels.size()` states.
ProfunctorPtr set_profunctor(const std::vector<std::string>& labels, std::string name = "S");
ProfunctorPtr set_profunctor(std::size_t size, std::string name = "S");

/// Coend composite: s first (G -> H), then t (H -> J), giving G -> J.
/// Elements are the classes of raw pairs (s, u) under (h.s, u) ~ (s, u.h),
/// ordered by stage and then by canonical (least) representative.
/// Results are memoized while both inputs are alive.
ProfunctorPtr compose_profunctors(const ProfunctorPtr& s, const ProfunctorPtr& t);

/// Stagewise product s (G -> H) x t (G' -> H') : G x G' -> H x H'.
/// Element ids are row-major: (a, b) -> a * |t| + b.
ProfunctorPtr tensor_profunctors(const ProfunctorPtr& s, const ProfunctorPtr& t);

}  // namespace gpdact
