#include "gpdact/profunctor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "gpdact/error.hpp"

namespace gpdact {

ProfunctorPtr Profunctor::make(GroupoidPtr source, GroupoidPtr target, std::vector<StageId> stage_of,
                               std::vector<std::string> labels, std::vector<ElemId> left, std::vector<ElemId> right,
                               std::string name, std::shared_ptr<const CompositeFactors> factors) {
  auto p = std::make_shared<Profunctor>();
  p->source_ = std::move(source);
  p->target_ = std::move(target);
  p->name_ = std::move(name);
  p->stage_of_ = std::move(stage_of);
  p->labels_ = std::move(labels);
  p->left_ = std::move(left);
  p->right_ = std::move(right);
  p->factors_ = std::move(factors);
  const std::size_t n = p->stage_of_.size();
  if (p->labels_.size() != n) throw Error(ErrorKind::InvalidProfunctor, "label count mismatch");
  if (p->left_.size() != p->target_->morphism_count() * n || p->right_.size() != n * p->source_->morphism_count())
    throw Error(ErrorKind::InvalidProfunctor, "action table has the wrong size");
  p->stages_.assign(p->target_->object_count() * p->source_->object_count(), {});
  for (ElemId e = 0; e < n; ++e) {
    if (p->stage_of_[e] >= p->stages_.size()) throw Error(ErrorKind::InvalidProfunctor, "stage out of range");
    p->stages_[p->stage_of_[e]].push_back(e);
  }
  p->validate();
  return p;
}

void Profunctor::validate() const {
  const Groupoid& G = *source_;
  const Groupoid& H = *target_;
  const std::size_t n = element_count();
  auto fail = [&](const std::string& msg) { throw Error(ErrorKind::InvalidProfunctor, msg); };
  for (ElemId e = 0; e < n; ++e) {
    const ObjId x = stage_target(stage_of_[e]);
    const ObjId y = stage_source(stage_of_[e]);
    for (MorId h = 0; h < H.morphism_count(); ++h) {
      const ElemId he = left(h, e);
      if (H.tgt(h) != x) {
        if (he != npos) fail("left action defined off-stage at " + labels_[e]);
        continue;
      }
      if (he == npos || he >= n) fail("left action of " + H.morphism_label(h) + " undefined on " + labels_[e]);
      if (stage_of_[he] != stage_id(H.src(h), y)) fail("left action lands in the wrong stage at " + labels_[e]);
    }
    for (MorId g = 0; g < G.morphism_count(); ++g) {
      const ElemId eg = right(e, g);
      if (G.src(g) != y) {
        if (eg != npos) fail("right action defined off-stage at " + labels_[e]);
        continue;
      }
      if (eg == npos || eg >= n) fail("right action of " + G.morphism_label(g) + " undefined on " + labels_[e]);
      if (stage_of_[eg] != stage_id(x, G.tgt(g))) fail("right action lands in the wrong stage at " + labels_[e]);
    }
    if (left(H.identity(x), e) != e) fail("identity does not act trivially on the left at " + labels_[e]);
    if (right(e, G.identity(y)) != e) fail("identity does not act trivially on the right at " + labels_[e]);
  }
  for (ElemId e = 0; e < n; ++e) {
    const ObjId x = stage_target(stage_of_[e]);
    const ObjId y = stage_source(stage_of_[e]);
    // (h1;h2) . e = h1 . (h2 . e) for h1 : x'' -> x', h2 : x' -> x
    for (ObjId x1 = 0; x1 < H.object_count(); ++x1) {
      for (MorId h2 : H.hom(x1, x)) {
        const ElemId e2 = left(h2, e);
        for (ObjId x2 = 0; x2 < H.object_count(); ++x2)
          for (MorId h1 : H.hom(x2, x1))
            if (left(H.compose(h1, h2), e) != left(h1, e2))
              fail("left action is not functorial at " + labels_[e]);
      }
    }
    for (ObjId y1 = 0; y1 < G.object_count(); ++y1) {
      for (MorId g1 : G.hom(y, y1)) {
        const ElemId e1 = right(e, g1);
        for (ObjId y2 = 0; y2 < G.object_count(); ++y2)
          for (MorId g2 : G.hom(y1, y2))
            if (right(e, G.compose(g1, g2)) != right(e1, g2))
              fail("right action is not functorial at " + labels_[e]);
      }
    }
    for (ObjId x1 = 0; x1 < H.object_count(); ++x1)
      for (MorId h : H.hom(x1, x))
        for (ObjId y1 = 0; y1 < G.object_count(); ++y1)
          for (MorId g : G.hom(y, y1))
            if (right(left(h, e), g) != left(h, right(e, g))) fail("actions do not commute at " + labels_[e]);
  }
}

std::optional<ElemId> Profunctor::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<ElemId>(it - labels_.begin());
}

bool operator==(const Profunctor& a, const Profunctor& b) {
  return same_groupoid(a.source_, b.source_) && same_groupoid(a.target_, b.target_) && a.stage_of_ == b.stage_of_ &&
         a.left_ == b.left_ && a.right_ == b.right_ && a.labels_ == b.labels_;
}

bool same_profunctor(const ProfunctorPtr& a, const ProfunctorPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

std::string describe(const Profunctor& p) {
  return (p.name().empty() ? std::string("P") : p.name()) + " : " + p.source()->name() + " -> " + p.target()->name();
}

namespace {

struct UnaryEntry {
  std::weak_ptr<const Groupoid> g;
  std::weak_ptr<const Profunctor> result;
};

std::mutex unary_mutex;
std::map<std::pair<const Groupoid*, int>, UnaryEntry> unary_cache;

template <class Build>
ProfunctorPtr memo_unary(const GroupoidPtr& g, int kind, Build build) {
  const auto key = std::make_pair(g.get(), kind);
  {
    std::lock_guard<std::mutex> lock(unary_mutex);
    auto it = unary_cache.find(key);
    if (it != unary_cache.end()) {
      auto a = it->second.g.lock();
      auto r = it->second.result.lock();
      if (a == g && r) return r;
      unary_cache.erase(it);
    }
  }
  ProfunctorPtr result = build();
  std::lock_guard<std::mutex> lock(unary_mutex);
  unary_cache[key] = UnaryEntry{g, result};
  return result;
}

ProfunctorPtr build_hom(const GroupoidPtr& g);
ProfunctorPtr build_left(const GroupoidPtr& g);
ProfunctorPtr build_right(const GroupoidPtr& g);

}  // namespace

ProfunctorPtr hom_profunctor(const GroupoidPtr& g) {
  return memo_unary(g, 0, [&] { return build_hom(g); });
}

ProfunctorPtr boundary_left(const GroupoidPtr& g) {
  if (!g->skeletal()) throw Error(ErrorKind::NotSkeletal, "boundary of a non-skeletal groupoid " + g->name());
  return memo_unary(g, 1, [&] { return build_left(g); });
}

ProfunctorPtr boundary_right(const GroupoidPtr& g) {
  if (!g->skeletal()) throw Error(ErrorKind::NotSkeletal, "boundary of a non-skeletal groupoid " + g->name());
  return memo_unary(g, 2, [&] { return build_right(g); });
}

namespace {

ProfunctorPtr build_hom(const GroupoidPtr& g) {
  const Groupoid& G = *g;
  const std::size_t n = G.morphism_count();
  const std::size_t k = G.object_count();
  std::vector<StageId> stage_of(n);
  std::vector<std::string> labels(n);
  std::vector<ElemId> left(n * n, npos), right(n * n, npos);
  for (MorId f = 0; f < n; ++f) {
    stage_of[f] = G.src(f) * k + G.tgt(f);
    labels[f] = G.morphism_label(f);
  }
  for (MorId h = 0; h < n; ++h)
    for (MorId f = 0; f < n; ++f)
      if (G.composable(h, f)) left[h * n + f] = G.compose(h, f);
  for (MorId f = 0; f < n; ++f)
    for (MorId h = 0; h < n; ++h)
      if (G.composable(f, h)) right[f * n + h] = G.compose(f, h);
  return Profunctor::make(g, g, std::move(stage_of), std::move(labels), std::move(left), std::move(right),
                          "hom(" + G.name() + ")");
}

ProfunctorPtr build_left(const GroupoidPtr& g) {
  const Groupoid& G = *g;
  const std::size_t n = G.morphism_count();
  auto one = trivial_groupoid();
  std::vector<StageId> stage_of(n);
  std::vector<std::string> labels(n);
  std::vector<ElemId> left(n * n, npos), right(n, npos);
  for (MorId l = 0; l < n; ++l) {
    stage_of[l] = G.src(l);  // stage (x, *) with one source object
    labels[l] = G.morphism_label(l);
    right[l] = l;
  }
  for (MorId h = 0; h < n; ++h)
    for (MorId l = 0; l < n; ++l)
      if (G.composable(h, l)) left[h * n + l] = G.compose(h, l);
  return Profunctor::make(one, g, std::move(stage_of), std::move(labels), std::move(left), std::move(right),
                          "L(" + G.name() + ")");
}

ProfunctorPtr build_right(const GroupoidPtr& g) {
  const Groupoid& G = *g;
  const std::size_t n = G.morphism_count();
  auto one = trivial_groupoid();
  std::vector<StageId> stage_of(n);
  std::vector<std::string> labels(n);
  std::vector<ElemId> left(n, npos), right(n * n, npos);
  for (MorId r = 0; r < n; ++r) {
    stage_of[r] = G.tgt(r);  // stage (*, x)
    labels[r] = G.morphism_label(r);
    left[r] = r;
  }
  for (MorId r = 0; r < n; ++r)
    for (MorId h = 0; h < n; ++h)
      if (G.composable(r, h)) right[r * n + h] = G.compose(r, h);
  return Profunctor::make(g, one, std::move(stage_of), std::move(labels), std::move(left), std::move(right),
                          "R(" + G.name() + ")");
}

}  // namespace

ProfunctorPtr set_profunctor(const std::vector<std::string>& labels, std::string name) {
  const std::size_t n = labels.size();
  std::vector<ElemId> ids(n);
  std::iota(ids.begin(), ids.end(), ElemId{0});
  return Profunctor::make(trivial_groupoid(), trivial_groupoid(), std::vector<StageId>(n, 0), labels, ids, ids,
                          std::move(name));
}

ProfunctorPtr set_profunctor(std::size_t size, std::string name) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < size; ++i) labels.push_back(std::to_string(i));
  return set_profunctor(labels, std::move(name));
}

namespace {

ProfunctorPtr build_composite(const ProfunctorPtr& sp, const ProfunctorPtr& tp) {
  const Profunctor& S = *sp;  // G -> H
  const Profunctor& U = *tp;  // H -> J
  if (!same_groupoid(S.target(), U.source()))
    throw Error(ErrorKind::TypeMismatch, "cannot compose " + describe(S) + " with " + describe(U));
  const Groupoid& G = *S.source();
  const Groupoid& H = *S.target();
  const Groupoid& J = *U.target();
  const std::size_t ns = S.element_count(), nu = U.element_count();

  auto f = std::make_shared<CompositeFactors>();
  f->first = sp;
  f->second = tp;
  f->second_size = nu;
  f->pair_index.assign(ns * nu, npos);
  // raw pairs: s in S(x, y), u in U(z, x)
  for (ElemId s = 0; s < ns; ++s) {
    const ObjId x = S.stage_target(S.stage_of(s));
    for (ObjId z = 0; z < J.object_count(); ++z) {
      for (ElemId u : U.stage(z, x)) {
        f->pair_index[s * nu + u] = f->raw.size();
        f->raw.emplace_back(s, u);
      }
    }
  }
  // Orbit of (s, u), s at middle object x: (h.s, u.h^-1) for h : x' -> x.
  // Raw pairs are generated in lexicographic order, so the first unvisited
  // pair of each orbit is its least representative.
  const std::size_t nraw = f->raw.size();
  std::vector<std::size_t> orbit_of(nraw, npos);
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t r = 0; r < nraw; ++r) {
    if (orbit_of[r] != npos) continue;
    const auto [s, u] = f->raw[r];
    const ObjId x = S.stage_target(S.stage_of(s));
    std::vector<std::size_t> members{r};
    orbit_of[r] = orbits.size();
    for (ObjId x1 = 0; x1 < H.object_count(); ++x1) {
      for (MorId h : H.hom(x1, x)) {
        const std::size_t q = f->pair_index[S.left(h, s) * nu + U.right(u, H.inverse(h))];
        if (orbit_of[q] == npos) {
          orbit_of[q] = orbits.size();
          members.push_back(q);
        } else if (orbit_of[q] != orbit_of[r]) {
          throw Error(ErrorKind::WellDefinednessFailure, "coend orbits overlap");
        }
      }
    }
    orbits.push_back(std::move(members));
  }
  // Order classes by composite stage (z, y), then by representative.
  auto stage_key = [&](std::size_t orbit) {
    const auto [s, u] = f->raw[orbits[orbit].front()];
    return U.stage_target(U.stage_of(u)) * G.object_count() + S.stage_source(S.stage_of(s));
  };
  std::vector<StageId> keys(orbits.size());
  for (std::size_t o = 0; o < orbits.size(); ++o) keys[o] = stage_key(o);
  std::vector<std::size_t> order(orbits.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  const std::size_t nc = orbits.size();
  f->raw_class.assign(nraw, npos);
  f->members.resize(nc);
  std::vector<StageId> stage_of(nc);
  std::vector<std::string> labels(nc);
  for (ElemId c = 0; c < nc; ++c) {
    f->members[c] = std::move(orbits[order[c]]);
    for (std::size_t r : f->members[c]) f->raw_class[r] = c;
    stage_of[c] = keys[order[c]];
    const auto [s, u] = f->raw[f->members[c].front()];
    labels[c] = "(" + S.label(s) + "," + U.label(u) + ")";
  }
  std::vector<ElemId> left(J.morphism_count() * nc, npos), right(nc * G.morphism_count(), npos);
  for (ElemId c = 0; c < nc; ++c) {
    const auto [s, u] = f->rep(c);
    const ObjId z = U.stage_target(U.stage_of(u));
    const ObjId y = S.stage_source(S.stage_of(s));
    for (ObjId z1 = 0; z1 < J.object_count(); ++z1)
      for (MorId j : J.hom(z1, z)) left[j * nc + c] = f->class_of(s, U.left(j, u));
    for (ObjId y1 = 0; y1 < G.object_count(); ++y1)
      for (MorId g : G.hom(y, y1)) right[c * G.morphism_count() + g] = f->class_of(S.right(s, g), u);
  }
  std::string name = "(" + (S.name().empty() ? std::string("S") : S.name()) + ";" +
                     (U.name().empty() ? std::string("T") : U.name()) + ")";
  return Profunctor::make(S.source(), U.target(), std::move(stage_of), std::move(labels), std::move(left),
                          std::move(right), std::move(name), std::move(f));
}

struct CacheEntry {
  std::weak_ptr<const Profunctor> s, t, result;
};

std::mutex cache_mutex;
std::map<std::pair<const Profunctor*, const Profunctor*>, CacheEntry> cache;

}  // namespace

ProfunctorPtr compose_profunctors(const ProfunctorPtr& s, const ProfunctorPtr& t) {
  const auto key = std::make_pair(s.get(), t.get());
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) {
      auto a = it->second.s.lock();
      auto b = it->second.t.lock();
      auto r = it->second.result.lock();
      if (a == s && b == t && r) return r;
      cache.erase(it);
    }
  }
  auto result = build_composite(s, t);
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (cache.size() > 4096) {
    for (auto it = cache.begin(); it != cache.end();)
      it = it->second.result.expired() ? cache.erase(it) : std::next(it);
  }
  cache[key] = CacheEntry{s, t, result};
  return result;
}

ProfunctorPtr tensor_profunctors(const ProfunctorPtr& sp, const ProfunctorPtr& tp) {
  const Profunctor& S = *sp;
  const Profunctor& T = *tp;
  auto G = product(S.source(), T.source());
  auto H = product(S.target(), T.target());
  const std::size_t ns = S.element_count(), nt = T.element_count();
  const std::size_t n = ns * nt;
  const std::size_t gm2 = T.source()->morphism_count(), hm2 = T.target()->morphism_count();
  const std::size_t go2 = T.source()->object_count(), ho2 = T.target()->object_count();
  std::vector<StageId> stage_of(n);
  std::vector<std::string> labels(n);
  std::vector<ElemId> left(H->morphism_count() * n, npos), right(n * G->morphism_count(), npos);
  for (ElemId a = 0; a < ns; ++a) {
    for (ElemId b = 0; b < nt; ++b) {
      const ElemId e = a * nt + b;
      const ObjId x = S.stage_target(S.stage_of(a)) * ho2 + T.stage_target(T.stage_of(b));
      const ObjId y = S.stage_source(S.stage_of(a)) * go2 + T.stage_source(T.stage_of(b));
      stage_of[e] = x * G->object_count() + y;
      labels[e] = "(" + S.label(a) + "," + T.label(b) + ")";
    }
  }
  for (MorId h = 0; h < H->morphism_count(); ++h) {
    for (ElemId e = 0; e < n; ++e) {
      const ElemId l1 = S.left(h / hm2, e / nt), l2 = T.left(h % hm2, e % nt);
      if (l1 != npos && l2 != npos) left[h * n + e] = l1 * nt + l2;
    }
  }
  for (ElemId e = 0; e < n; ++e) {
    for (MorId g = 0; g < G->morphism_count(); ++g) {
      const ElemId r1 = S.right(e / nt, g / gm2), r2 = T.right(e % nt, g % gm2);
      if (r1 != npos && r2 != npos) right[e * G->morphism_count() + g] = r1 * nt + r2;
    }
  }
  return Profunctor::make(G, H, std::move(stage_of), std::move(labels), std::move(left), std::move(right),
                          S.name() + "x" + T.name());
}

}  // namespace gpdact
