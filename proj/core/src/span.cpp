#include "gpdact/span.hpp"

#include <algorithm>
#include <sstream>

#include "gpdact/error.hpp"

namespace gpdact {

Span2::Span2(ProfunctorPtr src, ProfunctorPtr tgt) : src_(std::move(src)), tgt_(std::move(tgt)) {
  rows_.resize(src_->element_count());
}

Mult Span2::at(ElemId s, ElemId t) const {
  const auto& r = rows_[s];
  auto it = std::lower_bound(r.begin(), r.end(), t, [](const SpanEntry& e, ElemId v) { return e.t < v; });
  return it != r.end() && it->t == t ? it->m : 0;
}

std::size_t Span2::support_size() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

std::vector<Triple> Span2::entries() const {
  std::vector<Triple> out;
  for (ElemId s = 0; s < rows_.size(); ++s)
    for (const auto& e : rows_[s]) out.emplace_back(s, e.t, e.m);
  return out;
}

void Span2::add_unchecked(ElemId s, ElemId t, Mult m) {
  if (m == 0) return;
  auto& r = rows_[s];
  auto it = std::lower_bound(r.begin(), r.end(), t, [](const SpanEntry& e, ElemId v) { return e.t < v; });
  if (it != r.end() && it->t == t)
    it->m += m;
  else
    r.insert(it, SpanEntry{t, m});
}

void Span2::set_unchecked(ElemId s, ElemId t, Mult m) {
  auto& r = rows_[s];
  auto it = std::lower_bound(r.begin(), r.end(), t, [](const SpanEntry& e, ElemId v) { return e.t < v; });
  if (it != r.end() && it->t == t) {
    if (m == 0)
      r.erase(it);
    else
      it->m = m;
  } else if (m != 0) {
    r.insert(it, SpanEntry{t, m});
  }
}

namespace {

void require_parallel(const Profunctor& s, const Profunctor& t) {
  if (!same_groupoid(s.source(), t.source()) || !same_groupoid(s.target(), t.target()))
    throw Error(ErrorKind::TypeMismatch, "profunctors are not parallel: " + describe(s) + " vs " + describe(t));
}

// Scratch accumulator over a dense index range.
class Accumulator {
 public:
  explicit Accumulator(std::size_t n) : values_(n, 0) {}
  void add(std::size_t i, Mult m) {
    if (values_[i] == 0) touched_.push_back(i);
    values_[i] += m;
  }
  Mult get(std::size_t i) const { return values_[i]; }
  const std::vector<std::size_t>& touched() const { return touched_; }
  void sort() { std::sort(touched_.begin(), touched_.end()); }
  void clear() {
    for (std::size_t i : touched_) values_[i] = 0;
    touched_.clear();
  }

 private:
  std::vector<Mult> values_;
  std::vector<std::size_t> touched_;
};

}  // namespace

Span2 make_span_unchecked(const ProfunctorPtr& s, const ProfunctorPtr& t, const std::vector<Triple>& entries) {
  require_parallel(*s, *t);
  Span2 out(s, t);
  for (const auto& [a, b, m] : entries) {
    if (a >= s->element_count() || b >= t->element_count())
      throw Error(ErrorKind::StageMismatch, "span entry references a missing element");
    if (m == 0) continue;
    if (s->stage_of(a) != t->stage_of(b))
      throw Error(ErrorKind::StageMismatch, "entry (" + s->label(a) + ", " + t->label(b) + ") crosses stages");
    out.add_unchecked(a, b, m);
  }
  return out;
}

Span2 make_span(const ProfunctorPtr& s, const ProfunctorPtr& t, const std::vector<Triple>& entries) {
  Span2 out = make_span_unchecked(s, t, entries);
  require_natural(out);
  return out;
}

std::optional<std::string> naturality_witness(const Span2& sigma) {
  const Profunctor& S = *sigma.src();
  const Profunctor& T = *sigma.tgt();
  const Groupoid& G = *S.source();
  const Groupoid& H = *S.target();
  // Every action is invertible, so comparing each support entry with its
  // images under single morphisms covers zero entries as well.
  for (ElemId s = 0; s < S.element_count(); ++s) {
    const ObjId x = S.stage_target(S.stage_of(s));
    const ObjId y = S.stage_source(S.stage_of(s));
    for (const auto& [t, m] : sigma.row(s)) {
      for (ObjId x1 = 0; x1 < H.object_count(); ++x1) {
        for (MorId h : H.hom(x1, x)) {
          const Mult m2 = sigma.at(S.left(h, s), T.left(h, t));
          if (m2 != m) {
            std::ostringstream os;
            os << "left action of " << H.morphism_label(h) << ": sigma(" << S.label(s) << ", " << T.label(t)
               << ") = " << m << " but sigma(" << S.label(S.left(h, s)) << ", " << T.label(T.left(h, t))
               << ") = " << m2;
            return os.str();
          }
        }
      }
      for (ObjId y1 = 0; y1 < G.object_count(); ++y1) {
        for (MorId g : G.hom(y, y1)) {
          const Mult m2 = sigma.at(S.right(s, g), T.right(t, g));
          if (m2 != m) {
            std::ostringstream os;
            os << "right action of " << G.morphism_label(g) << ": sigma(" << S.label(s) << ", " << T.label(t)
               << ") = " << m << " but sigma(" << S.label(S.right(s, g)) << ", " << T.label(T.right(t, g))
               << ") = " << m2;
            return os.str();
          }
        }
      }
    }
  }
  return std::nullopt;
}

void require_natural(const Span2& sigma) {
  if (auto w = naturality_witness(sigma)) throw Error(ErrorKind::NaturalityViolation, *w);
}

Span2 identity_span(const ProfunctorPtr& p) {
  Span2 out(p, p);
  for (ElemId e = 0; e < p->element_count(); ++e) out.add_unchecked(e, e, 1);
  return out;
}

Span2 zero_span(const ProfunctorPtr& s, const ProfunctorPtr& t) {
  require_parallel(*s, *t);
  return Span2(s, t);
}

Span2 vertical_compose(const Span2& sigma, const Span2& tau) {
  if (!same_profunctor(sigma.tgt(), tau.src()))
    throw Error(ErrorKind::TypeMismatch,
                "vertical composition middle mismatch: " + describe(*sigma.tgt()) + " vs " + describe(*tau.src()));
  Span2 out(sigma.src(), tau.tgt());
  Accumulator acc(tau.tgt()->element_count());
  for (ElemId s = 0; s < sigma.src()->element_count(); ++s) {
    for (const auto& [t, a] : sigma.row(s))
      for (const auto& [u, b] : tau.row(t)) acc.add(u, a * b);
    acc.sort();
    for (std::size_t u : acc.touched()) out.add_unchecked(s, u, acc.get(u));
    acc.clear();
  }
  return out;
}

Span2 horizontal_compose(const Span2& sigma, const Span2& tau) {
  const Profunctor& S = *sigma.src();
  const Profunctor& V = *tau.tgt();
  if (!same_groupoid(S.target(), tau.src()->source()))
    throw Error(ErrorKind::TypeMismatch, "horizontal composition middle mismatch: " + describe(S) + " then " +
                                             describe(*tau.src()));
  const Groupoid& H = *S.target();
  auto su = compose_profunctors(sigma.src(), tau.src());
  auto tv = compose_profunctors(sigma.tgt(), tau.tgt());
  const CompositeFactors& fs = *su->factors();
  const CompositeFactors& ft = *tv->factors();

  Span2 out(su, tv);
  Accumulator raw(ft.raw.size());
  std::vector<std::pair<ElemId, Mult>> first_row, row;

  auto compute = [&](ElemId s, ElemId u, std::vector<std::pair<ElemId, Mult>>& result) {
    const ObjId x = S.stage_target(S.stage_of(s));
    for (ObjId x1 = 0; x1 < H.object_count(); ++x1) {
      for (MorId f : H.hom(x1, x)) {
        const MorId finv = H.inverse(f);
        for (const auto& [t, a] : sigma.row(S.left(f, s))) {
          for (const auto& [w, b] : tau.row(u)) {
            const ElemId v = V.right(w, finv);
            const std::size_t r = ft.raw_of(t, v);
            if (r == npos) throw Error(ErrorKind::WellDefinednessFailure, "raw pair outside the target composite");
            raw.add(r, a * b);
          }
        }
      }
    }
    // The sum must be constant on every target class.
    result.clear();
    for (std::size_t r : raw.touched()) {
      const ElemId c = ft.raw_class[r];
      if (ft.members[c].front() != r) continue;
      result.emplace_back(c, raw.get(r));
    }
    for (std::size_t r : raw.touched()) {
      const ElemId c = ft.raw_class[r];
      const Mult expect = raw.get(ft.members[c].front());
      for (std::size_t q : ft.members[c]) {
        if (raw.get(q) != expect)
          throw Error(ErrorKind::WellDefinednessFailure,
                      "horizontal composite not constant on class " + tv->label(c) + " from source (" + S.label(s) +
                          ", " + tau.src()->label(u) + ")");
      }
    }
    raw.clear();
    std::sort(result.begin(), result.end());
  };

  for (ElemId c = 0; c < su->element_count(); ++c) {
    const auto& members = fs.members[c];
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto [s, u] = fs.raw[members[i]];
      compute(s, u, i == 0 ? first_row : row);
      if (i > 0 && row != first_row)
        throw Error(ErrorKind::WellDefinednessFailure,
                    "horizontal composite depends on the representative of " + su->label(c));
    }
    for (const auto& [d, m] : first_row) out.add_unchecked(c, d, m);
  }
  return out;
}

Span2 dagger(const Span2& sigma) {
  Span2 out(sigma.tgt(), sigma.src());
  for (ElemId s = 0; s < sigma.src()->element_count(); ++s)
    for (const auto& [t, m] : sigma.row(s)) out.add_unchecked(t, s, m);
  return out;
}

std::optional<Difference> compare(const Span2& a, const Span2& b) {
  if (!same_profunctor(a.src(), b.src()) || !same_profunctor(a.tgt(), b.tgt()))
    throw Error(ErrorKind::TypeMismatch, "compared spans are not parallel: " + describe(*a.src()) + " => " +
                                             describe(*a.tgt()) + " vs " + describe(*b.src()) + " => " +
                                             describe(*b.tgt()));
  for (ElemId s = 0; s < a.src()->element_count(); ++s) {
    if (a.row(s).size() == b.row(s).size() &&
        std::equal(a.row(s).begin(), a.row(s).end(), b.row(s).begin(),
                   [](const SpanEntry& x, const SpanEntry& y) { return x.t == y.t && x.m == y.m; }))
      continue;
    // locate the least differing target
    std::size_t i = 0, j = 0;
    const auto& ra = a.row(s);
    const auto& rb = b.row(s);
    while (i < ra.size() || j < rb.size()) {
      const ElemId ta = i < ra.size() ? ra[i].t : npos;
      const ElemId tb = j < rb.size() ? rb[j].t : npos;
      const ElemId t = std::min(ta, tb);
      const Mult ma = ta == t ? ra[i].m : 0;
      const Mult mb = tb == t ? rb[j].m : 0;
      if (ma != mb) {
        Difference d{s, t, ma, mb, {}};
        d.describe = "(" + a.src()->label(s) + ", " + a.tgt()->label(t) + "): " + std::to_string(ma) +
                     " vs " + std::to_string(mb);
        return d;
      }
      if (ta == t) ++i;
      if (tb == t) ++j;
    }
  }
  return std::nullopt;
}

bool equals(const Span2& a, const Span2& b) { return !compare(a, b).has_value(); }

UnitaryCheck is_unitary(const Span2& sigma) {
  const Span2 d = dagger(sigma);
  if (auto diff = compare(vertical_compose(sigma, d), identity_span(sigma.src())))
    return {false, "dagger after sigma differs from identity at " + diff->describe};
  if (auto diff = compare(vertical_compose(d, sigma), identity_span(sigma.tgt())))
    return {false, "sigma after dagger differs from identity at " + diff->describe};
  return {true, {}};
}

Span2 left_unitor(const ProfunctorPtr& p) {
  auto c = compose_profunctors(hom_profunctor(p->source()), p);
  const CompositeFactors& f = *c->factors();
  Span2 out(c, p);
  for (ElemId e = 0; e < c->element_count(); ++e) {
    const auto [m, q] = f.rep(e);
    out.add_unchecked(e, p->right(q, m), 1);
  }
  return out;
}

Span2 right_unitor(const ProfunctorPtr& p) {
  auto c = compose_profunctors(p, hom_profunctor(p->target()));
  const CompositeFactors& f = *c->factors();
  Span2 out(c, p);
  for (ElemId e = 0; e < c->element_count(); ++e) {
    const auto [q, m] = f.rep(e);
    out.add_unchecked(e, p->left(m, q), 1);
  }
  return out;
}

Span2 associator(const ProfunctorPtr& s, const ProfunctorPtr& t, const ProfunctorPtr& u) {
  auto st = compose_profunctors(s, t);
  auto tu = compose_profunctors(t, u);
  auto lhs = compose_profunctors(st, u);
  auto rhs = compose_profunctors(s, tu);
  const CompositeFactors& fl = *lhs->factors();
  const CompositeFactors& fst = *st->factors();
  const CompositeFactors& ftu = *tu->factors();
  const CompositeFactors& fr = *rhs->factors();
  Span2 out(lhs, rhs);
  for (ElemId e = 0; e < lhs->element_count(); ++e) {
    const auto [a, z] = fl.rep(e);
    const auto [x, y] = fst.rep(a);
    out.add_unchecked(e, fr.class_of(x, ftu.class_of(y, z)), 1);
  }
  return out;
}

std::vector<std::vector<std::pair<ElemId, ElemId>>> pair_orbits(const Profunctor& S, const Profunctor& T) {
  const Groupoid& G = *S.source();
  const Groupoid& H = *S.target();
  std::vector<std::vector<std::pair<ElemId, ElemId>>> orbits;
  const std::size_t nt = T.element_count();
  std::vector<bool> seen(S.element_count() * nt, false);
  for (ElemId s0 = 0; s0 < S.element_count(); ++s0) {
    for (ElemId t0 : T.stage(S.stage_of(s0))) {
      if (seen[s0 * nt + t0]) continue;
      std::vector<std::pair<ElemId, ElemId>> orbit{{s0, t0}};
      seen[s0 * nt + t0] = true;
      for (std::size_t i = 0; i < orbit.size(); ++i) {
        const auto [s, t] = orbit[i];
        const ObjId x = S.stage_target(S.stage_of(s));
        const ObjId y = S.stage_source(S.stage_of(s));
        auto visit = [&](ElemId a, ElemId b) {
          if (!seen[a * nt + b]) {
            seen[a * nt + b] = true;
            orbit.emplace_back(a, b);
          }
        };
        for (ObjId x1 = 0; x1 < H.object_count(); ++x1)
          for (MorId h : H.hom(x1, x)) visit(S.left(h, s), T.left(h, t));
        for (ObjId y1 = 0; y1 < G.object_count(); ++y1)
          for (MorId g : G.hom(y, y1)) visit(S.right(s, g), T.right(t, g));
      }
      std::sort(orbit.begin(), orbit.end());
      orbits.push_back(std::move(orbit));
    }
  }
  return orbits;
}

Span2 random_natural_span(const ProfunctorPtr& s, const ProfunctorPtr& t, std::mt19937_64& rng, Mult max_mult,
                          double density) {
  require_parallel(*s, *t);
  Span2 out(s, t);
  std::bernoulli_distribution present(density);
  std::uniform_int_distribution<Mult> mult(1, std::max<Mult>(1, max_mult));
  for (const auto& orbit : pair_orbits(*s, *t)) {
    if (!present(rng)) continue;
    const Mult m = mult(rng);
    for (const auto& [a, b] : orbit) out.add_unchecked(a, b, m);
  }
  return out;
}

}  // namespace gpdact
