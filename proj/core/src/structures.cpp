#include "gpdact/structures.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gpdact/error.hpp"

namespace gpdact {

ElemId CanonicalCells::bubble_element(MorId m) const {
  return bubble->factors()->class_of(m, g->identity(g->src(m)));
}

MorId CanonicalCells::bubble_morphism(ElemId e) const {
  const auto [l, r] = bubble->factors()->rep(e);
  return g->compose(r, l);
}

CanonicalCells canonical_cells(const GroupoidPtr& g) {
  if (!g->skeletal()) throw Error(ErrorKind::NotSkeletal, g->name() + " is not skeletal");
  CanonicalCells c;
  c.g = g;
  c.L = boundary_left(g);
  c.R = boundary_right(g);
  c.hom = hom_profunctor(g);
  c.unit = hom_profunctor(trivial_groupoid());
  c.bubble = compose_profunctors(c.L, c.R);
  c.loop = compose_profunctors(c.R, c.L);

  std::vector<Triple> mu;
  const CompositeFactors& lf = *c.loop->factors();
  for (ElemId e = 0; e < c.loop->element_count(); ++e) {
    const auto [r, l] = lf.rep(e);
    if (g->composable(l, r)) mu.emplace_back(e, g->compose(l, r), 1);
  }
  c.mu = make_span(c.loop, c.hom, mu);
  c.mu_dagger = dagger(c.mu);

  std::vector<Triple> eps;
  const CompositeFactors& bf = *c.bubble->factors();
  for (ElemId e = 0; e < c.bubble->element_count(); ++e) {
    const auto [l, r] = bf.rep(e);
    const MorId m = g->compose(r, l);
    if (m == g->identity(g->src(m))) eps.emplace_back(e, 0, 1);
  }
  c.epsilon = make_span(c.bubble, c.unit, eps);
  c.epsilon_dagger = dagger(c.epsilon);
  return c;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.pass; });
}

namespace {

CheckResult equality(std::string name, const Span2& a, const Span2& b) {
  CheckResult r{std::move(name), true, {}};
  try {
    if (auto d = compare(a, b)) {
      r.pass = false;
      r.witness = d->describe;
    }
  } catch (const Error& e) {
    r.pass = false;
    r.witness = e.what();
  }
  return r;
}

CheckResult unitarity(std::string name, const Span2& s) {
  auto u = is_unitary(s);
  return CheckResult{std::move(name), u.unitary, u.witness};
}

// Runs a check body and turns library errors into failed checks.
template <class Fn>
void guarded(std::vector<CheckResult>& out, const std::string& name, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    out.push_back(CheckResult{name, false, e.what()});
  }
}

TermPtr cell(const std::string& name, const Span2& s) { return leaf(name, s); }

}  // namespace

TermPtr snake_term(const CanonicalCells& c, int which) {
  switch (which) {
    case 0: {
      Diagram d({c.R});
      d.insert_identity(0).apply(0, 1, cell("mu^dag", c.mu_dagger), {c.R, c.L});
      d.apply(1, 2, cell("eps", c.epsilon), {c.unit}).remove_identity(1);
      return d.term();
    }
    case 1: {
      Diagram d({c.R});
      d.insert_identity(1).apply(1, 1, cell("eps^dag", c.epsilon_dagger), {c.L, c.R});
      d.apply(0, 2, cell("mu", c.mu), {c.hom}).remove_identity(0);
      return d.term();
    }
    case 2: {
      Diagram d({c.L});
      d.insert_identity(1).apply(1, 1, cell("mu^dag", c.mu_dagger), {c.R, c.L});
      d.apply(0, 2, cell("eps", c.epsilon), {c.unit}).remove_identity(0);
      return d.term();
    }
    case 3: {
      Diagram d({c.L});
      d.insert_identity(0).apply(0, 1, cell("eps^dag", c.epsilon_dagger), {c.L, c.R});
      d.apply(1, 2, cell("mu", c.mu), {c.hom}).remove_identity(1);
      return d.term();
    }
  }
  throw Error(ErrorKind::Unsupported, "snake index out of range");
}

std::vector<CheckResult> check_topological_axioms(const CanonicalCells& c) {
  std::vector<CheckResult> out;
  const char* side[2] = {"right boundary", "left boundary"};
  for (int k = 0; k < 2; ++k) {
    const std::string base = side[k];
    guarded(out, base + ": snakes", [&] {
      const Span2 s1 = evaluate_term(snake_term(c, 2 * k));
      const Span2 s2 = evaluate_term(snake_term(c, 2 * k + 1));
      const Span2 id = identity_span(k == 0 ? c.R : c.L);
      out.push_back(equality(base + ": snake through mu^dag, eps equals identity", s1, id));
      out.push_back(equality(base + ": snake through eps^dag, mu equals identity", s2, id));
      out.push_back(equality(base + ": both snakes agree", s1, s2));
    });
  }
  return out;
}

std::vector<CheckResult> check_topological_axioms(const GroupoidPtr& g) {
  return check_topological_axioms(canonical_cells(skeletalize(g).groupoid));
}

// ---------------------------------------------------------------------------

Span2 controlled_span(const CanonicalCells& c, const ProfunctorPtr& s, const ControlledData& data) {
  auto p = compose_profunctors(c.R, s);
  const CompositeFactors& f = *p->factors();
  const Groupoid& G = *c.g;
  std::vector<Triple> entries;
  for (ElemId e = 0; e < p->element_count(); ++e) {
    const auto [r, st] = f.rep(e);
    for (const auto& d : data.entries) {
      if (d.s != st || G.src(d.k) != G.src(r) || d.m == 0) continue;
      if (d.k >= G.morphism_count() || G.src(d.k) != G.tgt(d.k) || d.s_next >= s->element_count())
        throw Error(ErrorKind::InvalidElement, "controlled data entry out of range");
      entries.emplace_back(e, f.class_of(G.compose(d.k, r), d.s_next), d.m);
    }
  }
  return make_span(p, p, entries);
}

Span2 curry_controlled(const CanonicalCells& c, const ProfunctorPtr& s, const Span2& sigma) {
  Diagram d({s});
  d.insert_identity(0).apply(0, 1, cell("eps^dag", c.epsilon_dagger), {c.L, c.R});
  d.apply(1, 2, cell("sigma", sigma), {c.R, s}).finish({2, 1});
  return d.evaluate();
}

Span2 uncurry_controlled(const CanonicalCells& c, const ProfunctorPtr& s, const Span2& curried) {
  Diagram d({c.R, s});
  d.apply(1, 1, cell("curried", curried), {c.L, c.R, s}, {}, {2, 1});
  d.apply(0, 2, cell("mu", c.mu), {c.hom}).remove_identity(0);
  return d.evaluate();
}

ControlledData curried_data(const CanonicalCells& c, const ProfunctorPtr& s, const Span2& curried) {
  auto target = compose_profunctors(c.bubble, s);
  if (!same_profunctor(curried.src(), s) || !same_profunctor(curried.tgt(), target))
    throw Error(ErrorKind::TypeMismatch, "curried span must have type S => compose(bubble, S)");
  const CompositeFactors& f = *target->factors();
  ControlledData out;
  for (ElemId st = 0; st < s->element_count(); ++st) {
    for (const auto& [t, m] : curried.row(st)) {
      const auto [b, s2] = f.rep(t);
      out.entries.push_back({st, c.bubble_morphism(b), s2, m});
    }
  }
  return out;
}

std::size_t logical_state_violations(const CanonicalCells& c, const ProfunctorPtr& s, const Span2& sigma) {
  auto p = compose_profunctors(c.R, s);
  const CompositeFactors& f = *p->factors();
  std::size_t bad = 0;
  for (ElemId e = 0; e < sigma.src()->element_count(); ++e) {
    for (const auto& [t, m] : sigma.row(e)) {
      (void)m;
      if (c.g->src(f.rep(e).first) != c.g->src(f.rep(t).first)) ++bad;
    }
  }
  return bad;
}

std::vector<std::string> phenomenon_names(std::uint32_t tags) {
  std::vector<std::string> out;
  if (tags & kLogicalStatePreserved) out.emplace_back("logical-state-preserved");
  if (tags & kMicrostatePerturbed) out.emplace_back("microstate-perturbed");
  if (tags & kLogicalControl) out.emplace_back("logical-control");
  if (tags & kMicrostateBlind) out.emplace_back("microstate-blind");
  if (tags & kLogicalReadout) out.emplace_back("logical-readout");
  return out;
}

namespace {

// One local choice per object, as a list of (s, k index in End(x), s').
using LocalChoice = std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t local_count(std::size_t end_size, std::size_t s_size, ControlledMode mode) {
  std::uint64_t n = 1;
  if (mode == ControlledMode::Relational) {
    const std::size_t bits = s_size * s_size * end_size;
    for (std::size_t i = 0; i < bits; ++i) n = saturating_mul(n, 2);
  } else {
    for (std::size_t i = 0; i < s_size; ++i) n = saturating_mul(n, end_size * s_size);
  }
  return n;
}

LocalChoice decode_local(std::uint64_t code, std::size_t end_size, std::size_t s_size, ControlledMode mode) {
  LocalChoice out;
  if (mode == ControlledMode::Relational) {
    std::size_t bit = 0;
    for (std::size_t s = 0; s < s_size; ++s)
      for (std::size_t k = 0; k < end_size; ++k)
        for (std::size_t s2 = 0; s2 < s_size; ++s2, ++bit)
          if (code >> bit & 1u) out.emplace_back(s, k, s2);
  } else {
    const std::uint64_t radix = end_size * s_size;
    for (std::size_t s = 0; s < s_size; ++s) {
      const std::uint64_t v = code % radix;
      code /= radix;
      out.emplace_back(s, v / s_size, v % s_size);
    }
  }
  return out;
}

}  // namespace

std::uint64_t count_controlled(const GroupoidPtr& g, std::size_t s_size, ControlledMode mode) {
  std::uint64_t n = 1;
  for (ObjId x = 0; x < g->object_count(); ++x)
    n = saturating_mul(n, local_count(g->hom(x, x).size(), s_size, mode));
  return n;
}

std::uint32_t controlled_tags(const GroupoidPtr& g, std::size_t s_size, const ControlledData& data) {
  std::uint32_t tags = kLogicalStatePreserved | kMicrostateBlind;
  // Per object: transitions with the position of k inside End(x), and the
  // free-system relation alone.
  std::vector<std::set<std::tuple<std::size_t, std::size_t, std::size_t>>> behaviour(g->object_count());
  std::vector<std::set<std::pair<std::size_t, std::size_t>>> readout(g->object_count());
  for (const auto& e : data.entries) {
    if (e.m == 0) continue;
    const ObjId x = g->src(e.k);
    if (e.k != g->identity(x)) tags |= kMicrostatePerturbed;
    auto hom = g->hom(x, x);
    const auto pos = static_cast<std::size_t>(std::find(hom.begin(), hom.end(), e.k) - hom.begin());
    behaviour[x].emplace(e.s, pos, e.s_next);
    readout[x].emplace(e.s, e.s_next);
  }
  (void)s_size;
  for (ObjId x = 1; x < g->object_count(); ++x) {
    if (behaviour[x] != behaviour[0]) tags |= kLogicalControl;
    if (readout[x] != readout[0]) tags |= kLogicalReadout;
  }
  return tags;
}

std::uint64_t classify_controlled(const GroupoidPtr& g, std::size_t s_size, ControlledMode mode, std::uint64_t cap,
                                  const std::function<void(const ControlledOp&)>& visit) {
  if (!g->skeletal()) throw Error(ErrorKind::NotSkeletal, g->name() + " is not skeletal");
  const std::uint64_t total = count_controlled(g, s_size, mode);
  if (total > cap)
    throw Error(ErrorKind::CapExceeded, std::to_string(total == UINT64_MAX ? 0 : total) +
                                            " candidate operations exceed the cap of " + std::to_string(cap) +
                                            (total == UINT64_MAX ? " (count overflowed)" : ""));
  const std::size_t k = g->object_count();
  std::vector<std::uint64_t> radix(k);
  for (ObjId x = 0; x < k; ++x) radix[x] = local_count(g->hom(x, x).size(), s_size, mode);
  std::vector<std::uint64_t> digit(k, 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    ControlledOp op;
    for (ObjId x = 0; x < k; ++x) {
      auto hom = g->hom(x, x);
      for (const auto& [s, ki, s2] : decode_local(digit[x], hom.size(), s_size, mode))
        op.data.entries.push_back({s, hom[ki], s2, 1});
    }
    op.tags = controlled_tags(g, s_size, op.data);
    visit(op);
    for (ObjId x = 0; x < k; ++x) {
      if (++digit[x] < radix[x]) break;
      digit[x] = 0;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------

Span2 delta_from_table(const CanonicalCells& a, const CanonicalCells& b, const std::vector<ObjId>& table) {
  if (table.size() != a.g->morphism_count()) throw Error(ErrorKind::InvalidElement, "delta table has the wrong size");
  std::vector<Triple> entries;
  for (MorId g = 0; g < table.size(); ++g) {
    if (table[g] >= b.g->object_count()) throw Error(ErrorKind::InvalidElement, "delta table entry out of range");
    entries.emplace_back(a.bubble_element(g), b.bubble_element(b.g->identity(table[g])), 1);
  }
  return make_span(a.bubble, b.bubble, entries);
}

ComplementaryStructure build_delta(const GroupoidPtr& group, bool verify) {
  if (!group->is_group()) throw Error(ErrorKind::NotAGroup, group->name() + " has more than one object");
  ComplementaryStructure cs;
  cs.group = group;
  std::vector<std::string> labels;
  for (MorId m = 0; m < group->morphism_count(); ++m) labels.push_back(group->morphism_label(m));
  cs.discrete = discrete_groupoid(labels, "|" + group->name() + "|");
  cs.a = canonical_cells(group);
  cs.b = canonical_cells(cs.discrete);
  std::vector<ObjId> table(group->morphism_count());
  for (MorId m = 0; m < table.size(); ++m) table[m] = m;
  cs.delta = delta_from_table(cs.a, cs.b, table);
  if (verify) {
    for (const auto& r : check_complementary(cs))
      if (!r.pass) throw Error(ErrorKind::VerificationFailure, r.name + ": " + r.witness);
  }
  return cs;
}

Diagram partial_transpose_diagram(const CanonicalCells& a, const CanonicalCells& b, const Span2& rho, Side side) {
  if (side == Side::Right) {
    Diagram d({a.R, b.L});
    d.insert_identity(0).apply(0, 1, cell("mu^dag_A", a.mu_dagger), {a.R, a.L});
    d.apply(1, 2, cell("rho", rho), {b.L, b.R});
    d.apply(2, 2, cell("mu_B", b.mu), {b.hom}).remove_identity(2);
    return d;
  }
  Diagram d({b.R, a.L});
  d.insert_identity(2).apply(2, 1, cell("mu^dag_A", a.mu_dagger), {a.R, a.L});
  d.apply(1, 2, cell("rho", rho), {b.L, b.R});
  d.apply(0, 2, cell("mu_B", b.mu), {b.hom}).remove_identity(0);
  return d;
}

Span2 partial_transpose(const CanonicalCells& a, const CanonicalCells& b, const Span2& rho, Side side) {
  return partial_transpose_diagram(a, b, rho, side).evaluate();
}

Span2 unbend(const CanonicalCells& a, const CanonicalCells& b, const Span2& bent, Side side) {
  Diagram d({a.L, a.R});
  if (side == Side::Right) {
    d.insert_identity(2).apply(2, 1, cell("eps^dag_B", b.epsilon_dagger), {b.L, b.R});
    d.apply(1, 2, cell("bent", bent), {a.R, b.L});
    d.apply(0, 2, cell("eps_A", a.epsilon), {a.unit}).remove_identity(0);
  } else {
    d.insert_identity(0).apply(0, 1, cell("eps^dag_B", b.epsilon_dagger), {b.L, b.R});
    d.apply(1, 2, cell("bent", bent), {b.R, a.L});
    d.apply(2, 2, cell("eps_A", a.epsilon), {a.unit}).remove_identity(2);
  }
  return d.evaluate();
}

namespace {

std::vector<std::string> render(const Profunctor& p, const Distribution& dist) {
  std::vector<std::string> out;
  for (const auto& [e, m] : dist) out.push_back(m == 1 ? p.label(e) : p.label(e) + " x " + std::to_string(m));
  return out;
}

std::vector<ChaseStep> chase(const CanonicalCells& a, const CanonicalCells& b, const Span2& delta, MorId g, MorId g2) {
  Diagram d = partial_transpose_diagram(a, b, delta, Side::Right);
  std::vector<Span2> spans;
  for (const auto& t : d.steps()) spans.push_back(evaluate_term(t));
  const std::size_t n = spans.size();
  for (std::size_t i = n; i-- > 0;) spans.push_back(dagger(spans[i]));
  auto start_p = compose_profunctors(a.R, b.L);
  const ElemId start = start_p->factors()->class_of(g, b.g->identity(g2));
  const auto dists = trace_element(spans, start);
  std::vector<ChaseStep> out;
  out.push_back({"start", {start_p->label(start)}});
  for (std::size_t i = 0; i < dists.size(); ++i) {
    const std::string name = i < n ? "transpose " + std::to_string(i + 1) : "inverse " + std::to_string(i - n + 1);
    out.push_back({name, render(*spans[i].tgt(), dists[i])});
  }
  return out;
}

}  // namespace

std::vector<ChaseStep> element_chase(const ComplementaryStructure& cs, MorId g, MorId g2) {
  return chase(cs.a, cs.b, cs.delta, g, g2);
}

std::vector<CheckResult> check_complementary(const CanonicalCells& a, const CanonicalCells& b, const Span2& delta) {
  std::vector<CheckResult> out;
  const Groupoid& A = *a.g;
  guarded(out, "delta unitary", [&] { out.push_back(unitarity("delta unitary", delta)); });
  for (Side side : {Side::Right, Side::Left}) {
    const std::string name = side == Side::Right ? "right" : "left";
    guarded(out, name + " partial transpose", [&] {
      const Span2 t = partial_transpose(a, b, delta, side);
      out.push_back(unitarity(name + " partial transpose unitary", t));
      out.push_back(equality(name + " partial transpose bends back to delta", unbend(a, b, t, side), delta));
    });
  }
  guarded(out, "element chase", [&] {
    // The transpose sends (g, delta(g')) to (g g'^-1, delta(g')) and its
    // inverse brings it back.
    CheckResult r{"element chase returns (g, delta(g')) for all pairs", true, {}};
    auto p = compose_profunctors(a.R, b.L);
    const Span2 t = partial_transpose(a, b, delta, Side::Right);
    for (MorId g = 0; g < A.morphism_count() && r.pass; ++g) {
      for (ObjId g2 = 0; g2 < b.g->object_count() && r.pass; ++g2) {
        const auto steps = chase(a, b, delta, g, g2);
        const ElemId start = p->factors()->class_of(g, b.g->identity(g2));
        const std::vector<std::string> expect{p->label(start)};
        if (steps.back().support != expect) {
          r.pass = false;
          r.witness = "chase from " + expect.front() + " ends at {";
          for (const auto& s : steps.back().support) r.witness += " " + s;
          r.witness += " }";
        }
        // closed form of the transposed cell, checked when |B| objects index A
        if (r.pass && b.g->object_count() == A.morphism_count()) {
          const MorId k = A.compose(A.inverse(g2), g);  // g g'^-1 as a product
          const ElemId want = p->factors()->class_of(k, b.g->identity(g2));
          if (t.row(start).size() != 1 || t.row(start)[0].t != want || t.row(start)[0].m != 1) {
            r.pass = false;
            r.witness = "transpose of " + p->label(start) + " is not " + p->label(want);
          }
        }
      }
    }
    out.push_back(r);
  });
  return out;
}

std::vector<CheckResult> check_complementary(const ComplementaryStructure& cs) {
  return check_complementary(cs.a, cs.b, cs.delta);
}

// ---------------------------------------------------------------------------

Span2 bubble_product_iso(const CanonicalCells& b, const CanonicalCells& a, const CanonicalCells& d) {
  auto src = compose_profunctors(b.bubble, a.bubble);
  const CompositeFactors& f = *src->factors();
  const std::size_t na = a.g->morphism_count();
  std::vector<Triple> entries;
  for (ElemId e = 0; e < src->element_count(); ++e) {
    const auto [eb, ea] = f.rep(e);
    entries.emplace_back(e, d.bubble_element(b.bubble_morphism(eb) * na + a.bubble_morphism(ea)), 1);
  }
  return make_span(src, d.bubble, entries);
}

ElemId CommunicationStructure::input(MorId g, MorId g2) const {
  auto p = lambda.src();
  return p->factors()->class_of(cs.a.bubble_element(g), cs.b.bubble_element(cs.b.g->identity(g2)));
}

ElemId CommunicationStructure::output(ObjId c, MorId h) const {
  return dc.bubble_element(cs.b.g->identity(c) * cs.a.g->morphism_count() + h);
}

namespace {

Diagram lambda_diagram_of(const ComplementaryStructure& cs, const CanonicalCells& dc, std::size_t& delta_layer,
                          std::size_t& iso_layer) {
  const CanonicalCells& a = cs.a;
  const CanonicalCells& b = cs.b;
  const Span2 bent = partial_transpose(a, b, cs.delta, Side::Right);
  Diagram d({a.L, a.R, b.L, b.R}, {2, 2});
  d.apply(1, 2, dag(cell("delta'", bent)), {a.R, b.L});
  delta_layer = d.steps().size();
  d.apply(0, 4, horiz({cell("delta", cs.delta), dag(cell("delta", cs.delta))}), {b.L, b.R, a.L, a.R}, {2, 2},
          {2, 2});
  iso_layer = d.steps().size();
  d.apply(0, 4, cell("iso", bubble_product_iso(b, a, dc)), {dc.L, dc.R}, {2, 2});
  return d;
}

}  // namespace

Span2 lambda_prime_of(const CommunicationStructure& cm, const Span2& lambda) {
  const CanonicalCells& a = cm.cs.a;
  const CanonicalCells& b = cm.cs.b;
  const CanonicalCells& dc = cm.dc;
  Diagram d({b.L, b.R, dc.L}, {2, 1});
  d.insert_identity(0).apply(0, 1, cell("eps^dag_A", a.epsilon_dagger), {a.L, a.R});
  d.insert_identity(1).apply(1, 1, cell("mu^dag_A", a.mu_dagger), {a.R, a.L});
  d.apply(2, 4, cell("lambda", lambda), {dc.L, dc.R}, {2, 2});
  d.apply(3, 2, cell("mu_D", dc.mu), {dc.hom}).remove_identity(3);
  d.finish({2, 1});
  return d.evaluate();
}

CommunicationStructure build_lambda(const ComplementaryStructure& cs, bool verify) {
  auto d = product(cs.discrete, cs.group);
  auto dc = canonical_cells(d);
  std::size_t delta_layer = 0, iso_layer = 0;
  Diagram diagram = lambda_diagram_of(cs, dc, delta_layer, iso_layer);
  CommunicationStructure cm{cs, d, dc, diagram.evaluate(), {}, diagram, delta_layer, iso_layer};
  cm.lambda_prime = lambda_prime_of(cm, cm.lambda);
  if (verify) {
    for (const auto& r : check_communication(cm))
      if (!r.pass) throw Error(ErrorKind::VerificationFailure, r.name + ": " + r.witness);
  }
  return cm;
}

std::vector<CheckResult> check_communication(const CommunicationStructure& cm) {
  std::vector<CheckResult> out;
  guarded(out, "lambda unitary", [&] { out.push_back(unitarity("lambda unitary", cm.lambda)); });
  guarded(out, "lambda' unitary", [&] { out.push_back(unitarity("lambda' unitary", cm.lambda_prime)); });
  guarded(out, "unitarity chain", [&] {
    const auto& steps = cm.lambda_diagram.steps();
    auto chain = [&](std::size_t upto) {
      std::vector<TermPtr> terms(steps.begin(), steps.begin() + upto);
      for (std::size_t i = upto; i-- > 0;) terms.push_back(dag(steps[i]));
      return evaluate_term(vert(terms));
    };
    const Span2 t0 = vertical_compose(cm.lambda, dagger(cm.lambda));
    const Span2 t1 = chain(steps.size());
    const Span2 t2 = chain(cm.iso_layer);
    const Span2 t3 = chain(cm.delta_layer);
    out.push_back(equality("unitarity chain step 1: lambda^dag lambda equals the expanded composite", t0, t1));
    out.push_back(equality("unitarity chain step 2: product isomorphism cancels", t1, t2));
    out.push_back(equality("unitarity chain step 3: unitarity of delta", t2, t3));
    out.push_back(
        equality("unitarity chain step 4: unitarity of the transpose gives the identity", t3,
                 identity_span(cm.lambda.src())));
  });
  guarded(out, "lambda closed form", [&] {
    CheckResult r{"lambda sends (g, delta(g')) to (delta(g g'), g')", true, {}};
    const Groupoid& A = *cm.cs.group;
    for (MorId g = 0; g < A.morphism_count() && r.pass; ++g) {
      for (MorId g2 = 0; g2 < A.morphism_count() && r.pass; ++g2) {
        const ElemId in = cm.input(g, g2);
        const ElemId want = cm.output(A.compose(g2, g), g2);
        const auto& row = cm.lambda.row(in);
        if (row.size() != 1 || row[0].t != want || row[0].m != 1) {
          r.pass = false;
          r.witness = cm.lambda.src()->label(in) + " does not map to " + cm.lambda.tgt()->label(want);
        }
      }
    }
    out.push_back(r);
  });
  return out;
}

DenseCodingSides dense_coding_sides(const CommunicationStructure& cm, const Span2& lambda) {
  const CanonicalCells& a = cm.cs.a;
  const CanonicalCells& b = cm.cs.b;
  const CanonicalCells& dc = cm.dc;

  // Clockwise bend of lambda^dag: compose(R_D, bubble B) => compose(R_D, bubble A).
  Diagram bend({dc.R, b.L, b.R});
  bend.insert_identity(0).apply(0, 1, cell("mu^dag_D", dc.mu_dagger), {dc.R, dc.L});
  bend.apply(1, 2, dag(cell("lambda", lambda)), {a.L, a.R, b.L, b.R}, {}, {2, 2});
  bend.apply(4, 2, cell("mu_B", b.mu), {b.hom}).remove_identity(4);
  bend.apply(3, 2, cell("eps_B", b.epsilon), {b.unit}).remove_identity(3);
  const Span2 encoder = bend.evaluate();

  Diagram lhs({dc.R});
  lhs.insert_identity(1).apply(1, 1, cell("eps^dag_B", b.epsilon_dagger), {b.L, b.R});
  lhs.insert_identity(2).apply(2, 1, cell("mu^dag_B", b.mu_dagger), {b.R, b.L});
  lhs.apply(0, 3, cell("lambda'", encoder), {dc.R, a.L, a.R});
  lhs.apply(1, 4, cell("lambda", lambda), {dc.L, dc.R}, {2, 2});

  Diagram rhs({dc.R});
  rhs.insert_identity(0).apply(0, 1, cell("mu^dag_D", dc.mu_dagger), {dc.R, dc.L});
  return {lhs.evaluate(), rhs.evaluate()};
}

std::vector<CheckResult> check_dense_coding(const CommunicationStructure& cm, const Span2& lambda) {
  std::vector<CheckResult> out;
  guarded(out, "dense coding equation", [&] {
    const auto sides = dense_coding_sides(cm, lambda);
    out.push_back(equality("dense coding equation", sides.lhs, sides.rhs));
    // Messages stay distinguishable: distinct inputs reach disjoint supports.
    const CanonicalCells& dc = cm.dc;
    CheckResult r{"distinct messages have disjoint supports", true, {}};
    std::map<ElemId, ElemId> owner;
    for (ElemId e = 0; e < dc.R->element_count() && r.pass; ++e) {
      if (sides.lhs.row(e).empty()) {
        r.pass = false;
        r.witness = "message " + dc.R->label(e) + " is lost";
      }
      for (const auto& [t, m] : sides.lhs.row(e)) {
        (void)m;
        auto [it, fresh] = owner.emplace(t, e);
        if (!fresh && r.pass) {
          r.pass = false;
          r.witness = "messages " + dc.R->label(it->second) + " and " + dc.R->label(e) + " collide";
        }
      }
    }
    const std::size_t channel = cm.cs.b.bubble->element_count();
    const std::size_t messages = dc.R->element_count();
    if (r.pass) r.witness = std::to_string(messages) + " messages through a " + std::to_string(channel) + "-element channel";
    out.push_back(r);
    out.push_back(CheckResult{"message count is the square of the channel size", messages == channel * channel,
                              std::to_string(messages) + " vs " + std::to_string(channel)});
  });
  return out;
}

std::vector<CheckResult> check_dense_coding(const CommunicationStructure& cm) {
  return check_dense_coding(cm, cm.lambda);
}

}  // namespace gpdact
