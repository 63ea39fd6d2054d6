#include "gpdact/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "gpdact/error.hpp"

namespace gpdact {

namespace {

std::vector<ElemId> stage_order(const Profunctor& p) {
  std::vector<ElemId> out;
  for (StageId st = 0; st < p.stage_count(); ++st)
    for (ElemId e : p.stage(st)) out.push_back(e);
  return out;
}

std::string rational_string(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

NatMatrix q_span(const Span2& sigma) {
  NatMatrix m;
  m.rows = stage_order(*sigma.src());
  m.cols = stage_order(*sigma.tgt());
  std::vector<std::size_t> col_pos(sigma.tgt()->element_count());
  for (std::size_t j = 0; j < m.cols.size(); ++j) col_pos[m.cols[j]] = j;
  for (ElemId e : m.rows) m.row_labels.push_back(sigma.src()->label(e));
  for (ElemId e : m.cols) m.col_labels.push_back(sigma.tgt()->label(e));
  m.entries = IntMatrix::Zero(static_cast<Eigen::Index>(m.rows.size()), static_cast<Eigen::Index>(m.cols.size()));
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    for (const auto& [t, k] : sigma.row(m.rows[i]))
      m.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col_pos[t])) = static_cast<std::int64_t>(k);
  return m;
}

CheckResult check_q_vertical(const Span2& sigma, const Span2& tau) {
  CheckResult r{"Q preserves vertical composition", true, {}};
  Span2 composite = [&] {
    try {
      return vertical_compose(sigma, tau);
    } catch (const Error& e) {
      r.pass = false;
      r.witness = e.what();
      return sigma;
    }
  }();
  if (!r.pass) return r;
  const NatMatrix lhs = q_span(composite);
  const IntMatrix rhs = q_span(sigma).entries * q_span(tau).entries;
  for (Eigen::Index i = 0; i < rhs.rows() && r.pass; ++i)
    for (Eigen::Index j = 0; j < rhs.cols() && r.pass; ++j)
      if (lhs.entries(i, j) != rhs(i, j)) {
        r.pass = false;
        r.witness = "(" + lhs.row_labels[i] + ", " + lhs.col_labels[j] + "): " + std::to_string(lhs.entries(i, j)) +
                    " vs " + std::to_string(rhs(i, j));
      }
  return r;
}

CheckResult check_q_naturality(const Span2& sigma) {
  CheckResult r{"Q(sigma) intertwines the actions", true, {}};
  const Profunctor& P = *sigma.src();
  const Profunctor& T = *sigma.tgt();
  const Groupoid& H = *P.target();
  const Groupoid& G = *P.source();
  for (ElemId s = 0; s < P.element_count() && r.pass; ++s) {
    const StageId st = P.stage_of(s);
    for (MorId h = 0; h < H.morphism_count() && r.pass; ++h) {
      if (H.tgt(h) != P.stage_target(st)) continue;
      for (MorId g = 0; g < G.morphism_count() && r.pass; ++g) {
        if (G.src(g) != P.stage_source(st)) continue;
        std::map<ElemId, Mult> after, before;
        for (const auto& [t, m] : sigma.row(s)) after[T.right(T.left(h, t), g)] += m;
        for (const auto& [t, m] : sigma.row(P.right(P.left(h, s), g))) before[t] += m;
        if (after != before) {
          r.pass = false;
          r.witness = "element " + P.label(s) + " under (" + H.morphism_label(h) + ", " + G.morphism_label(g) +
                      "): acting after Q and before Q differ";
        }
      }
    }
  }
  return r;
}

ProfunctorPtr coset_profunctor(const GroupoidPtr& h, const std::vector<std::vector<MorId>>& subgroups,
                               std::string name) {
  if (!h->is_group()) throw Error(ErrorKind::NotAGroup, h->name() + " has more than one object");
  const std::size_t n = h->morphism_count();
  std::vector<std::string> labels;
  std::vector<std::vector<ElemId>> coset_of;  // per subgroup: element a -> coset id
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    std::map<std::vector<MorId>, ElemId> ids;
    std::vector<ElemId> of(n);
    for (MorId a = 0; a < n; ++a) {
      std::vector<MorId> coset;
      for (MorId k : subgroups[i]) coset.push_back(h->compose(k, a));
      std::sort(coset.begin(), coset.end());
      auto [it, fresh] = ids.emplace(coset, labels.size());
      if (fresh) labels.push_back(std::to_string(i) + ":" + h->morphism_label(coset.front()));
      of[a] = it->second;
    }
    coset_of.push_back(std::move(of));
  }
  const std::size_t count = labels.size();
  std::vector<ElemId> rep(count);
  std::vector<std::size_t> family(count);
  for (std::size_t i = 0; i < subgroups.size(); ++i)
    for (MorId a = n; a-- > 0;) {
      rep[coset_of[i][a]] = a;
      family[coset_of[i][a]] = i;
    }
  std::vector<ElemId> left(count), right(count * n);
  std::iota(left.begin(), left.end(), 0);
  for (ElemId e = 0; e < count; ++e)
    for (MorId g = 0; g < n; ++g) right[e * n + g] = coset_of[family[e]][h->compose(rep[e], g)];
  return Profunctor::make(h, trivial_groupoid(), std::vector<StageId>(count, 0), labels, left, right, std::move(name));
}

namespace {

// Matrix of an intertwiner: row per element of the u-orbit, column per element
// of the s-orbit.
using Intertwiner = std::vector<RationalVector>;

struct OrbitPair {
  const Profunctor& S;
  const Profunctor& U;
  const Groupoid& H;
  std::vector<ElemId> os, ou;
  std::map<ElemId, std::size_t> pos_s, pos_u;
  ElemId u0;
  std::vector<MorId> stab;

  OrbitPair(const Profunctor& s, const Profunctor& u, std::vector<ElemId> orbit_s, std::vector<ElemId> orbit_u)
      : S(s), U(u), H(*s.target()), os(std::move(orbit_s)), ou(std::move(orbit_u)) {
    for (std::size_t i = 0; i < os.size(); ++i) pos_s[os[i]] = i;
    for (std::size_t i = 0; i < ou.size(); ++i) pos_u[ou[i]] = i;
    u0 = ou.front();
    for (MorId k = 0; k < H.morphism_count(); ++k)
      if (U.right(u0, k) == u0) stab.push_back(k);
  }

  RationalVector act(MorId k, const RationalVector& v) const {
    RationalVector out(os.size());
    for (std::size_t i = 0; i < os.size(); ++i)
      if (v[i] != Rational(0)) out[pos_s.at(S.left(k, os[i]))] += v[i];
    return out;
  }

  // L(u0 . h) = h^-1 . L(u0); empty when the assignment is inconsistent.
  std::optional<Intertwiner> extend(const RationalVector& at_u0) const {
    Intertwiner L(ou.size());
    for (MorId h = 0; h < H.morphism_count(); ++h) {
      const std::size_t i = pos_u.at(U.right(u0, h));
      RationalVector v = act(H.inverse(h), at_u0);
      if (L[i].empty())
        L[i] = std::move(v);
      else if (L[i] != v)
        return std::nullopt;
    }
    return L;
  }

  // L(u0) for sigma on (s', u0 . h) ~ (h . s', u0).
  RationalVector sigma_at_base(ElemId s_elem, MorId h) const {
    RationalVector v(os.size());
    const Rational w(1, static_cast<std::int64_t>(stab.size()));
    const ElemId moved = S.left(h, s_elem);
    for (MorId k : stab) v[pos_s.at(S.left(k, moved))] += w;
    return v;
  }
};

std::vector<std::vector<ElemId>> left_orbits(const Profunctor& p, std::span<const ElemId> stage) {
  std::set<ElemId> seen;
  std::vector<std::vector<ElemId>> out;
  const Groupoid& H = *p.target();
  for (ElemId e : stage) {
    if (seen.count(e)) continue;
    std::set<ElemId> orbit;
    for (MorId h = 0; h < H.morphism_count(); ++h) orbit.insert(p.left(h, e));
    seen.insert(orbit.begin(), orbit.end());
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

std::vector<std::vector<ElemId>> right_orbits(const Profunctor& p, std::span<const ElemId> stage) {
  std::set<ElemId> seen;
  std::vector<std::vector<ElemId>> out;
  const Groupoid& H = *p.source();
  for (ElemId e : stage) {
    if (seen.count(e)) continue;
    std::set<ElemId> orbit;
    for (MorId h = 0; h < H.morphism_count(); ++h) orbit.insert(p.right(e, h));
    seen.insert(orbit.begin(), orbit.end());
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

void require_group_middle(const ProfunctorPtr& s, const ProfunctorPtr& u) {
  if (!(*s->target() == *u->source()))
    throw Error(ErrorKind::TypeMismatch, describe(*s) + " and " + describe(*u) + " do not share a middle groupoid");
  if (!s->target()->is_group())
    throw Error(ErrorKind::Unsupported, "the orbit analysis needs a one-object middle groupoid");
}

std::string render_vector(const OrbitPair& op, const RationalVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == Rational(0)) continue;
    if (!out.empty()) out += " + ";
    out += rational_string(v[i]) + " " + op.S.label(op.os[i]);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

RationalVector sigma_value(const ProfunctorPtr& s, const ProfunctorPtr& u, ElemId s_elem, ElemId u0, MorId h) {
  require_group_middle(s, u);
  auto os = left_orbits(*s, s->stage(s->stage_of(s_elem)));
  auto ou = right_orbits(*u, u->stage(u->stage_of(u0)));
  auto find = [](const auto& orbits, ElemId e) {
    for (const auto& o : orbits)
      if (std::find(o.begin(), o.end(), e) != o.end()) return o;
    return orbits.front();
  };
  auto orbit_u = find(ou, u0);
  std::rotate(orbit_u.begin(), std::find(orbit_u.begin(), orbit_u.end(), u0), orbit_u.end());
  OrbitPair op(*s, *u, find(os, s_elem), orbit_u);
  const RationalVector local = op.sigma_at_base(s_elem, h);
  RationalVector out(s->element_count());
  for (std::size_t i = 0; i < local.size(); ++i) out[op.os[i]] = local[i];
  return out;
}

SigmaPiReport sigma_pi_check(const ProfunctorPtr& s, const ProfunctorPtr& u) {
  require_group_middle(s, u);
  const auto comp = compose_profunctors(s, u);
  const CompositeFactors& f = *comp->factors();
  const Groupoid& H = *s->target();

  SigmaPiReport rep;
  CheckResult dim{"classes match intertwiners orbit by orbit", true, {}};
  CheckResult indep{"sigma is independent of the representative", true, {}};
  CheckResult pi_sigma{"pi after sigma is the identity on classes", true, {}};
  CheckResult sigma_pi{"sigma after pi is the identity on intertwiners", true, {}};
  std::set<std::size_t> orders;
  auto fail = [](CheckResult& c, std::string w) {
    if (c.pass) c.witness = std::move(w);
    c.pass = false;
  };

  for (ObjId y = 0; y < s->source()->object_count(); ++y) {
    for (ObjId z = 0; z < u->target()->object_count(); ++z) {
      for (const auto& os : left_orbits(*s, s->stage(0, y))) {
        for (const auto& ou : right_orbits(*u, u->stage(z, 0))) {
          OrbitPair op(*s, *u, os, ou);
          ++rep.orbit_pairs;
          orders.insert(op.stab.size());
          const std::string where = "orbits of " + s->label(os.front()) + " and " + u->label(ou.front());

          // classes of this orbit pair, in composite order
          std::set<ElemId> class_set;
          for (ElemId a : os)
            for (ElemId b : ou) class_set.insert(f.class_of(a, b));
          const std::vector<ElemId> classes(class_set.begin(), class_set.end());
          std::map<ElemId, std::size_t> class_pos;
          for (std::size_t i = 0; i < classes.size(); ++i) class_pos[classes[i]] = i;

          auto pi = [&](const Intertwiner& L) {
            RationalVector v(classes.size());
            const auto& at_u0 = L[op.pos_u.at(op.u0)];
            for (std::size_t i = 0; i < os.size(); ++i)
              if (at_u0[i] != Rational(0)) v[class_pos.at(f.class_of(os[i], op.u0))] += at_u0[i];
            return v;
          };

          // sigma on each class, from every representative
          std::vector<Intertwiner> sigma(classes.size());
          for (std::size_t c = 0; c < classes.size(); ++c) {
            for (std::size_t raw : f.members[classes[c]]) {
              const auto [a, b] = f.raw[raw];
              for (MorId h = 0; h < H.morphism_count(); ++h) {
                if (u->right(op.u0, h) != b) continue;
                auto L = op.extend(op.sigma_at_base(a, h));
                if (!L) {
                  fail(indep, where + ": sigma(" + comp->label(classes[c]) + ") is not an intertwiner");
                  continue;
                }
                if (sigma[c].empty())
                  sigma[c] = *L;
                else if (sigma[c] != *L)
                  fail(indep, where + ": representatives of " + comp->label(classes[c]) + " give different maps");
              }
            }
            if (sigma[c].empty()) continue;
            RationalVector expect(classes.size());
            expect[c] = Rational(1);
            const RationalVector back = pi(sigma[c]);
            if (back != expect) fail(pi_sigma, where + ": pi(sigma(" + comp->label(classes[c]) + ")) is not itself");
          }

          // intertwiner basis: indicators of stabilizer orbits at u0
          std::set<std::size_t> covered;
          std::size_t basis = 0;
          for (std::size_t i = 0; i < os.size(); ++i) {
            if (covered.count(i)) continue;
            RationalVector ind(os.size());
            for (MorId k : op.stab) {
              const std::size_t j = op.pos_s.at(s->left(k, os[i]));
              ind[j] = Rational(1);
              covered.insert(j);
            }
            ++basis;
            auto L = op.extend(ind);
            if (!L) {
              fail(sigma_pi, where + ": indicator intertwiner is inconsistent");
              continue;
            }
            const RationalVector coeff = pi(*L);
            Intertwiner round(ou.size(), RationalVector(os.size()));
            for (std::size_t c = 0; c < classes.size(); ++c) {
              if (coeff[c] == Rational(0) || sigma[c].empty()) continue;
              for (std::size_t r = 0; r < ou.size(); ++r)
                for (std::size_t k = 0; k < os.size(); ++k) round[r][k] += coeff[c] * sigma[c][r][k];
            }
            if (round != *L)
              fail(sigma_pi, where + ": sigma(pi(L)) at u0 is " + render_vector(op, round[op.pos_u.at(op.u0)]) +
                                 ", L(u0) is " + render_vector(op, ind));
          }
          if (basis != classes.size())
            fail(dim, where + ": " + std::to_string(classes.size()) + " classes vs " + std::to_string(basis) +
                          " intertwiners");
        }
      }
    }
  }
  rep.stabilizer_orders.assign(orders.begin(), orders.end());
  rep.checks = {dim, indep, pi_sigma, sigma_pi};
  return rep;
}

// ---------------------------------------------------------------------------

CharacterTable character_table(const GroupoidPtr& group) {
  if (!group->is_group()) throw Error(ErrorKind::NotAGroup, group->name() + " has more than one object");
  if (!group->is_abelian()) throw Error(ErrorKind::NonAbelian, group->name() + " is not abelian");
  const Groupoid& G = *group;
  const std::size_t n = G.morphism_count();
  std::size_t e = 1;
  for (MorId g = 0; g < n; ++g) e = std::lcm(e, G.order(g));

  // greedy generators, least element first
  std::vector<MorId> gens;
  std::vector<bool> reached(n, false);
  reached[0] = true;
  for (MorId a = 1; a < n; ++a) {
    if (reached[a]) continue;
    gens.push_back(a);
    std::vector<MorId> frontier;
    for (MorId x = 0; x < n; ++x)
      if (reached[x]) frontier.push_back(x);
    while (!frontier.empty()) {
      const MorId x = frontier.back();
      frontier.pop_back();
      for (MorId gen : gens) {
        const MorId y = G.compose(x, gen);
        if (!reached[y]) {
          reached[y] = true;
          frontier.push_back(y);
        }
      }
    }
  }

  std::vector<std::vector<std::size_t>> homs;
  std::vector<std::size_t> images(gens.size(), 0);
  for (;;) {
    std::vector<long> phi(n, -1);
    phi[0] = 0;
    bool ok = true;
    std::vector<MorId> frontier{0};
    while (!frontier.empty() && ok) {
      const MorId x = frontier.back();
      frontier.pop_back();
      for (std::size_t j = 0; j < gens.size() && ok; ++j) {
        const MorId y = G.compose(x, gens[j]);
        const long v = static_cast<long>((phi[x] + images[j]) % e);
        if (phi[y] < 0) {
          phi[y] = v;
          frontier.push_back(y);
        } else if (phi[y] != v) {
          ok = false;
        }
      }
    }
    if (ok) homs.emplace_back(phi.begin(), phi.end());
    std::size_t j = gens.size();
    while (j-- > 0) {
      if (++images[j] < e) break;
      images[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
  if (homs.size() != n)
    throw Error(ErrorKind::VerificationFailure,
                "found " + std::to_string(homs.size()) + " characters for a group of order " + std::to_string(n));

  CharacterTable t;
  t.order = n;
  t.table.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const double two_pi = 2.0 * std::acos(-1.0);
  for (std::size_t k = 0; k < n; ++k)
    for (MorId g = 0; g < n; ++g)
      t.table(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(g)) =
          std::polar(1.0, two_pi * static_cast<double>(homs[k][g]) / static_cast<double>(e));
  return t;
}

double orthonormality_deviation(const CharacterTable& t) {
  const double n = static_cast<double>(t.order);
  const ComplexMatrix gram = t.table * t.table.adjoint() / n;
  return (gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double mub_deviation(const CharacterTable& t) {
  const double n = static_cast<double>(t.order);
  double dev = 0;
  for (Eigen::Index k = 0; k < t.table.rows(); ++k) {
    const ComplexVector c = t.table.row(k).transpose() / std::sqrt(n);
    dev = std::max(dev, std::abs(c.squaredNorm() - 1.0));
    for (Eigen::Index g = 0; g < c.size(); ++g) dev = std::max(dev, std::abs(std::norm(c(g)) - 1.0 / n));
  }
  return dev;
}

double check_mub(const GroupoidPtr& group) { return mub_deviation(character_table(group)); }

ComplexMatrix translation(const GroupoidPtr& group, MorId a) {
  const auto n = static_cast<Eigen::Index>(group->morphism_count());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (MorId g = 0; g < group->morphism_count(); ++g)
    m(static_cast<Eigen::Index>(group->compose(g, a)), static_cast<Eigen::Index>(g)) = 1.0;
  return m;
}

ComplexMatrix phase(const CharacterTable& t, std::size_t k) {
  return t.table.row(static_cast<Eigen::Index>(k)).transpose().asDiagonal();
}

ComplexVector bell_state(const GroupoidPtr& group, const CharacterTable& t, MorId a, std::size_t k) {
  const std::size_t n = group->morphism_count();
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(n * n));
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (MorId g = 0; g < n; ++g)
    v(static_cast<Eigen::Index>(g * n + group->compose(g, a))) =
        t.table(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(g)) * norm;
  return v;
}

ComplexMatrix correction(const GroupoidPtr& group, const CharacterTable& t, MorId a, std::size_t k) {
  return phase(t, k) * translation(group, group->inverse(a));
}

ComplexVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(rng), normal(rng));
  return v / v.norm();
}

TeleportReport teleportation_simulation(const GroupoidPtr& group, const ComplexVector& state) {
  const CharacterTable t = character_table(group);
  const std::size_t n = t.order;
  if (static_cast<std::size_t>(state.size()) != n)
    throw Error(ErrorKind::Unnormalized, "state has " + std::to_string(state.size()) + " amplitudes, expected " +
                                             std::to_string(n));
  if (std::abs(state.norm() - 1.0) > t.tolerance)
    throw Error(ErrorKind::Unnormalized, "state norm is " + std::to_string(state.norm()));

  // registers: input (i), resource halves (j, l); index (i * n + j) * n + l
  const ComplexVector resource = bell_state(group, t, 0, 0);
  const auto N = static_cast<Eigen::Index>(n);
  ComplexVector total(N * N * N);
  for (Eigen::Index i = 0; i < N; ++i) total.segment(i * N * N, N * N) = state(i) * resource;

  TeleportReport rep;
  const double expected = 1.0 / static_cast<double>(n * n);
  for (MorId a = 0; a < n; ++a) {
    for (std::size_t k = 0; k < n; ++k) {
      const ComplexVector b = bell_state(group, t, a, k);
      ComplexVector rest = ComplexVector::Zero(N);
      for (Eigen::Index ij = 0; ij < N * N; ++ij) rest += std::conj(b(ij)) * total.segment(ij * N, N);
      BranchResult br{a, k, rest.squaredNorm(), 0};
      const ComplexVector out = correction(group, t, a, k) * (rest / std::sqrt(br.probability));
      br.fidelity = std::norm(state.dot(out));
      rep.min_fidelity = std::min(rep.min_fidelity, br.fidelity);
      rep.max_probability_error = std::max(rep.max_probability_error, std::abs(br.probability - expected));
      rep.branches.push_back(br);
    }
  }
  rep.checks.push_back({"every branch recovers the input state", rep.min_fidelity >= 1.0 - t.tolerance,
                        "minimum fidelity " + std::to_string(rep.min_fidelity)});
  rep.checks.push_back({"every branch has probability 1/n^2", rep.max_probability_error <= t.tolerance,
                        "largest deviation " + std::to_string(rep.max_probability_error)});
  return rep;
}

namespace {

void dense_code_one(const GroupoidPtr& group, const CharacterTable& t, MorId a, std::size_t k, DenseCodeReport& rep) {
  const std::size_t n = t.order;
  const auto N = static_cast<Eigen::Index>(n);
  const ComplexMatrix local = translation(group, a) * phase(t, k);
  const ComplexVector resource = bell_state(group, t, 0, 0);
  // the sender acts on the second half only
  ComplexVector sent(N * N);
  for (Eigen::Index i = 0; i < N; ++i) sent.segment(i * N, N) = local * resource.segment(i * N, N);
  bool ok = false;
  for (MorId a2 = 0; a2 < n; ++a2) {
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      const double p = std::norm(bell_state(group, t, a2, k2).dot(sent));
      const double ideal = (a2 == a && k2 == k) ? 1.0 : 0.0;
      rep.max_deviation = std::max(rep.max_deviation, std::abs(p - ideal));
      if (ideal == 1.0) ok = std::abs(p - 1.0) <= t.tolerance;
    }
  }
  ++rep.messages;
  if (ok) ++rep.decoded;
}

void finish(DenseCodeReport& rep, double tolerance) {
  rep.checks.push_back({"every message decodes exactly", rep.decoded == rep.messages && rep.max_deviation <= tolerance,
                        std::to_string(rep.decoded) + "/" + std::to_string(rep.messages) + " decoded, deviation " +
                            std::to_string(rep.max_deviation)});
}

}  // namespace

DenseCodeReport dense_coding_simulation(const GroupoidPtr& group) {
  const CharacterTable t = character_table(group);
  DenseCodeReport rep;
  for (MorId a = 0; a < t.order; ++a)
    for (std::size_t k = 0; k < t.order; ++k) dense_code_one(group, t, a, k, rep);
  finish(rep, t.tolerance);
  return rep;
}

DenseCodeReport dense_coding_simulation(const GroupoidPtr& group, MorId a, std::size_t k) {
  const CharacterTable t = character_table(group);
  if (a >= t.order || k >= t.order) throw Error(ErrorKind::InvalidElement, "message out of range");
  DenseCodeReport rep;
  dense_code_one(group, t, a, k, rep);
  finish(rep, t.tolerance);
  return rep;
}

}  // namespace gpdact
