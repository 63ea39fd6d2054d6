#include "gpdact/groupoid.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "gpdact/error.hpp"

namespace gpdact {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::AssociativityViolation: return "AssociativityViolation";
    case ErrorKind::MissingInverse: return "MissingInverse";
    case ErrorKind::NonUniqueIdentity: return "NonUniqueIdentity";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NotSkeletal: return "NotSkeletal";
    case ErrorKind::InvalidProfunctor: return "InvalidProfunctor";
    case ErrorKind::NaturalityViolation: return "NaturalityViolation";
    case ErrorKind::StageMismatch: return "StageMismatch";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::WellDefinednessFailure: return "WellDefinednessFailure";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InvalidElement: return "InvalidElement";
    case ErrorKind::NonAbelian: return "NonAbelian";
    case ErrorKind::Unnormalized: return "Unnormalized";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

// Fills a Groupoid from raw tables and checks every axiom.
class GroupoidBuilder {
 public:
  std::string name;
  std::vector<std::string> objects;
  std::vector<std::string> morphisms;
  std::vector<ObjId> src;
  std::vector<ObjId> tgt;
  std::vector<MorId> table;  // npos where not composable

  GroupoidPtr finish(ErrorKind axiom_error = ErrorKind::MissingInverse) {
    const std::size_t n = morphisms.size();
    const std::size_t k = objects.size();
    auto g = std::make_shared<Groupoid>();
    g->name_ = name;
    g->object_labels_ = objects;
    g->morphism_labels_ = morphisms;
    g->src_ = src;
    g->tgt_ = tgt;
    g->table_ = table;
    g->hom_.assign(k * k, {});
    for (MorId f = 0; f < n; ++f) g->hom_[src[f] * k + tgt[f]].push_back(f);

    auto fail = [&](ErrorKind kind, const std::string& msg) -> void {
      throw Error(axiom_error == ErrorKind::NotAGroup ? ErrorKind::NotAGroup : kind, msg);
    };
    auto lbl = [&](MorId f) { return morphisms[f]; };

    for (MorId f = 0; f < n; ++f) {
      for (MorId h = 0; h < n; ++h) {
        const bool ok = tgt[f] == src[h];
        const MorId c = table[f * n + h];
        if (ok && c == npos) fail(ErrorKind::MissingComposite, "no composite for (" + lbl(f) + ", " + lbl(h) + ")");
        if (!ok && c != npos) throw Error(ErrorKind::Parse, "composite given for non-composable pair (" + lbl(f) + ", " + lbl(h) + ")");
        if (ok && (src[c] != src[f] || tgt[c] != tgt[h]))
          throw Error(ErrorKind::Parse, "composite of (" + lbl(f) + ", " + lbl(h) + ") has the wrong boundary");
      }
    }

    g->identity_.assign(k, npos);
    for (ObjId x = 0; x < k; ++x) {
      std::vector<MorId> candidates;
      for (MorId e : g->hom_[x * k + x]) {
        bool unit = true;
        for (MorId f = 0; f < n && unit; ++f) {
          if (src[f] == x && table[e * n + f] != f) unit = false;
          if (tgt[f] == x && table[f * n + e] != f) unit = false;
        }
        if (unit) candidates.push_back(e);
      }
      if (candidates.size() != 1)
        fail(ErrorKind::NonUniqueIdentity, "object " + objects[x] + " has " + std::to_string(candidates.size()) + " identity candidates");
      g->identity_[x] = candidates.front();
    }

    for (MorId f = 0; f < n; ++f) {
      for (ObjId y = 0; y < k; ++y) {
        for (MorId h : g->hom_[tgt[f] * k + y]) {
          const MorId fh = table[f * n + h];
          for (ObjId z = 0; z < k; ++z) {
            for (MorId l : g->hom_[y * k + z]) {
              if (table[fh * n + l] != table[f * n + table[h * n + l]])
                fail(ErrorKind::AssociativityViolation,
                     "triple (" + lbl(f) + ", " + lbl(h) + ", " + lbl(l) + ")");
            }
          }
        }
      }
    }

    g->inverse_.assign(n, npos);
    for (MorId f = 0; f < n; ++f) {
      for (MorId h : g->hom_[tgt[f] * k + src[f]]) {
        if (table[f * n + h] == g->identity_[src[f]] && table[h * n + f] == g->identity_[tgt[f]]) {
          g->inverse_[f] = h;
          break;
        }
      }
      if (g->inverse_[f] == npos) fail(ErrorKind::MissingInverse, "morphism " + lbl(f) + " has no inverse");
    }

    g->skeletal_ = true;
    for (ObjId a = 0; a < k; ++a)
      for (ObjId b = 0; b < k; ++b)
        if (a != b && !g->hom_[a * k + b].empty()) g->skeletal_ = false;
    return g;
  }
};

bool Groupoid::is_abelian() const {
  const std::size_t n = morphism_count();
  for (MorId f = 0; f < n; ++f)
    for (MorId h = 0; h < n; ++h)
      if (src_[f] == tgt_[f] && src_[h] == src_[f] && tgt_[h] == tgt_[f] && compose(f, h) != compose(h, f)) return false;
  return true;
}

std::optional<ObjId> Groupoid::find_object(const std::string& label) const {
  auto it = std::find(object_labels_.begin(), object_labels_.end(), label);
  if (it == object_labels_.end()) return std::nullopt;
  return static_cast<ObjId>(it - object_labels_.begin());
}

std::optional<MorId> Groupoid::find_morphism(const std::string& label) const {
  auto it = std::find(morphism_labels_.begin(), morphism_labels_.end(), label);
  if (it == morphism_labels_.end()) return std::nullopt;
  return static_cast<MorId>(it - morphism_labels_.begin());
}

std::size_t Groupoid::order(MorId f) const {
  if (src_[f] != tgt_[f]) return npos;
  const MorId id = identity_[src_[f]];
  std::size_t k = 1;
  for (MorId p = f; p != id; p = compose(p, f)) ++k;
  return k;
}

bool operator==(const Groupoid& a, const Groupoid& b) {
  return a.object_labels_ == b.object_labels_ && a.morphism_labels_ == b.morphism_labels_ && a.src_ == b.src_ &&
         a.tgt_ == b.tgt_ && a.table_ == b.table_;
}

bool same_groupoid(const Groupoid& a, const Groupoid& b) { return &a == &b || a == b; }

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

GroupoidPtr validate_groupoid(const GroupoidSpec& spec, std::string name) {
  GroupoidBuilder b;
  b.name = std::move(name);
  std::unordered_map<std::string, ObjId> obj_index;
  for (const auto& o : spec.objects) {
    if (!obj_index.emplace(o, b.objects.size()).second) throw Error(ErrorKind::Parse, "duplicate object " + o);
    b.objects.push_back(o);
  }
  std::unordered_map<std::string, MorId> mor_index;
  for (const auto& m : spec.morphisms) {
    if (!mor_index.emplace(m.name, b.morphisms.size()).second) throw Error(ErrorKind::Parse, "duplicate morphism " + m.name);
    auto s = obj_index.find(m.source);
    auto t = obj_index.find(m.target);
    if (s == obj_index.end() || t == obj_index.end())
      throw Error(ErrorKind::Parse, "morphism " + m.name + " references an undeclared object");
    b.morphisms.push_back(m.name);
    b.src.push_back(s->second);
    b.tgt.push_back(t->second);
  }
  const std::size_t n = b.morphisms.size();
  b.table.assign(n * n, npos);
  auto lookup = [&](const std::string& label) {
    auto it = mor_index.find(label);
    if (it == mor_index.end()) throw Error(ErrorKind::Parse, "compose triple references undeclared morphism " + label);
    return it->second;
  };
  for (const auto& c : spec.compose) {
    const MorId f = lookup(c.first), h = lookup(c.second), r = lookup(c.result);
    MorId& slot = b.table[f * n + h];
    if (slot != npos && slot != r)
      throw Error(ErrorKind::Parse, "conflicting composites for (" + c.first + ", " + c.second + ")");
    slot = r;
  }
  return b.finish();
}

GroupoidPtr group_as_groupoid(const std::vector<std::vector<std::size_t>>& cayley, std::vector<std::string> labels,
                              std::string name) {
  const std::size_t n = cayley.size();
  if (n == 0) throw Error(ErrorKind::NotAGroup, "empty table");
  for (const auto& row : cayley) {
    if (row.size() != n) throw Error(ErrorKind::NotAGroup, "table is not square");
    std::vector<bool> seen(n, false);
    for (std::size_t v : row) {
      if (v >= n) throw Error(ErrorKind::NotAGroup, "entry out of range (not closed)");
      if (seen[v]) throw Error(ErrorKind::NotAGroup, "table is not a Latin square");
      seen[v] = true;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<bool> seen(n, false);
    for (std::size_t r = 0; r < n; ++r) {
      if (seen[cayley[r][c]]) throw Error(ErrorKind::NotAGroup, "table is not a Latin square");
      seen[cayley[r][c]] = true;
    }
  }
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  if (labels.size() != n) throw Error(ErrorKind::Parse, "label count does not match table size");

  GroupoidBuilder b;
  b.name = std::move(name);
  b.objects = {"*"};
  b.morphisms = labels;
  b.src.assign(n, 0);
  b.tgt.assign(n, 0);
  b.table.assign(n * n, npos);
  // compose(f, g) is "f then g", i.e. the product g·f.
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g) b.table[f * n + g] = cayley[g][f];
  return b.finish(ErrorKind::NotAGroup);
}

GroupoidPtr discrete_groupoid(const std::vector<std::string>& elements, std::string name) {
  if (elements.empty()) throw Error(ErrorKind::EmptySet, "discrete groupoid needs at least one object");
  GroupoidBuilder b;
  b.name = std::move(name);
  b.objects = elements;
  const std::size_t n = elements.size();
  for (std::size_t i = 0; i < n; ++i) {
    b.morphisms.push_back("id_" + elements[i]);
    b.src.push_back(i);
    b.tgt.push_back(i);
  }
  b.table.assign(n * n, npos);
  for (std::size_t i = 0; i < n; ++i) b.table[i * n + i] = i;
  return b.finish();
}

GroupoidPtr trivial_groupoid() {
  static const GroupoidPtr one = group_as_groupoid({{0}}, {"id"}, "1");
  return one;
}

GroupoidPtr product(const GroupoidPtr& first, const GroupoidPtr& second) {
  const Groupoid& a = *first;
  const Groupoid& b = *second;
  GroupoidBuilder out;
  out.name = a.name() + "x" + b.name();
  const std::size_t ko = b.object_count(), km = b.morphism_count();
  for (ObjId x = 0; x < a.object_count(); ++x)
    for (ObjId y = 0; y < ko; ++y) out.objects.push_back("(" + a.object_label(x) + "," + b.object_label(y) + ")");
  for (MorId f = 0; f < a.morphism_count(); ++f) {
    for (MorId g = 0; g < km; ++g) {
      out.morphisms.push_back("(" + a.morphism_label(f) + "," + b.morphism_label(g) + ")");
      out.src.push_back(a.src(f) * ko + b.src(g));
      out.tgt.push_back(a.tgt(f) * ko + b.tgt(g));
    }
  }
  const std::size_t n = out.morphisms.size();
  out.table.assign(n * n, npos);
  for (MorId p = 0; p < n; ++p) {
    for (MorId q = 0; q < n; ++q) {
      const MorId f1 = p / km, g1 = p % km, f2 = q / km, g2 = q % km;
      if (a.composable(f1, f2) && b.composable(g1, g2)) out.table[p * n + q] = a.compose(f1, f2) * km + b.compose(g1, g2);
    }
  }
  return out.finish();
}

GroupoidPtr disjoint_union(const GroupoidPtr& first, const GroupoidPtr& second) {
  const Groupoid& a = *first;
  const Groupoid& b = *second;
  GroupoidBuilder out;
  out.name = a.name() + "+" + b.name();
  for (ObjId x = 0; x < a.object_count(); ++x) out.objects.push_back("0:" + a.object_label(x));
  for (ObjId x = 0; x < b.object_count(); ++x) out.objects.push_back("1:" + b.object_label(x));
  const std::size_t ao = a.object_count(), am = a.morphism_count();
  for (MorId f = 0; f < am; ++f) {
    out.morphisms.push_back("0:" + a.morphism_label(f));
    out.src.push_back(a.src(f));
    out.tgt.push_back(a.tgt(f));
  }
  for (MorId f = 0; f < b.morphism_count(); ++f) {
    out.morphisms.push_back("1:" + b.morphism_label(f));
    out.src.push_back(ao + b.src(f));
    out.tgt.push_back(ao + b.tgt(f));
  }
  const std::size_t n = out.morphisms.size();
  out.table.assign(n * n, npos);
  for (MorId f = 0; f < n; ++f) {
    for (MorId g = 0; g < n; ++g) {
      if (f < am && g < am && a.composable(f, g)) out.table[f * n + g] = a.compose(f, g);
      if (f >= am && g >= am && b.composable(f - am, g - am)) out.table[f * n + g] = am + b.compose(f - am, g - am);
    }
  }
  return out.finish();
}

Skeleton skeletalize(const GroupoidPtr& g) {
  const Groupoid& G = *g;
  const std::size_t k = G.object_count();
  Skeleton result;
  result.object_map.assign(k, npos);
  result.transport.assign(k, npos);
  if (G.skeletal()) {
    result.groupoid = g;
    std::iota(result.object_map.begin(), result.object_map.end(), ObjId{0});
    for (ObjId x = 0; x < k; ++x) result.transport[x] = G.identity(x);
    return result;
  }
  // Representative of each component: its least object id.
  std::vector<ObjId> reps;
  std::vector<std::size_t> rep_index(k, npos);
  for (ObjId x = 0; x < k; ++x) {
    for (ObjId r : reps) {
      auto h = G.hom(r, x);
      if (!h.empty()) {
        result.object_map[x] = rep_index[r];
        result.transport[x] = h.front();
        break;
      }
    }
    if (result.object_map[x] == npos) {
      rep_index[x] = reps.size();
      result.object_map[x] = reps.size();
      result.transport[x] = G.identity(x);
      reps.push_back(x);
    }
  }
  GroupoidBuilder out;
  out.name = G.name();
  std::vector<MorId> kept;
  std::vector<MorId> new_id(G.morphism_count(), npos);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    out.objects.push_back(G.object_label(reps[i]));
    for (MorId f : G.hom(reps[i], reps[i])) {
      new_id[f] = kept.size();
      kept.push_back(f);
      out.morphisms.push_back(G.morphism_label(f));
      out.src.push_back(i);
      out.tgt.push_back(i);
    }
  }
  const std::size_t n = kept.size();
  out.table.assign(n * n, npos);
  for (MorId p = 0; p < n; ++p)
    for (MorId q = 0; q < n; ++q)
      if (out.src[p] == out.src[q]) out.table[p * n + q] = new_id[G.compose(kept[p], kept[q])];
  result.groupoid = out.finish();
  return result;
}

namespace {

GroupoidPtr cyclic(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return group_as_groupoid(t, {}, "Z/" + std::to_string(n));
}

GroupoidPtr klein() {
  std::vector<std::vector<std::size_t>> t(4, std::vector<std::size_t>(4));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return group_as_groupoid(t, {"(0,0)", "(0,1)", "(1,0)", "(1,1)"}, "Z/2xZ/2");
}

GroupoidPtr symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> labels;
  for (const auto& q : perms) labels.push_back(std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];  // a after b
      t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return group_as_groupoid(t, labels, "S3");
}

GroupoidPtr dihedral4() {
  // index k + 4m  <->  r^k s^m
  std::vector<std::string> labels;
  for (int m = 0; m < 2; ++m)
    for (int k = 0; k < 4; ++k) labels.push_back("r" + std::to_string(k) + (m ? "s" : ""));
  std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const int ka = a % 4, ma = a / 4, kb = b % 4, mb = b / 4;
      const int k = ((ka + (ma ? -kb : kb)) % 4 + 4) % 4;
      t[a][b] = static_cast<std::size_t>(k + 4 * ((ma + mb) % 2));
    }
  }
  return group_as_groupoid(t, labels, "D4");
}

GroupoidPtr quaternion8() {
  // index 2u + s  <->  (-1)^s * unit[u], units 1, i, j, k
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  const char* names[4] = {"1", "i", "j", "k"};
  std::vector<std::string> labels;
  for (int u = 0; u < 4; ++u)
    for (int s = 0; s < 2; ++s) labels.push_back(std::string(s ? "-" : "+") + names[u]);
  std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      const int ua = a / 2, sa = a % 2, ub = b / 2, sb = b % 2;
      t[a][b] = static_cast<std::size_t>(2 * unit_mul[ua][ub] + ((sa + sb + unit_sign[ua][ub]) % 2));
    }
  }
  return group_as_groupoid(t, labels, "Q8");
}

std::string normalize(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '/' || c == ' '; }), s.end());
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

GroupoidPtr single(const std::string& raw) {
  const std::string s = normalize(raw);
  if (s == "1" || s == "TRIVIAL") return trivial_groupoid();
  if (s == "Z2XZ2" || s == "V4" || s == "KLEIN") return klein();
  if (s == "S3") return symmetric3();
  if (s == "D4") return dihedral4();
  if (s == "Q8") return quaternion8();
  if (s.size() >= 2 && s[0] == 'Z' && std::all_of(s.begin() + 1, s.end(), ::isdigit)) {
    const std::size_t n = std::stoul(s.substr(1));
    if (n >= 1 && n <= 16) return cyclic(n);
  }
  throw Error(ErrorKind::Parse, "unknown group shorthand '" + raw + "'");
}

}  // namespace

GroupoidPtr named_groupoid(const std::string& name) {
  std::vector<std::string> parts;
  std::stringstream ss(name);
  for (std::string part; std::getline(ss, part, '+');) parts.push_back(part);
  if (parts.empty()) throw Error(ErrorKind::Parse, "empty group name");
  GroupoidPtr g = single(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) g = disjoint_union(g, single(parts[i]));
  return g;
}

std::vector<std::string> catalog_group_names() {
  return {"Z/1", "Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/7", "Z/8", "Z/2xZ/2", "S3", "D4", "Q8"};
}

}  // namespace gpdact
