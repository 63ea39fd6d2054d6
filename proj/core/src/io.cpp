#include "gpdact/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "gpdact/error.hpp"
#include "json.hpp"

namespace gpdact {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

json load(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
}

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& what) {
  const std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) parse_error("unknown key '" + k + "' in " + what);
}

template <class T>
T field(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) parse_error(what + " needs '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    parse_error("'" + std::string(key) + "' in " + what + " has the wrong type");
  }
}

GroupoidPtr groupoid_from(const json& j) {
  if (j.is_string()) return named_groupoid(j.get<std::string>());
  if (!j.is_object()) parse_error("groupoid must be a name or an object");
  if (j.contains("group")) {
    allow_keys(j, {"group"}, "groupoid");
    return named_groupoid(field<std::string>(j, "group", "groupoid"));
  }
  if (j.contains("cayley")) {
    allow_keys(j, {"cayley", "labels", "name"}, "groupoid");
    return group_as_groupoid(field<std::vector<std::vector<std::size_t>>>(j, "cayley", "groupoid"),
                             j.value("labels", std::vector<std::string>{}), j.value("name", std::string{}));
  }
  allow_keys(j, {"name", "objects", "morphisms", "compose"}, "groupoid");
  GroupoidSpec spec;
  spec.objects = field<std::vector<std::string>>(j, "objects", "groupoid");
  for (const auto& m : field<json>(j, "morphisms", "groupoid")) {
    allow_keys(m, {"name", "source", "target"}, "morphism");
    spec.morphisms.push_back({field<std::string>(m, "name", "morphism"), field<std::string>(m, "source", "morphism"),
                              field<std::string>(m, "target", "morphism")});
  }
  for (const auto& c : field<json>(j, "compose", "groupoid")) {
    if (!c.is_array() || c.size() != 3) parse_error("compose entries are [first, second, result]");
    spec.compose.push_back({c[0].get<std::string>(), c[1].get<std::string>(), c[2].get<std::string>()});
  }
  return validate_groupoid(spec, j.value("name", std::string{}));
}

ObjId object_of(const Groupoid& g, const json& label) {
  const auto text = label.get<std::string>();
  auto o = g.find_object(text);
  if (!o) throw Error(ErrorKind::InvalidElement, "no object '" + text + "' in " + g.name());
  return *o;
}

MorId morphism_of(const Groupoid& g, const json& label) {
  const auto text = label.get<std::string>();
  auto m = g.find_morphism(text);
  if (!m) throw Error(ErrorKind::InvalidElement, "no morphism '" + text + "' in " + g.name());
  return *m;
}

ElemId element_of(const Profunctor& p, const json& label) {
  const auto text = label.get<std::string>();
  auto e = p.find(text);
  if (!e) throw Error(ErrorKind::InvalidElement, "no element '" + text + "' in " + describe(p));
  return *e;
}

ProfunctorPtr profunctor_from(const json& j) {
  if (!j.is_object()) parse_error("profunctor must be an object");
  if (j.contains("builtin")) {
    const auto kind = field<std::string>(j, "builtin", "profunctor");
    if (kind == "set") {
      allow_keys(j, {"builtin", "labels", "name"}, "profunctor");
      return set_profunctor(field<std::vector<std::string>>(j, "labels", "profunctor"), j.value("name", "S"));
    }
    allow_keys(j, {"builtin", "groupoid"}, "profunctor");
    auto g = groupoid_from(field<json>(j, "groupoid", "profunctor"));
    if (kind == "hom") return hom_profunctor(g);
    g = skeletalize(g).groupoid;
    if (kind == "boundary_left") return boundary_left(g);
    if (kind == "boundary_right") return boundary_right(g);
    if (kind == "bubble") return compose_profunctors(boundary_left(g), boundary_right(g));
    if (kind == "loop") return compose_profunctors(boundary_right(g), boundary_left(g));
    parse_error("unknown builtin profunctor '" + kind + "'");
  }
  allow_keys(j, {"name", "source", "target", "elements", "left", "right"}, "profunctor");
  auto G = groupoid_from(field<json>(j, "source", "profunctor"));
  auto H = groupoid_from(field<json>(j, "target", "profunctor"));
  std::vector<StageId> stage_of;
  std::vector<std::string> labels;
  std::map<std::string, ElemId> ids;
  for (const auto& e : field<json>(j, "elements", "profunctor")) {
    allow_keys(e, {"label", "stage"}, "element");
    const auto label = field<std::string>(e, "label", "element");
    const auto stage = field<json>(e, "stage", "element");
    if (!stage.is_array() || stage.size() != 2) parse_error("stage of '" + label + "' must be [target, source]");
    if (!ids.emplace(label, labels.size()).second) parse_error("duplicate element '" + label + "'");
    stage_of.push_back(object_of(*H, stage[0]) * G->object_count() + object_of(*G, stage[1]));
    labels.push_back(label);
  }
  const std::size_t n = labels.size();
  auto id = [&](const json& v) {
    auto it = ids.find(v.get<std::string>());
    if (it == ids.end()) parse_error("unknown element '" + v.get<std::string>() + "'");
    return it->second;
  };
  std::vector<ElemId> left(H->morphism_count() * n, npos), right(n * G->morphism_count(), npos);
  for (const auto& t : j.value("left", json::array())) {
    if (!t.is_array() || t.size() != 3) parse_error("left entries are [h, element, result]");
    left[morphism_of(*H, t[0]) * n + id(t[1])] = id(t[2]);
  }
  for (const auto& t : j.value("right", json::array())) {
    if (!t.is_array() || t.size() != 3) parse_error("right entries are [element, g, result]");
    right[id(t[0]) * G->morphism_count() + morphism_of(*G, t[1])] = id(t[2]);
  }
  return Profunctor::make(G, H, stage_of, labels, left, right, j.value("name", std::string{}));
}

Span2 span_from(const json& j) {
  if (!j.is_object()) parse_error("span must be an object");
  if (j.contains("cell")) {
    const auto kind = field<std::string>(j, "cell", "span");
    if (kind == "identity") {
      allow_keys(j, {"cell", "profunctor"}, "span");
      return identity_span(profunctor_from(field<json>(j, "profunctor", "span")));
    }
    if (kind == "delta" || kind == "lambda") {
      allow_keys(j, {"cell", "group"}, "span");
      auto cs = build_delta(groupoid_from(field<json>(j, "group", "span")));
      return kind == "delta" ? cs.delta : build_lambda(cs).lambda;
    }
    allow_keys(j, {"cell", "groupoid"}, "span");
    const auto c = canonical_cells(skeletalize(groupoid_from(field<json>(j, "groupoid", "span"))).groupoid);
    if (kind == "mu") return c.mu;
    if (kind == "mu_dagger") return c.mu_dagger;
    if (kind == "epsilon") return c.epsilon;
    if (kind == "epsilon_dagger") return c.epsilon_dagger;
    parse_error("unknown cell '" + kind + "'");
  }
  allow_keys(j, {"source", "target", "entries"}, "span");
  auto s = profunctor_from(field<json>(j, "source", "span"));
  auto t = profunctor_from(field<json>(j, "target", "span"));
  std::vector<Triple> entries;
  for (const auto& e : field<json>(j, "entries", "span")) {
    if (!e.is_array() || e.size() != 4 || !e[0].is_array() || e[0].size() != 2)
      parse_error("span entries are [[target_obj, source_obj], s, t, multiplicity]");
    const StageId st = object_of(*s->target(), e[0][0]) * s->source()->object_count() + object_of(*s->source(), e[0][1]);
    const ElemId a = element_of(*s, e[1]);
    const ElemId b = element_of(*t, e[2]);
    if (s->stage_of(a) != st || t->stage_of(b) != st)
      throw Error(ErrorKind::StageMismatch, "entry (" + s->label(a) + ", " + t->label(b) + ") is not in the stated stage");
    if (!e[3].is_number_unsigned()) parse_error("multiplicity must be a natural number");
    entries.emplace_back(a, b, e[3].get<Mult>());
  }
  return make_span(s, t, entries);
}

}  // namespace

GroupoidPtr parse_groupoid(const std::string& text) { return groupoid_from(load(text)); }
ProfunctorPtr parse_profunctor(const std::string& text) { return profunctor_from(load(text)); }
Span2 parse_span(const std::string& text) { return span_from(load(text)); }

TermFile parse_term_file(const std::string& text) {
  const json j = load(text);
  if (!j.is_object()) parse_error("term file must be an object");
  allow_keys(j, {"term", "bindings"}, "term file");
  TermFile out;
  out.term = parse_term(field<std::string>(j, "term", "term file"));
  const json bindings = j.value("bindings", json::object());
  for (const auto& [name, span] : bindings.items()) {
    try {
      out.bindings.emplace(name, span_from(span));
    } catch (const Error& e) {
      throw Error(e.kind(), "binding '" + name + "': " + std::string(e.what()));
    }
  }
  return out;
}

std::string detect_format(const std::string& text) {
  const json j = load(text);
  if (j.is_string()) return "groupoid";
  if (!j.is_object()) parse_error("expected a JSON object");
  if (j.contains("term")) return "term";
  if (j.contains("entries") || j.contains("cell")) return "span";
  if (j.contains("builtin") || j.contains("elements")) return "profunctor";
  if (j.contains("group") || j.contains("cayley") || j.contains("objects")) return "groupoid";
  parse_error("cannot tell which format this document uses");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string groupoid_to_json(const Groupoid& g) {
  json j;
  j["name"] = g.name();
  for (ObjId x = 0; x < g.object_count(); ++x) j["objects"].push_back(g.object_label(x));
  j["morphisms"] = json::array();
  j["compose"] = json::array();
  for (MorId f = 0; f < g.morphism_count(); ++f)
    j["morphisms"].push_back(
        {{"name", g.morphism_label(f)}, {"source", g.object_label(g.src(f))}, {"target", g.object_label(g.tgt(f))}});
  for (MorId f = 0; f < g.morphism_count(); ++f)
    for (MorId h = 0; h < g.morphism_count(); ++h)
      if (g.composable(f, h))
        j["compose"].push_back({g.morphism_label(f), g.morphism_label(h), g.morphism_label(g.compose(f, h))});
  return j.dump(2);
}

std::string span_to_json(const Span2& s) {
  json j;
  j["source"] = describe(*s.src());
  j["target"] = describe(*s.tgt());
  j["entries"] = json::array();
  const Profunctor& P = *s.src();
  for (ElemId e = 0; e < P.element_count(); ++e) {
    const StageId st = P.stage_of(e);
    for (const auto& [t, m] : s.row(e))
      j["entries"].push_back({{P.target()->object_label(P.stage_target(st)), P.source()->object_label(P.stage_source(st))},
                              P.label(e), s.tgt()->label(t), m});
  }
  return j.dump(2);
}

std::string dump_matrix(const NatMatrix& m) {
  json j;
  j["rows"] = m.row_labels;
  j["cols"] = m.col_labels;
  j["entries"] = json::array();
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.entries.cols(); ++k) row.push_back(m.entries(i, k));
    j["entries"].push_back(row);
  }
  return j.dump(2);
}

std::string dump_matrix(const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                        const std::vector<RationalVector>& entries) {
  json j;
  j["rows"] = rows;
  j["cols"] = cols;
  j["entries"] = json::array();
  for (const auto& r : entries) {
    json row = json::array();
    for (const auto& q : r)
      row.push_back(q.denominator() == 1 ? std::to_string(q.numerator())
                                         : std::to_string(q.numerator()) + "/" + std::to_string(q.denominator()));
    j["entries"].push_back(row);
  }
  return j.dump(2);
}

std::string dump_matrix(const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                        const ComplexMatrix& entries) {
  json j;
  j["rows"] = rows;
  j["cols"] = cols;
  j["entries"] = json::array();
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < entries.cols(); ++k) row.push_back({entries(i, k).real(), entries(i, k).imag()});
    j["entries"].push_back(row);
  }
  return j.dump(2);
}

}  // namespace gpdact
