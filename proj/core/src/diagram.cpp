#include "gpdact/diagram.hpp"

#include <cctype>
#include <map>

#include "gpdact/error.hpp"

namespace gpdact {

TermPtr leaf(std::string name) {
  auto t = std::make_shared<Term>();
  t->name = std::move(name);
  return t;
}

TermPtr leaf(std::string name, Span2 value) {
  auto t = std::make_shared<Term>();
  t->name = std::move(name);
  t->value = std::make_shared<const Span2>(std::move(value));
  return t;
}

namespace {

TermPtr node(Term::Kind kind, std::vector<TermPtr> children) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  for (auto& c : children)
    if (c) t->children.push_back(std::move(c));
  return t;
}

std::string strip_kind(const Error& e) {
  std::string what = e.what();
  const auto pos = what.find(": ");
  return pos == std::string::npos ? what : what.substr(pos + 2);
}

Span2 eval(const TermPtr& t, const Bindings& bindings, const std::string& path) {
  const std::string here = path.empty() ? "/" : path;
  switch (t->kind) {
    case Term::Kind::Leaf: {
      if (t->value) return *t->value;
      auto it = bindings.find(t->name);
      if (it == bindings.end()) throw Error(ErrorKind::TypeMismatch, "at " + here + ": unbound cell '" + t->name + "'");
      return it->second;
    }
    case Term::Kind::Dagger: {
      if (t->children.size() != 1) throw Error(ErrorKind::Parse, "at " + here + ": dag takes one argument");
      return dagger(eval(t->children[0], bindings, path + "/dag"));
    }
    case Term::Kind::Vertical: {
      if (t->children.empty()) throw Error(ErrorKind::Parse, "at " + here + ": empty vertical composite");
      Span2 acc = eval(t->children[0], bindings, path + "/v[0]");
      for (std::size_t i = 1; i < t->children.size(); ++i) {
        Span2 next = eval(t->children[i], bindings, path + "/v[" + std::to_string(i) + "]");
        try {
          acc = vertical_compose(acc, next);
        } catch (const Error& e) {
          throw Error(e.kind(), "at " + path + "/v[" + std::to_string(i) + "]: " + strip_kind(e));
        }
      }
      return acc;
    }
    case Term::Kind::Horizontal: {
      if (t->children.empty()) throw Error(ErrorKind::Parse, "at " + here + ": empty horizontal composite");
      std::vector<Span2> parts;
      for (std::size_t i = 0; i < t->children.size(); ++i)
        parts.push_back(eval(t->children[i], bindings, path + "/h[" + std::to_string(i) + "]"));
      Span2 acc = std::move(parts.back());
      for (std::size_t i = parts.size() - 1; i-- > 0;) {
        try {
          acc = horizontal_compose(parts[i], acc);
        } catch (const Error& e) {
          throw Error(e.kind(), "at " + path + "/h[" + std::to_string(i) + "]: " + strip_kind(e));
        }
      }
      return acc;
    }
  }
  throw Error(ErrorKind::Unsupported, "unknown term kind");
}

}  // namespace

TermPtr vert(std::vector<TermPtr> children) { return node(Term::Kind::Vertical, std::move(children)); }
TermPtr horiz(std::vector<TermPtr> children) { return node(Term::Kind::Horizontal, std::move(children)); }
TermPtr dag(TermPtr child) { return node(Term::Kind::Dagger, {std::move(child)}); }

Span2 evaluate_term(const TermPtr& term, const Bindings& bindings) { return eval(term, bindings, ""); }

std::string to_sexpr(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Leaf:
      return t->name;
    case Term::Kind::Dagger:
      return "(dag " + to_sexpr(t->children.at(0)) + ")";
    case Term::Kind::Vertical:
    case Term::Kind::Horizontal: {
      std::string out = t->kind == Term::Kind::Vertical ? "(v" : "(h";
      for (const auto& c : t->children) out += " " + to_sexpr(c);
      return out + ")";
    }
  }
  return {};
}

namespace {

class TermParser {
 public:
  explicit TermParser(const std::string& text) : s_(text) {}

  TermPtr parse() {
    TermPtr t = term();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorKind::Parse, "term offset " + std::to_string(i_) + ": " + msg);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string name() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')') ++i_;
    if (start == i_) fail("expected a name");
    return s_.substr(start, i_ - start);
  }
  TermPtr term() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    if (s_[i_] == ')') fail("unexpected ')'");
    if (s_[i_] != '(') return leaf(name());
    ++i_;
    const std::string op = name();
    std::vector<TermPtr> children;
    for (;;) {
      skip();
      if (i_ >= s_.size()) fail("missing ')'");
      if (s_[i_] == ')') {
        ++i_;
        break;
      }
      children.push_back(term());
    }
    if (op == "v" || op == "h") {
      if (children.empty()) fail("'" + op + "' needs at least one argument");
      return op == "v" ? vert(std::move(children)) : horiz(std::move(children));
    }
    if (op == "dag") {
      if (children.size() != 1) fail("'dag' takes exactly one argument");
      return dag(children[0]);
    }
    fail("unknown node kind '" + op + "'");
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

TermPtr parse_term(const std::string& text) { return TermParser(text).parse(); }

TermPtr id_leaf(const ProfunctorPtr& p) { return leaf("id", identity_span(p)); }

ProfunctorPtr Diagram::canonical(const std::vector<ProfunctorPtr>& atoms) {
  if (atoms.empty()) throw Error(ErrorKind::TypeMismatch, "empty word");
  ProfunctorPtr acc = atoms.back();
  for (std::size_t i = atoms.size() - 1; i-- > 0;) acc = compose_profunctors(atoms[i], acc);
  return acc;
}

TermPtr Diagram::split(const std::vector<ProfunctorPtr>& a, const std::vector<ProfunctorPtr>& b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::TypeMismatch, "cannot split off an empty word");
  if (a.size() == 1) return nullptr;
  const std::vector<ProfunctorPtr> tail(a.begin() + 1, a.end());
  TermPtr inner = split(tail, b);
  TermPtr whiskered = inner ? horiz({id_leaf(a.front()), inner}) : nullptr;
  return vert({whiskered, dag(leaf("assoc", associator(a.front(), canonical(tail), canonical(b))))});
}

Diagram::Diagram(std::vector<ProfunctorPtr> word, std::vector<std::size_t> input_blocks) : word_(std::move(word)) {
  if (word_.empty()) throw Error(ErrorKind::TypeMismatch, "diagram needs at least one atom");
  if (!input_blocks.empty()) {
    if (input_blocks.size() != 2 || input_blocks[0] + input_blocks[1] != word_.size())
      throw Error(ErrorKind::TypeMismatch, "input blocks must split the word in two");
    const std::vector<ProfunctorPtr> a(word_.begin(), word_.begin() + input_blocks[0]);
    const std::vector<ProfunctorPtr> b(word_.begin() + input_blocks[0], word_.end());
    if (auto s = split(a, b)) steps_.push_back(dag(s));
  }
}

Diagram& Diagram::apply(std::size_t pos, std::size_t len, const TermPtr& cell, std::vector<ProfunctorPtr> result,
                        std::vector<std::size_t> domain_blocks, std::vector<std::size_t> codomain_blocks) {
  if (len == 0 || pos + len > word_.size() || result.empty())
    throw Error(ErrorKind::TypeMismatch, "cell position out of range");
  const std::vector<ProfunctorPtr> prefix(word_.begin(), word_.begin() + pos);
  const std::vector<ProfunctorPtr> m(word_.begin() + pos, word_.begin() + pos + len);
  const std::vector<ProfunctorPtr> rest(word_.begin() + pos + len, word_.end());

  auto blocks = [](const std::vector<ProfunctorPtr>& w, const std::vector<std::size_t>& sizes) {
    if (sizes.size() != 2 || sizes[0] + sizes[1] != w.size())
      throw Error(ErrorKind::TypeMismatch, "blocks must split the subword in two");
    return split({w.begin(), w.begin() + sizes[0]}, {w.begin() + sizes[0], w.end()});
  };
  TermPtr core = cell;
  if (!domain_blocks.empty()) core = vert({blocks(m, domain_blocks), core});
  if (!codomain_blocks.empty()) {
    TermPtr s = blocks(result, codomain_blocks);
    core = vert({core, s ? dag(s) : nullptr});
  }
  if (!rest.empty()) {
    TermPtr in = split(m, rest);
    TermPtr out = split(result, rest);
    core = vert({in, horiz({core, id_leaf(canonical(rest))}), out ? dag(out) : nullptr});
  }
  std::vector<ProfunctorPtr> tail = result;
  tail.insert(tail.end(), rest.begin(), rest.end());
  for (std::size_t i = pos; i-- > 0;) core = horiz({id_leaf(word_[i]), core});

  steps_.push_back(core);
  std::vector<ProfunctorPtr> next = prefix;
  next.insert(next.end(), tail.begin(), tail.end());
  word_ = std::move(next);
  return *this;
}

Diagram& Diagram::insert_identity(std::size_t pos) {
  if (pos < word_.size()) {
    auto a = word_[pos];
    return apply(pos, 1, dag(leaf("lu", left_unitor(a))), {hom_profunctor(a->source()), a});
  }
  auto a = word_.back();
  return apply(word_.size() - 1, 1, dag(leaf("ru", right_unitor(a))), {a, hom_profunctor(a->target())});
}

Diagram& Diagram::remove_identity(std::size_t pos) {
  if (word_.size() < 2) throw Error(ErrorKind::TypeMismatch, "cannot remove the only atom");
  if (pos + 1 < word_.size()) {
    auto next = word_[pos + 1];
    if (!same_profunctor(word_[pos], hom_profunctor(next->source())))
      throw Error(ErrorKind::TypeMismatch, "atom " + std::to_string(pos) + " is not an identity");
    return apply(pos, 2, leaf("lu", left_unitor(next)), {next});
  }
  auto prev = word_[pos - 1];
  if (!same_profunctor(word_[pos], hom_profunctor(prev->target())))
    throw Error(ErrorKind::TypeMismatch, "atom " + std::to_string(pos) + " is not an identity");
  return apply(pos - 1, 2, leaf("ru", right_unitor(prev)), {prev});
}

Diagram& Diagram::finish(std::vector<std::size_t> output_blocks) {
  if (output_blocks.size() != 2 || output_blocks[0] + output_blocks[1] != word_.size())
    throw Error(ErrorKind::TypeMismatch, "output blocks must split the word in two");
  if (auto s = split({word_.begin(), word_.begin() + output_blocks[0]}, {word_.begin() + output_blocks[0], word_.end()}))
    steps_.push_back(s);
  return *this;
}

Diagram& Diagram::mark(std::string label) {
  marks_.emplace_back(std::move(label), steps_.size());
  return *this;
}

TermPtr Diagram::term(std::size_t first, std::size_t last) const {
  return vert(std::vector<TermPtr>(steps_.begin() + first, steps_.begin() + last));
}

std::vector<Distribution> trace_element(const std::vector<Span2>& steps, ElemId start) {
  std::vector<Distribution> out;
  std::map<ElemId, Mult> current{{start, 1}};
  for (const auto& s : steps) {
    std::map<ElemId, Mult> next;
    for (const auto& [e, m] : current)
      for (const auto& [t, k] : s.row(e)) next[t] += m * k;
    current = std::move(next);
    out.emplace_back(current.begin(), current.end());
  }
  return out;
}

}  // namespace gpdact
