#pragma once

#include <string>

#include "gpdact/diagram.hpp"
#include "gpdact/quantize.hpp"

namespace gpdact {

/// Text formats (JSON). Unknown keys are rejected with a Parse error.
///
/// Groupoid, one of:
///   "Z/4"                                      catalog name (also "Z/2+Z/3")
///   {"group": "S3"}
///   {"cayley": [[0,1],[1,0]], "labels": ["e","a"], "name": "..."}
///   {"name": "...", "objects": ["0","1"],
///    "morphisms": [{"name": "(0,0)", "source": "0", "target": "0"}, ...],
///    "compose": [["f", "g", "f;g"], ...]}       f applied first
///
/// Profunctor, one of:
///   {"builtin": "hom"|"boundary_left"|"boundary_right"|"bubble"|"loop", "groupoid": G}
///   {"builtin": "set", "labels": ["s0","s1"]}
///   {"name": "S", "source": G, "target": H,
///    "elements": [{"label": "a", "stage": ["x", "y"]}, ...],   x in H, y in G
///    "left":  [["h", "a", "h.a"], ...],
///    "right": [["a", "g", "a.g"], ...]}
///
/// Span, one of:
///   {"source": P, "target": P, "entries": [[["x","y"], "s", "t", 1], ...]}
///   {"cell": "mu"|"mu_dagger"|"epsilon"|"epsilon_dagger", "groupoid": G}
///   {"cell": "delta"|"lambda", "group": G}
///   {"cell": "identity", "profunctor": P}
///
/// Term file: {"term": "(v a (dag a))", "bindings": {"a": Span, ...}}
GroupoidPtr parse_groupoid(const std::string& text);
ProfunctorPtr parse_profunctor(const std::string& text);
Span2 parse_span(const std::string& text);

struct TermFile {
  TermPtr term;
  Bindings bindings;
};
TermFile parse_term_file(const std::string& text);

/// Which of the formats above a document is: "groupoid", "profunctor",
/// "span" or "term".
std::string detect_format(const std::string& text);

std::string read_file(const std::string& path);

std::string groupoid_to_json(const Groupoid& g);
std::string span_to_json(const Span2& s);

/// Matrix dumps: {"rows": [...], "cols": [...], "entries": [[...]]}. Rationals
/// print as "p/q" strings, complex entries as [re, im] pairs.
std::string dump_matrix(const NatMatrix& m);
std::string dump_matrix(const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                        const std::vector<RationalVector>& entries);
std::string dump_matrix(const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                        const ComplexMatrix& entries);

}  // namespace gpdact
