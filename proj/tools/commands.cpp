#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "gpdact/error.hpp"
#include "gpdact/io.hpp"
#include "gpdact/thermal.hpp"
#include "report.hpp"
#include "suite.hpp"

namespace gpdact::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

/// Usage-level failure raised while resolving arguments.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  std::vector<std::string> digest_parts;
  std::uint64_t seed = 1;
  bool seed_given = false;

  std::string file(const std::string& path) {
    std::string text = read_file(path);
    digest_parts.push_back(text);
    return text;
  }

  GroupoidPtr group(const std::string& arg) {
    if (std::filesystem::is_regular_file(arg)) return parse_groupoid(file(arg));
    return named_groupoid(arg);
  }
};

double elapsed(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

/// Times `body` and stamps the checks it added.
void timed(Report& r, const std::function<void()>& body) {
  const std::size_t before = r.checks.size();
  const auto t0 = Clock::now();
  body();
  const double ms = elapsed(t0);
  for (std::size_t i = before; i < r.checks.size(); ++i) r.checks[i].timing_ms = ms;
}

MorId resolve_morphism(const Groupoid& g, const std::string& text, const char* what) {
  if (auto m = g.find_morphism(text)) return *m;
  if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
    const auto i = std::stoull(text);
    if (i < g.morphism_count()) return i;
  }
  throw Error(ErrorKind::InvalidElement, std::string(what) + " '" + text + "' is not an element of " + g.name());
}

GroupoidPtr cyclic(int n) {
  if (n < 1) throw UsageError("n must be positive");
  return named_groupoid("Z/" + std::to_string(n));
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

std::vector<Complex> parse_state(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    // "re" or "re:im"
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos)
        out.emplace_back(std::stod(item), 0.0);
      else
        out.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    } catch (const std::exception&) {
      throw UsageError("bad amplitude '" + item + "' in --state");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

void cmd_validate(Context& ctx, Report& r, const std::string& path) {
  const std::string text = ctx.file(path);
  std::string kind;
  try {
    kind = detect_format(text);
    r.details["format"] = kind;
    if (kind == "groupoid") {
      auto g = parse_groupoid(text);
      r.details["objects"] = g->object_count();
      r.details["morphisms"] = g->morphism_count();
      r.details["skeletal"] = g->skeletal();
      r.add("groupoid axioms", true, {});
    } else if (kind == "profunctor") {
      auto p = parse_profunctor(text);
      r.details["elements"] = p->element_count();
      r.details["description"] = describe(*p);
      r.add("profunctor actions", true, {});
    } else if (kind == "span") {
      const Span2 s = parse_span(text);
      r.details["support"] = s.support_size();
      r.add("span naturality", true, {});
      r.details["unitary"] = is_unitary(s).unitary;
    } else {
      const auto tf = parse_term_file(text);
      const Span2 s = evaluate_term(tf.term, tf.bindings);
      r.details["term"] = to_sexpr(tf.term);
      r.details["support"] = s.support_size();
      r.add("term evaluates", true, {});
    }
  } catch (const Error& e) {
    r.add(kind.empty() ? "parse" : kind + " valid", false, e.what());
  }
}

void cmd_check_axioms(Context& ctx, Report& r, const std::string& arg) {
  auto g = ctx.group(arg);
  if (!g->skeletal()) {
    g = skeletalize(g).groupoid;
    r.details["skeletalized"] = true;
  }
  r.details["groupoid"] = g->name();
  r.details["morphisms"] = g->morphism_count();
  timed(r, [&] {
    const auto checks = check_topological_axioms(g);
    r.add_all(checks);
    std::size_t passed = 0;
    for (const auto& c : checks) passed += c.pass ? 1 : 0;
    r.details["equalities"] = std::to_string(passed) + "/" + std::to_string(checks.size());
  });
}

void cmd_check_complementary(Context& ctx, Report& r, const std::string& arg, const std::string& chase) {
  auto g = ctx.group(arg);
  r.details["group"] = g->name();
  timed(r, [&] {
    const auto cs = build_delta(g, false);
    r.add_all(check_complementary(cs));
    if (!chase.empty()) {
      const auto comma = chase.find(',');
      if (comma == std::string::npos) throw UsageError("--chase expects g,g'");
      const MorId a = resolve_morphism(*g, chase.substr(0, comma), "g");
      const MorId b = resolve_morphism(*g, chase.substr(comma + 1), "g'");
      json steps = json::array();
      for (const auto& s : element_chase(cs, a, b)) steps.push_back({{"step", s.step}, {"support", s.support}});
      r.details["chase"] = steps;
    }
  });
}

json lambda_table(const CommunicationStructure& cm) {
  json table = json::object();
  const auto& g = *cm.cs.group;
  for (MorId a = 0; a < g.morphism_count(); ++a)
    for (MorId b = 0; b < g.morphism_count(); ++b) {
      const ElemId in = cm.input(a, b);
      json outs = json::array();
      for (const auto& [t, m] : cm.lambda.row(in))
        outs.push_back(m == 1 ? cm.lambda.tgt()->label(t) : cm.lambda.tgt()->label(t) + " x " + std::to_string(m));
      table[cm.lambda.src()->label(in)] = outs;
    }
  return table;
}

void cmd_build_lambda(Context& ctx, Report& r, const std::string& arg) {
  auto g = ctx.group(arg);
  r.details["group"] = g->name();
  timed(r, [&] {
    const auto cm = build_lambda(build_delta(g, false), false);
    const auto u = is_unitary(cm.lambda);
    r.add("lambda unitary", u.unitary, u.witness);
    const auto up = is_unitary(cm.lambda_prime);
    r.add("lambda prime unitary", up.unitary, up.witness);
    r.details["steps"] = cm.lambda_diagram.steps().size();
    r.details["lambda"] = lambda_table(cm);
  });
}

void cmd_check_communication(Context& ctx, Report& r, const std::string& arg) {
  auto g = ctx.group(arg);
  r.details["group"] = g->name();
  timed(r, [&] { r.add_all(check_communication(build_lambda(build_delta(g, false), false))); });
}

void cmd_encrypt(Context& ctx, Report& r, const std::string& arg, const std::string& plaintext,
                 const std::string& key) {
  auto g = ctx.group(arg);
  const MorId p = resolve_morphism(*g, plaintext, "plaintext");
  const MorId k = resolve_morphism(*g, key, "key");
  timed(r, [&] {
    const Cipher cipher(g);
    const auto t = cipher.encrypt(p, k);
    const auto& cs = cipher.structure().cs;
    r.details["group"] = g->name();
    r.details["plaintext"] = g->morphism_label(p);
    r.details["key"] = g->morphism_label(k);
    r.details["ciphertext"] = "delta(" + cs.discrete->object_label(t.ciphertext) + ")";
    r.details["heat"] = g->morphism_label(t.heat);
    json trace = json::array();
    for (const auto& s : t.stage_trace) trace.push_back({{"step", s.step}, {"support", s.support}});
    r.details["trace"] = trace;
    r.add("ciphertext is delta(g g')", t.ciphertext == g->compose(k, p),
          "got " + cs.discrete->object_label(t.ciphertext));
    const MorId back = cipher.decrypt(t.ciphertext, k);
    r.add("decrypt recovers plaintext", back == p, "decrypted " + g->morphism_label(back));
    const auto land = landauer_report(cipher, t);
    r.add_all(land.checks);
    r.details["heat_bits"] = land.heat_bits;
    r.details["hiding"] = land.hiding;
  });
}

void cmd_distribution(Context& ctx, Report& r, const std::string& arg, const std::string& plaintext) {
  auto g = ctx.group(arg);
  const MorId p = resolve_morphism(*g, plaintext, "plaintext");
  timed(r, [&] {
    const Cipher cipher(g);
    const auto counts = cipher.ciphertext_distribution(p);
    json d = json::object();
    bool uniform = true;
    for (ObjId c = 0; c < counts.size(); ++c) {
      d["delta(" + cipher.structure().cs.discrete->object_label(c) + ")"] = counts[c];
      uniform = uniform && counts[c] == counts.front();
    }
    r.details["group"] = g->name();
    r.details["plaintext"] = g->morphism_label(p);
    r.details["counts"] = d;
    r.add("ciphertext counts uniform", uniform, d.dump());
  });
}

void cmd_decohere(Context& ctx, Report& r, const std::string& arg, std::uint64_t trials) {
  auto g = ctx.group(arg);
  r.seed = ctx.seed;
  timed(r, [&] {
    const auto cs = build_delta(g, false);
    const std::size_t n = g->morphism_count();
    bool clean = true;
    for (ObjId info = 0; info < n; ++info) clean = clean && decoherence_trial(cs, info, {}).retrieval_success;
    r.add("retrieval without environment", clean, "information lost with no environment");
    const auto exact = decoherence_exact(cs);
    r.add("exact retrieval rate 1/|G|", exact.successes * n == exact.trials,
          std::to_string(exact.successes) + "/" + std::to_string(exact.trials));
    const auto sampled = decoherence_sampled(cs, trials, ctx.seed);
    r.details["group"] = g->name();
    r.details["exact"] = {{"successes", exact.successes}, {"trials", exact.trials}};
    r.details["sampled"] = {{"successes", sampled.successes}, {"trials", sampled.trials}};
  });
}

void cmd_quantize(Context& ctx, Report& r, const std::string& path) {
  const std::string text = ctx.file(path);
  Span2 s;
  if (detect_format(text) == "term") {
    const auto tf = parse_term_file(text);
    s = evaluate_term(tf.term, tf.bindings);
  } else {
    s = parse_span(text);
  }
  timed(r, [&] {
    const NatMatrix q = q_span(s);
    r.details["matrix"] = json::parse(dump_matrix(q));
    r.add(check_q_naturality(s));
    r.add(check_q_vertical(identity_span(s.src()), s));
  });
}

void cmd_check_q(Context& ctx, Report& r, const std::string& arg, std::size_t pairs) {
  auto g = ctx.group(arg);
  r.seed = ctx.seed;
  std::mt19937_64 rng(ctx.seed);
  const auto cells = canonical_cells(g);
  const std::vector<std::pair<std::string, ProfunctorPtr>> fixtures = {
      {"hom", cells.hom}, {"loop", cells.loop}, {"bubble", cells.bubble}};
  r.details["group"] = g->name();
  r.details["pairs"] = pairs;
  for (const auto& [name, p] : fixtures) {
    timed(r, [&, &name = name, &p = p] {
      std::string vfail, nfail;
      for (std::size_t i = 0; i < pairs; ++i) {
        const Span2 a = random_natural_span(p, p, rng, 3, 0.6);
        const Span2 b = random_natural_span(p, p, rng, 3, 0.6);
        if (const auto v = check_q_vertical(a, b); !v.pass && vfail.empty()) vfail = "pair " + std::to_string(i) + ": " + v.witness;
        if (const auto n = check_q_naturality(a); !n.pass && nfail.empty()) nfail = "pair " + std::to_string(i) + ": " + n.witness;
      }
      r.add("Q preserves vertical composition on " + name, vfail.empty(), vfail);
      r.add("Q natural on " + name, nfail.empty(), nfail);
    });
  }
}

void cmd_check_mub(Report& r, int n) {
  auto g = cyclic(n);
  timed(r, [&] {
    const auto t = character_table(g);
    const double o = orthonormality_deviation(t);
    const double d = mub_deviation(t);
    r.details["n"] = n;
    r.details["orthonormality_deviation"] = o;
    r.details["mub_deviation"] = d;
    r.add("characters orthonormal", o <= 1e-12, "deviation " + fmt(o));
    r.add("bases mutually unbiased", d <= 1e-12, "deviation " + fmt(d));
  });
}

void cmd_teleport(Context& ctx, Report& r, int n, const std::string& state_text) {
  auto g = cyclic(n);
  ComplexVector state;
  if (!state_text.empty()) {
    const auto amps = parse_state(state_text);
    if (amps.size() != static_cast<std::size_t>(n))
      throw UsageError("--state has " + std::to_string(amps.size()) + " amplitudes, expected " + std::to_string(n));
    state = ComplexVector(n);
    for (int i = 0; i < n; ++i) state(i) = amps[i];
  } else {
    r.seed = ctx.seed;
    std::mt19937_64 rng(ctx.seed);
    state = random_state(n, rng);
  }
  timed(r, [&] {
    const auto t = teleportation_simulation(g, state);
    r.add_all(t.checks);
    json branches = json::array();
    for (const auto& b : t.branches)
      branches.push_back({{"outcome", {g->morphism_label(b.a), b.k}}, {"probability", b.probability}, {"fidelity", b.fidelity}});
    r.details["n"] = n;
    r.details["branches"] = branches;
    r.details["min_fidelity"] = t.min_fidelity;
  });
}

void cmd_dense_code(Report& r, int n) {
  auto g = cyclic(n);
  timed(r, [&] {
    const auto d = dense_coding_simulation(g);
    r.add_all(d.checks);
    r.details["n"] = n;
    r.details["messages"] = d.messages;
    r.details["decoded"] = d.decoded;
    r.details["max_deviation"] = d.max_deviation;
  });
}

void cmd_dense_code_span(Context& ctx, Report& r, const std::string& arg) {
  auto g = ctx.group(arg);
  r.details["group"] = g->name();
  timed(r, [&] { r.add_all(check_dense_coding(build_lambda(build_delta(g, false), false))); });
}

void cmd_suite(Context& ctx, Report& r, bool catalog) {
  r.seed = ctx.seed;
  SuiteOptions opt;
  opt.seed = ctx.seed;
  if (!catalog) opt.groups = quick_groups();
  r.details["groups"] = catalog ? catalog_group_names() : opt.groups;
  json summary = json::object();
  for (const auto& c : run_suite(opt)) {
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "c%02d ", c.id);
    for (const auto& k : c.checks) r.add(prefix + k.name, k.pass, k.witness, c.ms);
    summary[std::string(prefix) + c.title] = c.pass() ? "pass" : "fail";
  }
  r.details["criteria"] = summary;
}

void cmd_eval_term(Context& ctx, Report& r, const std::string& path) {
  const auto tf = parse_term_file(ctx.file(path));
  timed(r, [&] {
    const Span2 s = evaluate_term(tf.term, tf.bindings);
    r.details["term"] = to_sexpr(tf.term);
    r.details["span"] = json::parse(span_to_json(s));
    r.add("term evaluates", true, {});
  });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite groupoid actions: exact span checks and simulations", "gpdact"};
  app.require_subcommand(1);

  std::string format = "json";
  bool timing = false;
  std::uint64_t seed_opt = 0;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", timing, "Include per-check timings");
  auto* seed_flag = app.add_option("--seed", seed_opt, "Seed for randomized paths (overrides GPDACT_SEED)");

  Context ctx;
  if (const char* env = std::getenv("GPDACT_SEED")) {
    try {
      ctx.seed = std::stoull(env);
      ctx.seed_given = true;
    } catch (const std::exception&) {
      err << "gpdact: GPDACT_SEED is not an integer\n";
      return 2;
    }
  }

  Report report;
  std::function<void()> action;
  std::string s1, s2, s3;
  int n = 0;
  bool catalog = false;
  std::uint64_t trials = 1000;
  std::size_t pairs = 100;

  auto sub = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->fallthrough();
    return c;
  };
  auto on = [&](CLI::App* c, std::function<void()> f) {
    c->callback([&report, &action, c, f] {
      report.command = c->get_name();
      action = f;
    });
  };
  const char* group_help = "Catalog name (Z/4, S3, Z/2+Z/3, ...) or groupoid file";

  auto* c = sub("validate", "Parse and validate a groupoid, profunctor, span or term file");
  c->add_option("file", s1)->required();
  on(c, [&] { cmd_validate(ctx, report, s1); });

  c = sub("check-axioms", "Check the six snake equalities of the boundary adjunction");
  c->add_option("groupoid", s1, group_help)->required();
  on(c, [&] { cmd_check_axioms(ctx, report, s1); });

  c = sub("check-complementary", "Check delta and its partial transposes");
  c->add_option("group", s1, group_help)->required();
  c->add_option("--chase", s2, "Element chase for a pair g,g'");
  on(c, [&] { cmd_check_complementary(ctx, report, s1, s2); });

  c = sub("build-lambda", "Build the communication cell and print its table");
  c->add_option("group", s1, group_help)->required();
  on(c, [&] { cmd_build_lambda(ctx, report, s1); });

  c = sub("check-communication", "Check unitarity of lambda and the stepwise equalities");
  c->add_option("group", s1, group_help)->required();
  on(c, [&] { cmd_check_communication(ctx, report, s1); });

  c = sub("encrypt", "Encrypt one plaintext with one key through the span engine");
  c->add_option("group", s1, group_help)->required();
  c->add_option("--plaintext", s2, "Group element (label or index)")->required();
  c->add_option("--key", s3, "Group element (label or index)")->required();
  on(c, [&] { cmd_encrypt(ctx, report, s1, s2, s3); });

  c = sub("distribution", "Ciphertext counts over all keys");
  c->add_option("group", s1, group_help)->required();
  c->add_option("--plaintext", s2, "Group element (label or index)")->required();
  on(c, [&] { cmd_distribution(ctx, report, s1, s2); });

  c = sub("decohere", "Retrieval under a random single-multiplication environment");
  c->add_option("group", s1, group_help)->required();
  c->add_option("--trials", trials, "Sampled trials")->capture_default_str();
  on(c, [&] { cmd_decohere(ctx, report, s1, trials); });

  c = sub("quantize", "Integer matrix of a span (or term file)");
  c->add_option("span-file", s1)->required();
  on(c, [&] { cmd_quantize(ctx, report, s1); });

  c = sub("check-q", "Quantization checks on seeded random spans");
  c->add_option("group", s1, group_help)->required();
  c->add_option("--pairs", pairs, "Span pairs per profunctor")->capture_default_str();
  on(c, [&] { cmd_check_q(ctx, report, s1, pairs); });

  c = sub("check-mub", "Character basis against the computational basis of Z/n");
  c->add_option("n", n)->required();
  on(c, [&] { cmd_check_mub(report, n); });

  c = sub("teleport", "State-vector teleportation over Z/n");
  c->add_option("n", n)->required();
  c->add_option("--state", s1, "Comma-separated amplitudes, re or re:im");
  on(c, [&] { cmd_teleport(ctx, report, n, s1); });

  c = sub("dense-code", "State-vector dense coding over Z/n");
  c->add_option("n", n)->required();
  on(c, [&] { cmd_dense_code(report, n); });

  c = sub("dense-code-span", "Span-level dense coding equation");
  c->add_option("group", s1, group_help)->required();
  on(c, [&] { cmd_dense_code_span(ctx, report, s1); });

  c = sub("suite", "Run the acceptance battery");
  c->add_flag("--catalog", catalog, "Every catalog group instead of the quick set");
  on(c, [&] { cmd_suite(ctx, report, catalog); });

  c = sub("eval-term", "Evaluate a term file");
  c->add_option("file", s1)->required();
  on(c, [&] { cmd_eval_term(ctx, report, s1); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (seed_flag->count() > 0) {
    ctx.seed = seed_opt;
    ctx.seed_given = true;
  }

  try {
    action();
  } catch (const UsageError& e) {
    err << "gpdact " << report.command << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "gpdact " << report.command << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "gpdact " << report.command << ": " << e.what() << "\n";
    return 2;
  }

  std::vector<std::string> parts{report.command};
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--timing" || a.rfind("--format", 0) == 0) continue;
    if (i > 1 && std::string(argv[i - 1]) == "--format") continue;
    parts.push_back(a);
  }
  parts.insert(parts.end(), ctx.digest_parts.begin(), ctx.digest_parts.end());
  if (report.seed) parts.push_back("seed=" + std::to_string(*report.seed));
  report.inputs_digest = inputs_digest(parts);

  out << (format == "json" ? report.to_json(timing) : report.to_text(timing));
  return report.pass() ? 0 : 1;
}

}  // namespace gpdact::cli
