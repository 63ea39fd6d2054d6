#include "suite.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "gpdact/error.hpp"
#include "gpdact/quantize.hpp"
#include "gpdact/thermal.hpp"

namespace gpdact::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<std::string> groups_of(const SuiteOptions& opt) {
  return opt.groups.empty() ? catalog_group_names() : opt.groups;
}

CheckResult ok(std::string name) { return {std::move(name), true, {}}; }
CheckResult fail(std::string name, std::string witness) { return {std::move(name), false, std::move(witness)}; }
CheckResult expect(std::string name, bool pass, const std::string& witness) {
  return pass ? ok(std::move(name)) : fail(std::move(name), witness);
}

/// Folds a batch of checks into one line: pass, or the first failure.
CheckResult fold(std::string name, const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return fail(std::move(name), c.name + ": " + c.witness);
  if (checks.empty()) return fail(std::move(name), "no checks ran");
  return ok(std::move(name));
}

/// Runs `body`, turning a library error into a failed check.
template <class F>
CheckResult guarded(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return fail(name, e.what());
  }
}

template <class F>
CriterionResult timed(int id, std::string title, F&& body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  const auto t0 = Clock::now();
  body(r.checks);
  r.ms = ms_since(t0);
  return r;
}

std::string num(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

/// Sets the multiplicity of one entry, keeping everything else.
Span2 with_entry(const Span2& s, ElemId src, ElemId tgt, Mult m) {
  std::vector<Triple> entries;
  for (const auto& [a, b, k] : s.entries())
    if (!(a == src && b == tgt)) entries.emplace_back(a, b, k);
  if (m) entries.emplace_back(src, tgt, m);
  return make_span_unchecked(s.src(), s.tgt(), entries);
}

struct Mutation {
  std::string name;
  Span2 span;
};

/// Three single-entry corruptions: doubled, dropped, and a spurious entry in
/// the same stage.
std::vector<Mutation> mutations(const Span2& s) {
  std::vector<Mutation> out;
  const auto entries = s.entries();
  if (entries.empty()) return out;
  const auto [a, b, m] = entries.front();
  out.push_back({"doubled entry", with_entry(s, a, b, 2 * m)});
  out.push_back({"dropped entry", with_entry(s, a, b, 0)});
  const auto& src = *s.src();
  const auto& tgt = *s.tgt();
  const StageId st = src.stage_of(a);
  for (ElemId t : tgt.stage(tgt.stage_target(st), tgt.stage_source(st)))
    if (s.at(a, t) == 0) {
      out.push_back({"spurious entry", with_entry(s, a, t, 1)});
      break;
    }
  return out;
}

CheckResult detected(const std::string& name, const std::function<std::vector<CheckResult>()>& run) {
  try {
    for (const auto& c : run())
      if (!c.pass)
        return c.witness.empty() ? fail(name, "failure without a witness in " + c.name)
                                 : CheckResult{name, true, c.name + ": " + c.witness};
    return fail(name, "corruption passed every check");
  } catch (const Error& e) {
    return CheckResult{name, true, e.what()};
  }
}

}  // namespace

std::vector<std::string> quick_groups() { return {"Z/2", "Z/3", "Z/2xZ/2", "S3"}; }

CriterionResult topological_axioms(const SuiteOptions& opt) {
  return timed(1, "topological axioms", [&](auto& checks) {
    const auto t0 = Clock::now();
    const auto names = groups_of(opt);
    std::vector<std::string> all = names;
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i; j < names.size(); ++j) all.push_back(names[i] + "+" + names[j]);
    for (const auto& name : all) {
      const std::string label = "axioms " + name;
      checks.push_back(guarded(label, [&] {
        const auto r = check_topological_axioms(named_groupoid(name));
        if (r.size() != 6) return fail(label, std::to_string(r.size()) + " equalities instead of 6");
        return fold(label, r);
      }));
    }
    const double ms = ms_since(t0);
    checks.push_back(expect("axioms runtime under 10 s", ms < 10000, num(ms) + " ms"));
  });
}

CriterionResult bubble_counts(const SuiteOptions& opt) {
  return timed(2, "bubble size equals morphism count", [&](auto& checks) {
    const auto names = groups_of(opt);
    std::vector<std::string> all = names;
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i; j < names.size(); ++j) all.push_back(names[i] + "+" + names[j]);
    for (const auto& name : all) {
      const std::string label = "bubble " + name;
      checks.push_back(guarded(label, [&] {
        auto g = named_groupoid(name);
        const auto n = compose_profunctors(boundary_left(g), boundary_right(g))->element_count();
        return expect(label, n == g->morphism_count(),
                      std::to_string(n) + " vs " + std::to_string(g->morphism_count()));
      }));
    }
    checks.push_back(guarded("bubble two-bits", [&] {
      GroupoidSpec spec;
      spec.objects = {"0", "1"};
      spec.morphisms = {{"(0,0)", "0", "0"}, {"(1,1)", "0", "0"}, {"(0,1)", "1", "1"}, {"(1,0)", "1", "1"}};
      spec.compose = {{"(0,0)", "(0,0)", "(0,0)"}, {"(0,0)", "(1,1)", "(1,1)"}, {"(1,1)", "(0,0)", "(1,1)"},
                      {"(1,1)", "(1,1)", "(0,0)"}, {"(0,1)", "(0,1)", "(0,1)"}, {"(0,1)", "(1,0)", "(1,0)"},
                      {"(1,0)", "(0,1)", "(1,0)"}, {"(1,0)", "(1,0)", "(0,1)"}};
      auto g = validate_groupoid(spec, "two-bits");
      const auto n = canonical_cells(g).bubble->element_count();
      return expect("bubble two-bits", n == 4, std::to_string(n) + " microstates");
    }));
  });
}

CriterionResult controlled_operations(const SuiteOptions& opt) {
  return timed(3, "controlled operations", [&](auto& checks) {
    std::mt19937_64 rng(opt.seed);
    for (const auto& name : groups_of(opt)) {
      const std::string label = "curry round trip " + name;
      checks.push_back(guarded(label, [&] {
        auto g = named_groupoid(name);
        auto c = canonical_cells(g);
        auto s = set_profunctor({"s0", "s1"});
        for (int trial = 0; trial < 100; ++trial) {
          ControlledData data;
          auto end = g->hom(0, 0);
          for (std::size_t st = 0; st < 2; ++st)
            for (int k = 0; k < 2; ++k)
              data.entries.push_back({st, end[rng() % end.size()], rng() % 2, 1 + rng() % 2});
          const Span2 sigma = controlled_span(c, s, data);
          const Span2 curried = curry_controlled(c, s, sigma);
          if (!equals(uncurry_controlled(c, s, curried), sigma))
            return fail(label, "uncurry(curry) differs on trial " + std::to_string(trial));
          if (!equals(controlled_span(c, s, curried_data(c, s, curried)), sigma))
            return fail(label, "curried data differs on trial " + std::to_string(trial));
        }
        return ok(label);
      }));
    }
    constexpr std::uint64_t cap = 1000000;
    for (const auto& name : groups_of(opt)) {
      auto g = named_groupoid(name);
      if (g->morphism_count() > 6) continue;
      for (std::size_t n = 1; n <= 2; ++n) {
        const bool relational = count_controlled(g, n, ControlledMode::Relational) <= cap;
        const std::string label = "logical state preserved " + name + " |S|=" + std::to_string(n) +
                                  (relational ? " relational" : " function");
        checks.push_back(guarded(label, [&] {
          auto c = canonical_cells(g);
          auto s = set_profunctor(n);
          std::uint64_t violations = 0;
          const auto visited = classify_controlled(
              g, n, relational ? ControlledMode::Relational : ControlledMode::Function, cap,
              [&](const ControlledOp& op) {
                violations += logical_state_violations(c, s, controlled_span(c, s, op.data));
                if (!(op.tags & kLogicalStatePreserved)) ++violations;
              });
          return expect(label, violations == 0 && visited > 0,
                        std::to_string(violations) + " violations over " + std::to_string(visited));
        }));
      }
    }
  });
}

CriterionResult complementarity(const SuiteOptions& opt) {
  return timed(4, "complementary structure", [&](auto& checks) {
    for (const auto& name : groups_of(opt)) {
      const std::string label = "delta " + name;
      checks.push_back(guarded(label, [&] {
        const auto r = check_complementary(build_delta(named_groupoid(name), false));
        return fold(label, r);
      }));
    }
  });
}

CriterionResult communication(const SuiteOptions& opt) {
  return timed(5, "communication structure", [&](auto& checks) {
    for (const auto& name : groups_of(opt)) {
      const std::string label = "lambda " + name;
      checks.push_back(guarded(label, [&] {
        const auto cm = build_lambda(build_delta(named_groupoid(name), false), false);
        const auto r = check_communication(cm);
        return r.size() >= 6 ? fold(label, r) : fail(label, "only " + std::to_string(r.size()) + " checks");
      }));
    }
  });
}

CriterionResult encryption(const SuiteOptions& opt) {
  return timed(6, "encryption", [&](auto& checks) {
    for (const auto& name : groups_of(opt)) {
      const std::string label = "encrypt " + name;
      checks.push_back(guarded(label, [&] {
        const Cipher cipher(named_groupoid(name));
        const auto& g = *cipher.group();
        const std::size_t n = g.morphism_count();
        for (MorId p = 0; p < n; ++p) {
          for (MorId k = 0; k < n; ++k) {
            const auto t = cipher.encrypt(p, k);
            const std::string at = " at (" + g.morphism_label(p) + ", " + g.morphism_label(k) + ")";
            if (t.ciphertext != g.compose(k, p)) return fail(label, "ciphertext" + at);
            if (t.heat != k) return fail(label, "heat differs from key" + at);
            if (cipher.decrypt(t.ciphertext, k) != p) return fail(label, "decrypt" + at);
          }
          for (auto c : cipher.ciphertext_distribution(p))
            if (c != 1) return fail(label, "ciphertext count " + std::to_string(c) + " for plaintext " + g.morphism_label(p));
        }
        return ok(label);
      }));
    }
  });
}

CriterionResult dense_coding(const SuiteOptions& opt) {
  return timed(7, "dense coding", [&](auto& checks) {
    for (const auto& name : groups_of(opt)) {
      const std::string label = "dense coding span " + name;
      checks.push_back(guarded(label, [&] {
        return fold(label, check_dense_coding(build_lambda(build_delta(named_groupoid(name), false), false)));
      }));
    }
    for (int n : {2, 3, 4}) {
      const std::string label = "dense coding Z/" + std::to_string(n);
      checks.push_back(guarded(label, [&] {
        const auto r = dense_coding_simulation(named_groupoid("Z/" + std::to_string(n)));
        const bool pass = r.messages == static_cast<std::size_t>(n * n) && r.decoded == r.messages &&
                          r.max_deviation <= 1e-12 && all_pass(r.checks);
        return expect(label, pass,
                      std::to_string(r.decoded) + "/" + std::to_string(r.messages) + " decoded, deviation " +
                          num(r.max_deviation));
      }));
    }
  });
}

CriterionResult quantization(const SuiteOptions& opt) {
  return timed(8, "quantization", [&](auto& checks) {
    std::mt19937_64 rng(opt.seed);
    const std::vector<std::pair<std::string, ProfunctorPtr>> fixtures = {
        {"hom Z/2", hom_profunctor(named_groupoid("Z/2"))},
        {"hom Z/2+Z/2", hom_profunctor(named_groupoid("Z/2+Z/2"))},
        {"loop Z/3", canonical_cells(named_groupoid("Z/3")).loop},
        {"boundary S3", boundary_left(named_groupoid("S3"))},
        {"bubble Z/2xZ/2", canonical_cells(named_groupoid("Z/2xZ/2")).bubble},
    };
    for (const auto& [name, p] : fixtures) {
      const std::string label = "Q vertical " + name;
      checks.push_back(guarded(label, [&] {
        for (int i = 0; i < 100; ++i) {
          const Span2 a = random_natural_span(p, p, rng, 3, 0.6);
          const Span2 b = random_natural_span(p, p, rng, 3, 0.6);
          const auto v = check_q_vertical(a, b);
          if (!v.pass) return fail(label, "pair " + std::to_string(i) + ": " + v.witness);
          const auto q = check_q_naturality(a);
          if (!q.pass) return fail(label, "naturality on pair " + std::to_string(i) + ": " + q.witness);
        }
        return ok(label);
      }));
    }
    std::set<std::size_t> orders;
    auto sigma_pi = [&](const std::string& label, const ProfunctorPtr& s, const ProfunctorPtr& u) {
      checks.push_back(guarded(label, [&] {
        const auto r = sigma_pi_check(s, u);
        orders.insert(r.stabilizer_orders.begin(), r.stabilizer_orders.end());
        return fold(label, r.checks);
      }));
    };
    auto s3 = named_groupoid("S3");
    std::vector<MorId> two{0}, three{0};
    for (MorId g = 1; g < s3->morphism_count(); ++g) {
      if (s3->order(g) == 2 && two.size() < 2) two.push_back(g);
      if (s3->order(g) == 3) three.push_back(g);
    }
    auto cosets = coset_profunctor(s3, {two, three});
    sigma_pi("sigma pi boundary S3 / cosets", boundary_left(s3), cosets);
    sigma_pi("sigma pi hom S3 / cosets", hom_profunctor(s3), cosets);
    auto z2 = named_groupoid("Z/2");
    sigma_pi("sigma pi boundary Z/2 / point", boundary_left(z2), coset_profunctor(z2, {{0, 1}}));
    sigma_pi("sigma pi sets", set_profunctor(2), set_profunctor(3, "T"));
    checks.push_back(expect("sigma pi stabilizer orders 2 and 3", orders.count(2) && orders.count(3),
                            std::to_string(orders.size()) + " distinct orders seen"));
  });
}

CriterionResult mub_and_teleportation(const SuiteOptions& opt) {
  return timed(9, "mutually unbiased bases and teleportation", [&](auto& checks) {
    for (int n = 2; n <= 8; ++n) {
      const std::string label = "mub Z/" + std::to_string(n);
      checks.push_back(guarded(label, [&] {
        const double d = check_mub(named_groupoid("Z/" + std::to_string(n)));
        return expect(label, d <= 1e-12, "deviation " + num(d));
      }));
    }
    std::mt19937_64 rng(opt.seed);
    for (int n = 2; n <= 4; ++n) {
      const std::string label = "teleport Z/" + std::to_string(n);
      checks.push_back(guarded(label, [&] {
        auto g = named_groupoid("Z/" + std::to_string(n));
        for (int i = 0; i < 100; ++i) {
          const auto r = teleportation_simulation(g, random_state(n, rng));
          if (r.branches.size() != static_cast<std::size_t>(n * n))
            return fail(label, std::to_string(r.branches.size()) + " branches");
          if (r.min_fidelity < 1.0 - 1e-12) return fail(label, "fidelity " + num(r.min_fidelity));
          if (r.max_probability_error > 1e-12) return fail(label, "probability error " + num(r.max_probability_error));
        }
        return ok(label);
      }));
    }
    checks.push_back(guarded("teleport qubit corrections", [&] {
      auto z2 = named_groupoid("Z/2");
      const auto t = character_table(z2);
      Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity(), X, Z;
      X << 0, 1, 1, 0;
      Z << 1, 0, 0, -1;
      const Eigen::Matrix2cd paulis[2][2] = {{I, Z}, {X, Z * X}};
      for (MorId a = 0; a < 2; ++a)
        for (std::size_t k = 0; k < 2; ++k) {
          const ComplexMatrix c = correction(z2, t, a, k);
          const Complex ph = (c.adjoint() * paulis[a][k]).trace() / 2.0;
          if (std::abs(std::abs(ph) - 1.0) > 1e-12 || (c * ph - paulis[a][k]).norm() > 1e-12)
            return fail("teleport qubit corrections", "outcome (" + std::to_string(a) + ", " + std::to_string(k) +
                                                          ") is not the expected Pauli");
        }
      return ok("teleport qubit corrections");
    }));
  });
}

CriterionResult decoherence(const SuiteOptions& opt) {
  return timed(10, "decoherence", [&](auto& checks) {
    for (const auto& name : groups_of(opt)) {
      const std::string label = "decoherence " + name;
      checks.push_back(guarded(label, [&] {
        const auto cs = build_delta(named_groupoid(name), false);
        const std::size_t n = cs.group->morphism_count();
        for (ObjId info = 0; info < n; ++info)
          if (!decoherence_trial(cs, info, {}).retrieval_success)
            return fail(label, "no environment, info " + cs.discrete->object_label(info) + " lost");
        const auto t = decoherence_exact(cs);
        return expect(label, t.trials == n * n && t.successes * n == t.trials,
                      std::to_string(t.successes) + "/" + std::to_string(t.trials) + " retrievals");
      }));
    }
  });
}

CriterionResult mutation_sensitivity(const SuiteOptions& opt) {
  return timed(11, "mutation sensitivity", [&](auto& checks) {
    std::vector<std::string> names{"Z/3", "S3"};
    if (!opt.groups.empty()) names = {opt.groups.front()};
    for (const auto& name : names) {
      auto g = named_groupoid(name);
      const auto cells = canonical_cells(g);
      for (const auto& m : mutations(cells.mu))
        checks.push_back(detected("mutated mu " + name + " " + m.name, [&] {
          auto c = cells;
          c.mu = m.span;
          c.mu_dagger = dagger(m.span);
          return check_topological_axioms(c);
        }));
      const auto cs = build_delta(g, false);
      for (const auto& m : mutations(cs.delta))
        checks.push_back(detected("mutated delta " + name + " " + m.name,
                                  [&] { return check_complementary(cs.a, cs.b, m.span); }));
      const auto cm = build_lambda(cs, false);
      for (const auto& m : mutations(cm.lambda)) {
        checks.push_back(detected("mutated lambda " + name + " " + m.name, [&] {
          auto bad = cm;
          bad.lambda = m.span;
          bad.lambda_prime = lambda_prime_of(cm, m.span);
          return check_communication(bad);
        }));
        checks.push_back(detected("mutated dense coding lambda " + name + " " + m.name,
                                  [&] { return check_dense_coding(cm, m.span); }));
      }
    }
  });
}

const std::vector<CriterionFn>& criteria() {
  static const std::vector<CriterionFn> all = {
      topological_axioms, bubble_counts,    controlled_operations, complementarity,
      communication,      encryption,       dense_coding,          quantization,
      mub_and_teleportation, decoherence,   mutation_sensitivity,
  };
  return all;
}

std::vector<CriterionResult> run_suite(const SuiteOptions& opt) {
  std::vector<CriterionResult> out;
  for (auto fn : criteria()) out.push_back(fn(opt));
  return out;
}

}  // namespace gpdact::cli
