#include "gpdact/thermal.hpp"

#include <cmath>
#include <random>

#include "gpdact/error.hpp"

namespace gpdact {

namespace {

std::vector<std::string> render(const Profunctor& p, const Distribution& dist) {
  std::vector<std::string> out;
  for (const auto& [e, m] : dist) out.push_back(m == 1 ? p.label(e) : p.label(e) + " x " + std::to_string(m));
  return out;
}

}  // namespace

Cipher::Cipher(const GroupoidPtr& group) : Cipher(build_lambda(build_delta(group, false), false)) {}

Cipher::Cipher(CommunicationStructure cm) : cm_(std::move(cm)), inverse_(dagger(cm_.lambda)) {
  const auto& steps = cm_.lambda_diagram.steps();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    steps_.push_back(evaluate_term(steps[i]));
    if (i + 1 == cm_.delta_layer)
      step_names_.emplace_back("transpose");
    else if (i == cm_.delta_layer)
      step_names_.emplace_back("delta layer");
    else if (i == cm_.iso_layer)
      step_names_.emplace_back("product");
    else
      step_names_.emplace_back("regroup");
  }
}

void Cipher::require_element(MorId g, const char* what) const {
  if (g >= group()->morphism_count())
    throw Error(ErrorKind::InvalidElement, std::string(what) + " " + std::to_string(g) + " is not an element of " +
                                               group()->name());
}

EncryptionTranscript Cipher::encrypt(MorId plaintext, MorId key) const {
  require_element(plaintext, "plaintext");
  require_element(key, "key");
  const Groupoid& G = *group();
  EncryptionTranscript t;
  t.group = group();
  t.plaintext = plaintext;
  t.key = key;
  const ElemId start = cm_.input(plaintext, key);
  t.stage_trace.push_back({"input", {cm_.lambda.src()->label(start)}});
  const auto dists = trace_element(steps_, start);
  for (std::size_t i = 0; i < dists.size(); ++i)
    t.stage_trace.push_back({step_names_[i], render(*steps_[i].tgt(), dists[i])});

  const Distribution& last = dists.back();
  const ElemId want = cm_.output(G.compose(key, plaintext), key);
  if (last.size() != 1 || last[0].first != want || last[0].second != 1)
    throw Error(ErrorKind::VerificationFailure, "encryption of " + G.morphism_label(plaintext) + " under key " +
                                                    G.morphism_label(key) + " did not reach " +
                                                    cm_.dc.bubble->label(want));
  const MorId m = cm_.dc.bubble_morphism(last[0].first);
  const std::size_t na = G.morphism_count();
  t.ciphertext = cm_.cs.b.g->src(m / na);
  t.heat = m % na;
  return t;
}

MorId Cipher::decrypt(ObjId ciphertext, MorId key) const {
  require_element(key, "key");
  if (ciphertext >= cm_.cs.b.g->object_count())
    throw Error(ErrorKind::InvalidElement, "ciphertext " + std::to_string(ciphertext) + " is not an object of " +
                                               cm_.cs.b.g->name());
  const auto& row = inverse_.row(cm_.output(ciphertext, key));
  if (row.size() != 1 || row[0].m != 1)
    throw Error(ErrorKind::InvalidElement, "pair does not come from a single plaintext");
  const auto [ea, eb] = cm_.lambda.src()->factors()->rep(row[0].t);
  if (cm_.cs.b.bubble_morphism(eb) != cm_.cs.b.g->identity(key))
    throw Error(ErrorKind::VerificationFailure, "decryption changed the key");
  return cm_.cs.a.bubble_morphism(ea);
}

std::vector<std::uint64_t> Cipher::ciphertext_distribution(MorId plaintext) const {
  std::vector<std::uint64_t> counts(cm_.cs.b.g->object_count(), 0);
  for (MorId key = 0; key < group()->morphism_count(); ++key) ++counts[encrypt(plaintext, key).ciphertext];
  return counts;
}

ControlledData multiplication_op(MorId k) {
  ControlledData d;
  d.entries.push_back({0, k, 0, 1});
  return d;
}

Span2 environment_span(const ComplementaryStructure& cs, const ControlledData& op) {
  const CanonicalCells& a = cs.a;
  auto s = set_profunctor(1, "env");
  const Span2 prepare = make_span(a.unit, s, {{0, 0, 1}});
  const Span2 discard = dagger(prepare);
  Diagram d({a.L, a.R});
  d.insert_identity(2).apply(2, 1, leaf("prepare", prepare), {s});
  d.apply(1, 2, leaf("env", controlled_span(a, s, op)), {a.R, s});
  d.apply(2, 1, leaf("discard", discard), {a.unit}).remove_identity(2);
  return d.evaluate();
}

DecoherenceTrial decoherence_trial(const ComplementaryStructure& cs, ObjId info,
                                   const std::vector<ControlledData>& environment) {
  if (info >= cs.b.g->object_count())
    throw Error(ErrorKind::InvalidElement, "info " + std::to_string(info) + " is not an object of " + cs.b.g->name());
  std::vector<Span2> steps{dagger(cs.delta)};
  for (const auto& op : environment) steps.push_back(environment_span(cs, op));
  steps.push_back(cs.delta);
  const ElemId start = cs.b.bubble_element(cs.b.g->identity(info));
  const Distribution end = trace_element(steps, start).back();
  DecoherenceTrial t;
  t.encoded = info;
  t.perturbations = environment;
  t.retrieval_success = end.size() == 1 && end[0].first == start && end[0].second == 1;
  t.trials = 1;
  t.successes = t.retrieval_success ? 1 : 0;
  return t;
}

namespace {

// Success table indexed by (info, k) for one environment multiplication.
std::vector<std::vector<bool>> success_table(const ComplementaryStructure& cs) {
  const std::size_t n = cs.group->morphism_count();
  std::vector<std::vector<bool>> out(n, std::vector<bool>(n));
  for (MorId k = 0; k < n; ++k) {
    const Span2 env = environment_span(cs, multiplication_op(k));
    const Span2 round = vertical_compose(vertical_compose(dagger(cs.delta), env), cs.delta);
    for (ObjId info = 0; info < n; ++info) {
      const ElemId e = cs.b.bubble_element(cs.b.g->identity(info));
      const auto& row = round.row(e);
      out[info][k] = row.size() == 1 && row[0].t == e && row[0].m == 1;
    }
  }
  return out;
}

}  // namespace

DecoherenceTrial decoherence_exact(const ComplementaryStructure& cs) {
  const auto table = success_table(cs);
  DecoherenceTrial t;
  for (const auto& row : table)
    for (bool ok : row) {
      ++t.trials;
      t.successes += ok ? 1 : 0;
    }
  t.retrieval_success = t.successes == t.trials;
  return t;
}

DecoherenceTrial decoherence_sampled(const ComplementaryStructure& cs, std::uint64_t trials, std::uint64_t seed) {
  const auto table = success_table(cs);
  const std::size_t n = table.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  DecoherenceTrial t;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const std::size_t info = pick(rng);
    const std::size_t k = pick(rng);
    ++t.trials;
    t.successes += table[info][k] ? 1 : 0;
  }
  t.retrieval_success = t.successes == t.trials;
  return t;
}

LandauerReport landauer_report(const Cipher& cipher, const EncryptionTranscript& transcript) {
  const Groupoid& G = *cipher.group();
  const Groupoid& B = *cipher.structure().cs.b.g;
  LandauerReport r;
  r.factors.push_back({"ciphertext", "logical", B.object_count(), B.object_label(transcript.ciphertext)});
  r.factors.push_back({"heat", "thermal", G.morphism_count(), G.morphism_label(transcript.heat)});
  r.heat_alphabet = G.morphism_count();
  r.heat_bits = std::log2(static_cast<double>(r.heat_alphabet));

  const auto reference = cipher.ciphertext_distribution(0);
  bool uniform = true;
  for (auto c : reference) uniform = uniform && c == 1;
  bool same = true;
  for (MorId g = 1; g < G.morphism_count() && same; ++g) same = cipher.ciphertext_distribution(g) == reference;
  r.hiding = uniform && same;
  r.checks.push_back({"heat equals key", transcript.heat == transcript.key,
                      G.morphism_label(transcript.heat) + " vs " + G.morphism_label(transcript.key)});
  r.checks.push_back({"ciphertext counts are uniform and plaintext independent", r.hiding, uniform ? "" : "not uniform"});
  return r;
}

}  // namespace gpdact
