#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpdact/structures.hpp"

namespace gpdact {

struct TraceStage {
  std::string step;
  std::vector<std::string> support;
};

/// Encryption of plaintext g with key g': the lambda composite run on
/// (g, delta(g')). Ciphertext is an object of |G|, heat a morphism of G.
struct EncryptionTranscript {
  GroupoidPtr group;
  MorId plaintext = 0;
  MorId key = 0;
  std::vector<TraceStage> stage_trace;
  ObjId ciphertext = 0;
  MorId heat = 0;
};

/// Precomputes the step spans of lambda and lambda^dag for one group.
class Cipher {
 public:
  explicit Cipher(CommunicationStructure cm);
  explicit Cipher(const GroupoidPtr& group);

  const CommunicationStructure& structure() const { return cm_; }
  const GroupoidPtr& group() const { return cm_.cs.group; }

  /// Evaluated step by step through the span engine; the closed form
  /// (delta(g g'), g') is asserted (VerificationFailure otherwise).
  EncryptionTranscript encrypt(MorId plaintext, MorId key) const;
  /// Runs lambda^dag on (delta(c), key). InvalidElement if the pair is not a ciphertext.
  MorId decrypt(ObjId ciphertext, MorId key) const;
  /// Count of keys sending `plaintext` to each ciphertext.
  std::vector<std::uint64_t> ciphertext_distribution(MorId plaintext) const;

 private:
  void require_element(MorId g, const char* what) const;

  CommunicationStructure cm_;
  std::vector<Span2> steps_;
  std::vector<std::string> step_names_;
  Span2 inverse_;
};

/// Environment interaction: a controlled operation on the group boundary with
/// a one-element free system.
ControlledData multiplication_op(MorId k);

struct DecoherenceTrial {
  MorId encoded = 0;
  std::vector<ControlledData> perturbations;
  bool retrieval_success = false;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
};

/// bubble(G) => bubble(G): the operation whiskered with L and run on a
/// freshly prepared one-element system that is discarded afterwards.
Span2 environment_span(const ComplementaryStructure& cs, const ControlledData& op);

/// Encodes `info` (object of |G|) with delta^dag, applies the operations in
/// order and reads back with delta. Success iff exactly `info` comes back.
DecoherenceTrial decoherence_trial(const ComplementaryStructure& cs, ObjId info,
                                   const std::vector<ControlledData>& environment);

/// Exact count over every info value and every single multiplication k.
DecoherenceTrial decoherence_exact(const ComplementaryStructure& cs);
/// Seeded sampling of (info, k) pairs.
DecoherenceTrial decoherence_sampled(const ComplementaryStructure& cs, std::uint64_t trials, std::uint64_t seed);

struct OutputFactor {
  std::string name;
  std::string kind;  // "logical" or "thermal"
  std::size_t alphabet = 0;
  std::string value;
};

struct LandauerReport {
  std::vector<OutputFactor> factors;
  std::size_t heat_alphabet = 0;
  double heat_bits = 0;
  bool hiding = false;  // every plaintext has the same uniform ciphertext counts
  std::vector<CheckResult> checks;
};

LandauerReport landauer_report(const Cipher& cipher, const EncryptionTranscript& transcript);

}  // namespace gpdact
