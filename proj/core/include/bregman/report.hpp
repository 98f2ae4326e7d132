// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bregman {

struct Condition {
  std::string label;
  std::string description;
  std::optional<bool> holds;  // nullopt: not evaluated
  double worst_violation = 0.0;
  std::vector<double> witness;
  std::string note;
};

enum class ImplicationStatus { Holds, Violated, Vacuous, Skipped };

std::string to_string(ImplicationStatus s);

struct Implication {
  std::vector<std::string> premises;
  std::string conclusion;
  ImplicationStatus status = ImplicationStatus::Skipped;
  std::string reason;
};

struct HypothesisStatus {
  std::string label;
  std::optional<bool> holds;
  std::string note;
};

struct VerifyReport {
  std::string instance;
  std::string theorem;
  std::vector<Condition> conditions;
  std::vector<Implication> implications;
  std::vector<HypothesisStatus> hypotheses;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<std::string> notes;
  std::string skipped;  // non-empty when the whole check was not run

  const Condition* find(const std::string& label) const;
  Condition& add(Condition c);
  void hypothesis(std::string label, std::optional<bool> holds, std::string note = {});
  /// Records premises => conclusion. When `skip_reason` is non-empty the
  /// implication is recorded as skipped; otherwise its status is derived from
  /// the condition values.
  const Implication& implies(std::vector<std::string> premises, std::string conclusion,
                             std::string skip_reason = {});
  /// Both directions of an equivalence.
  void equivalent(const std::string& a, const std::string& b, const std::string& skip_reason = {});
  std::size_t violations() const;
};

std::string to_json(const VerifyReport& r, int indent = 2);
std::string to_json(const std::vector<VerifyReport>& rs, int indent = 2);

}  // namespace bregman
