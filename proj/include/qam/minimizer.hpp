#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qam/automaton.hpp"

namespace qam {

struct MinimizationOptions {
  Tolerance tol{};
  /// Depth of the post-hoc behavior comparison between input and result;
  /// 0 disables it.
  int verify_len = 4;
  /// Attempt the cheap tensor-factorization shortcut at each cut before
  /// the superoperator test.
  bool try_sober_first = true;
  std::size_t max_word_cap = kDefaultWordCap;
};

/// Outcome of testing one candidate cut.
struct TriedCut {
  int n_A = 0;
  /// Largest off-diagonal block entry per letter (empty when the cut was
  /// settled by tensor factorization).
  std::map<std::string, double> letter_offdiag;
  double max_offdiag = 0.0;
  bool invariant = false;
  /// Accepted through tensor factorization; product structure makes the
  /// off-diagonal blocks vanish identically, so none were computed.
  bool via_sober = false;
};

struct VerificationSummary {
  int depth = 0;
  double max_deviation = 0.0;
};

struct MinimizationReport {
  std::size_t original_dim = 0;  // 4^n
  int original_qubits = 0;
  /// Cuts in ascending order, stopping at the first invariant one.
  std::vector<TriedCut> tried;
  bool reduced = false;
  int n_bar = 0;  // qubits of the result; equals the input count if minimal
  std::optional<QuantumAutomaton> automaton;  // present iff reduced
  std::optional<VerificationSummary> verified;
  /// Arithmetic operations per phase, in execution order.
  std::vector<std::pair<std::string, std::uint64_t>> op_count;

  std::uint64_t total_ops() const;
  std::string to_string() const;
};

/// Tests the cut after the leading n_A qubits: rotates every letter's
/// superoperator into the Q/K split and checks the off-diagonal blocks.
/// On success returns the equivalent automaton on n_A qubits, with each
/// transition recovered as a genuine unitary and the initial state traced
/// down. letter_offdiag (when given) receives each letter's largest
/// off-diagonal entry; phase_ops receives (phase, operation count) pairs.
/// Throws InternalError if a unitary cannot be recovered even though the
/// invariance test passed.
std::optional<QuantumAutomaton> reduce_at(
    const QuantumAutomaton& m, int n_A, const Tolerance& tol = {},
    std::map<std::string, double>* letter_offdiag = nullptr,
    std::vector<std::pair<std::string, std::uint64_t>>* phase_ops = nullptr);

/// Full minimization: candidate cuts n_A = n1, ..., n-1 in order, first
/// invariant cut wins; exhaustion means the input is already minimal.
MinimizationReport minimize(const QuantumAutomaton& m,
                            const MinimizationOptions& opts = {});

struct EquivalenceCheck {
  bool equal = false;
  double max_deviation = 0.0;
  int depth = 0;
};

/// Truncated behavior comparison between two automata sharing alphabet and
/// observable (checked structurally; mismatch is a UsageError). Equal when
/// every probability of every word of length <= depth matches within
/// tol.atol.
EquivalenceCheck verify_equivalence(const QuantumAutomaton& a,
                                    const QuantumAutomaton& b, int depth,
                                    const Tolerance& tol = {},
                                    std::size_t word_cap = kDefaultWordCap);

}  // namespace qam
