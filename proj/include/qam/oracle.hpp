#pragma once

#include <string>
#include <vector>

#include "qam/automaton.hpp"
#include "qam/opbasis.hpp"

// Brute-force references used by the tests and the hidden `oracle` CLI
// subcommand. Everything here recomputes from first principles with plain
// serial loops and deliberately shares no kernels with the optimized
// modules; agreement between the two paths is itself a tested property.
namespace qam::oracle {

/// Superoperator entries Tr{B_i^dag u B_j u^dag}, each from explicit
/// matrix products and a trace. No tensor shortcuts.
ComplexMatrix superop_elementwise(const ComplexMatrix& u,
                                  const OperatorBasis& basis);

struct BehaviorRow {
  Word word;
  std::vector<double> probabilities;
};

/// Output distribution of every word of length <= depth, each state
/// recomputed from scratch (no incremental reuse), words ordered by length
/// then alphabet position.
std::vector<BehaviorRow> behavior_rows(const QuantumAutomaton& m, int depth,
                                       std::size_t max_words = kDefaultWordCap);

/// Canonical text rendering of behavior_rows, one line per word.
std::string behavior_table(const QuantumAutomaton& m, int depth,
                           std::size_t max_words = kDefaultWordCap);

/// Reduced operator by direct summation over explicitly decomposed
/// indices.
ComplexMatrix partial_trace_naive(const ComplexMatrix& m, int n, int n_A);

}  // namespace qam::oracle
