#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qam/matrix.hpp"

namespace qam {

inline constexpr std::size_t kDefaultWordCap = 100000;

/// Measured quantity in spectral form: distinct outcomes a_k in strictly
/// increasing order with their eigenspace projectors on the measured qubits.
struct Observable {
  std::vector<double> eigenvalues;
  std::vector<ComplexMatrix> projectors;

  std::size_t dim() const {
    return projectors.empty() ? 0 : projectors.front().rows();
  }
  std::size_t outcome_count() const { return eigenvalues.size(); }

  /// Spectral form of a hermitian matrix; eigenvalues closer than
  /// eigen_gap are merged into one degenerate outcome.
  static Observable from_hermitian(const ComplexMatrix& a,
                                   double eigen_gap = 1e-8);

  /// Pauli-Z on the first measured qubit, identity on the rest:
  /// outcomes -1 and +1 with projectors |1><1| x I and |0><0| x I.
  static Observable z_first_qubit(int n1);
};

/// Density-operator automaton over qubits: n-qubit register prepared in
/// rho0, one unitary per input symbol, measurement of `observable` on the
/// leading n1 qubits after the whole word has been read.
struct QuantumAutomaton {
  int n = 0;
  int n1 = 0;
  ComplexMatrix rho0;
  std::vector<std::string> alphabet;
  std::map<std::string, ComplexMatrix> unitaries;
  Observable observable;

  std::size_t dim() const { return qubit_dim(n); }

  /// Unitary for a symbol; throws SymbolError when unknown.
  const ComplexMatrix& unitary(const std::string& symbol) const;
};

/// Input word; empty means the null word.
using Word = std::vector<std::string>;

std::string word_to_string(const Word& w);

/// Splits a textual word: comma-separated symbols, or per-character when
/// every character is itself an alphabet symbol. Empty text is the null
/// word. Throws SymbolError for anything outside the alphabet.
Word parse_word(const std::vector<std::string>& alphabet,
                const std::string& text);

/// Outcome probabilities aligned with Observable::eigenvalues; entries are
/// clamped to [0, 1] and sum to one within tolerance for valid states.
struct OutputDistribution {
  std::vector<double> probabilities;
  double sum() const;
};

struct ValidationIssue {
  std::string subject;
  std::string detail;
  double magnitude = 0.0;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

/// Checks every structural and physical invariant of the automaton and
/// reports each violation with the offending norm. Empty report iff valid.
ValidationReport validate(const QuantumAutomaton& m, const Tolerance& tol = {});

/// One transition: rho -> U_sigma rho U_sigma^dag.
ComplexMatrix step(const QuantumAutomaton& m, const ComplexMatrix& rho,
                   const std::string& symbol);

/// State after reading w left to right starting from rho0; the first
/// letter acts first. run_word(m, {}) is rho0.
ComplexMatrix run_word(const QuantumAutomaton& m, const Word& w);

/// Probability of each outcome when the observable is measured on the
/// leading n1 qubits of rho.
OutputDistribution output_dist(const QuantumAutomaton& m,
                               const ComplexMatrix& rho);

struct BehaviorEntry {
  Word word;
  OutputDistribution dist;
};

/// Output distribution of every word of length <= max_len, breadth first,
/// words ordered by length then alphabet position. Throws BudgetError when
/// the enumeration would exceed word_cap words.
std::vector<BehaviorEntry> behavior(const QuantumAutomaton& m, int max_len,
                                    std::size_t word_cap = kDefaultWordCap);

struct StateEquivalence {
  bool equivalent = false;
  int depth = 0;  // truncation depth actually checked
  double max_deviation = 0.0;
};

/// Truncated state equivalence: do rho_i and rho_j induce the same output
/// distribution after every word of length <= max_len, entrywise within
/// tol.atol?
StateEquivalence states_equivalent(const QuantumAutomaton& m,
                                   const ComplexMatrix& rho_i,
                                   const ComplexMatrix& rho_j, int max_len,
                                   const Tolerance& tol = {},
                                   std::size_t word_cap = kDefaultWordCap);

/// Smallest p <= max_p with U^p = I within tol.atol, found by testing
/// whether every eigenvalue phase sits on the p-th roots of unity and
/// confirming with the matrix power. max_p = 0 means the dimension-squared
/// bound for this operator. Throws PreconditionError on non-unitary input.
std::optional<int> finiteness_period(const ComplexMatrix& u, int max_p = 0,
                                     const Tolerance& tol = {});

enum class Finiteness { Finite, Infinite, Unknown };

struct LetterPeriod {
  std::string symbol;
  std::optional<int> period;
};

struct FinitenessReport {
  Finiteness verdict = Finiteness::Unknown;
  std::vector<LetterPeriod> periods;
  std::vector<std::pair<std::string, std::string>> noncommuting;
  int max_period_checked = 0;
  bool bound_exhausted = false;  // max_p reached the 4^n bound
  std::string to_string() const;
};

/// Three-valued finiteness test for the reachable state set. Finite when
/// every letter has a period and all letters commute; infinite when a
/// letter has no period up to the full 4^n bound; unknown otherwise
/// (commutativity is sufficient, not necessary).
FinitenessReport is_finite_automaton(const QuantumAutomaton& m, int max_p = 0,
                                     const Tolerance& tol = {});

/// Nearest Kronecker factorization across the cut after the leading n_A
/// qubits, accepted only when the rearranged matrix is numerically rank
/// one (second singular value <= tol.atol times the first). Density inputs
/// come back trace-normalized, unitary inputs phase-canonicalized with
/// both factors unitary.
std::optional<std::pair<ComplexMatrix, ComplexMatrix>> factor_product(
    const ComplexMatrix& x, int n, int n_A, const Tolerance& tol = {});

/// Restriction to the leading n_A qubits when rho0 and every letter factor
/// across the cut; the two subsystems then evolve independently and the
/// trailing part never influences the measurement.
std::optional<QuantumAutomaton> sober_reduce(const QuantumAutomaton& m,
                                             int n_A,
                                             const Tolerance& tol = {});

}  // namespace qam
