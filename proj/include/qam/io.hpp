#pragma once

#include <cstdint>
#include <string>

#include "qam/automaton.hpp"

namespace qam {

inline constexpr const char* kSchemaVersion = "1";

/// Parses and validates an automaton file. Throws ParseError on malformed
/// JSON, DimensionError on mis-shaped matrices, ValidationError when the
/// physics invariants fail (message lists every violation).
QuantumAutomaton load_automaton(const std::string& path,
                                const Tolerance& tol = {});

/// Writes the automaton as JSON. Numbers round-trip exactly: loading the
/// file reproduces every entry bit for bit.
void save_automaton(const QuantumAutomaton& m, const std::string& path);

std::string automaton_to_json_string(const QuantumAutomaton& m);
QuantumAutomaton automaton_from_json_string(const std::string& text,
                                            const Tolerance& tol = {});

enum class InstanceKind { Product, Entangling, Random };

InstanceKind instance_kind_from_string(const std::string& name);

/// Deterministic seeded instance generator. `product` factors the initial
/// state and every letter across the cut after qubit n1; `entangling`
/// additionally multiplies one letter by a controlled-NOT straddling that
/// cut; `random` draws Haar unitaries on the full register and a random
/// pure initial state. The observable is Pauli-Z on the first measured
/// qubit.
QuantumAutomaton gen_instance(InstanceKind kind, int n, int n1,
                              std::uint64_t seed, int letters = 2);

/// Command-line entry point; returns the process exit code (0 success,
/// 1 domain error, 2 usage error).
int cli_main(int argc, const char* const* argv);

}  // namespace qam
