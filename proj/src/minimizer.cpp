#include "qam/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qam/errors.hpp"
#include "qam/linalg.hpp"
#include "qam/superop.hpp"

namespace qam {

namespace {

void append_phase(std::vector<std::pair<std::string, std::uint64_t>>* sink,
                  const std::string& phase, std::uint64_t ops) {
  if (!sink) return;
  for (auto& [name, count] : *sink)
    if (name == phase) {
      count += ops;
      return;
    }
  sink->emplace_back(phase, ops);
}

std::string format_mag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

}  // namespace

std::optional<QuantumAutomaton> reduce_at(
    const QuantumAutomaton& m, int n_A, const Tolerance& tol,
    std::map<std::string, double>* letter_offdiag,
    std::vector<std::pair<std::string, std::uint64_t>>* phase_ops) {
  if (!(m.n1 <= n_A && n_A < m.n))
    throw PreconditionError("reduce_at: need n1 <= n_A < n");

  std::uint64_t mark = opcount::read();
  const BasisSplit split = build_split(m.n, n_A);
  append_phase(phase_ops, "basis", opcount::read() - mark);

  const std::size_t q = split.q_size();
  const std::size_t letters = m.alphabet.size();
  std::vector<SuperOp> rotated(letters);

  // Exceptions may not unwind out of a parallel region; capture and
  // rethrow after it.
  std::exception_ptr failure = nullptr;
  const auto guarded = [&failure](auto&& body) {
    try {
      body();
    } catch (...) {
#pragma omp critical(reduce_at_failure)
      if (!failure) failure = std::current_exception();
    }
  };

  mark = opcount::read();
  std::vector<SuperOp> raw(letters);
  const std::int64_t count = static_cast<std::int64_t>(letters);
#pragma omp parallel for schedule(dynamic) if (count > 1)
  for (std::int64_t i = 0; i < count; ++i)
    guarded([&, i] {
      raw[static_cast<std::size_t>(i)] = conj_superop(
          m.unitary(m.alphabet[static_cast<std::size_t>(i)]), tol);
    });
  if (failure) std::rethrow_exception(failure);
  append_phase(phase_ops, "superop", opcount::read() - mark);

  mark = opcount::read();
#pragma omp parallel for schedule(dynamic) if (count > 1)
  for (std::int64_t i = 0; i < count; ++i)
    guarded([&, i] {
      rotated[static_cast<std::size_t>(i)] =
          change_basis(raw[static_cast<std::size_t>(i)], split);
    });
  if (failure) std::rethrow_exception(failure);
  raw.clear();
  append_phase(phase_ops, "change_basis", opcount::read() - mark);

  mark = opcount::read();
  std::vector<BlockDecomposition> decomps(letters);
  bool all_invariant = true;
  for (std::size_t i = 0; i < letters; ++i) {
    decomps[i] = blocks(rotated[i], q);
    const double threshold = tol.atol * rotated[i].matrix.max_abs();
    const bool inv =
        decomps[i].max_qk <= threshold && decomps[i].max_kq <= threshold;
    if (!inv) all_invariant = false;
    if (letter_offdiag)
      (*letter_offdiag)[m.alphabet[i]] = decomps[i].max_offdiag;
  }
  append_phase(phase_ops, "blocks", opcount::read() - mark);
  if (!all_invariant) return std::nullopt;

  mark = opcount::read();
  QuantumAutomaton out;
  out.n = n_A;
  out.n1 = m.n1;
  out.alphabet = m.alphabet;
  out.observable = m.observable;
  out.rho0 = partial_trace(m.rho0, m.n, n_A);
  for (std::size_t i = 0; i < letters; ++i) {
    auto v = extract_unitary(decomps[i].qq, n_A, tol);
    if (!v)
      throw InternalError(
          "reduce_at: invariance held at n_A=" + std::to_string(n_A) +
          " but no unitary could be recovered for letter '" + m.alphabet[i] +
          "'");
    out.unitaries.emplace(m.alphabet[i], std::move(*v));
  }
  append_phase(phase_ops, "extract", opcount::read() - mark);
  return out;
}

MinimizationReport minimize(const QuantumAutomaton& m,
                            const MinimizationOptions& opts) {
  const auto check = validate(m, opts.tol);
  if (!check.ok())
    throw ValidationError("minimize: input automaton is invalid:\n" +
                          check.to_string());

  MinimizationReport rep;
  rep.original_qubits = m.n;
  rep.original_dim = op_space_dim(m.n);

  std::optional<QuantumAutomaton> result;
  for (int n_A = m.n1; n_A < m.n; ++n_A) {
    TriedCut cut;
    cut.n_A = n_A;
    if (opts.try_sober_first) {
      const std::uint64_t mark = opcount::read();
      auto sober = sober_reduce(m, n_A, opts.tol);
      append_phase(&rep.op_count, "sober", opcount::read() - mark);
      if (sober) {
        cut.via_sober = true;
        cut.invariant = true;
        cut.max_offdiag = 0.0;
        rep.tried.push_back(std::move(cut));
        result = std::move(sober);
        break;
      }
    }
    auto red = reduce_at(m, n_A, opts.tol, &cut.letter_offdiag, &rep.op_count);
    cut.invariant = red.has_value();
    for (const auto& [sym, v] : cut.letter_offdiag)
      cut.max_offdiag = std::max(cut.max_offdiag, v);
    rep.tried.push_back(std::move(cut));
    if (red) {
      result = std::move(red);
      break;
    }
  }

  rep.reduced = result.has_value();
  rep.n_bar = result ? result->n : m.n;
  if (result) rep.automaton = std::move(result);

  if (rep.reduced && opts.verify_len > 0) {
    const std::uint64_t mark = opcount::read();
    const auto eq = verify_equivalence(m, *rep.automaton, opts.verify_len,
                                       opts.tol, opts.max_word_cap);
    append_phase(&rep.op_count, "verify", opcount::read() - mark);
    rep.verified = VerificationSummary{eq.depth, eq.max_deviation};
  }
  return rep;
}

std::uint64_t MinimizationReport::total_ops() const {
  std::uint64_t total = 0;
  for (const auto& [name, count] : op_count) total += count;
  return total;
}

std::string MinimizationReport::to_string() const {
  std::string out = "original: n=" + std::to_string(original_qubits) +
                    " (operator dimension " + std::to_string(original_dim) +
                    ")\n";
  for (const auto& cut : tried) {
    out += "tried n_A=" + std::to_string(cut.n_A) + ": ";
    if (cut.via_sober) {
      out += "invariant=yes via tensor factorization\n";
      continue;
    }
    out += cut.invariant ? "invariant=yes" : "invariant=no";
    out += " max_offdiag=" + format_mag(cut.max_offdiag);
    if (!cut.letter_offdiag.empty()) {
      out += " (";
      bool first = true;
      for (const auto& [sym, v] : cut.letter_offdiag) {
        if (!first) out += ", ";
        out += sym + ": " + format_mag(v);
        first = false;
      }
      out += ")";
    }
    out += "\n";
  }
  out += reduced ? "result: reduced to n=" + std::to_string(n_bar) + "\n"
                 : "result: already minimal\n";
  if (verified)
    out += "verified: depth=" + std::to_string(verified->depth) +
           " max_deviation=" + format_mag(verified->max_deviation) + "\n";
  out += "op-count:";
  for (const auto& [name, count] : op_count)
    out += " " + name + "=" + std::to_string(count);
  out += " total=" + std::to_string(total_ops()) + "\n";
  return out;
}

EquivalenceCheck verify_equivalence(const QuantumAutomaton& a,
                                    const QuantumAutomaton& b, int depth,
                                    const Tolerance& tol,
                                    std::size_t word_cap) {
  if (a.alphabet != b.alphabet)
    throw UsageError("verify_equivalence: automata have different alphabets");
  if (a.n1 != b.n1)
    throw UsageError("verify_equivalence: automata measure different registers");
  const Observable& oa = a.observable;
  const Observable& ob = b.observable;
  if (oa.outcome_count() != ob.outcome_count())
    throw UsageError("verify_equivalence: observables have different spectra");
  for (std::size_t k = 0; k < oa.outcome_count(); ++k) {
    if (std::abs(oa.eigenvalues[k] - ob.eigenvalues[k]) > tol.atol)
      throw UsageError("verify_equivalence: observable eigenvalues differ");
    if (!oa.projectors[k].same_shape(ob.projectors[k]) ||
        max_abs_diff(oa.projectors[k], ob.projectors[k]) > tol.atol)
      throw UsageError("verify_equivalence: observable projectors differ");
  }

  const auto rows_a = behavior(a, depth, word_cap);
  const auto rows_b = behavior(b, depth, word_cap);
  if (rows_a.size() != rows_b.size())
    throw InternalError("verify_equivalence: enumeration mismatch");

  EquivalenceCheck out;
  out.depth = depth;
  out.equal = true;
  for (std::size_t r = 0; r < rows_a.size(); ++r) {
    const auto& pa = rows_a[r].dist.probabilities;
    const auto& pb = rows_b[r].dist.probabilities;
    for (std::size_t k = 0; k < pa.size(); ++k) {
      const double dev = std::abs(pa[k] - pb[k]);
      out.max_deviation = std::max(out.max_deviation, dev);
      if (dev > tol.atol) out.equal = false;
    }
  }
  return out;
}

}  // namespace qam
