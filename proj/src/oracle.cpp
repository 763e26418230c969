#include "qam/oracle.hpp"

#include <cstdio>

#include "qam/errors.hpp"

namespace qam::oracle {

namespace {

// Local dense product, deliberately independent of the library kernels.
ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("oracle: product shape mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

// Tr{a^dag b} as an explicit double loop.
Complex overlap(const ComplexMatrix& a, const ComplexMatrix& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      s += std::conj(a(i, j)) * b(i, j);
  return s;
}

double clamp01(double p) { return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p); }

}  // namespace

ComplexMatrix superop_elementwise(const ComplexMatrix& u,
                                  const OperatorBasis& basis) {
  if (basis.vectors.empty() || basis.vectors.front().rows() != u.rows())
    throw DimensionError("superop_elementwise: basis dimension mismatch");
  const std::size_t size = basis.size();
  const ComplexMatrix udag = adjoint(u);
  ComplexMatrix out(size, size);
  for (std::size_t j = 0; j < size; ++j)
    for (std::size_t i = 0; i < size; ++i) {
      const ComplexMatrix image = mul(mul(u, basis.vectors[j]), udag);
      out(i, j) = overlap(basis.vectors[i], image);
    }
  return out;
}

std::vector<BehaviorRow> behavior_rows(const QuantumAutomaton& m, int depth,
                                       std::size_t max_words) {
  if (depth < 0) throw PreconditionError("behavior_rows: depth must be >= 0");
  std::vector<Word> words{Word{}};
  std::vector<Word> frontier{Word{}};
  for (int len = 1; len <= depth; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& sym : m.alphabet) {
        Word ext = w;
        ext.push_back(sym);
        next.push_back(ext);
        words.push_back(std::move(ext));
        if (words.size() > max_words)
          throw BudgetError("behavior_rows: word enumeration exceeds cap");
      }
    frontier = std::move(next);
  }

  const std::size_t d = m.dim();
  const std::size_t d1 = qubit_dim(m.n1);
  const std::size_t db = qubit_dim(m.n - m.n1);

  std::vector<BehaviorRow> rows;
  rows.reserve(words.size());
  for (const auto& w : words) {
    // Accumulate the word unitary from scratch: each new letter acts from
    // the left.
    ComplexMatrix uw = ComplexMatrix::identity(d);
    for (const auto& sym : w) uw = mul(m.unitary(sym), uw);
    const ComplexMatrix rho = mul(mul(uw, m.rho0), adjoint(uw));

    BehaviorRow row;
    row.word = w;
    for (const ComplexMatrix& p : m.observable.projectors) {
      // Tr{(P x I) rho} written out over the split indices.
      Complex t = 0.0;
      for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t b = 0; b < d1; ++b)
          for (std::size_t k = 0; k < db; ++k)
            t += p(a, b) * rho(b * db + k, a * db + k);
      row.probabilities.push_back(clamp01(t.real()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string behavior_table(const QuantumAutomaton& m, int depth,
                           std::size_t max_words) {
  const auto rows = behavior_rows(m, depth, max_words);
  std::string out;
  for (const auto& row : rows) {
    out += "w=" + word_to_string(row.word);
    for (std::size_t k = 0; k < row.probabilities.size(); ++k) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), " %g:%.12f", m.observable.eigenvalues[k],
                    row.probabilities[k]);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

ComplexMatrix partial_trace_naive(const ComplexMatrix& m, int n, int n_A) {
  if (n < 1 || n_A < 1 || n_A > n)
    throw DimensionError("partial_trace_naive: need 0 < n_A <= n");
  const std::size_t d = qubit_dim(n);
  if (!m.is_square() || m.rows() != d)
    throw DimensionError("partial_trace_naive: wrong shape for declared n");
  const std::size_t da = qubit_dim(n_A);
  const std::size_t db = qubit_dim(n - n_A);
  ComplexMatrix out(da, da);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        out(i, j) += m(i * db + k, j * db + k);
  return out;
}

}  // namespace qam::oracle
