#include "qam/opbasis.hpp"

#include <cmath>

#include "qam/errors.hpp"
#include "qam/linalg.hpp"

namespace qam {

namespace {

void check_split_args(int n, int n_A, const char* who) {
  if (n < 2 || n_A < 1 || n_A >= n)
    throw PreconditionError(std::string(who) + ": need 1 <= n_A < n");
}

}  // namespace

OperatorBasis comp_op_basis(int n) {
  if (n < 1) throw PreconditionError("comp_op_basis: n must be >= 1");
  const std::size_t d = qubit_dim(n);
  OperatorBasis basis;
  basis.n = n;
  basis.label = BasisLabel::Computational;
  basis.vectors.reserve(d * d);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t lp = 0; lp < d; ++lp) {
      ComplexMatrix unit(d, d);
      unit(l, lp) = 1.0;
      basis.vectors.push_back(std::move(unit));
    }
  return basis;
}

UnitClassification classify(int n, int n_A) {
  check_split_args(n, n_A, "classify");
  const std::size_t d = qubit_dim(n);
  const std::size_t da = qubit_dim(n_A);
  const std::size_t db = qubit_dim(n - n_A);

  UnitClassification out;
  out.classes.assign(da * da, {});
  // Unit r = E_{l,l'} with l = (i,k), l' = (j,k') in the A|B index split
  // traces down to delta_{k,k'} E^A_{i,j}.
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t lp = 0; lp < d; ++lp) {
      const std::size_t r = l * d + lp;
      const std::size_t i = l / db, k = l % db;
      const std::size_t j = lp / db, kp = lp % db;
      if (k != kp)
        out.s0.push_back(r);
      else
        out.classes[i * da + j].push_back(r);
    }
  return out;
}

OperatorBasis q_basis(int n, int n_A) {
  check_split_args(n, n_A, "q_basis");
  const auto cls = classify(n, n_A);
  const std::size_t d = qubit_dim(n);
  const std::size_t m = qubit_dim(n - n_A);
  const double coeff = 1.0 / std::sqrt(static_cast<double>(m));

  OperatorBasis basis;
  basis.n = n;
  basis.label = BasisLabel::Q;
  basis.vectors.reserve(cls.classes.size());
  for (const auto& members : cls.classes) {
    ComplexMatrix v(d, d);
    for (std::size_t r : members) v(r / d, r % d) = coeff;
    basis.vectors.push_back(std::move(v));
  }
  return basis;
}

OperatorBasis k_basis(int n, int n_A) {
  check_split_args(n, n_A, "k_basis");
  const auto cls = classify(n, n_A);
  const std::size_t d = qubit_dim(n);
  const std::size_t m = qubit_dim(n - n_A);

  OperatorBasis basis;
  basis.n = n;
  basis.label = BasisLabel::Kernel;
  basis.vectors.reserve(d * d - cls.classes.size());

  for (std::size_t r : cls.s0) {
    ComplexMatrix unit(d, d);
    unit(r / d, r % d) = 1.0;
    basis.vectors.push_back(std::move(unit));
  }

  if (m < 2) throw InternalError("k_basis: class size below 2");
  const double body = 1.0 / static_cast<double>(m - 1);
  for (const auto& members : cls.classes) {
    // Zero-sum coefficient patterns: 1/(m-1) everywhere except a single
    // -1 that cycles through the trailing m-1 slots, starting at the last.
    std::vector<ComplexMatrix> raw;
    raw.reserve(m - 1);
    for (std::size_t shift = 0; shift < m - 1; ++shift) {
      const std::size_t minus_slot = shift == 0 ? m - 1 : shift;
      ComplexMatrix v(d, d);
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t r = members[k];
        v(r / d, r % d) = k == minus_slot ? -1.0 : body;
      }
      raw.push_back(std::move(v));
    }
    std::vector<ComplexMatrix> ortho;
    try {
      ortho = gram_schmidt(raw);
    } catch (const RankDeficiencyError& e) {
      throw InternalError(std::string("k_basis: kernel combinations were not "
                                      "independent: ") +
                          e.what());
    }
    for (auto& v : ortho) basis.vectors.push_back(std::move(v));
  }
  return basis;
}

BasisSplit build_split(int n, int n_A) {
  check_split_args(n, n_A, "build_split");
  BasisSplit split;
  split.n = n;
  split.n_A = n_A;
  split.classes = classify(n, n_A);
  split.q = q_basis(n, n_A);
  split.k = k_basis(n, n_A);

  const std::size_t dim = op_space_dim(n);
  const std::size_t d = qubit_dim(n);
  split.transition = ComplexMatrix(dim, dim);
  // Column i of the transition matrix is vector i of the ordered union in
  // computational coordinates, i.e. its row-major entries.
  std::size_t col = 0;
  const auto emit = [&](const ComplexMatrix& v) {
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t lp = 0; lp < d; ++lp)
        split.transition(l * d + lp, col) = v(l, lp);
    ++col;
  };
  for (const auto& v : split.q.vectors) emit(v);
  for (const auto& v : split.k.vectors) emit(v);
  if (col != dim) throw InternalError("build_split: basis count mismatch");
  opcount::add(dim * dim);
  return split;
}

}  // namespace qam
