#include "qam/superop.hpp"

#include <cmath>

#include "qam/errors.hpp"
#include "qam/linalg.hpp"

namespace qam {

namespace {

int qubits_for_dim(std::size_t d, const char* who) {
  int n = 0;
  std::size_t x = d;
  while (x > 1) {
    if (x % 2 != 0)
      throw DimensionError(std::string(who) + ": dimension is not a power of 2");
    x /= 2;
    ++n;
  }
  if (n == 0) throw DimensionError(std::string(who) + ": empty operator");
  return n;
}

}  // namespace

SuperOp conj_superop(const ComplexMatrix& u, const Tolerance& tol) {
  if (!is_unitary(u, tol))
    throw PreconditionError("conj_superop: input is not unitary");
  SuperOp s;
  s.basis = SuperOp::Basis::Computational;
  s.n = qubits_for_dim(u.rows(), "conj_superop");
  // In the unit basis, conjugation acts as u x conj(u) on row-major
  // coordinates.
  s.matrix = kron(u, u.conjugate());
  return s;
}

ComplexMatrix conj_superop_matrix(const ComplexMatrix& u,
                                  const OperatorBasis& basis,
                                  const Tolerance& tol) {
  if (!is_unitary(u, tol))
    throw PreconditionError("conj_superop_matrix: input is not unitary");
  if (basis.vectors.empty() || basis.vectors.front().rows() != u.rows())
    throw DimensionError("conj_superop_matrix: basis dimension mismatch");
  const std::size_t size = basis.size();
  ComplexMatrix out(size, size);
  const ComplexMatrix udag = u.dagger();
  const std::int64_t cols = static_cast<std::int64_t>(size);
#pragma omp parallel for schedule(static) if (cols > 4)
  for (std::int64_t j = 0; j < cols; ++j) {
    const ComplexMatrix image = u * basis.vectors[static_cast<std::size_t>(j)] * udag;
    for (std::size_t i = 0; i < size; ++i)
      out(i, static_cast<std::size_t>(j)) = hs_inner(basis.vectors[i], image);
  }
  return out;
}

SuperOp change_basis(const SuperOp& s, const BasisSplit& split) {
  if (s.basis != SuperOp::Basis::Computational)
    throw UsageError("change_basis: superoperator is not in the computational basis");
  if (s.matrix.rows() != split.transition.rows())
    throw DimensionError("change_basis: dimension mismatch with split");
  SuperOp out;
  out.basis = SuperOp::Basis::QkSplit;
  out.n = split.n;
  out.n_A = split.n_A;
  out.matrix = split.transition.dagger() * s.matrix * split.transition;
  return out;
}

BlockDecomposition blocks(const SuperOp& s, std::size_t q) {
  if (s.basis != SuperOp::Basis::QkSplit)
    throw UsageError("blocks: superoperator is not in a Q/K split basis");
  const std::size_t d = s.dim();
  if (q == 0 || q >= d) throw DimensionError("blocks: bad partition point");
  const std::size_t k = d - q;

  BlockDecomposition out;
  out.qq = ComplexMatrix(q, q);
  out.qk = ComplexMatrix(k, q);
  out.kq = ComplexMatrix(q, k);
  out.kk = ComplexMatrix(k, k);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Complex z = s.matrix(i, j);
      if (i < q && j < q)
        out.qq(i, j) = z;
      else if (i >= q && j < q)
        out.qk(i - q, j) = z;
      else if (i < q && j >= q)
        out.kq(i, j - q) = z;
      else
        out.kk(i - q, j - q) = z;
    }
  out.max_qk = out.qk.max_abs();
  out.max_kq = out.kq.max_abs();
  out.max_offdiag = std::max(out.max_qk, out.max_kq);
  return out;
}

bool invariant_under(const SuperOp& s, std::size_t q, const Tolerance& tol) {
  const auto bd = blocks(s, q);
  const double threshold = tol.atol * s.matrix.max_abs();
  return bd.max_qk <= threshold && bd.max_kq <= threshold;
}

SuperOp compose(const SuperOp& a, const SuperOp& b) {
  if (a.basis != b.basis || a.n != b.n || a.n_A != b.n_A)
    throw UsageError("compose: superoperators carry different basis tags");
  if (a.dim() != b.dim())
    throw DimensionError("compose: dimension mismatch");
  SuperOp out;
  out.basis = a.basis;
  out.n = a.n;
  out.n_A = a.n_A;
  out.matrix = a.matrix * b.matrix;
  return out;
}

std::optional<ComplexMatrix> extract_unitary(const ComplexMatrix& qq, int n_A,
                                             const Tolerance& tol) {
  const std::size_t da = qubit_dim(n_A);
  const std::size_t q = da * da;
  if (!qq.is_square() || qq.rows() != q)
    throw DimensionError("extract_unitary: block has wrong shape for n_A");

  // Reshuffle (a,b),(c,d) -> (a,c),(b,d): a conjugation block becomes the
  // rank-one outer product of the vectorized unitary with itself.
  ComplexMatrix choi(q, q);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < da; ++b)
      for (std::size_t c = 0; c < da; ++c)
        for (std::size_t dd = 0; dd < da; ++dd)
          choi(a * da + c, b * da + dd) = qq(a * da + b, c * da + dd);
  opcount::add(q * q);

  // Hermitize before the eigensolve; valid blocks are hermitian already.
  ComplexMatrix herm(q, q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j)
      herm(i, j) = 0.5 * (choi(i, j) + std::conj(choi(j, i)));

  const auto eig = hermitian_eig(herm);
  const double top = eig.eigenvalues.back();
  if (top <= 0.0) return std::nullopt;
  double rest = 0.0;
  for (std::size_t i = 0; i + 1 < eig.eigenvalues.size(); ++i)
    rest = std::max(rest, std::abs(eig.eigenvalues[i]));
  if (rest > std::sqrt(tol.atol) * top) return std::nullopt;

  ComplexMatrix v(da, da);
  const double scale = std::sqrt(top);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t c = 0; c < da; ++c)
      v(a, c) = eig.eigenvectors(a * da + c, q - 1) * scale;

  // Normalize to unitary size and canonicalize the global phase.
  const double fnorm = v.frobenius_norm();
  if (fnorm <= 0.0) return std::nullopt;
  v *= Complex{std::sqrt(static_cast<double>(da)) / fnorm, 0.0};
  Complex phase{1.0, 0.0};
  const double cutoff = 1e-12 * std::max(v.max_abs(), 1e-300);
  for (std::size_t idx = 0; idx < q; ++idx) {
    const Complex e = v(idx / da, idx % da);
    if (std::abs(e) > cutoff) {
      phase = e / std::abs(e);
      break;
    }
  }
  v *= std::conj(phase);

  // Round trip: the recovered unitary must reproduce the block.
  if (max_abs_diff(kron(v, v.conjugate()), qq) > 10.0 * tol.atol)
    return std::nullopt;
  return v;
}

}  // namespace qam
