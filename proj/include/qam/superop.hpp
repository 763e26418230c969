#pragma once

#include <cstddef>
#include <optional>

#include "qam/matrix.hpp"
#include "qam/opbasis.hpp"

namespace qam {

/// Matrix of a conjugation channel X -> U X U^dag relative to a tagged
/// orthonormal operator basis. Unitary whenever the basis is orthonormal.
struct SuperOp {
  enum class Basis { Computational, QkSplit };

  Basis basis = Basis::Computational;
  int n = 0;
  int n_A = 0;  // meaningful only for QkSplit
  ComplexMatrix matrix;

  std::size_t dim() const { return matrix.rows(); }
};

/// Superoperator of conjugation by u in the computational unit basis.
/// Uses the tensor fast path u x conj(u), which coincides entrywise with
/// the trace formula (B_i, u B_j u^dag) in that basis.
SuperOp conj_superop(const ComplexMatrix& u, const Tolerance& tol = {});

/// Trace-formula construction (B_i, u B_j u^dag) over an arbitrary
/// orthonormal basis; returns the raw size x size coefficient matrix.
ComplexMatrix conj_superop_matrix(const ComplexMatrix& u,
                                  const OperatorBasis& basis,
                                  const Tolerance& tol = {});

/// Rotates a computational-basis superoperator into the Q/K split:
/// C^dag S C with C the split's transition matrix.
SuperOp change_basis(const SuperOp& s, const BasisSplit& split);

/// Four blocks of a QK-split superoperator, partitioned at q = 4^{n_A}.
/// Row/column geometry: qq is rows Q x cols Q; qk is rows K x cols Q (the
/// kernel components of images of Q vectors); kq is rows Q x cols K; kk is
/// rows K x cols K.
struct BlockDecomposition {
  ComplexMatrix qq;
  ComplexMatrix qk;
  ComplexMatrix kq;
  ComplexMatrix kk;
  double max_qk = 0.0;
  double max_kq = 0.0;
  double max_offdiag = 0.0;
};
BlockDecomposition blocks(const SuperOp& s, std::size_t q);

/// True when both off-diagonal blocks vanish below tol.atol scaled by the
/// matrix's largest entry: the kernel (and with it its complement) is then
/// invariant under the channel. For a unitary channel the two blocks
/// vanish together; both are still checked.
bool invariant_under(const SuperOp& s, std::size_t q, const Tolerance& tol = {});

/// Matrix product of two superoperators in the same basis; composing two
/// kernel-invariant channels stays kernel-invariant.
SuperOp compose(const SuperOp& a, const SuperOp& b);

/// Recovers the unitary V with conj_superop(V) == qq from a q x q block
/// expressed in the image unit basis, via the rank-one structure of the
/// reshuffled (Choi) matrix. Global phase is fixed by making the first
/// significant entry real positive. Returns nothing when the Choi matrix
/// is not rank one or the round trip misses.
std::optional<ComplexMatrix> extract_unitary(const ComplexMatrix& qq, int n_A,
                                             const Tolerance& tol = {});

}  // namespace qam
