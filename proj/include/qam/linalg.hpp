#pragma once

#include <random>
#include <vector>

#include "qam/matrix.hpp"

namespace qam {

/// Hilbert-Schmidt inner product (a, b) = Tr{a^dag b}. Conjugate-linear in
/// the first argument; conjugate-symmetric.
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product with row-major composite indexing: the left factor
/// owns the leading (most significant) index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out the trailing n - n_keep qubits of a 2^n x 2^n operator,
/// returning the reduced operator on the leading n_keep qubits.
/// Linear, trace preserving.
ComplexMatrix partial_trace(const ComplexMatrix& m, int n, int n_keep);

/// Modified Gram-Schmidt under the Hilbert-Schmidt inner product, with one
/// re-orthogonalization pass. Output spans the input, pairwise orthonormal,
/// in input order. Throws RankDeficiencyError when a residual collapses
/// below tol.atol times the largest input norm.
std::vector<ComplexMatrix> gram_schmidt(const std::vector<ComplexMatrix>& vectors,
                                        const Tolerance& tol = {});

bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol = {});

/// max |m^dag m - I| <= tol.atol.
bool is_unitary(const ComplexMatrix& m, const Tolerance& tol = {});

/// Hermitian, unit trace, and smallest eigenvalue >= -tol.atol.
bool is_density(const ComplexMatrix& m, const Tolerance& tol = {});

/// Eigenvalues of a unitary matrix, each on the unit circle, in no
/// particular order. Throws PreconditionError on non-unitary input.
std::vector<Complex> unitary_eigenvalues(const ComplexMatrix& u,
                                         const Tolerance& tol = {});

/// Eigendecomposition of a hermitian matrix; eigenvalues ascending,
/// eigenvectors as the columns of a unitary matrix.
struct HermitianEig {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};
HermitianEig hermitian_eig(const ComplexMatrix& m);

/// Thin complex SVD, a = u diag(s) v^dag with s descending.
struct Svd {
  std::vector<double> singular_values;
  ComplexMatrix u;
  ComplexMatrix v;
};
Svd svd(const ComplexMatrix& a);

/// u^p by binary exponentiation.
ComplexMatrix matrix_power(const ComplexMatrix& u, unsigned p);

/// Haar-distributed random unitary: QR of a complex Gaussian matrix with
/// the diagonal phase correction. Gaussian draws come from a private
/// Box-Muller so the output depends only on the engine, not on the
/// standard library's distribution internals.
ComplexMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng);

/// Random full-rank density matrix G G^dag / Tr.
ComplexMatrix random_density(std::size_t dim, std::mt19937_64& rng);

/// Random pure-state density |psi><psi|.
ComplexMatrix random_pure_density(std::size_t dim, std::mt19937_64& rng);

/// Complex standard Gaussian via Box-Muller on the raw engine.
Complex gaussian_complex(std::mt19937_64& rng);

}  // namespace qam
