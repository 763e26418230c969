#pragma once

#include <cstddef>
#include <vector>

#include "qam/matrix.hpp"

namespace qam {

enum class BasisLabel { Computational, Image, Q, Kernel, QkUnion };

/// Ordered orthonormal basis of (a subspace of) the operator space over n
/// qubits. Vectors are 2^n x 2^n matrices under the Hilbert-Schmidt inner
/// product.
struct OperatorBasis {
  int n = 0;
  BasisLabel label = BasisLabel::Computational;
  std::vector<ComplexMatrix> vectors;

  std::size_t size() const { return vectors.size(); }
};

/// The 4^n matrix units E_{l,l'} ordered row-major: index r (0-based)
/// holds the unit with its single 1 at row r / 2^n, column r mod 2^n.
/// Coordinates of any operator in this basis are its row-major entries.
OperatorBasis comp_op_basis(int n);

/// Partition of the computational units by their image under the
/// trace-out map to the leading n_A qubits.
struct UnitClassification {
  /// Units mapped to zero, ascending.
  std::vector<std::size_t> s0;
  /// classes[j] lists the units mapped to image unit j, ascending; every
  /// class has exactly 2^{n - n_A} members.
  std::vector<std::vector<std::size_t>> classes;
};
UnitClassification classify(int n, int n_A);

/// Orthonormal basis of the orthogonal complement of the trace-out kernel:
/// vector j is the normalized sum of class j, and traces down to
/// sqrt(2^{n-n_A}) times image unit j.
OperatorBasis q_basis(int n, int n_A);

/// Orthonormal basis of the trace-out kernel: the zero-image units in
/// their natural order, then for every class the orthonormalized set of
/// zero-sum combinations (one -1 coefficient cycling over the trailing
/// slots). 4^n - 4^{n_A} vectors, each with vanishing trace-out image.
OperatorBasis k_basis(int n, int n_A);

/// Q and K bases plus the unitary change-of-basis matrix whose column i
/// holds the computational coordinates of the i-th vector of the ordered
/// union (Q first, then K).
struct BasisSplit {
  int n = 0;
  int n_A = 0;
  OperatorBasis q;
  OperatorBasis k;
  ComplexMatrix transition;
  UnitClassification classes;

  std::size_t q_size() const { return q.size(); }
  std::size_t k_size() const { return k.size(); }
  std::size_t s0_size() const { return classes.s0.size(); }
};
BasisSplit build_split(int n, int n_A);

}  // namespace qam
