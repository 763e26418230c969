#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qam {

using Complex = std::complex<double>;

/// Absolute / relative tolerances threaded through the numerical routines.
struct Tolerance {
  double atol = 1e-9;
  double rtol = 1e-9;
};

/// Running tally of complex arithmetic operations performed by the dense
/// kernels. Adds are relaxed-atomic so parallel kernels contribute without
/// coordination; totals depend only on the calls made, not on scheduling.
namespace opcount {
void add(std::uint64_t ops) noexcept;
std::uint64_t read() noexcept;
}  // namespace opcount

/// Dense complex matrix with row-major storage. This is the substrate for
/// everything in the library: density operators, gates, projectors, operator
/// basis vectors and superoperator matrices. Column vectors are represented
/// as n x 1 matrices.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t dim);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  bool is_square() const { return rows_ == cols_ && rows_ > 0; }
  bool same_shape(const ComplexMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Complex* data() { return data_.data(); }
  const Complex* data() const { return data_.data(); }

  ComplexMatrix dagger() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) {
    m *= s;
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Matrix product; parallelizes over rows for large operands.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise |a - b|; shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hilbert space dimension of an n-qubit register.
inline std::size_t qubit_dim(int n) { return std::size_t{1} << n; }

/// Dimension of the operator space over n qubits (qubit_dim squared).
inline std::size_t op_space_dim(int n) { return std::size_t{1} << (2 * n); }

}  // namespace qam
