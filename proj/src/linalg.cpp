#include "qam/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qam/errors.hpp"

namespace qam {

namespace {

using EigenCMat =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EigenMap = Eigen::Map<const EigenCMat>;

EigenCMat to_eigen(const ComplexMatrix& m) {
  return EigenMap(m.data(), static_cast<Eigen::Index>(m.rows()),
                  static_cast<Eigen::Index>(m.cols()));
}

ComplexMatrix from_eigen(const EigenCMat& e) {
  ComplexMatrix out(static_cast<std::size_t>(e.rows()),
                    static_cast<std::size_t>(e.cols()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return out;
}

void check_operator_shape(const ComplexMatrix& m, int n, const char* who) {
  const std::size_t d = qubit_dim(n);
  if (!m.is_square() || m.rows() != d)
    throw DimensionError(std::string(who) + ": expected a " +
                         std::to_string(d) + "x" + std::to_string(d) +
                         " matrix for n=" + std::to_string(n) + ", got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
}

}  // namespace

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.same_shape(b)) throw DimensionError("hs_inner: shape mismatch");
  Complex s = 0.0;
  const std::size_t total = a.size();
  const Complex* pa = a.data();
  const Complex* pb = b.data();
  for (std::size_t k = 0; k < total; ++k) s += std::conj(pa[k]) * pb[k];
  opcount::add(total);
  return s;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  const std::int64_t arows = static_cast<std::int64_t>(a.rows());
  opcount::add(out.size());
  const bool big = out.size() >= 65536;
#pragma omp parallel for schedule(static) if (big)
  for (std::int64_t ia = 0; ia < arows; ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex f = a(static_cast<std::size_t>(ia), ja);
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          out(static_cast<std::size_t>(ia) * b.rows() + ib,
              ja * b.cols() + jb) = f * b(ib, jb);
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int n, int n_keep) {
  if (n < 1 || n_keep < 1 || n_keep > n)
    throw DimensionError("partial_trace: need 0 < n_keep <= n");
  check_operator_shape(m, n, "partial_trace");
  const std::size_t da = qubit_dim(n_keep);
  const std::size_t db = qubit_dim(n - n_keep);
  ComplexMatrix out(da, da);
  opcount::add(da * da * db);
  const std::int64_t rows = static_cast<std::int64_t>(da);
  const bool big = da * da * db >= 65536;
#pragma omp parallel for schedule(static) if (big)
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < db; ++k)
        s += m(static_cast<std::size_t>(i) * db + k, j * db + k);
      out(static_cast<std::size_t>(i), j) = s;
    }
  }
  return out;
}

std::vector<ComplexMatrix> gram_schmidt(const std::vector<ComplexMatrix>& vectors,
                                        const Tolerance& tol) {
  if (vectors.empty()) return {};
  double max_norm = 0.0;
  for (const auto& v : vectors) {
    if (!v.same_shape(vectors.front()))
      throw DimensionError("gram_schmidt: mixed shapes");
    max_norm = std::max(max_norm, v.frobenius_norm());
  }
  const double floor = tol.atol * std::max(max_norm, 1e-300);

  std::vector<ComplexMatrix> out;
  out.reserve(vectors.size());
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    ComplexMatrix w = vectors[j];
    // Two projection sweeps: modified Gram-Schmidt plus one
    // re-orthogonalization pass.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : out) {
        const Complex c = hs_inner(e, w);
        ComplexMatrix scaled = e;
        scaled *= c;
        w -= scaled;
      }
    const double r = w.frobenius_norm();
    if (r <= floor)
      throw RankDeficiencyError(
          "gram_schmidt: vector " + std::to_string(j) +
          " is linearly dependent on its predecessors (residual " +
          std::to_string(r) + ")");
    w *= Complex{1.0 / r, 0.0};
    out.push_back(std::move(w));
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& m, const Tolerance& tol) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol.atol) return false;
  return true;
}

bool is_unitary(const ComplexMatrix& m, const Tolerance& tol) {
  if (!m.is_square()) return false;
  const ComplexMatrix g = m.dagger() * m;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const Complex expect = (i == j) ? Complex{1.0, 0.0} : Complex{};
      if (std::abs(g(i, j) - expect) > tol.atol) return false;
    }
  return true;
}

bool is_density(const ComplexMatrix& m, const Tolerance& tol) {
  if (!m.is_square()) return false;
  if (!is_hermitian(m, tol)) return false;
  if (std::abs(m.trace() - Complex{1.0, 0.0}) > tol.atol) return false;
  const auto eig = hermitian_eig(m);
  return eig.eigenvalues.front() >= -tol.atol;
}

std::vector<Complex> unitary_eigenvalues(const ComplexMatrix& u,
                                         const Tolerance& tol) {
  if (!is_unitary(u, tol))
    throw PreconditionError("unitary_eigenvalues: input is not unitary");
  Eigen::ComplexEigenSolver<EigenCMat> solver(to_eigen(u), false);
  if (solver.info() != Eigen::Success)
    throw InternalError("unitary_eigenvalues: eigensolver failed");
  opcount::add(u.rows() * u.rows() * u.rows());
  std::vector<Complex> out;
  out.reserve(u.rows());
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    out.push_back(solver.eigenvalues()(i));
  return out;
}

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitian_eig: not square");
  Eigen::SelfAdjointEigenSolver<EigenCMat> solver(to_eigen(m));
  if (solver.info() != Eigen::Success)
    throw InternalError("hermitian_eig: eigensolver failed");
  opcount::add(m.rows() * m.rows() * m.rows());
  HermitianEig out;
  out.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + m.rows());
  out.eigenvectors = from_eigen(solver.eigenvectors());
  return out;
}

Svd svd(const ComplexMatrix& a) {
  Eigen::JacobiSVD<EigenCMat> solver(
      to_eigen(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
  opcount::add(a.rows() * a.cols() * std::min(a.rows(), a.cols()));
  Svd out;
  out.singular_values.assign(
      solver.singularValues().data(),
      solver.singularValues().data() + solver.singularValues().size());
  out.u = from_eigen(solver.matrixU());
  out.v = from_eigen(solver.matrixV());
  return out;
}

ComplexMatrix matrix_power(const ComplexMatrix& u, unsigned p) {
  if (!u.is_square()) throw DimensionError("matrix_power: not square");
  ComplexMatrix result = ComplexMatrix::identity(u.rows());
  ComplexMatrix base = u;
  while (p > 0) {
    if (p & 1u) result = result * base;
    p >>= 1u;
    if (p > 0) base = base * base;
  }
  return result;
}

Complex gaussian_complex(std::mt19937_64& rng) {
  // Box-Muller on uniform draws from the raw engine.
  const double u1 =
      (static_cast<double>(rng()) + 0.5) / 18446744073709551616.0;
  const double u2 =
      (static_cast<double>(rng()) + 0.5) / 18446744073709551616.0;
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

ComplexMatrix haar_unitary(std::size_t dim, std::mt19937_64& rng) {
  EigenCMat g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          gaussian_complex(rng);
  Eigen::HouseholderQR<EigenCMat> qr(g);
  EigenCMat q = qr.householderQ() * EigenCMat::Identity(dim, dim);
  EigenCMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Phase correction makes the distribution Haar rather than QR-biased.
  for (std::size_t j = 0; j < dim; ++j) {
    const Complex d = r(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
    const double mag = std::abs(d);
    const Complex phase = mag > 0.0 ? d / mag : Complex{1.0, 0.0};
    q.col(static_cast<Eigen::Index>(j)) *= phase;
  }
  opcount::add(dim * dim * dim);
  return from_eigen(q);
}

ComplexMatrix random_density(std::size_t dim, std::mt19937_64& rng) {
  ComplexMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = gaussian_complex(rng);
  ComplexMatrix rho = g * g.dagger();
  const Complex t = rho.trace();
  rho *= Complex{1.0, 0.0} / t;
  return rho;
}

ComplexMatrix random_pure_density(std::size_t dim, std::mt19937_64& rng) {
  ComplexMatrix psi(dim, 1);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    psi(i, 0) = gaussian_complex(rng);
    norm2 += std::norm(psi(i, 0));
  }
  const double inv = 1.0 / std::sqrt(norm2);
  ComplexMatrix rho(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      rho(i, j) = psi(i, 0) * std::conj(psi(j, 0)) * inv * inv;
  return rho;
}

}  // namespace qam
