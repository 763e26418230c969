#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qam/errors.hpp"
#include "qam/linalg.hpp"
#include "qam/oracle.hpp"
#include "qam/superop.hpp"

using namespace qam;
using namespace testutil;

TEST_CASE("conjugation superoperator in the unit basis") {
  SUBCASE("identity gate gives the identity superoperator") {
    const auto s = conj_superop(ComplexMatrix::identity(2));
    CHECK(max_abs_diff(s.matrix, ComplexMatrix::identity(4)) == 0.0);
  }
  SUBCASE("X gate permutes the units") {
    // X E_00 X = E_11, X E_01 X = E_10 and back.
    const auto s = conj_superop(pauli_x());
    ComplexMatrix expect(4, 4);
    expect(3, 0) = expect(2, 1) = expect(1, 2) = expect(0, 3) = 1.0;
    CHECK(max_abs_diff(s.matrix, expect) < 1e-15);
  }
  SUBCASE("superoperator of a unitary is unitary") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
      const auto s = conj_superop(haar_unitary(4, rng));
      CHECK(is_unitary(s.matrix, Tolerance{1e-9, 1e-9}));
    }
  }
  SUBCASE("non-unitary input is rejected") {
    CHECK_THROWS_AS(conj_superop(unit(2, 0, 0)), PreconditionError);
  }
}

TEST_CASE("fast path agrees with the elementwise oracle") {
  std::mt19937_64 rng(32);
  for (int n = 1; n <= 2; ++n) {
    const auto basis = comp_op_basis(n);
    for (int trial = 0; trial < 5; ++trial) {
      const auto u = haar_unitary(qubit_dim(n), rng);
      const auto fast = conj_superop(u);
      const auto slow = oracle::superop_elementwise(u, basis);
      CHECK(max_abs_diff(fast.matrix, slow) < 1e-12);
      // The generic trace-formula path must agree as well.
      CHECK(max_abs_diff(conj_superop_matrix(u, basis), slow) < 1e-12);
    }
  }
}

TEST_CASE("conjugation preserves the Hilbert-Schmidt inner product") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = haar_unitary(4, rng);
    ComplexMatrix a(4, 4), b(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        a(i, j) = gaussian_complex(rng);
        b(i, j) = gaussian_complex(rng);
      }
    const Complex before = hs_inner(a, b);
    const Complex after =
        hs_inner(u * a * u.dagger(), u * b * u.dagger());
    CHECK(std::abs(before - after) < 1e-12);
  }
}

TEST_CASE("superoperator of a product is the product of superoperators") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = haar_unitary(2, rng);
    const auto v = haar_unitary(2, rng);
    const auto lhs = conj_superop(u * v);
    const auto rhs = compose(conj_superop(u), conj_superop(v));
    CHECK(max_abs_diff(lhs.matrix, rhs.matrix) < 1e-10);
  }
}

TEST_CASE("basis change into the Q/K split") {
  const auto split = build_split(2, 1);

  SUBCASE("identity stays the identity") {
    const auto rotated = change_basis(conj_superop(ComplexMatrix::identity(4)), split);
    CHECK(max_abs_diff(rotated.matrix, ComplexMatrix::identity(16)) < 1e-12);
    CHECK(rotated.basis == SuperOp::Basis::QkSplit);
  }
  SUBCASE("round trip through the split basis") {
    std::mt19937_64 rng(35);
    const auto s = conj_superop(haar_unitary(4, rng));
    const auto rotated = change_basis(s, split);
    const auto back =
        split.transition * rotated.matrix * split.transition.dagger();
    CHECK(max_abs_diff(back, s.matrix) < 1e-12);
  }
  SUBCASE("a product gate is block diagonal") {
    const auto u = kron(hadamard(), ComplexMatrix::identity(2));
    const auto rotated = change_basis(conj_superop(u), split);
    const auto bd = blocks(rotated, split.q_size());
    CHECK(bd.max_offdiag <= 1e-12);
    CHECK(invariant_under(rotated, split.q_size()));
  }
  SUBCASE("an entangling gate is not") {
    const auto rotated = change_basis(conj_superop(cnot()), split);
    const auto bd = blocks(rotated, split.q_size());
    CHECK(bd.max_offdiag > 1e-6);
    CHECK_FALSE(invariant_under(rotated, split.q_size()));
  }
  SUBCASE("wrong tags are rejected") {
    const auto rotated = change_basis(conj_superop(cnot()), split);
    CHECK_THROWS_AS(change_basis(rotated, split), UsageError);
    CHECK_THROWS_AS(blocks(conj_superop(cnot()), 4), UsageError);
    CHECK_THROWS_AS(compose(rotated, conj_superop(cnot())), UsageError);
  }
  SUBCASE("trace-formula over the split basis matches the rotation") {
    OperatorBasis unionbasis;
    unionbasis.n = 2;
    unionbasis.label = BasisLabel::QkUnion;
    for (const auto& v : split.q.vectors) unionbasis.vectors.push_back(v);
    for (const auto& v : split.k.vectors) unionbasis.vectors.push_back(v);
    std::mt19937_64 rng(39);
    const auto u = haar_unitary(4, rng);
    const auto direct = conj_superop_matrix(u, unionbasis);
    const auto rotated = change_basis(conj_superop(u), split);
    CHECK(max_abs_diff(direct, rotated.matrix) < 1e-12);
  }
}

TEST_CASE("block geometry") {
  const auto split = build_split(2, 1);
  const auto rotated = change_basis(conj_superop(ComplexMatrix::identity(4)), split);
  const auto bd = blocks(rotated, 4);
  CHECK(bd.qq.rows() == 4);
  CHECK(bd.qq.cols() == 4);
  CHECK(bd.qk.rows() == 12);
  CHECK(bd.qk.cols() == 4);
  CHECK(bd.kq.rows() == 4);
  CHECK(bd.kq.cols() == 12);
  CHECK(bd.kk.rows() == 12);
  CHECK(max_abs_diff(bd.qq, ComplexMatrix::identity(4)) < 1e-12);
  CHECK(max_abs_diff(bd.kk, ComplexMatrix::identity(12)) < 1e-12);
}

TEST_CASE("the two off-diagonal blocks vanish together") {
  std::mt19937_64 rng(36);
  const auto split = build_split(2, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = kron(haar_unitary(2, rng), haar_unitary(2, rng));
    const auto bd = blocks(change_basis(conj_superop(u), split), 4);
    // Product gates: both blocks at rounding level.
    CHECK(bd.max_qk <= 1e-12);
    CHECK(bd.max_kq <= 1e-12);
  }
  const auto bd = blocks(change_basis(conj_superop(cnot()), split), 4);
  CHECK(bd.max_qk > 1e-6);
  CHECK(bd.max_kq > 1e-6);
}

TEST_CASE("composition keeps invariance") {
  std::mt19937_64 rng(37);
  const auto split = build_split(2, 1);
  const auto u = kron(haar_unitary(2, rng), haar_unitary(2, rng));
  const auto v = kron(haar_unitary(2, rng), haar_unitary(2, rng));
  const auto su = change_basis(conj_superop(u), split);
  const auto sv = change_basis(conj_superop(v), split);
  const auto both = compose(su, sv);
  CHECK(invariant_under(both, 4, Tolerance{1e-10, 1e-10}));
  CHECK(max_abs_diff(compose(su, change_basis(conj_superop(ComplexMatrix::identity(4)), split)).matrix,
                     su.matrix) < 1e-12);
}

TEST_CASE("unitary recovery from the leading block") {
  std::mt19937_64 rng(38);

  SUBCASE("identity block") {
    const auto v = extract_unitary(ComplexMatrix::identity(4), 1);
    REQUIRE(v.has_value());
    CHECK(max_abs_diff(*v, ComplexMatrix::identity(2)) < 1e-12);
  }
  SUBCASE("known gate round trip") {
    const auto qq = conj_superop(hadamard()).matrix;
    const auto w = extract_unitary(qq, 1);
    REQUIRE(w.has_value());
    // Equal to the Hadamard up to a global phase; fit the phase first.
    const Complex phase = (*w)(0, 0) / hadamard()(0, 0);
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-9);
    ComplexMatrix rephased = hadamard();
    rephased *= phase;
    CHECK(max_abs_diff(*w, rephased) < 1e-9);
  }
  SUBCASE("random gates round trip through their superoperator") {
    for (int n_A = 1; n_A <= 2; ++n_A)
      for (int trial = 0; trial < 5; ++trial) {
        const auto v = haar_unitary(qubit_dim(n_A), rng);
        const auto qq = conj_superop(v).matrix;
        const auto w = extract_unitary(qq, n_A);
        REQUIRE(w.has_value());
        CHECK(is_unitary(*w, Tolerance{1e-9, 1e-9}));
        CHECK(max_abs_diff(conj_superop(*w).matrix, qq) < 1e-9);
      }
  }
  SUBCASE("a non-conjugation block is rejected") {
    // A swap of two units is unitary on the operator space but is not the
    // superoperator of any gate conjugation.
    ComplexMatrix notchannel = ComplexMatrix::identity(4);
    notchannel(0, 0) = 0.0;
    notchannel(1, 1) = 0.0;
    notchannel(0, 1) = 1.0;
    notchannel(1, 0) = 1.0;
    CHECK_FALSE(extract_unitary(notchannel, 1).has_value());
  }
}
