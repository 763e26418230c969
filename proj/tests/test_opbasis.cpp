#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "qam/errors.hpp"
#include "qam/linalg.hpp"
#include "qam/opbasis.hpp"

using namespace qam;
using namespace testutil;

TEST_CASE("computational operator basis ordering") {
  const auto basis = comp_op_basis(1);
  REQUIRE(basis.size() == 4);
  CHECK(max_abs_diff(basis.vectors[0], unit(2, 0, 0)) == 0.0);
  CHECK(max_abs_diff(basis.vectors[1], unit(2, 0, 1)) == 0.0);
  CHECK(max_abs_diff(basis.vectors[2], unit(2, 1, 0)) == 0.0);
  CHECK(max_abs_diff(basis.vectors[3], unit(2, 1, 1)) == 0.0);

  // Two qubits: index 4 (fifth vector) is the unit at row 1, column 0.
  const auto big = comp_op_basis(2);
  REQUIRE(big.size() == 16);
  CHECK(max_abs_diff(big.vectors[4], unit(4, 1, 0)) == 0.0);
}

TEST_CASE("classification by trace-out image") {
  SUBCASE("two qubits, one kept") {
    const auto cls = classify(2, 1);
    CHECK(cls.s0.size() == 8);
    REQUIRE(cls.classes.size() == 4);
    for (const auto& members : cls.classes) CHECK(members.size() == 2);
    // |00><00| and |01><01| both trace down to |0><0|.
    CHECK(cls.classes[0] == std::vector<std::size_t>{0, 5});
  }
  SUBCASE("three qubits, two kept") {
    const auto cls = classify(3, 2);
    CHECK(cls.s0.size() == 32);
    REQUIRE(cls.classes.size() == 16);
    for (const auto& members : cls.classes) CHECK(members.size() == 2);
  }
  SUBCASE("classes partition the unit indices") {
    for (const auto& [n, n_A] : std::vector<std::pair<int, int>>{
             {2, 1}, {3, 1}, {3, 2}}) {
      const auto cls = classify(n, n_A);
      std::set<std::size_t> seen(cls.s0.begin(), cls.s0.end());
      for (const auto& members : cls.classes)
        seen.insert(members.begin(), members.end());
      CHECK(seen.size() == op_space_dim(n));
      CHECK(cls.s0.size() ==
            qubit_dim(n) * (qubit_dim(n) - qubit_dim(n_A)));
    }
  }
  SUBCASE("classification is consistent with the trace-out map") {
    const auto basis = comp_op_basis(3);
    const auto cls = classify(3, 1);
    const auto image_units = comp_op_basis(1);
    for (std::size_t r : cls.s0)
      CHECK(partial_trace(basis.vectors[r], 3, 1).max_abs() == 0.0);
    for (std::size_t j = 0; j < cls.classes.size(); ++j)
      for (std::size_t r : cls.classes[j])
        CHECK(max_abs_diff(partial_trace(basis.vectors[r], 3, 1),
                           image_units.vectors[j]) == 0.0);
  }
}

TEST_CASE("Q basis") {
  const auto q = q_basis(2, 1);
  REQUIRE(q.size() == 4);

  // First vector is (E_00 + E_22)/sqrt(2) in the 4x4 operator space.
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(approx_entry(q.vectors[0](0, 0), {s, 0.0}));
  CHECK(approx_entry(q.vectors[0](1, 1), {s, 0.0}));
  CHECK(q.vectors[0].frobenius_norm() == doctest::Approx(1.0));

  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      const Complex expect = i == j ? Complex{1.0, 0.0} : Complex{};
      CHECK(std::abs(hs_inner(q.vectors[i], q.vectors[j]) - expect) < 1e-12);
    }

  // Tracing down the first Q vector gives sqrt(2) |0><0|.
  const auto image = partial_trace(q.vectors[0], 2, 1);
  CHECK(approx_entry(image(0, 0), {std::sqrt(2.0), 0.0}));
  CHECK(image.max_abs() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("Q vectors have the closed form E^A x I / sqrt(m)") {
  for (const auto& [n, n_A] :
       std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
    const auto q = q_basis(n, n_A);
    const auto image_units = comp_op_basis(n_A);
    const std::size_t m = qubit_dim(n - n_A);
    const double coeff = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t j = 0; j < q.size(); ++j) {
      ComplexMatrix expect =
          kron(image_units.vectors[j], ComplexMatrix::identity(m));
      expect *= Complex{coeff, 0.0};
      CHECK(max_abs_diff(q.vectors[j], expect) == 0.0);
    }
  }
}

TEST_CASE("K basis") {
  SUBCASE("two qubits, one kept") {
    const auto k = k_basis(2, 1);
    REQUIRE(k.size() == 12);
    // Zero-image units come first (8 of them), then one combination per
    // class: (E_00 - E_22)/sqrt(2) for the first class.
    const double s = 1.0 / std::sqrt(2.0);
    const auto& first_combo = k.vectors[8];
    CHECK(approx_entry(first_combo(0, 0), {s, 0.0}));
    CHECK(approx_entry(first_combo(1, 1), {-s, 0.0}));
  }
  SUBCASE("every K vector is in the trace-out kernel") {
    for (const auto& [n, n_A] :
         std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
      const auto k = k_basis(n, n_A);
      CHECK(k.size() == op_space_dim(n) - op_space_dim(n_A));
      for (const auto& v : k.vectors)
        CHECK(partial_trace(v, n, n_A).max_abs() <= 1e-12);
    }
  }
  SUBCASE("larger classes produce zero-sum cyclic combinations") {
    // n=3, n_A=1: classes of size 4, three combinations each.
    const auto k = k_basis(3, 1);
    CHECK(k.size() == 60);
    const auto cls = classify(3, 1);
    CHECK(cls.s0.size() == 48);
    for (const auto& v : k.vectors)
      CHECK(partial_trace(v, 3, 1).max_abs() <= 1e-12);
  }
}

TEST_CASE("Q and K together are an orthonormal basis") {
  for (const auto& [n, n_A] :
       std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
    const auto q = q_basis(n, n_A);
    const auto k = k_basis(n, n_A);
    std::vector<ComplexMatrix> all;
    for (const auto& v : q.vectors) all.push_back(v);
    for (const auto& v : k.vectors) all.push_back(v);
    CHECK(all.size() == op_space_dim(n));
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i; j < all.size(); ++j) {
        const Complex expect = i == j ? Complex{1.0, 0.0} : Complex{};
        CHECK(std::abs(hs_inner(all[i], all[j]) - expect) < 1e-10);
      }
  }
}

TEST_CASE("build_split transition matrix") {
  const auto split = build_split(2, 1);
  CHECK(split.q_size() == 4);
  CHECK(split.k_size() == 12);
  CHECK(split.s0_size() == 8);

  const auto& c = split.transition;
  REQUIRE(c.rows() == 16);
  CHECK(max_abs_diff(c.dagger() * c, ComplexMatrix::identity(16)) < 1e-12);
  CHECK(max_abs_diff(c * c.dagger(), ComplexMatrix::identity(16)) < 1e-12);

  // Columns holding zero-image units are plain standard basis columns.
  for (std::size_t pos = 0; pos < split.s0_size(); ++pos) {
    const std::size_t col = split.q_size() + pos;
    const std::size_t r = split.classes.s0[pos];
    for (std::size_t row = 0; row < 16; ++row) {
      const Complex expect = row == r ? Complex{1.0, 0.0} : Complex{};
      CHECK(approx_entry(c(row, col), expect));
    }
  }
}

TEST_CASE("split preconditions") {
  CHECK_THROWS_AS(build_split(2, 2), PreconditionError);
  CHECK_THROWS_AS(build_split(2, 0), PreconditionError);
  CHECK_THROWS_AS(classify(1, 1), PreconditionError);
}
