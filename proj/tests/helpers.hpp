#pragma once

#include <cmath>
#include <random>

#include "qam/automaton.hpp"
#include "qam/linalg.hpp"
#include "qam/matrix.hpp"

namespace testutil {

using qam::Complex;
using qam::ComplexMatrix;

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

inline ComplexMatrix pauli_x() { return mat2(0, 1, 1, 0); }
inline ComplexMatrix pauli_y() {
  return mat2(0, Complex{0, -1}, Complex{0, 1}, 0);
}
inline ComplexMatrix pauli_z() { return mat2(1, 0, 0, -1); }
inline ComplexMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return mat2(s, s, s, -s);
}
inline ComplexMatrix s_gate() { return mat2(1, 0, 0, Complex{0, 1}); }
inline ComplexMatrix t_gate() {
  return mat2(1, 0, 0, std::polar(1.0, M_PI / 4.0));
}
inline ComplexMatrix phase_gate(double theta) {
  return mat2(1, 0, 0, std::polar(1.0, theta));
}

inline ComplexMatrix cnot() {
  ComplexMatrix m(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

inline ComplexMatrix ket_density(std::size_t dim, std::size_t index) {
  ComplexMatrix m(dim, dim);
  m(index, index) = 1.0;
  return m;
}

/// Unit matrix E_{i,j} (0-based).
inline ComplexMatrix unit(std::size_t dim, std::size_t i, std::size_t j) {
  ComplexMatrix m(dim, dim);
  m(i, j) = 1.0;
  return m;
}

/// Single-measured-qubit automaton with the given letters, Z observable.
inline qam::QuantumAutomaton make_automaton(
    int n, const qam::ComplexMatrix& rho0,
    const std::vector<std::pair<std::string, ComplexMatrix>>& letters) {
  qam::QuantumAutomaton m;
  m.n = n;
  m.n1 = 1;
  m.rho0 = rho0;
  m.observable = qam::Observable::z_first_qubit(1);
  for (const auto& [sym, u] : letters) {
    m.alphabet.push_back(sym);
    m.unitaries.emplace(sym, u);
  }
  return m;
}

inline bool approx_entry(Complex got, Complex expect, double tol = 1e-12) {
  return std::abs(got - expect) <= tol;
}

}  // namespace testutil
