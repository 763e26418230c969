#include "qam/automaton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qam/errors.hpp"
#include "qam/linalg.hpp"

namespace qam {

namespace {

// Total number of words of length <= max_len over an s-letter alphabet,
// saturating at cap + 1.
std::size_t word_count(std::size_t s, int max_len, std::size_t cap) {
  std::size_t total = 0;
  std::size_t level = 1;
  for (int l = 0; l <= max_len; ++l) {
    if (total > cap) return cap + 1;
    total += level;
    if (s != 0 && level > cap / s)
      level = cap + 1;
    else
      level *= s;
  }
  return total;
}

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

}  // namespace

Observable Observable::from_hermitian(const ComplexMatrix& a,
                                      double eigen_gap) {
  if (!a.is_square()) throw DimensionError("observable: matrix not square");
  if (!is_hermitian(a, Tolerance{1e-8, 1e-8}))
    throw PreconditionError("observable: matrix is not hermitian");
  const auto eig = hermitian_eig(a);
  const std::size_t d = a.rows();

  Observable out;
  std::size_t start = 0;
  while (start < d) {
    std::size_t stop = start + 1;
    while (stop < d &&
           eig.eigenvalues[stop] - eig.eigenvalues[stop - 1] <= eigen_gap)
      ++stop;
    // Mean of the merged group; projector sums the group's eigenvectors.
    double value = 0.0;
    ComplexMatrix p(d, d);
    for (std::size_t k = start; k < stop; ++k) {
      value += eig.eigenvalues[k];
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          p(i, j) += eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
    }
    out.eigenvalues.push_back(value / static_cast<double>(stop - start));
    out.projectors.push_back(std::move(p));
    start = stop;
  }
  return out;
}

Observable Observable::z_first_qubit(int n1) {
  if (n1 < 1) throw PreconditionError("observable: n1 must be positive");
  ComplexMatrix z(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  ComplexMatrix a = z;
  if (n1 > 1) a = kron(z, ComplexMatrix::identity(qubit_dim(n1 - 1)));
  return from_hermitian(a);
}

const ComplexMatrix& QuantumAutomaton::unitary(const std::string& symbol) const {
  const auto it = unitaries.find(symbol);
  if (it == unitaries.end())
    throw SymbolError("unknown input symbol '" + symbol + "'");
  return it->second;
}

std::string word_to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += ',';
    out += w[i];
  }
  return out;
}

Word parse_word(const std::vector<std::string>& alphabet,
                const std::string& text) {
  const auto known = [&](const std::string& s) {
    return std::find(alphabet.begin(), alphabet.end(), s) != alphabet.end();
  };
  Word w;
  if (text.empty()) return w;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!known(tok)) throw SymbolError("unknown input symbol '" + tok + "'");
      w.push_back(tok);
    }
    return w;
  }
  // No separators: accept per-character words when each character is a
  // symbol, otherwise treat the whole text as one symbol.
  bool chars_ok = true;
  for (char c : text)
    if (!known(std::string(1, c))) {
      chars_ok = false;
      break;
    }
  if (chars_ok) {
    for (char c : text) w.push_back(std::string(1, c));
    return w;
  }
  if (!known(text)) throw SymbolError("unknown input symbol '" + text + "'");
  w.push_back(text);
  return w;
}

double OutputDistribution::sum() const {
  double s = 0.0;
  for (double p : probabilities) s += p;
  return s;
}

std::string ValidationReport::to_string() const {
  if (issues.empty()) return "valid\n";
  std::string out;
  for (const auto& issue : issues) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", issue.magnitude);
    out += issue.subject + ": " + issue.detail + " (magnitude " + buf + ")\n";
  }
  return out;
}

ValidationReport validate(const QuantumAutomaton& m, const Tolerance& tol) {
  ValidationReport rep;
  const auto add = [&rep](std::string subject, std::string detail,
                          double magnitude) {
    rep.issues.push_back({std::move(subject), std::move(detail), magnitude});
  };

  if (m.n < 1) add("n", "qubit count must be positive", 0.0);
  if (m.n1 < 1 || m.n1 > m.n)
    add("n1", "measured qubit count must satisfy 1 <= n1 <= n", 0.0);
  if (m.n < 1 || m.n1 < 1 || m.n1 > m.n) return rep;

  const std::size_t d = m.dim();
  const std::size_t d1 = qubit_dim(m.n1);

  if (!m.rho0.is_square() || m.rho0.rows() != d) {
    add("rho0", "wrong shape for declared n", 0.0);
  } else if (!m.rho0.all_finite()) {
    add("rho0", "contains non-finite entries", 0.0);
  } else {
    const double herm = max_abs_diff(m.rho0, m.rho0.dagger());
    if (herm > tol.atol) add("rho0", "not hermitian", herm);
    const double tr_dev = std::abs(m.rho0.trace() - Complex{1.0, 0.0});
    if (tr_dev > tol.atol) add("rho0", "trace differs from 1", tr_dev);
    if (herm <= 1e-6) {
      const double min_eig = hermitian_eig(m.rho0).eigenvalues.front();
      if (min_eig < -tol.atol)
        add("rho0", "negative eigenvalue", -min_eig);
    }
  }

  if (m.alphabet.empty()) add("alphabet", "must be nonempty", 0.0);
  for (std::size_t i = 0; i < m.alphabet.size(); ++i) {
    if (m.alphabet[i].empty()) add("alphabet", "empty symbol", 0.0);
    for (std::size_t j = i + 1; j < m.alphabet.size(); ++j)
      if (m.alphabet[i] == m.alphabet[j])
        add("alphabet", "duplicate symbol '" + m.alphabet[i] + "'", 0.0);
  }
  for (const auto& sym : m.alphabet) {
    const auto it = m.unitaries.find(sym);
    if (it == m.unitaries.end()) {
      add("unitaries", "missing matrix for symbol '" + sym + "'", 0.0);
      continue;
    }
    const ComplexMatrix& u = it->second;
    if (!u.is_square() || u.rows() != d) {
      add("U[" + sym + "]", "wrong shape for declared n", 0.0);
    } else if (!u.all_finite()) {
      add("U[" + sym + "]", "contains non-finite entries", 0.0);
    } else {
      const double dev = max_abs_diff(u.dagger() * u,
                                      ComplexMatrix::identity(d));
      if (dev > tol.atol) add("U[" + sym + "]", "not unitary", dev);
    }
  }
  for (const auto& [sym, u] : m.unitaries)
    if (std::find(m.alphabet.begin(), m.alphabet.end(), sym) ==
        m.alphabet.end())
      add("unitaries", "matrix for symbol '" + sym + "' not in alphabet", 0.0);

  const Observable& obs = m.observable;
  if (obs.eigenvalues.size() != obs.projectors.size() ||
      obs.eigenvalues.empty()) {
    add("observable", "eigenvalue and projector counts differ or empty", 0.0);
    return rep;
  }
  for (std::size_t k = 1; k < obs.eigenvalues.size(); ++k)
    if (!(obs.eigenvalues[k] > obs.eigenvalues[k - 1]))
      add("observable", "eigenvalues not strictly increasing", 0.0);
  ComplexMatrix completeness(d1, d1);
  bool shapes_ok = true;
  for (std::size_t k = 0; k < obs.projectors.size(); ++k) {
    const ComplexMatrix& p = obs.projectors[k];
    const std::string name = "P[" + std::to_string(k) + "]";
    if (!p.is_square() || p.rows() != d1) {
      add(name, "wrong shape for declared n1", 0.0);
      shapes_ok = false;
      continue;
    }
    const double herm = max_abs_diff(p, p.dagger());
    if (herm > tol.atol) add(name, "not hermitian", herm);
    const double idem = max_abs_diff(p * p, p);
    if (idem > tol.atol) add(name, "not idempotent", idem);
    completeness += p;
  }
  if (shapes_ok) {
    for (std::size_t k = 0; k < obs.projectors.size(); ++k)
      for (std::size_t l = k + 1; l < obs.projectors.size(); ++l) {
        const double cross =
            (obs.projectors[k] * obs.projectors[l]).max_abs();
        if (cross > tol.atol)
          add("observable",
              "projectors " + std::to_string(k) + " and " + std::to_string(l) +
                  " not orthogonal",
              cross);
      }
    const double comp =
        max_abs_diff(completeness, ComplexMatrix::identity(d1));
    if (comp > tol.atol) add("observable", "projectors do not sum to I", comp);
  }
  return rep;
}

ComplexMatrix step(const QuantumAutomaton& m, const ComplexMatrix& rho,
                   const std::string& symbol) {
  if (!rho.is_square() || rho.rows() != m.dim())
    throw DimensionError("step: state has wrong shape");
  const ComplexMatrix& u = m.unitary(symbol);
  return u * rho * u.dagger();
}

ComplexMatrix run_word(const QuantumAutomaton& m, const Word& w) {
  ComplexMatrix rho = m.rho0;
  for (const auto& sym : w) rho = step(m, rho, sym);
  return rho;
}

OutputDistribution output_dist(const QuantumAutomaton& m,
                               const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.rows() != m.dim())
    throw DimensionError("output_dist: state has wrong shape");
  const std::size_t d1 = qubit_dim(m.n1);
  const std::size_t db = qubit_dim(m.n - m.n1);
  OutputDistribution out;
  out.probabilities.reserve(m.observable.outcome_count());
  for (const ComplexMatrix& p : m.observable.projectors) {
    // Tr{(P x I) rho} without materializing the extended projector.
    Complex t = 0.0;
    for (std::size_t a = 0; a < d1; ++a)
      for (std::size_t b = 0; b < d1; ++b) {
        if (p(a, b) == Complex{}) continue;
        Complex block = 0.0;
        for (std::size_t k = 0; k < db; ++k) block += rho(b * db + k, a * db + k);
        t += p(a, b) * block;
      }
    opcount::add(d1 * d1 * db);
    out.probabilities.push_back(clamp01(t.real()));
  }
  return out;
}

std::vector<BehaviorEntry> behavior(const QuantumAutomaton& m, int max_len,
                                    std::size_t word_cap) {
  if (max_len < 0) throw PreconditionError("behavior: max_len must be >= 0");
  const std::size_t total = word_count(m.alphabet.size(), max_len, word_cap);
  if (total > word_cap)
    throw BudgetError("behavior: enumeration of words up to length " +
                      std::to_string(max_len) + " exceeds the cap of " +
                      std::to_string(word_cap) + " words");

  std::vector<BehaviorEntry> out;
  out.reserve(total);

  std::vector<Word> words = {Word{}};
  std::vector<ComplexMatrix> states = {m.rho0};
  out.push_back({Word{}, output_dist(m, m.rho0)});

  // Resolve the letter gates up front so the parallel loop below cannot
  // throw (exceptions may not unwind out of a parallel region).
  std::vector<const ComplexMatrix*> gates;
  std::vector<ComplexMatrix> gate_daggers;
  for (const auto& sym : m.alphabet) {
    const ComplexMatrix& u = m.unitary(sym);
    if (!u.is_square() || u.rows() != m.dim())
      throw DimensionError("behavior: gate for '" + sym + "' has wrong shape");
    gates.push_back(&u);
    gate_daggers.push_back(u.dagger());
  }

  for (int len = 1; len <= max_len; ++len) {
    const std::size_t parents = states.size();
    const std::size_t letters = m.alphabet.size();
    std::vector<Word> next_words(parents * letters);
    std::vector<ComplexMatrix> next_states(parents * letters);
    const std::int64_t slots = static_cast<std::int64_t>(parents * letters);
#pragma omp parallel for schedule(static) if (slots > 8)
    for (std::int64_t t = 0; t < slots; ++t) {
      const std::size_t parent = static_cast<std::size_t>(t) / letters;
      const std::size_t letter = static_cast<std::size_t>(t) % letters;
      Word w = words[parent];
      w.push_back(m.alphabet[letter]);
      next_states[static_cast<std::size_t>(t)] =
          *gates[letter] * states[parent] * gate_daggers[letter];
      next_words[static_cast<std::size_t>(t)] = std::move(w);
    }
    for (std::size_t t = 0; t < next_words.size(); ++t)
      out.push_back({next_words[t], output_dist(m, next_states[t])});
    words = std::move(next_words);
    states = std::move(next_states);
  }
  return out;
}

StateEquivalence states_equivalent(const QuantumAutomaton& m,
                                   const ComplexMatrix& rho_i,
                                   const ComplexMatrix& rho_j, int max_len,
                                   const Tolerance& tol,
                                   std::size_t word_cap) {
  const std::size_t total = word_count(m.alphabet.size(), max_len, word_cap);
  if (total > word_cap)
    throw BudgetError("states_equivalent: word enumeration exceeds cap");

  StateEquivalence result;
  result.equivalent = true;
  result.depth = max_len;

  std::vector<ComplexMatrix> lhs = {rho_i};
  std::vector<ComplexMatrix> rhs = {rho_j};
  for (int len = 0; len <= max_len; ++len) {
    for (std::size_t s = 0; s < lhs.size(); ++s) {
      const auto da = output_dist(m, lhs[s]);
      const auto db = output_dist(m, rhs[s]);
      for (std::size_t k = 0; k < da.probabilities.size(); ++k) {
        const double dev = std::abs(da.probabilities[k] - db.probabilities[k]);
        result.max_deviation = std::max(result.max_deviation, dev);
        if (dev > tol.atol) result.equivalent = false;
      }
    }
    if (len == max_len) break;
    std::vector<ComplexMatrix> next_l, next_r;
    next_l.reserve(lhs.size() * m.alphabet.size());
    next_r.reserve(rhs.size() * m.alphabet.size());
    for (std::size_t s = 0; s < lhs.size(); ++s)
      for (const auto& sym : m.alphabet) {
        next_l.push_back(step(m, lhs[s], sym));
        next_r.push_back(step(m, rhs[s], sym));
      }
    lhs = std::move(next_l);
    rhs = std::move(next_r);
  }
  return result;
}

std::optional<int> finiteness_period(const ComplexMatrix& u, int max_p,
                                     const Tolerance& tol) {
  if (!is_unitary(u, tol))
    throw PreconditionError("finiteness_period: input is not unitary");
  const std::size_t d = u.rows();
  if (max_p == 0) {
    const std::size_t bound = d * d;
    max_p = bound > 1u << 20 ? 1 << 20 : static_cast<int>(bound);
  }
  if (max_p < 1) throw PreconditionError("finiteness_period: max_p must be >= 1");

  const auto eigs = unitary_eigenvalues(u, tol);
  std::vector<double> phases;
  phases.reserve(eigs.size());
  for (const Complex& z : eigs) phases.push_back(std::arg(z));

  for (int p = 1; p <= max_p; ++p) {
    bool ok = true;
    for (double theta : phases) {
      // Distance from theta to the nearest multiple of 2 pi / p.
      const double scaled = theta * p / (2.0 * M_PI);
      const double dist = std::abs(scaled - std::round(scaled)) * 2.0 * M_PI / p;
      if (dist > tol.atol) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const ComplexMatrix up = matrix_power(u, static_cast<unsigned>(p));
    if (max_abs_diff(up, ComplexMatrix::identity(d)) <= tol.atol) return p;
  }
  return std::nullopt;
}

std::string FinitenessReport::to_string() const {
  std::string out;
  for (const auto& lp : periods) {
    out += "letter " + lp.symbol + ": ";
    out += lp.period ? "period " + std::to_string(*lp.period)
                     : "no period up to " + std::to_string(max_period_checked);
    out += "\n";
  }
  for (const auto& [a, b] : noncommuting)
    out += "letters " + a + " and " + b + " do not commute\n";
  out += "verdict: ";
  switch (verdict) {
    case Finiteness::Finite: out += "finite"; break;
    case Finiteness::Infinite: out += "infinite"; break;
    case Finiteness::Unknown: out += "unknown"; break;
  }
  out += "\n";
  return out;
}

FinitenessReport is_finite_automaton(const QuantumAutomaton& m, int max_p,
                                     const Tolerance& tol) {
  FinitenessReport rep;
  const std::size_t d = m.dim();
  const std::size_t prop_bound = d * d;
  if (max_p == 0)
    max_p = prop_bound > 1u << 20 ? 1 << 20 : static_cast<int>(prop_bound);
  rep.max_period_checked = max_p;
  rep.bound_exhausted = static_cast<std::size_t>(max_p) >= prop_bound;

  bool all_periodic = true;
  for (const auto& sym : m.alphabet) {
    const auto p = finiteness_period(m.unitary(sym), max_p, tol);
    if (!p) all_periodic = false;
    rep.periods.push_back({sym, p});
  }
  for (std::size_t i = 0; i < m.alphabet.size(); ++i)
    for (std::size_t j = i + 1; j < m.alphabet.size(); ++j) {
      const ComplexMatrix& a = m.unitary(m.alphabet[i]);
      const ComplexMatrix& b = m.unitary(m.alphabet[j]);
      if (max_abs_diff(a * b, b * a) > tol.atol)
        rep.noncommuting.emplace_back(m.alphabet[i], m.alphabet[j]);
    }

  if (!all_periodic)
    rep.verdict = rep.bound_exhausted ? Finiteness::Infinite
                                      : Finiteness::Unknown;
  else if (rep.noncommuting.empty())
    rep.verdict = Finiteness::Finite;
  else
    rep.verdict = Finiteness::Unknown;
  return rep;
}

namespace {

// Van Loan rearrangement: rows indexed by the (i_a, j_a) pair, columns by
// (i_b, j_b), so a Kronecker product becomes an outer product.
ComplexMatrix rearrange_for_kron(const ComplexMatrix& x, std::size_t da,
                                 std::size_t db) {
  ComplexMatrix r(da * da, db * db);
  for (std::size_t ia = 0; ia < da; ++ia)
    for (std::size_t ja = 0; ja < da; ++ja)
      for (std::size_t ib = 0; ib < db; ++ib)
        for (std::size_t jb = 0; jb < db; ++jb)
          r(ia * da + ja, ib * db + jb) = x(ia * db + ib, ja * db + jb);
  return r;
}

// Reads column `col` of U (or conj V) back into a dim x dim matrix.
ComplexMatrix unvec_factor(const Svd& dec, std::size_t dim, bool from_u,
                           double scale, std::size_t col) {
  ComplexMatrix out(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const std::size_t k = i * dim + j;
      const Complex e = from_u ? dec.u(k, col) : std::conj(dec.v(k, col));
      out(i, j) = e * scale;
    }
  return out;
}

// Phase that makes the first entry of significant magnitude real positive.
Complex canonical_phase(const ComplexMatrix& a) {
  const double cutoff = 1e-12 * std::max(a.max_abs(), 1e-300);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j)) > cutoff) return a(i, j) / std::abs(a(i, j));
  return {1.0, 0.0};
}

}  // namespace

std::optional<std::pair<ComplexMatrix, ComplexMatrix>> factor_product(
    const ComplexMatrix& x, int n, int n_A, const Tolerance& tol) {
  if (n < 2 || n_A < 1 || n_A >= n)
    throw PreconditionError("factor_product: need 1 <= n_A < n");
  if (!x.is_square() || x.rows() != qubit_dim(n))
    throw DimensionError("factor_product: wrong shape for declared n");

  const std::size_t da = qubit_dim(n_A);
  const std::size_t db = qubit_dim(n - n_A);
  const ComplexMatrix r = rearrange_for_kron(x, da, db);
  const Svd dec = svd(r);
  const double s1 = dec.singular_values.front();
  if (s1 <= 0.0) return std::nullopt;
  const double s2 =
      dec.singular_values.size() > 1 ? dec.singular_values[1] : 0.0;
  if (s2 > tol.atol * s1) return std::nullopt;

  const double root = std::sqrt(s1);
  ComplexMatrix a = unvec_factor(dec, da, true, root, 0);
  ComplexMatrix b = unvec_factor(dec, db, false, root, 0);

  const Tolerance loose{1e-6, 1e-6};
  if (is_unitary(x, loose)) {
    const double scale = std::sqrt(static_cast<double>(da)) / a.frobenius_norm();
    a *= Complex{scale, 0.0};
    b *= Complex{1.0 / scale, 0.0};
    const Complex phase = canonical_phase(a);
    a *= std::conj(phase);
    b *= phase;
    if (!is_unitary(a, loose) || !is_unitary(b, loose)) return std::nullopt;
  } else if (std::abs(x.trace() - Complex{1.0, 0.0}) <= 1e-6 &&
             is_hermitian(x, loose)) {
    const Complex ta = a.trace();
    if (std::abs(ta) < 1e-9) return std::nullopt;
    a *= Complex{1.0, 0.0} / ta;
    b *= ta;
  } else {
    const Complex phase = canonical_phase(a);
    a *= std::conj(phase);
    b *= phase;
  }

  if (max_abs_diff(kron(a, b), x) > 1e-7 * std::max(x.max_abs(), 1.0))
    return std::nullopt;
  return std::make_pair(std::move(a), std::move(b));
}

std::optional<QuantumAutomaton> sober_reduce(const QuantumAutomaton& m,
                                             int n_A, const Tolerance& tol) {
  if (!(m.n1 <= n_A && n_A < m.n))
    throw PreconditionError("sober_reduce: need n1 <= n_A < n");

  const auto rho_factors = factor_product(m.rho0, m.n, n_A, tol);
  if (!rho_factors) return std::nullopt;

  QuantumAutomaton out;
  out.n = n_A;
  out.n1 = m.n1;
  out.rho0 = rho_factors->first;
  out.alphabet = m.alphabet;
  out.observable = m.observable;
  for (const auto& sym : m.alphabet) {
    const auto uf = factor_product(m.unitary(sym), m.n, n_A, tol);
    if (!uf) return std::nullopt;
    out.unitaries.emplace(sym, uf->first);
  }
  return out;
}

}  // namespace qam
