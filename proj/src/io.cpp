#include "qam/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qam/errors.hpp"
#include "qam/linalg.hpp"

namespace qam {

namespace {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& name,
                               std::size_t expect_rows,
                               std::size_t expect_cols) {
  if (!j.is_array() || j.empty())
    throw ParseError(name + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array())
    throw ParseError(name + ": expected rows to be arrays");
  const std::size_t cols = j[0].size();
  if (expect_rows != 0 && (rows != expect_rows || cols != expect_cols))
    throw DimensionError(name + ": expected " + std::to_string(expect_rows) +
                         "x" + std::to_string(expect_cols) + ", file has " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw DimensionError(name + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[i][c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        throw ParseError(name + ": entries must be [re, im] number pairs");
      m(i, c) = Complex{e[0].get<double>(), e[1].get<double>()};
    }
  }
  if (!m.all_finite())
    throw ValidationError(name + ": contains non-finite entries");
  return m;
}

json automaton_to_json(const QuantumAutomaton& m) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["n"] = m.n;
  out["n1"] = m.n1;
  out["alphabet"] = m.alphabet;
  out["rho0"] = matrix_to_json(m.rho0);
  json us = json::object();
  for (const auto& [sym, u] : m.unitaries) us[sym] = matrix_to_json(u);
  out["unitaries"] = std::move(us);
  json obs;
  obs["eigenvalues"] = m.observable.eigenvalues;
  json ps = json::array();
  for (const auto& p : m.observable.projectors) ps.push_back(matrix_to_json(p));
  obs["projectors"] = std::move(ps);
  out["observable"] = std::move(obs);
  return out;
}

QuantumAutomaton automaton_from_json_checked(const json& j,
                                             const Tolerance& tol);

// Translates stray type errors from the JSON layer into ParseError.
QuantumAutomaton automaton_from_json(const json& j, const Tolerance& tol) {
  try {
    return automaton_from_json_checked(j, tol);
  } catch (const json::exception& e) {
    throw ParseError(std::string("automaton file: ") + e.what());
  }
}

QuantumAutomaton automaton_from_json_checked(const json& j,
                                             const Tolerance& tol) {
  if (!j.is_object()) throw ParseError("automaton file: expected an object");
  const auto need = [&](const char* key) -> const json& {
    if (!j.contains(key))
      throw ParseError(std::string("automaton file: missing field '") + key +
                       "'");
    return j.at(key);
  };
  if (!need("schema_version").is_string())
    throw ParseError("automaton file: schema_version must be a string");
  const std::string version = need("schema_version").get<std::string>();
  if (version != kSchemaVersion)
    throw ParseError("automaton file: unsupported schema_version '" + version +
                     "'");

  QuantumAutomaton m;
  if (!need("n").is_number_integer() || !need("n1").is_number_integer())
    throw ParseError("automaton file: n and n1 must be integers");
  m.n = need("n").get<int>();
  m.n1 = need("n1").get<int>();
  if (m.n < 1 || m.n > 12)
    throw ParseError("automaton file: n out of supported range [1, 12]");
  if (m.n1 < 1 || m.n1 > m.n)
    throw ValidationError("automaton file: need 1 <= n1 <= n");

  const std::size_t d = qubit_dim(m.n);
  const std::size_t d1 = qubit_dim(m.n1);

  m.alphabet = need("alphabet").get<std::vector<std::string>>();
  m.rho0 = matrix_from_json(need("rho0"), "rho0", d, d);

  const json& us = need("unitaries");
  if (!us.is_object())
    throw ParseError("unitaries: expected an object keyed by symbol");
  for (const auto& [sym, mat] : us.items())
    m.unitaries.emplace(sym, matrix_from_json(mat, "unitaries['" + sym + "']",
                                              d, d));

  const json& obs = need("observable");
  if (obs.contains("hermitian")) {
    m.observable = Observable::from_hermitian(
        matrix_from_json(obs.at("hermitian"), "observable.hermitian", d1, d1));
  } else if (obs.contains("eigenvalues") && obs.contains("projectors")) {
    m.observable.eigenvalues =
        obs.at("eigenvalues").get<std::vector<double>>();
    for (std::size_t k = 0; k < obs.at("projectors").size(); ++k)
      m.observable.projectors.push_back(
          matrix_from_json(obs.at("projectors")[k],
                           "observable.projectors[" + std::to_string(k) + "]",
                           d1, d1));
  } else {
    throw ParseError(
        "observable: expected either {hermitian} or {eigenvalues, projectors}");
  }

  const auto report = validate(m, tol);
  if (!report.ok())
    throw ValidationError("automaton file failed validation:\n" +
                          report.to_string());
  return m;
}

}  // namespace

QuantumAutomaton load_automaton(const std::string& path, const Tolerance& tol) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("cannot parse '" + path + "': " + e.what());
  }
  return automaton_from_json(j, tol);
}

void save_automaton(const QuantumAutomaton& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << automaton_to_json(m).dump(1) << "\n";
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string automaton_to_json_string(const QuantumAutomaton& m) {
  return automaton_to_json(m).dump(1) + "\n";
}

QuantumAutomaton automaton_from_json_string(const std::string& text,
                                            const Tolerance& tol) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("cannot parse automaton JSON: ") + e.what());
  }
  return automaton_from_json(j, tol);
}

InstanceKind instance_kind_from_string(const std::string& name) {
  if (name == "product") return InstanceKind::Product;
  if (name == "entangling") return InstanceKind::Entangling;
  if (name == "random") return InstanceKind::Random;
  throw UsageError("unknown instance kind '" + name +
                   "' (expected product, entangling or random)");
}

namespace {

// Controlled-NOT with control on qubit `control` (1-based) and target on
// the next qubit, extended by identities elsewhere.
ComplexMatrix cnot_at(int n, int control) {
  ComplexMatrix gate(4, 4);
  gate(0, 0) = gate(1, 1) = gate(2, 3) = gate(3, 2) = 1.0;
  ComplexMatrix full = gate;
  if (control > 1)
    full = kron(ComplexMatrix::identity(qubit_dim(control - 1)), full);
  if (control + 1 < n)
    full = kron(full, ComplexMatrix::identity(qubit_dim(n - control - 1)));
  return full;
}

}  // namespace

QuantumAutomaton gen_instance(InstanceKind kind, int n, int n1,
                              std::uint64_t seed, int letters) {
  if (n < 1 || n > 10) throw UsageError("gen_instance: n must be in [1, 10]");
  if (n1 < 1 || n1 > n) throw UsageError("gen_instance: need 1 <= n1 <= n");
  if (letters < 1 || letters > 26)
    throw UsageError("gen_instance: letters must be in [1, 26]");
  if (kind != InstanceKind::Random && n1 >= n)
    throw UsageError("gen_instance: product-structured kinds need n1 < n");

  std::mt19937_64 rng(seed);
  const std::size_t d = qubit_dim(n);
  const std::size_t da = qubit_dim(n1);
  const std::size_t db = qubit_dim(n - n1);

  QuantumAutomaton m;
  m.n = n;
  m.n1 = n1;
  m.observable = Observable::z_first_qubit(n1);
  for (int i = 0; i < letters; ++i)
    m.alphabet.push_back(std::string(1, static_cast<char>('a' + i)));

  switch (kind) {
    case InstanceKind::Product:
    case InstanceKind::Entangling: {
      m.rho0 = kron(random_density(da, rng), random_density(db, rng));
      for (const auto& sym : m.alphabet) {
        const ComplexMatrix v = haar_unitary(da, rng);
        const ComplexMatrix w = haar_unitary(db, rng);
        m.unitaries.emplace(sym, kron(v, w));
      }
      if (kind == InstanceKind::Entangling) {
        // One letter picks up a controlled-NOT across the cut, which makes
        // the trailing subsystem impossible to discard.
        const ComplexMatrix braid = cnot_at(n, n1);
        auto& u = m.unitaries.at(m.alphabet.front());
        u = braid * u;
      }
      break;
    }
    case InstanceKind::Random: {
      m.rho0 = random_pure_density(d, rng);
      for (const auto& sym : m.alphabet)
        m.unitaries.emplace(sym, haar_unitary(d, rng));
      break;
    }
  }
  return m;
}

}  // namespace qam
