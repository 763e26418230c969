#include <CLI11.hpp>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "qam/errors.hpp"
#include "qam/io.hpp"
#include "qam/minimizer.hpp"
#include "qam/oracle.hpp"

namespace qam {

namespace {

std::string format_probability(double p) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12f", p);
  return buf;
}

std::string format_eigenvalue(double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", a);
  return buf;
}

void print_distribution(const Observable& obs, const OutputDistribution& dist) {
  for (std::size_t k = 0; k < dist.probabilities.size(); ++k)
    std::cout << "outcome " << format_eigenvalue(obs.eigenvalues[k]) << ": "
              << format_probability(dist.probabilities[k]) << "\n";
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{
      "Simulate density-operator quantum automata and reduce them to the "
      "fewest qubits that preserve their behavior."};
  app.require_subcommand(1);

  std::function<int()> action;

  // run
  auto* run_cmd =
      app.add_subcommand("run", "Read a word and print the output distribution");
  std::string run_file, run_word_text;
  double run_tol = 1e-9;
  run_cmd->add_option("file", run_file, "automaton JSON file")->required();
  run_cmd->add_option("--word", run_word_text,
                      "input word; symbols separated by commas, empty for "
                      "the null word");
  run_cmd->add_option("--tol", run_tol, "numerical tolerance");
  run_cmd->callback([&] {
    action = [&]() -> int {
      const Tolerance tol{run_tol, run_tol};
      const auto m = load_automaton(run_file, tol);
      const Word w = parse_word(m.alphabet, run_word_text);
      const auto rho = run_word(m, w);
      std::cout << "word: " << word_to_string(w) << "\n";
      print_distribution(m.observable, output_dist(m, rho));
      return 0;
    };
  });

  // minimize
  auto* min_cmd = app.add_subcommand(
      "minimize", "Find the equivalent automaton with the fewest qubits");
  std::string min_file, min_out;
  double min_tol = 1e-9;
  int min_verify = 4;
  bool min_no_sober = false;
  min_cmd->add_option("file", min_file, "automaton JSON file")->required();
  min_cmd->add_option("-o,--output", min_out, "write the reduced automaton here");
  min_cmd->add_option("--tol", min_tol, "invariance tolerance");
  min_cmd->add_option("--verify-len", min_verify,
                      "depth of the post-hoc behavior check (0 disables)");
  min_cmd->add_flag("--no-sober", min_no_sober,
                    "skip the tensor-factorization shortcut");
  min_cmd->callback([&] {
    action = [&]() -> int {
      MinimizationOptions opts;
      opts.tol = Tolerance{min_tol, min_tol};
      opts.verify_len = min_verify;
      opts.try_sober_first = !min_no_sober;
      const auto m = load_automaton(min_file, opts.tol);
      const auto report = minimize(m, opts);
      std::cout << report.to_string();
      if (report.reduced && !min_out.empty()) {
        save_automaton(*report.automaton, min_out);
        std::cout << "wrote " << min_out << "\n";
      }
      return 0;
    };
  });

  // check-finite
  auto* fin_cmd = app.add_subcommand(
      "check-finite", "Test whether the reachable state set is finite");
  std::string fin_file;
  int fin_max_p = 0;
  double fin_tol = 1e-9;
  fin_cmd->add_option("file", fin_file, "automaton JSON file")->required();
  fin_cmd->add_option("--max-period", fin_max_p,
                      "largest period to test (0 = the 4^n bound)");
  fin_cmd->add_option("--tol", fin_tol, "numerical tolerance");
  fin_cmd->callback([&] {
    action = [&]() -> int {
      const Tolerance tol{fin_tol, fin_tol};
      const auto m = load_automaton(fin_file, tol);
      std::cout << is_finite_automaton(m, fin_max_p, tol).to_string();
      return 0;
    };
  });

  // equiv
  auto* eq_cmd = app.add_subcommand(
      "equiv", "Compare the behaviors of two automata up to a word length");
  std::string eq_a, eq_b;
  int eq_len = 0;
  double eq_tol = 1e-9;
  eq_cmd->add_option("file1", eq_a, "first automaton")->required();
  eq_cmd->add_option("file2", eq_b, "second automaton")->required();
  eq_cmd->add_option("--max-len", eq_len, "word length cap")->required();
  eq_cmd->add_option("--tol", eq_tol, "per-probability tolerance");
  eq_cmd->callback([&] {
    action = [&]() -> int {
      const Tolerance tol{eq_tol, eq_tol};
      const auto a = load_automaton(eq_a, tol);
      const auto b = load_automaton(eq_b, tol);
      const auto r = verify_equivalence(a, b, eq_len, tol);
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.3e", r.max_deviation);
      std::cout << "equal: " << (r.equal ? "yes" : "no") << "\n"
                << "depth: " << r.depth << "\n"
                << "max-deviation: " << buf << "\n";
      return 0;
    };
  });

  // gen
  auto* gen_cmd =
      app.add_subcommand("gen", "Generate a seeded test instance");
  std::string gen_kind, gen_out;
  int gen_n = 2, gen_n1 = 1, gen_letters = 2;
  std::uint64_t gen_seed = 0;
  gen_cmd->add_option("kind", gen_kind, "product, entangling or random")
      ->required();
  gen_cmd->add_option("--n", gen_n, "total qubits")->required();
  gen_cmd->add_option("--n1", gen_n1, "measured qubits")->required();
  gen_cmd->add_option("--seed", gen_seed, "random seed")->required();
  gen_cmd->add_option("--letters", gen_letters, "alphabet size");
  gen_cmd->add_option("-o,--output", gen_out, "output file (default stdout)");
  gen_cmd->callback([&] {
    action = [&]() -> int {
      const auto m = gen_instance(instance_kind_from_string(gen_kind), gen_n,
                                  gen_n1, gen_seed, gen_letters);
      if (gen_out.empty())
        std::cout << automaton_to_json_string(m);
      else
        save_automaton(m, gen_out);
      return 0;
    };
  });

  // oracle (debugging aid, hidden from help)
  auto* oracle_cmd = app.add_subcommand("oracle", "");
  oracle_cmd->group("");
  auto* ob_cmd = oracle_cmd->add_subcommand(
      "behavior", "brute-force behavior table");
  std::string ob_file;
  int ob_depth = 2;
  ob_cmd->add_option("file", ob_file)->required();
  ob_cmd->add_option("--depth", ob_depth);
  ob_cmd->callback([&] {
    action = [&]() -> int {
      const auto m = load_automaton(ob_file);
      std::cout << oracle::behavior_table(m, ob_depth);
      return 0;
    };
  });
  auto* os_cmd = oracle_cmd->add_subcommand(
      "superop", "elementwise superoperator of one letter");
  std::string os_file, os_letter;
  os_cmd->add_option("file", os_file)->required();
  os_cmd->add_option("--letter", os_letter)->required();
  os_cmd->callback([&] {
    action = [&]() -> int {
      const auto m = load_automaton(os_file);
      const auto basis = comp_op_basis(m.n);
      const auto s = oracle::superop_elementwise(m.unitary(os_letter), basis);
      for (std::size_t i = 0; i < s.rows(); ++i) {
        for (std::size_t j = 0; j < s.cols(); ++j) {
          char buf[80];
          std::snprintf(buf, sizeof(buf), "%s(%.12g,%.12g)", j ? " " : "",
                        s(i, j).real(), s(i, j).imag());
          std::cout << buf;
        }
        std::cout << "\n";
      }
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!action) {
    std::cerr << "error: no action selected\n";
    return 2;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qam
