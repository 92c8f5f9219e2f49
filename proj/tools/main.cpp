#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "realfunm/harness.hpp"
#include "realfunm/polyeval.hpp"

using namespace realfunm;

namespace {

FunmConfig::Mode parse_mode(const std::string& mode) {
  if (mode == "standard") return FunmConfig::Mode::standard;
  if (mode == "double-block") return FunmConfig::Mode::double_block;
  throw CLI::ValidationError("--mode", "must be 'standard' or 'double-block'");
}

int cmd_compute(const std::string& func, const std::string& input, const std::string& output,
                const FunmConfig& cfg) {
  const CMatrix r = read_matrix_file(input);
  const auto fn = catalog_get(func);
  const FunmResult res = funm(r, *fn, cfg);
  write_matrix_file(output, res.F);
  std::cout << "func=" << fn->name() << "\n"
            << "input=" << input << "\n"
            << "output=" << output << "\n"
            << res.partition.summary() << res.report.to_text();
  return 0;
}

int cmd_experiment(const ExperimentSpec& spec, const FunmConfig& cfg, bool per_trial) {
  const ExperimentResult res = run_experiment(spec, cfg);
  std::cout << "func=" << spec.function << "\n"
            << "N=" << spec.N << "\n"
            << "blocks=" << spec.n_blocks << "\n"
            << "trials=" << spec.trials << "\n"
            << "coef_range=" << format_double(spec.coef_range) << "\n"
            << "gen_digits=" << spec.gen_digits << "\n";
  if (per_trial)
    for (size_t t = 0; t < res.per_trial.size(); ++t)
      std::cout << "--- trial " << t << "\n" << res.per_trial[t].to_text();
  std::cout << "--- mean over " << spec.trials << " trials\n" << res.mean.to_text();
  return 0;
}

int cmd_nodes(int count, int digits, double lo, double hi, bool lebesgue,
              const std::string& func, double lo2, double hi2) {
  const NodeSet nodes = chebyshev_nodes(count, lo, hi, digits);
  for (const XScalar& z : nodes.nodes) std::cout << z.str() << "\n";
  if (lebesgue)
    std::cout << "lebesgue_constant=" << lebesgue_constant(count, digits).str() << "\n";
  if (!func.empty()) {
    const auto fn = catalog_get(func);
    if (lo2 < hi2) {
      // coefficient grid of the divided-difference interpolant on
      // [lo,hi] x [lo2,hi2]
      const NodeSet ys = chebyshev_nodes(count, lo2, hi2, digits);
      XMatrix grid(count, count, digits);
      for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j)
          grid.at(i, j) = scalar_divdiff(*fn, nodes.nodes[i], ys.nodes[j]);
      const BivariatePoly p = bivariate_interpolation(grid, nodes, ys);
      for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j)
          std::cout << "c[" << i << "][" << j << "]=" << p.coeffs.at(i, j).str() << "\n";
    } else {
      std::vector<XScalar> values;
      values.reserve(count);
      for (const XScalar& z : nodes.nodes) values.push_back(fn->eval(z));
      const std::vector<XScalar> dd = divided_differences(nodes, values);
      const MonomialPoly p = newton_to_monomial(nodes.nodes, dd);
      for (int i = 0; i < count; ++i) std::cout << "newton[" << i << "]=" << dd[i].str() << "\n";
      for (int i = 0; i < count; ++i)
        std::cout << "mono[" << i << "]=" << p.coeffs[i].str() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrix functions of real-spectrum matrices via overlapping-block"
               " triangular recurrences"};
  app.require_subcommand(1);

  // compute
  auto* compute = app.add_subcommand("compute", "apply f to a matrix read from a file");
  std::string func = "exp", input, output, mode = "standard";
  FunmConfig cfg;
  compute->add_option("--func", func, "function name (exp, cos, sin, identity, exp_t:<t>)");
  compute->add_option("--input", input, "input matrix file")->required();
  compute->add_option("--output", output, "output matrix file")->required();
  compute->add_option("--rho", cfg.rho, "clustering interval length");
  compute->add_option("--nodes", cfg.node_count, "interpolation nodes per block");
  compute->add_option("--digits", cfg.scalar_digits, "extended precision decimal digits");
  compute->add_option("--tol", cfg.real_spectrum_tol, "real-spectrum tolerance");
  compute->add_option("--mode", mode, "standard | double-block");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run the synthetic benchmark");
  ExperimentSpec spec;
  bool per_trial = false;
  experiment->add_option("--N", spec.N, "matrix dimension");
  experiment->add_option("--blocks", spec.n_blocks, "number of diagonal blocks");
  experiment->add_option("--trials", spec.trials, "number of instances");
  experiment->add_option("--func", spec.function, "function name");
  experiment->add_option("--seed", spec.seed, "generator seed");
  experiment->add_option("--coef-range", spec.coef_range, "similarity coefficient range");
  experiment->add_option("--gen-digits", spec.gen_digits, "reference construction digits");
  experiment->add_option("--rho", cfg.rho, "clustering interval length");
  experiment->add_option("--nodes", cfg.node_count, "interpolation nodes per block");
  experiment->add_option("--digits", cfg.scalar_digits, "extended precision decimal digits");
  experiment->add_option("--tol", cfg.real_spectrum_tol, "real-spectrum tolerance");
  experiment->add_option("--mode", mode, "standard | double-block");
  experiment->add_flag("--per-trial", per_trial, "print every trial, not just the mean");

  // nodes
  auto* nodes_cmd = app.add_subcommand("nodes", "print node sets and coefficient grids");
  int count = 16, digits = 30;
  double lo = -1.0, hi = 1.0, lo2 = 0.0, hi2 = 0.0;
  bool lebesgue = false;
  std::string nodes_func;
  nodes_cmd->add_option("--count", count, "number of nodes");
  nodes_cmd->add_option("--digits", digits, "decimal digits");
  nodes_cmd->add_option("--lo", lo, "interval start");
  nodes_cmd->add_option("--hi", hi, "interval end");
  nodes_cmd->add_flag("--lebesgue", lebesgue, "also print the Lebesgue constant");
  nodes_cmd->add_option("--func", nodes_func, "dump interpolant coefficients for this function");
  nodes_cmd->add_option("--lo2", lo2, "second interval start (coefficient grid dump)");
  nodes_cmd->add_option("--hi2", hi2, "second interval end (coefficient grid dump)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);  // help goes to stdout with exit code 0
    app.exit(e);
    return 2;
  }

  try {
    cfg.mode = parse_mode(mode);
    if (compute->parsed()) return cmd_compute(func, input, output, cfg);
    if (experiment->parsed()) {
      // environment override for reproducing a run without editing scripts
      if (const char* env = std::getenv("REALFUNM_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
          std::cerr << "realfunm: bad REALFUNM_SEED \"" << env << "\"\n";
          return 2;
        }
        spec.seed = v;
      }
      return cmd_experiment(spec, cfg, per_trial);
    }
    return cmd_nodes(count, digits, lo, hi, lebesgue, nodes_func, lo2, hi2);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "realfunm: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "realfunm: " << e.what() << "\n";
    return 1;
  }
}
