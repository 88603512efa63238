#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dimerbell/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dimer-weighted CHSH Bell inequalities on square lattices: enumerate and "
               "classify maximum dimer coverings, compute classical and quantum bounds, and "
               "locate the critical couplings bounding the violation interval."};
  app.require_subcommand(1);

  dimerbell::RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub, bool wants_solver) {
    sub->add_option("--n", cfg.n, "lattice side length (>= 3)")->capture_default_str();
    sub->add_option("--boundary", cfg.boundary, "boundary identification: torus or klein")
        ->capture_default_str();
    sub->add_option("--cache-dir", cfg.cache_dir,
                    "directory for reusable covering/class files");
    sub->add_option("--out", cfg.out, "output path ('-' or empty for stdout)");
    if (wants_solver) {
      sub->add_option("--solver", cfg.solver, "quantum solver: auto, dense or lanczos")
          ->capture_default_str();
      sub->add_option("--tol", cfg.tol, "quantum solver tolerance")->capture_default_str();
      sub->add_option("--seed", cfg.seed, "start-vector seed for the iterative solver")
          ->capture_default_str();
    }
  };

  CLI::App* enumerate = app.add_subcommand("enumerate", "enumerate maximum dimer coverings");
  add_common(enumerate, false);

  CLI::App* classify = app.add_subcommand("classify", "group coverings into symmetry classes");
  add_common(classify, false);

  CLI::App* classical =
      app.add_subcommand("classical-bound", "tropical transfer-matrix classical bounds");
  add_common(classical, false);
  classical->add_option("--epsilon", cfg.epsilon, "single coupling value");
  classical->add_option("--grid", cfg.grid, "coupling grid a:b:step");
  classical->add_option("--class-id", cfg.class_id, "restrict to one class (default: all)");

  CLI::App* quantum = app.add_subcommand("quantum-value", "ground-state energies beta_q");
  add_common(quantum, true);
  quantum->add_option("--epsilon", cfg.epsilon, "single coupling value");
  quantum->add_option("--grid", cfg.grid, "coupling grid a:b:step");
  quantum->add_option("--class-id", cfg.class_id, "restrict to one class (default: all)");

  CLI::App* critical =
      app.add_subcommand("critical", "locate the critical couplings per class");
  add_common(critical, true);
  critical->add_option("--class-id", cfg.class_id, "restrict to one class (default: all)");
  critical->add_option("--jobs", cfg.jobs, "parallel class workers")->capture_default_str();

  CLI::App* sweepc = app.add_subcommand("sweep", "beta_c and beta_q along a coupling grid");
  add_common(sweepc, true);
  sweepc->add_option("--grid", cfg.grid, "coupling grid a:b:step")->required();
  sweepc->add_option("--class-id", cfg.class_id, "class to sweep (default: 0)");

  CLI::App* bellmap =
      app.add_subcommand("bellmap", "recover Bell-expression coefficients from the operator");
  bellmap->add_option("--m", cfg.m, "inputs per party (>= 2)")->capture_default_str();
  bellmap->add_option("--out", cfg.out, "output path ('-' or empty for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return dimerbell::run_command(cfg);
}
