#include <CLI11.hpp>

#include <iostream>

#include "lcomm/cli.hpp"

namespace {

void add_seed(CLI::App* app, std::optional<std::uint64_t>& seed) {
  app->add_option("--seed", seed, "PRNG seed (default: $LCOMM_SEED, else 42)");
}

void add_mutant(CLI::App* app, std::string& mutant) {
  // Mutation-testing hook; deliberately undocumented in --help.
  app->add_option("--mutant", mutant)->group("");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace lcomm::cli;
  CLI::App app{"Local commutants, girders and ultrainvariant subspaces of finite matrices"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Analyze C(A;M) for an operator and a subspace");
  analyze->add_option("--operator", an.operator_path, "operator matrix JSON")->required();
  analyze->add_option("--subspace", an.subspace_path, "subspace JSON")->required();
  analyze->add_option("--operator-b", an.operator_b_path, "second operator B for I(A,B;M)");
  analyze->add_option("--out", an.out_path, "report path")->required();
  add_seed(analyze, an.seed);
  add_mutant(analyze, an.mutant);

  LatticeArgs la;
  auto* lattice = app.add_subcommand("lattice", "Enumerate the ultrainvariant lattice of an operator");
  lattice->add_option("--operator", la.operator_path, "operator matrix JSON")->required();
  lattice->add_option("--spectrum", la.spectrum_path, "spectrum JSON (roots with multiplicities)");
  lattice->add_option("--out", la.out_path, "report path")->required();
  add_seed(lattice, la.seed);

  FuzzArgs fz;
  auto* fuzz = app.add_subcommand("fuzz", "Run every registered invariant on seeded random instances");
  add_seed(fuzz, fz.seed);
  fuzz->add_option("--cases", fz.cases, "instances per generator kind (>= 1)");
  fuzz->add_option("--dim-max", fz.dim_max, "largest ambient dimension (2..6)");
  fuzz->add_option("--out", fz.out_path, "report path");
  add_mutant(fuzz, fz.mutant);

  ExamplesArgs ex;
  auto* examples = app.add_subcommand("examples", "Rebuild the worked examples and check their expected facts");
  examples->add_flag("-v,--verbose", ex.verbose, "list every fact");
  add_mutant(examples, ex.mutant);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "lcomm: usage error: " << e.what() << "\n";
    return kInputError;
  }

  if (analyze->parsed()) return cmd_analyze(an, std::cout, std::cerr);
  if (lattice->parsed()) return cmd_lattice(la, std::cout, std::cerr);
  if (fuzz->parsed()) return cmd_fuzz(fz, std::cout, std::cerr);
  return cmd_examples(ex, std::cout, std::cerr);
}
