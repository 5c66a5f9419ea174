// Command-line front-end: solve a combinatorial zero-sum game from a JSON
// description, or compare several solver configurations on the same game.
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polygame/run_spec.hpp"

namespace {

struct CompareItem {
  std::string solver;
  std::string map = "euclidean";
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate Nash equilibria over combinatorial 0/1 polytopes"};
  app.require_subcommand(0, 1);

  polygame::RunSpec spec;
  app.add_option("--game", spec.game_path, "Game description (JSON file)");
  app.add_option("--solver", spec.solver, "Solver: omd | mwu | sne | lp");
  app.add_option("--epsilon", spec.epsilon, "Target duality gap")->check(CLI::PositiveNumber);
  app.add_option("--rounds", spec.rounds, "Round budget override (0 = derive from epsilon)");
  app.add_option("--map", spec.map, "Mirror map for omd: euclidean | entropy");
  app.add_option("--seed", spec.seed, "RNG seed for stochastic paths");
  app.add_option("--approx-marginal", spec.approx_marginal,
                 "Inject sup-norm noise of this size into MWU marginals");
  app.add_option("--approx-response", spec.approx_response,
                 "Allow the MWU adversary to be this suboptimal");
  app.add_option("--out", spec.out_dir, "Directory for certificate.json / trace.csv");

  CLI::App* cmp = app.add_subcommand("compare", "Run several solvers on one game");
  std::string cmp_game;
  std::vector<std::string> cmp_solvers;
  double cmp_epsilon = 0.1;
  int cmp_rounds = 0;
  std::uint64_t cmp_seed = 0;
  cmp->add_option("--game", cmp_game, "Game description (JSON file)")->required();
  cmp->add_option("--solver", cmp_solvers,
                  "Solver entries, e.g. omd:euclidean omd:entropy mwu lp (repeatable)")
      ->required()
      ->expected(-1);
  cmp->add_option("--epsilon", cmp_epsilon, "Target duality gap for every run");
  cmp->add_option("--rounds", cmp_rounds, "Round budget override for every run");
  cmp->add_option("--seed", cmp_seed, "RNG seed for stochastic runs");

  CLI11_PARSE(app, argc, argv);

  if (cmp->parsed()) {
    std::vector<polygame::RunSpec> specs;
    for (const std::string& entry : cmp_solvers) {
      polygame::RunSpec s;
      s.game_path = cmp_game;
      s.epsilon = cmp_epsilon;
      s.rounds = cmp_rounds;
      s.seed = cmp_seed;
      const std::size_t colon = entry.find(':');
      s.solver = entry.substr(0, colon == std::string::npos ? entry.size() : colon);
      if (colon != std::string::npos) s.map = entry.substr(colon + 1);
      specs.push_back(std::move(s));
    }
    return polygame::compare_specs(specs, std::cout);
  }

  if (spec.game_path.empty() || spec.solver.empty()) {
    std::cerr << "usage: provide --game FILE and --solver {omd,mwu,sne,lp} "
                 "(or the compare subcommand)\n";
    return 1;
  }
  const polygame::RunOutcome outcome = polygame::run_spec(spec);
  if (outcome.exit_code == 1) {
    std::cerr << "error: " << outcome.message << "\n";
  } else {
    std::cout << outcome.message << "\n";
    if (spec.out_dir.empty() && !outcome.certificate_json.empty()) {
      std::cout << outcome.certificate_json;
    }
    if (spec.out_dir.empty() && !outcome.extra_json.empty()) {
      std::cout << outcome.extra_json;
    }
  }
  return outcome.exit_code;
}
