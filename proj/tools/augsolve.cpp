// augsolve: solve an under- or overdetermined system by block augmentation.
//
//   augsolve A.mtx --rhs b.vec --mode under --blocks 3 --augment pairwise --out report.json
//
// Exit codes: 0 ok, 1 input/output, 2 certificate or configuration failure,
// 3 rank failure.

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <iostream>
#include <map>

#include "augblock/pipeline.hpp"

int main(int argc, char** argv) {
  using namespace augblock;

  CLI::App app{"Block-augmented solver for full rank under- and overdetermined systems"};
  SolveConfig config;
  std::string matrix;
  std::string rhs;
  std::string output;
  std::string solution;
  std::string mode;
  std::string augment = "sign-alternating";
  std::string reorder = "none";

  const std::map<std::string, SolveMode> modes{{"under", SolveMode::under},
                                               {"over", SolveMode::over}};
  const std::map<std::string, AugmentStrategy> strategies{
      {"sign-alternating", AugmentStrategy::sign_alternating},
      {"pairwise", AugmentStrategy::pairwise}};
  const std::map<std::string, Reorder> reorders{{"none", Reorder::none}, {"rcm", Reorder::rcm}};

  app.add_option("matrix", matrix, "Matrix Market file")->required();
  app.add_option("--rhs", rhs, "Right-hand side, one value per line")->required();
  app.add_option("--mode", mode, "under | over")
      ->required()
      ->check(CLI::IsMember(modes, CLI::ignore_case));
  app.add_option("--blocks", config.blocks, "Number of blocks p")
      ->default_val(2)
      ->check(CLI::PositiveNumber);
  app.add_option("--augment", augment, "sign-alternating | pairwise")
      ->check(CLI::IsMember(strategies, CLI::ignore_case));
  app.add_option("--reorder", reorder, "none | rcm")
      ->check(CLI::IsMember(reorders, CLI::ignore_case));
  app.add_option("--tol-ortho", config.tol.ortho, "Orthogonality tolerance")
      ->default_val(config.tol.ortho);
  app.add_option("--tol-sol", config.tol.sol, "Solution certificate tolerance")
      ->default_val(config.tol.sol);
  app.add_option("--tol-rank", config.tol.rank, "Relative rank tolerance")
      ->default_val(config.tol.rank);
  app.add_flag("--compare-oracle", config.compare_oracle, "Report the gap to a dense SVD solve");
  app.add_option("--out", output, "Report file (JSON); stdout when omitted");
  app.add_option("--solution", solution, "Write x, one value per line");
  app.add_option("--threads", config.threads, "Worker threads, 0 for all cores")->default_val(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code::io;
  }

  for (std::string* s : {&mode, &augment, &reorder})
    std::transform(s->begin(), s->end(), s->begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  config.mode = modes.at(mode);
  config.augment = strategies.at(augment);
  config.reorder = reorders.at(reorder);
  config.matrix = matrix;
  config.rhs = rhs;
  config.output = output;
  config.solution = solution;

  const SolveReport report = run(config);
  if (output.empty()) std::cout << to_json(report);
  if (report.exit_code != exit_code::ok)
    std::cerr << "augsolve: " << report.status << ": " << report.message << '\n';
  return report.exit_code;
}
