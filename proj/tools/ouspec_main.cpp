#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ouspec/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gaussian principal frequency laboratory for convex polygons"};
  app.require_subcommand(1, 1);

  std::string config;
  std::string out;
  const char* commands[][2] = {
      {"solve", "First eigenpair, heatmap and summary for body 'main'"},
      {"concavity", "Hessian profile of w = -ln u on the margin set"},
      {"bm-sweep", "Brunn-Minkowski gaps for bodies 'k0' and 'k1'"},
      {"translate-probe", "Gap curve for body 'main' and its translate by 'shift'"},
      {"monotonicity", "Eigenvalues of nested bodies 'inner' and 'outer'"},
      {"convergence", "Refinement study over h_list"},
      {"oracle-interval", "Shooting oracle on (-a, a)"},
      {"oracle-disk", "Radial shooting oracle on the disk of radius R"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "Run configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory (overrides 'out' in the config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ouspec::kExitInvalidInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return ouspec::run(command, config, out.empty() ? std::nullopt : std::optional<std::string>(out));
}
