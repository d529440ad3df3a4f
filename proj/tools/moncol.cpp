#include <iostream>

#include "CLI11.hpp"
#include "moncol/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Colimits of monads on finite bases"};
  app.require_subcommand(1);
  moncol::RunConfig config;
  std::string format = "text";
  for (const auto& name : moncol::command_names()) {
    auto* sub = app.add_subcommand(name);
    if (name == "counterexample") {
      sub->add_option("spec", config.specs, "Spec files (ignored)");
    } else {
      sub->add_option("spec", config.specs, "Spec file")->required();
    }
    sub->add_option("--budget", config.budget, "Chain and closure budget")->check(CLI::PositiveNumber);
    sub->add_option("--depth", config.depth, "Depth of presented monads");
    sub->add_option("--sizes", config.sizes, "Object sizes to tabulate")->delimiter(',');
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--seed", config.seed, "Seed for sampled equalities");
    sub->callback([&config, name] { config.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : moncol::kExitParseError;
  }
  config.format = format == "structured" ? moncol::OutputFormat::Structured : moncol::OutputFormat::Text;
  const auto result = moncol::run_command(config);
  std::cout << moncol::render(result, config.format);
  return result.exit_code;
}
