#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/runner.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string output_dir;
  int depth = 0;
  bool svg = false;
};

orlicz::RunConfig resolve_config(const CliOptions& opt) {
  orlicz::RunConfig config =
      opt.config_path.empty() ? orlicz::RunConfig{} : orlicz::load_config(opt.config_path);
  if (const char* env = std::getenv("ORLICZ_EXTEND_OUTPUT_DIR"); env != nullptr && *env != '\0')
    config.output_dir = env;
  if (!opt.output_dir.empty()) config.output_dir = opt.output_dir;
  if (opt.depth != 0) {
    if (opt.depth < 1 || opt.depth > 20)
      throw orlicz::config_error("depth must be in [1, 20]");
    config.depth = opt.depth;
  }
  if (opt.svg) config.svg = true;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlicz–Sobolev homeomorphic extension experiments"};
  app.require_subcommand(1);

  CliOptions opt;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", opt.config_path, "JSON config file");
    sub->add_option("-o,--output", opt.output_dir, "report output directory");
    sub->add_option("-d,--depth", opt.depth, "dyadic depth (1..20)");
    return sub;
  };

  add_common(app.add_subcommand("douglas", "discrete and continuous Douglas integrals"));
  add_common(app.add_subcommand("extend", "build and audit the piecewise affine extension"))
      ->add_flag("--svg", opt.svg, "also emit mesh SVG renderings");
  add_common(app.add_subcommand("energy", "forward and inverse Orlicz energies of the extension"));
  add_common(app.add_subcommand("verify", "run the invariant checks and probe suite"));
  add_common(app.add_subcommand("corpus", "sweep the boundary/N-function corpus"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const orlicz::RunConfig config = resolve_config(opt);
    return orlicz::run_subcommand(app.get_subcommands().front()->get_name(), config, std::cout);
  } catch (const orlicz::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const orlicz::data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
