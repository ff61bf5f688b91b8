#ifndef ORLICZ_RUNNER_HPP
#define ORLICZ_RUNNER_HPP

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "orlicz/boundary.hpp"
#include "orlicz/nfunction.hpp"

namespace orlicz {

struct BoundarySpec {
  std::string family = "identity";
  double alpha = 0.5;   // power exponent
  double beta = 1.0;    // log-singular exponent
  std::uint64_t seed = 7;
  int knots = 16;       // random piecewise-linear
  int level = 8;        // cantor approximant
  double ratio = 0.3;
  std::string csv_path;
};

struct NFunctionSpec {
  std::string family = "power";
  double p = 2.0;
  double a = 1.0;  // power_log only
};

BoundaryHomeo make_boundary(const BoundarySpec& spec);
NFunction make_nfunction(const NFunctionSpec& spec);

struct RunConfig {
  BoundarySpec boundary;
  NFunctionSpec phi;
  NFunctionSpec psi;
  int depth = 10;
  int exclusion_level = 0;        // 0: follow depth
  std::size_t grid = 0;           // 0: quadrature default
  std::size_t poisson_nodes = 4096;
  std::size_t maximal_grid = 256;
  double t0 = 0.0;
  double window_factor = 3.0;
  int probe_levels = 6;           // only-if probes cover n <= this
  std::string output_dir = "reports";
  std::uint64_t seed = 7;
  bool svg = false;
  std::vector<BoundarySpec> corpus;       // empty: built-in four families
  std::vector<NFunctionSpec> nf_corpus;   // empty: built-in three N-functions
};

// Parses the JSON config text; unknown families or ill-typed values are
// configuration errors.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

std::vector<BoundarySpec> builtin_corpus();
std::vector<NFunctionSpec> builtin_nf_corpus();

// Subcommand drivers write reports under config.output_dir and return the
// process exit status: 0 on success, 1 when a named invariant check fails.
int run_douglas(const RunConfig& config, std::ostream& log);
int run_extend(const RunConfig& config, std::ostream& log);
int run_energy(const RunConfig& config, std::ostream& log);
int run_verify(const RunConfig& config, std::ostream& log);
int run_corpus(const RunConfig& config, std::ostream& log);
int run_subcommand(const std::string& name, const RunConfig& config, std::ostream& log);

}  // namespace orlicz

#endif
