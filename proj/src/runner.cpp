#include "orlicz/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "orlicz/analysis.hpp"
#include "orlicz/douglas.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/extension.hpp"
#include "orlicz/io.hpp"

namespace orlicz {

BoundaryHomeo make_boundary(const BoundarySpec& spec) {
  if (spec.family == "identity") return BoundaryHomeo::identity();
  if (spec.family == "power") return BoundaryHomeo::power(spec.alpha);
  if (spec.family == "log_singular") return BoundaryHomeo::log_singular(spec.beta);
  if (spec.family == "random_pl")
    return BoundaryHomeo::random_piecewise_linear(spec.seed, spec.knots);
  if (spec.family == "cantor") return BoundaryHomeo::cantor_approximant(spec.level, spec.ratio);
  if (spec.family == "csv") return BoundaryHomeo::from_csv(spec.csv_path);
  throw config_error("unknown boundary family: " + spec.family);
}

NFunction make_nfunction(const NFunctionSpec& spec) {
  if (spec.family == "power") return NFunction::power(spec.p);
  if (spec.family == "power_log") return NFunction::power_log(spec.p, spec.a);
  if (spec.family == "exp_residual") return NFunction::exp_residual();
  throw config_error("unknown N-function family: " + spec.family);
}

std::vector<BoundarySpec> builtin_corpus() {
  std::vector<BoundarySpec> out(4);
  out[0].family = "identity";
  out[1].family = "power";
  out[1].alpha = 0.5;
  out[2].family = "power";
  out[2].alpha = 0.1;
  out[3].family = "random_pl";
  out[3].seed = 7;
  out[3].knots = 16;
  return out;
}

std::vector<NFunctionSpec> builtin_nf_corpus() {
  std::vector<NFunctionSpec> out(3);
  out[0] = {"power", 2.0, 1.0};
  out[1] = {"power", 3.0, 1.0};
  out[2] = {"power_log", 2.0, 1.0};
  return out;
}

namespace {

BoundarySpec parse_boundary(const nlohmann::json& j, std::uint64_t default_seed) {
  if (!j.is_object()) throw config_error("config: boundary spec must be an object");
  BoundarySpec s;
  s.seed = default_seed;
  s.family = j.value("family", s.family);
  s.alpha = j.value("alpha", s.alpha);
  s.beta = j.value("beta", s.beta);
  s.seed = j.value("seed", s.seed);
  s.knots = j.value("knots", s.knots);
  s.level = j.value("level", s.level);
  s.ratio = j.value("ratio", s.ratio);
  s.csv_path = j.value("csv", s.csv_path);
  return s;
}

NFunctionSpec parse_nf(const nlohmann::json& j) {
  if (!j.is_object()) throw config_error("config: N-function spec must be an object");
  NFunctionSpec s;
  s.family = j.value("family", s.family);
  s.p = j.value("p", s.p);
  s.a = j.value("a", s.a);
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config: root must be a JSON object");

  RunConfig c;
  try {
    c.seed = j.value("seed", c.seed);
    c.boundary.seed = c.seed;
    if (j.contains("boundary")) c.boundary = parse_boundary(j.at("boundary"), c.seed);
    if (j.contains("phi")) c.phi = parse_nf(j.at("phi"));
    c.psi = j.contains("psi") ? parse_nf(j.at("psi")) : c.phi;
    c.depth = j.value("depth", c.depth);
    if (j.contains("quadrature")) {
      const auto& q = j.at("quadrature");
      if (!q.is_object()) throw config_error("config: quadrature must be an object");
      c.exclusion_level = q.value("exclusion_level", c.exclusion_level);
      c.grid = q.value("grid", c.grid);
      c.poisson_nodes = q.value("poisson_nodes", c.poisson_nodes);
      c.maximal_grid = q.value("maximal_grid", c.maximal_grid);
      c.t0 = q.value("t0", c.t0);
      c.window_factor = q.value("window_factor", c.window_factor);
      c.probe_levels = q.value("probe_levels", c.probe_levels);
    }
    c.output_dir = j.value("output_dir", c.output_dir);
    c.svg = j.value("svg", c.svg);
    if (j.contains("corpus")) {
      if (!j.at("corpus").is_array()) throw config_error("config: corpus must be an array");
      for (const auto& e : j.at("corpus")) c.corpus.push_back(parse_boundary(e, c.seed));
    }
    if (j.contains("nf_corpus")) {
      if (!j.at("nf_corpus").is_array()) throw config_error("config: nf_corpus must be an array");
      for (const auto& e : j.at("nf_corpus")) c.nf_corpus.push_back(parse_nf(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config type error: ") + e.what());
  }
  if (c.depth < 1 || c.depth > 20) throw config_error("config: depth must be in [1, 20]");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw config_error("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

namespace {

std::filesystem::path out_path(const RunConfig& config, const std::string& name) {
  return std::filesystem::path(config.output_dir) / name;
}

// Trend verdicts need bands past any pre-asymptotic hump, so the default
// exclusion runs four levels past the discrete depth (within reason).
int effective_exclusion(const RunConfig& config) {
  if (config.exclusion_level != 0) return config.exclusion_level;
  return std::min(config.depth + 4, std::max(config.depth, 18));
}

}  // namespace

int run_douglas(const RunConfig& config, std::ostream& log) {
  const BoundaryHomeo bh = make_boundary(config.boundary);
  const NFunction phi = make_nfunction(config.phi);
  const QuadratureSpec quad{effective_exclusion(config), static_cast<int>(config.grid)};
  const EquivalenceReport eq = equivalence_report(bh, phi, config.depth, quad);

  io::write_text_file(out_path(config, "douglas.csv"), io::douglas_csv(eq.discrete));
  nlohmann::json j = {{"boundary", bh.label()},
                      {"nfunction", phi.label()},
                      {"depth", config.depth},
                      {"report", io::to_json(eq)}};
  io::write_text_file(out_path(config, "douglas.json"), io::dump_json(j));
  log << "douglas: " << bh.label() << " under " << phi.label() << ": discrete "
      << to_string(eq.discrete.verdict) << ", continuous " << to_string(eq.continuous.verdict)
      << (eq.verdicts_agree ? " (agree)" : " (disagree)") << "\n";
  return 0;
}

int run_extend(const RunConfig& config, std::ostream& log) {
  const BoundaryHomeo bh = make_boundary(config.boundary);
  const ExtensionMesh mesh = build_extension_mesh(bh, config.depth);
  const MeshAudit audit = homeo_audit(mesh);

  io::write_text_file(out_path(config, "mesh.json"), io::dump_json(io::mesh_to_json(mesh)));
  io::write_text_file(out_path(config, "audit.json"), io::dump_json(io::to_json(audit)));
  if (config.svg) {
    io::write_text_file(out_path(config, "mesh_domain.svg"), io::mesh_svg(mesh, false));
    io::write_text_file(out_path(config, "mesh_image.svg"), io::mesh_svg(mesh, true));
  }
  log << "extend: " << bh.label() << " depth " << config.depth << ": "
      << mesh.triangle_count() << " triangles, min jacobian " << audit.min_jacobian << "\n";
  if (!audit.pass()) {
    if (!audit.jacobians_positive) log << "FAILED homeo_audit.jacobians_positive\n";
    if (!audit.interfaces_match) log << "FAILED homeo_audit.interfaces_match\n";
    if (!audit.boundary_gap_bounded) log << "FAILED homeo_audit.boundary_gap_bounded\n";
    return 1;
  }
  return 0;
}

int run_energy(const RunConfig& config, std::ostream& log) {
  const BoundaryHomeo bh = make_boundary(config.boundary);
  const NFunction phi = make_nfunction(config.phi);
  const NFunction psi = make_nfunction(config.psi);
  const ExtensionMesh mesh = build_extension_mesh(bh, config.depth);
  const EnergyReport fwd = orlicz_energy(mesh, phi, Direction::forward, config.depth);
  const EnergyReport inv = orlicz_energy(mesh, psi, Direction::inverse, config.depth);

  io::write_text_file(out_path(config, "energy.csv"), io::energy_csv(fwd, inv));
  nlohmann::json j = {{"boundary", bh.label()},
                      {"phi", phi.label()},
                      {"psi", psi.label()},
                      {"depth", config.depth},
                      {"forward", io::to_json(fwd)},
                      {"inverse", io::to_json(inv)}};
  io::write_text_file(out_path(config, "energy.json"), io::dump_json(j));
  log << "energy: " << bh.label() << ": forward " << to_string(fwd.verdict) << " ("
      << fwd.total() << "), inverse " << to_string(inv.verdict) << " (" << inv.total() << ")\n";
  return 0;
}

int run_verify(const RunConfig& config, std::ostream& log) {
  const BoundaryHomeo bh = make_boundary(config.boundary);
  const NFunction phi = make_nfunction(config.phi);
  const NFunction psi = make_nfunction(config.psi);

  int failures = 0;
  const auto check = [&](bool ok, const char* name) {
    log << (ok ? "ok      " : "FAILED  ") << name << "\n";
    if (!ok) ++failures;
  };

  nlohmann::json report;
  report["boundary"] = bh.label();
  report["phi"] = phi.label();
  report["psi"] = psi.label();
  report["depth"] = config.depth;

  const GrowthReport gphi = growth_report(phi, default_growth_exponent(phi));
  const GrowthReport gpsi = growth_report(psi, default_growth_exponent(psi));
  report["phi_growth"] = io::to_json(gphi);
  report["psi_growth"] = io::to_json(gpsi);
  check(gphi.doubling_ok, "phi doubling");
  check(gpsi.doubling_ok, "psi doubling");

  if (gphi.doubling_ok && gpsi.doubling_ok) {
    const ExperimentVerdict tv = theorem_experiment(bh, phi, psi, config.depth);
    report["theorem"] = io::to_json(tv);
    check(tv.inconclusive || tv.consistent, "theorem verdict consistency");
  } else {
    report["theorem"] = "skipped: doubling precondition fails";
  }

  if (gphi.doubling_ok && gphi.tail_verdict == Trend::converging) {
    const CorollaryReport cr = corollary_experiment(bh, phi, config.depth);
    report["corollary"] = io::to_json(cr);
    check(cr.pass, "corollary convergence");
  } else {
    report["corollary"] = "skipped: tail integral of phi/t^3 does not converge";
  }

  const ExtensionMesh mesh = build_extension_mesh(bh, config.depth);
  const MeshAudit audit = homeo_audit(mesh);
  report["audit"] = io::to_json(audit);
  check(audit.pass(), "homeo_audit");

  double worst_domination = 0.0;
  bool domination_ok = true;
  for (int n = 1; n <= config.depth; ++n) {
    const DominationRow row = level_domination(mesh.table, phi, n);
    if (row.rhs > 0.0 && std::isfinite(row.rhs))
      worst_domination = std::max(worst_domination, row.lhs / row.rhs);
    if (row.lhs > row.rhs * (1.0 + 1e-12)) domination_ok = false;
  }
  report["level_domination_worst_ratio"] = worst_domination;
  check(domination_ok, "superadditive level domination");

  int violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  nlohmann::json probe_rows = nlohmann::json::array();
  const int max_probe = std::min(config.probe_levels, config.depth - 1);
  for (int n = 1; n <= max_probe; ++n) {
    double level_min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= (std::size_t{1} << n); ++k) {
      const WindowProbe p = onlyif_probe(mesh, mesh.table, n, k, config.window_factor);
      if (p.lhs > p.rhs) ++violations;
      level_min_slack = std::min(level_min_slack, p.slack());
    }
    min_slack = std::min(min_slack, level_min_slack);
    probe_rows.push_back({{"level", n}, {"min_slack", level_min_slack}});
  }
  report["window_probes"] = {{"factor", config.window_factor},
                             {"levels", max_probe},
                             {"violations", violations},
                             {"min_slack", min_slack},
                             {"per_level", probe_rows}};
  check(violations == 0, "window lower bound");

  if (gphi.doubling_ok && gphi.ainc_ok) {
    const GridField field = sample_differential_field(mesh, config.maximal_grid);
    const GridField mf = maximal_transform(field);
    bool dominates = true;
    for (std::size_t c = 0; c < field.values.size(); ++c)
      if (mf.values[c] < field.values[c]) dominates = false;
    check(dominates, "maximal transform dominates the field");
    const MaximalBound mb =
        maximal_inequality_test(field, phi, default_growth_exponent(phi), config.t0);
    report["maximal"] = io::to_json(mb);
    report["maximal"]["grid"] = config.maximal_grid;
    check(std::isfinite(mb.ratio), "maximal modular bound finite");
  } else {
    report["maximal"] = "skipped: growth preconditions fail";
  }

  double poisson_err = 0.0;
  const BoundaryHomeo id = BoundaryHomeo::identity();
  for (int i = 0; i < 16; ++i) {
    const double theta = 2.0 * 3.14159265358979323846 * i / 16.0;
    for (double r : {0.5, 0.9}) {
      const Vec2 z = poisson_extension(id, r, theta, {config.poisson_nodes});
      poisson_err = std::max(poisson_err, std::hypot(z.x - r * std::cos(theta),
                                                     z.y - r * std::sin(theta)));
    }
  }
  report["poisson_identity_error"] = poisson_err;
  check(poisson_err <= 1e-6, "poisson kernel identity reproduction");

  io::write_text_file(out_path(config, "verify.json"), io::dump_json(report));
  log << (failures == 0 ? "verify: all checks passed\n" : "verify: checks failed\n");
  return failures == 0 ? 0 : 1;
}

int run_corpus(const RunConfig& config, std::ostream& log) {
  const auto bspecs = config.corpus.empty() ? builtin_corpus() : config.corpus;
  const auto nspecs = config.nf_corpus.empty() ? builtin_nf_corpus() : config.nf_corpus;
  const int cont_level = effective_exclusion(config);

  std::string csv =
      "boundary,nfunction,douglas_fwd,douglas_inv,continuous,energy_fwd,energy_inv,"
      "verdicts_agree,audit_pass\n";
  nlohmann::json cells = nlohmann::json::array();

  for (const auto& bspec : bspecs) {
    const BoundaryHomeo bh = make_boundary(bspec);
    const BoundaryHomeo bh_inv = bh.inverted();
    const DyadicImageTable table = image_lengths(bh, config.depth);
    const DyadicImageTable table_inv = image_lengths(bh_inv, config.depth);
    const ExtensionMesh mesh = build_extension_mesh(bh, config.depth);
    const MeshAudit audit = homeo_audit(mesh);

    for (const auto& nspec : nspecs) {
      const NFunction nf = make_nfunction(nspec);
      const DouglasReport dd = discrete_douglas(table, nf, config.depth);
      const DouglasReport di = discrete_douglas(table_inv, nf, config.depth);
      const ContinuousDouglasReport cont =
          continuous_douglas(bh, nf, QuadratureSpec{cont_level, static_cast<int>(config.grid)});
      const EnergyReport ef = orlicz_energy(mesh, nf, Direction::forward, config.depth);
      const EnergyReport ei = orlicz_energy(mesh, nf, Direction::inverse, config.depth);
      const bool agree = dd.verdict == cont.verdict;

      const std::string stem = bh.slug() + "__" + nf.slug();
      io::write_text_file(out_path(config, stem + "_douglas.csv"), io::douglas_csv(dd));
      io::write_text_file(out_path(config, stem + "_energy.csv"), io::energy_csv(ef, ei));

      csv += bh.slug() + "," + nf.slug() + "," + to_string(dd.verdict) + "," +
             to_string(di.verdict) + "," + to_string(cont.verdict) + "," +
             to_string(ef.verdict) + "," + to_string(ei.verdict) + "," +
             (agree ? "yes" : "no") + "," + (audit.pass() ? "yes" : "no") + "\n";
      cells.push_back({{"boundary", bh.label()},
                       {"nfunction", nf.label()},
                       {"douglas_fwd", to_string(dd.verdict)},
                       {"douglas_inv", to_string(di.verdict)},
                       {"continuous", to_string(cont.verdict)},
                       {"energy_fwd", to_string(ef.verdict)},
                       {"energy_inv", to_string(ei.verdict)},
                       {"douglas_total", dd.cumulative.back()},
                       {"energy_fwd_total", ef.total()},
                       {"energy_inv_total", ei.total()},
                       {"verdicts_agree", agree},
                       {"audit_pass", audit.pass()}});
      log << "corpus: " << bh.slug() << " x " << nf.slug() << " done\n";
    }
  }

  io::write_text_file(out_path(config, "corpus_summary.csv"), csv);
  nlohmann::json j = {{"depth", config.depth},
                      {"seed", config.seed},
                      {"continuous_exclusion_level", cont_level},
                      {"cells", cells}};
  io::write_text_file(out_path(config, "corpus_summary.json"), io::dump_json(j));
  return 0;
}

int run_subcommand(const std::string& name, const RunConfig& config, std::ostream& log) {
  if (name == "douglas") return run_douglas(config, log);
  if (name == "extend") return run_extend(config, log);
  if (name == "energy") return run_energy(config, log);
  if (name == "verify") return run_verify(config, log);
  if (name == "corpus") return run_corpus(config, log);
  throw config_error("unknown subcommand: " + name);
}

}  // namespace orlicz
