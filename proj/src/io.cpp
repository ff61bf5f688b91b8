#include "orlicz/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>

#include "orlicz/errors.hpp"

namespace orlicz::io {

std::string format_double(double v) {
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

nlohmann::json trend_json(Trend t) { return to_string(t); }

void append_row(std::string& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out += ',';
    out += c;
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string douglas_csv(const DouglasReport& report) {
  std::string out = "level,per_level,cumulative\n";
  for (std::size_t i = 0; i < report.per_level.size(); ++i)
    append_row(out, {std::to_string(i + 1), format_double(report.per_level[i]),
                     format_double(report.cumulative[i])});
  return out;
}

std::string energy_csv(const EnergyReport& fwd, const EnergyReport& inv) {
  if (fwd.depth != inv.depth || fwd.direction != Direction::forward ||
      inv.direction != Direction::inverse)
    throw data_error("energy_csv: reports must be a forward/inverse pair of equal depth");
  std::string out =
      "strip,fwd_term,fwd_cumulative,inv_term,inv_cumulative,min_jacobian,max_group_excess\n";
  for (int n = 0; n < fwd.depth; ++n) {
    const auto i = static_cast<std::size_t>(n);
    append_row(out, {std::to_string(n), format_double(fwd.strip_terms[i]),
                     format_double(fwd.cumulative[i]), format_double(inv.strip_terms[i]),
                     format_double(inv.cumulative[i]), format_double(fwd.min_jacobian[i]),
                     format_double(fwd.max_group_excess[i])});
  }
  return out;
}

nlohmann::json to_json(const DouglasReport& report) {
  return {{"depth", report.depth},
          {"per_level", report.per_level},
          {"cumulative", report.cumulative},
          {"verdict", trend_json(report.verdict)}};
}

nlohmann::json to_json(const ContinuousDouglasReport& report) {
  return {{"exclusion_level", report.exclusion_level},
          {"grid", report.grid},
          {"far_field", report.far_field},
          {"band_terms", report.band_terms},
          {"estimates", report.estimates},
          {"verdict", trend_json(report.verdict)}};
}

nlohmann::json to_json(const EquivalenceReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"level", r.level},
                    {"discrete_cumulative", r.discrete_cumulative},
                    {"continuous_estimate", r.continuous_estimate},
                    {"ratio", r.ratio}});
  return {{"discrete", to_json(report.discrete)},
          {"continuous", to_json(report.continuous)},
          {"rows", rows},
          {"verdicts_agree", report.verdicts_agree}};
}

nlohmann::json to_json(const GrowthReport& report) {
  return {{"doubling_constant", report.doubling_constant},
          {"doubling_ok", report.doubling_ok},
          {"ainc_constant", report.ainc_constant},
          {"ainc_exponent", report.ainc_exponent},
          {"ainc_threshold", report.ainc_threshold},
          {"ainc_ok", report.ainc_ok},
          {"tail_value", report.tail_value},
          {"tail_verdict", trend_json(report.tail_verdict)},
          {"tail_discrete_value", report.tail_discrete_value},
          {"tail_discrete_verdict", trend_json(report.tail_discrete_verdict)},
          {"tail_octaves", report.tail_octaves}};
}

nlohmann::json to_json(const TailIntegral& tail) {
  return {{"value", tail.value},
          {"verdict", trend_json(tail.verdict)},
          {"octave_terms", tail.octave_terms},
          {"discrete_value", tail.discrete_value},
          {"discrete_verdict", trend_json(tail.discrete_verdict)},
          {"discrete_terms", tail.discrete_terms}};
}

nlohmann::json to_json(const MeshAudit& audit) {
  return {{"min_jacobian", audit.min_jacobian},
          {"max_interface_mismatch", audit.max_interface_mismatch},
          {"max_vertex_residual", audit.max_vertex_residual},
          {"boundary_gap", audit.boundary_gap},
          {"max_group_image_length", audit.max_group_image_length},
          {"jacobians_positive", audit.jacobians_positive},
          {"interfaces_match", audit.interfaces_match},
          {"boundary_gap_bounded", audit.boundary_gap_bounded},
          {"boundary_gap_tail_monotone", audit.boundary_gap_tail_monotone},
          {"pass", audit.pass()}};
}

namespace {

nlohmann::json ainc_json(const AincCheck& c) {
  return {{"constant", c.constant},
          {"exponent", c.exponent},
          {"threshold", c.threshold},
          {"fails", c.fails}};
}

}  // namespace

nlohmann::json to_json(const ExperimentVerdict& verdict) {
  return {{"douglas_fwd", trend_json(verdict.douglas_fwd)},
          {"douglas_inv", trend_json(verdict.douglas_inv)},
          {"energy_fwd", trend_json(verdict.energy_fwd)},
          {"energy_inv", trend_json(verdict.energy_inv)},
          {"inconclusive", verdict.inconclusive},
          {"consistent", verdict.consistent},
          {"coupling_fwd", verdict.coupling_fwd},
          {"coupling_inv", verdict.coupling_inv},
          {"ainc_fwd", ainc_json(verdict.ainc_fwd)},
          {"ainc_inv", ainc_json(verdict.ainc_inv)}};
}

nlohmann::json to_json(const CorollaryReport& report) {
  return {{"tail_value", report.tail_value},
          {"tail_verdict", trend_json(report.tail_verdict)},
          {"douglas_fwd", trend_json(report.douglas_fwd)},
          {"douglas_inv", trend_json(report.douglas_inv)},
          {"energy_fwd", trend_json(report.energy_fwd)},
          {"energy_inv", trend_json(report.energy_inv)},
          {"pass", report.pass}};
}

nlohmann::json to_json(const WindowProbe& probe) {
  return {{"lhs", probe.lhs},
          {"rhs", probe.rhs},
          {"slack", probe.slack()},
          {"window", {probe.window.xlo, probe.window.xhi, probe.window.ylo, probe.window.yhi}}};
}

nlohmann::json to_json(const MaximalBound& bound) {
  return {{"lhs", bound.lhs}, {"rhs", bound.rhs}, {"ratio", bound.ratio}};
}

nlohmann::json to_json(const EnergyReport& report) {
  return {{"direction", report.direction == Direction::forward ? "forward" : "inverse"},
          {"depth", report.depth},
          {"strip_terms", report.strip_terms},
          {"cumulative", report.cumulative},
          {"verdict", trend_json(report.verdict)},
          {"surrogate_terms", report.surrogate_terms},
          {"surrogate_ratio", report.surrogate_ratio},
          {"min_jacobian", report.min_jacobian},
          {"max_group_excess", report.max_group_excess}};
}

nlohmann::json mesh_to_json(const ExtensionMesh& mesh) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& part : mesh.partitions)
    levels.push_back({{"level", part.level},
                      {"group_bounds", part.group_bounds},
                      {"image_lengths", part.image_lengths},
                      {"image_breaks", part.image_breaks},
                      {"remainder_merged", part.remainder_merged}});

  // Vertex lists stay reviewable: strips beyond level 12 are summarized by
  // count only.
  constexpr int kMaxExportedStrip = 12;
  nlohmann::json strips = nlohmann::json::array();
  for (const auto& strip : mesh.strips) {
    if (!strip.empty() && strip.front().strip > kMaxExportedStrip) break;
    nlohmann::json tris = nlohmann::json::array();
    for (const TriangleMap& t : strip) {
      nlohmann::json dom = nlohmann::json::array(), img = nlohmann::json::array();
      for (int i = 0; i < 3; ++i) {
        dom.push_back({t.domain_vertices[static_cast<std::size_t>(i)].x,
                       t.domain_vertices[static_cast<std::size_t>(i)].y});
        img.push_back({t.image_vertices[static_cast<std::size_t>(i)].x,
                       t.image_vertices[static_cast<std::size_t>(i)].y});
      }
      tris.push_back({{"quad", t.quad},
                      {"corner", t.corner},
                      {"domain", dom},
                      {"image", img},
                      {"sigma1", t.sigma1},
                      {"sigma2", t.sigma2},
                      {"jacobian", t.jacobian}});
    }
    strips.push_back(tris);
  }

  return {{"depth", mesh.depth},
          {"boundary", mesh.boundary.label()},
          {"triangle_count", mesh.triangle_count()},
          {"strips_exported", strips.size()},
          {"levels", levels},
          {"strips", strips}};
}

namespace {

void svg_color(double sigma1, char* buf, std::size_t len) {
  // log10 stretch mapped onto a blue-white-red ramp.
  const double v = std::clamp(std::log10(std::max(sigma1, 1e-12)), -1.5, 1.5) / 1.5;
  const double t = std::abs(v);
  const int r = v >= 0.0 ? 255 : static_cast<int>(std::lround(255.0 * (1.0 - t) + 33.0 * t));
  const int g = static_cast<int>(std::lround(255.0 * (1.0 - t) + 60.0 * t));
  const int b = v >= 0.0 ? static_cast<int>(std::lround(255.0 * (1.0 - t) + 43.0 * t)) : 255;
  std::snprintf(buf, len, "#%02x%02x%02x", r, g, b);
}

}  // namespace

std::string mesh_svg(const ExtensionMesh& mesh, bool image_side) {
  constexpr int kMaxStrip = 11;
  constexpr double kScale = 960.0, kMargin = 20.0;
  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n"
      "<rect width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n";
  char buf[256], color[16];
  for (const auto& strip : mesh.strips) {
    if (!strip.empty() && strip.front().strip > kMaxStrip) break;
    for (const TriangleMap& t : strip) {
      const auto& v = image_side ? t.image_vertices : t.domain_vertices;
      svg_color(t.sigma1, color, sizeof(color));
      std::snprintf(buf, sizeof(buf),
                    "<polygon points=\"%.4f,%.4f %.4f,%.4f %.4f,%.4f\" fill=\"%s\" "
                    "stroke=\"#00000030\" stroke-width=\"0.3\"/>\n",
                    kMargin + kScale * v[0].x, kMargin + kScale * (1.0 - v[0].y),
                    kMargin + kScale * v[1].x, kMargin + kScale * (1.0 - v[1].y),
                    kMargin + kScale * v[2].x, kMargin + kScale * (1.0 - v[2].y), color);
      out += buf;
    }
  }
  out += "</svg>\n";
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw data_error("cannot open for writing: " + path.string());
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw data_error("write failed: " + path.string());
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace orlicz::io
