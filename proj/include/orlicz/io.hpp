#ifndef ORLICZ_IO_HPP
#define ORLICZ_IO_HPP

#include <filesystem>
#include <string>

#include "json.hpp"
#include "orlicz/analysis.hpp"
#include "orlicz/douglas.hpp"
#include "orlicz/extension.hpp"
#include "orlicz/nfunction.hpp"

namespace orlicz::io {

// Shortest exact decimal form; reports must be byte-identical across runs.
std::string format_double(double v);

std::string douglas_csv(const DouglasReport& report);
std::string energy_csv(const EnergyReport& fwd, const EnergyReport& inv);

nlohmann::json to_json(const DouglasReport& report);
nlohmann::json to_json(const ContinuousDouglasReport& report);
nlohmann::json to_json(const EquivalenceReport& report);
nlohmann::json to_json(const GrowthReport& report);  // flat object
nlohmann::json to_json(const TailIntegral& tail);
nlohmann::json to_json(const MeshAudit& audit);
nlohmann::json to_json(const ExperimentVerdict& verdict);
nlohmann::json to_json(const CorollaryReport& report);
nlohmann::json to_json(const WindowProbe& probe);
nlohmann::json to_json(const MaximalBound& bound);
nlohmann::json to_json(const EnergyReport& report);
nlohmann::json mesh_to_json(const ExtensionMesh& mesh);

// One unit square per side; strips colored by log10 of the stretch.
// Strips beyond level 11 are omitted to keep files reviewable.
std::string mesh_svg(const ExtensionMesh& mesh, bool image_side);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string dump_json(const nlohmann::json& j);

}  // namespace orlicz::io

#endif
