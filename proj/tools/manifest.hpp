#pragma once

#include "erto/config.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace erto::cli {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Everything needed to reproduce a run directory: the resolved config, its hash and every derived seed.
nlohmann::json make_manifest(const ExperimentConfig& config, const std::vector<SweepRow>& rows);

/// The resolved config stored in a manifest.
ExperimentConfig config_from_manifest(const nlohmann::json& manifest);

} // namespace erto::cli
