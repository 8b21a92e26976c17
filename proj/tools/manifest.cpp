#include "manifest.hpp"

#include "erto/error.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <memory>

namespace erto::cli {

std::string
sha256_hex(std::string_view data)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
    {
        throw Error("sha256: digest failed");
    }
    std::string hex;
    for (unsigned int i = 0; i < len; ++i)
    {
        hex += fmt::format("{:02x}", digest[i]);
    }
    return hex;
}

nlohmann::json
make_manifest(const ExperimentConfig& config, const std::vector<SweepRow>& rows)
{
    const std::string yaml = to_yaml(config);
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& row : rows)
    {
        // Algorithms share a seed; list each (scenario, replication) once.
        if (row.algorithm != config.algorithms.front())
        {
            continue;
        }
        cells.push_back({{"scenario_id", row.scenario_id},
                         {"n_nodes", row.n_nodes},
                         {"n_cbr", row.n_cbr},
                         {"replication", row.replication},
                         {"seed", row.seed}});
    }
    return {{"tool_version", ERTO_VERSION},
            {"config_hash", "sha256:" + sha256_hex(yaml)},
            {"base_seed", config.seed},
            {"cell_seeds", cells},
            {"config", yaml}};
}

ExperimentConfig
config_from_manifest(const nlohmann::json& manifest)
{
    if (!manifest.contains("config") || !manifest["config"].is_string())
    {
        throw ConfigError("config", "manifest has no embedded config");
    }
    const auto yaml = manifest["config"].get<std::string>();
    if (manifest.contains("config_hash") && manifest["config_hash"] != "sha256:" + sha256_hex(yaml))
    {
        throw ConfigError("config_hash", "does not match the embedded config");
    }
    return parse_config(yaml);
}

} // namespace erto::cli
