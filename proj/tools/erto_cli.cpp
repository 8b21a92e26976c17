#include "manifest.hpp"

#include "erto/config.hpp"
#include "erto/error.hpp"
#include "erto/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;

namespace {

void
write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
    {
        throw erto::Error("cannot write " + path.string());
    }
}

struct RunOptions
{
    std::string config;
    std::string manifest;
    std::string out;
    bool trace{false};
    std::optional<std::uint64_t> seed;
    int workers{1};
};

int
run_command(const RunOptions& opt)
{
    using namespace erto;
    ExperimentConfig cfg;
    if (!opt.manifest.empty())
    {
        std::ifstream in(opt.manifest);
        if (!in)
        {
            throw Error("cannot read manifest " + opt.manifest);
        }
        cfg = cli::config_from_manifest(nlohmann::json::parse(in));
    }
    else
    {
        cfg = load_config(opt.config);
    }
    if (opt.seed)
    {
        cfg.seed = *opt.seed;
    }
    if (!opt.out.empty())
    {
        cfg.output_dir = opt.out;
    }
    cfg.trace = cfg.trace || opt.trace;
    cfg.validate();

    const auto start = std::chrono::steady_clock::now();
    const auto rows = sweep(cfg.sweep_spec(), opt.workers, cfg.trace);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    write_file(dir / "metrics.csv", metrics_csv(rows));
    write_file(dir / "summary.csv", summary_csv(rows));
    write_file(dir / "manifest.json", cli::make_manifest(cfg, rows).dump(2) + "\n");
    if (cfg.trace)
    {
        for (const auto& row : rows)
        {
            const auto name = fmt::format("trace_s{}_{}_r{}.csv", row.scenario_id, to_string(row.algorithm), row.replication);
            write_file(dir / name, trace_csv(row.trace));
        }
    }
    fmt::print("{} runs in {:.1f} s, written to {}\n", rows.size(), elapsed, dir.string());
    return 0;
}

int
verify_command(const std::string& suite, std::uint64_t seed)
{
    bool ok = true;
    for (const auto& report : erto::run_suite(suite, seed))
    {
        for (const auto& c : report.checks)
        {
            if (!c.passed)
            {
                fmt::print("  FAIL {}: {:.4g} (tolerance {:.4g})\n", c.name, c.measured, c.tolerance);
            }
        }
        fmt::print("{:<10} {} {} checks, worst measured/tolerance {:.3f}, {:.1f} s\n",
                   report.suite,
                   report.passed() ? "PASS" : "FAIL",
                   report.checks.size(),
                   report.worst_ratio(),
                   report.seconds);
        ok = ok && report.passed();
    }
    return ok ? 0 : 1;
}

} // namespace

int
main(int argc, char** argv)
{
    CLI::App app{"Energy-aware opportunistic routing simulator"};
    app.set_version_flag("--version", std::string(ERTO_VERSION));
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Run the configured sweep and write CSV, traces and a manifest");
    auto* config_opt = run_cmd->add_option("--config", run.config, "YAML experiment config")->check(CLI::ExistingFile);
    auto* manifest_opt =
        run_cmd->add_option("--manifest", run.manifest, "Rerun the config stored in a manifest.json")->check(CLI::ExistingFile);
    config_opt->excludes(manifest_opt);
    run_cmd->add_option("--out", run.out, "Output directory (overrides output.dir)");
    run_cmd->add_flag("--trace", run.trace, "Write one event trace per run");
    run_cmd->add_option("--seed", run.seed, "Base seed (overrides sweep.seed)");
    run_cmd->add_option("--workers", run.workers, "Worker threads")->check(CLI::Range(1, 256));

    std::string suite;
    std::uint64_t verify_seed = 1;
    auto* verify_cmd = app.add_subcommand("verify", "Check the models against their sampling and brute-force oracles");
    verify_cmd->add_option("--suite", suite, "linkmodel, area, degree, energy, pareto or all")
        ->required()
        ->check(CLI::IsMember(erto::suite_names()));
    verify_cmd->add_option("--seed", verify_seed, "Oracle seed");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run_cmd)
        {
            if (run.config.empty() && run.manifest.empty())
            {
                throw CLI::RequiredError("--config or --manifest");
            }
            return run_command(run);
        }
        return verify_command(suite, verify_seed);
    }
    catch (const CLI::Error& e)
    {
        return app.exit(e);
    }
    catch (const std::exception& e)
    {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
}
