#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lqes/liquidity.hpp"
#include "lqes/montecarlo.hpp"

// Config-driven experiment runner behind the CLI: evaluates a
// (model x alpha x correlation) grid per bucket layout, renders text/csv/json
// reports, and cross-checks the engine against the Monte Carlo oracle.

namespace lqes {

enum class OutputFormat { Text, Csv, Json };

struct BucketGrid {
    std::string name;
    std::vector<int> horizons;
    std::vector<double> rhos;  // one spec per rho (single factor per bucket)
};

struct ExperimentConfig {
    std::vector<GHParams> models;
    std::vector<double> alphas;
    std::vector<BucketGrid> grids;
    InversionSettings inversion;
    OutputFormat format = OutputFormat::Text;
    unsigned threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

// Built-in benchmark preset: the four fitted GH shape parameter sets plus
// the Gaussian reference, alphas {0.95, 0.975, 0.99}, and the two- and
// five-bucket horizon grids with rho in {0, 0.5}.
ExperimentConfig default_experiment_config();

// JSON config file; missing sections fall back to the preset values.
ExperimentConfig load_config(const std::string& path);

struct CellResult {
    std::size_t grid_index = 0;
    std::size_t model_index = 0;
    double alpha = 0.0;
    double rho = 0.0;
    bool ok = false;
    std::string error;
    RiskReport report;
};

struct TableReport {
    ExperimentConfig config;
    std::vector<CellResult> cells;  // deterministic grid order
    bool all_ok() const;
};

// Evaluates every cell on a worker pool; engine failures are captured per
// cell without aborting the rest. Base-law constants are computed once per
// (model, alpha, h1) and shared across cells.
TableReport run_tables(const ExperimentConfig& config);

std::string render_text(const TableReport& report);
std::string render_csv(const TableReport& report);
std::string render_json(const TableReport& report);

// One ad-hoc cell, rendered with the overstatement percentage 1/r - 1.
std::string render_single(const RiskReport& report);

struct McCheckRow {
    std::string model;
    std::string grid;
    double alpha = 0.0;
    double rho = 0.0;
    double fourier_es = 0.0;
    double mc_es = 0.0;
    double std_error = 0.0;
    double z = 0.0;
    std::size_t n_tail = 0;
    bool flagged = false;  // |z| > 3
    std::string error;
};

// Compares the engine ES against the simulation estimate for one cell. The
// generator and the simulated parameters are passed separately so tests can
// feed deliberately inconsistent pairs as a negative control.
McCheckRow mc_check_cell(const CharacteristicGenerator& gen, const GHParams& mc_params,
                         const LiquiditySpec& spec, double alpha, std::size_t paths,
                         std::uint64_t seed, const InversionSettings& cfg = {});

std::vector<McCheckRow> run_mc_check(const ExperimentConfig& config, std::size_t paths,
                                     std::uint64_t seed);

std::string render_mc(const std::vector<McCheckRow>& rows);

}  // namespace lqes
