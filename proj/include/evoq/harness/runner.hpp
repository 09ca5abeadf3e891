#pragma once

#include "evoq/harness/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace evoq::harness {

/// One evaluated optimization run.
struct RunRecord {
    std::uint64_t seed = 0;
    double total_return = 0.0;
    double max_hv = 0.0;
    std::vector<double> hv;       // per generation
    std::vector<double> rewards;  // equal to hv per step
    std::vector<int> actions;     // -1 throughout for the fixed baseline
    std::vector<int> stagnation;
};

struct EvalOutcome {
    Mode mode = Mode::eval_fixed;
    std::vector<RunRecord> runs; // sorted by seed

    std::vector<double> max_hvs() const;
    std::vector<double> returns() const;
};

struct TrainOutcome {
    std::filesystem::path policy_file;
    std::filesystem::path curve_file;
    std::vector<dqn::EpisodeStats> curve;
};

struct PolicyAnalysis {
    std::vector<std::vector<double>> fractions; // [generation][action], rows sum to 1
    std::filesystem::path csv_file;
};

struct VariantComparison {
    std::string variant;
    EvalOutcome trained;
    EvalOutcome fixed;
};

struct SensitivityOutcome {
    std::vector<VariantComparison> variants;
    std::filesystem::path report_file;
};

/// Trains the agent on the configured problem, persists the policy file
/// and the learning-curve CSV (episode, return, epsilon, loss_mean).
TrainOutcome cmd_train(const ExperimentConfig& config);

/// Runs one seeded episode per configured seed under the mode's policy
/// source, writing per-run trace CSVs plus per-generation and summary
/// reports. Seeds run concurrently up to config.workers; outputs are
/// byte-identical regardless of the worker count.
EvalOutcome cmd_eval(const ExperimentConfig& config);

/// K seeded greedy episodes; emits the generation x action selection-
/// fraction matrix.
PolicyAnalysis cmd_policy_analyze(const ExperimentConfig& config);

/// eval-trained and eval-fixed across the three scenario variants.
SensitivityOutcome cmd_sensitivity(const ExperimentConfig& config);

} // namespace evoq::harness
