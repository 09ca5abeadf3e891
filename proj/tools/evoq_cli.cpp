#include "evoq/harness/config.hpp"
#include "evoq/harness/runner.hpp"
#include "evoq/harness/stats.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using evoq::harness::ExperimentConfig;

struct CommonFlags {
    std::string config_file;
    std::vector<std::uint64_t> seeds;
    int episodes = -1;
    std::string out_dir;
    std::string policy;
    std::string mode;
    std::string problem;
    std::string scenario;
    std::string variant;
    int workers = -1;
    int generations = -1;
    int population = -1;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("-c,--config", flags.config_file, "experiment definition (JSON)");
    cmd->add_option("--seed,--seeds", flags.seeds, "override the seed list");
    cmd->add_option("--episodes", flags.episodes, "override the training episode budget");
    cmd->add_option("--out", flags.out_dir, "override the output directory");
    cmd->add_option("--policy", flags.policy, "override the policy file path");
    cmd->add_option("--problem", flags.problem, "dtlz1 | dtlz2 | wdcp-lite");
    cmd->add_option("--scenario", flags.scenario, "warehouse scenario file (JSON)");
    cmd->add_option("--variant", flags.variant,
                    "heavy_inbound | irregular_arrivals | double_portfolio");
    cmd->add_option("--workers", flags.workers, "concurrent seeded runs");
    cmd->add_option("--generations", flags.generations, "generations per episode");
    cmd->add_option("--population", flags.population, "population size");
}

ExperimentConfig resolve(const CommonFlags& flags, const std::string& default_mode) {
    ExperimentConfig config = flags.config_file.empty()
                                  ? ExperimentConfig{}
                                  : ExperimentConfig::from_file(flags.config_file);
    config.mode = evoq::harness::parse_mode(flags.mode.empty() ? default_mode : flags.mode);
    if (!flags.seeds.empty()) config.seeds = flags.seeds;
    if (flags.episodes >= 0) config.episodes = flags.episodes;
    if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
    if (!flags.policy.empty()) config.policy_path = flags.policy;
    if (!flags.problem.empty()) config.problem = flags.problem;
    if (!flags.scenario.empty()) config.scenario_path = flags.scenario;
    if (!flags.variant.empty()) {
        if (flags.variant == "heavy_inbound")
            config.variant = evoq::wdcp::VariantKind::heavy_inbound;
        else if (flags.variant == "irregular_arrivals")
            config.variant = evoq::wdcp::VariantKind::irregular_arrivals;
        else if (flags.variant == "double_portfolio")
            config.variant = evoq::wdcp::VariantKind::double_portfolio;
        else
            throw std::invalid_argument("unknown variant '" + flags.variant + "'");
    }
    if (flags.workers > 0) config.workers = flags.workers;
    if (flags.generations > 0) config.episode.generations = flags.generations;
    if (flags.population > 0) config.episode.population_size = flags.population;
    config.validate();
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive mutation control for reference-point evolutionary optimization"};
    app.require_subcommand(1);

    CommonFlags train_flags, eval_flags, analyze_flags, sens_flags;
    auto* train = app.add_subcommand("train", "train the mutation-control agent");
    add_common(train, train_flags);
    auto* eval = app.add_subcommand("eval", "run seeded evaluation episodes");
    eval->add_option("--mode", eval_flags.mode, "eval-trained | eval-random | eval-fixed");
    add_common(eval, eval_flags);
    auto* analyze = app.add_subcommand("policy-analyze", "per-generation action fractions");
    add_common(analyze, analyze_flags);
    auto* sens = app.add_subcommand("sensitivity", "trained vs fixed across scenario variants");
    add_common(sens, sens_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) {
            auto config = resolve(train_flags, "train");
            auto outcome = evoq::harness::cmd_train(config);
            std::cout << "policy written to " << outcome.policy_file.string() << "\n";
            std::cout << "learning curve written to " << outcome.curve_file.string() << "\n";
        } else if (eval->parsed()) {
            auto config = resolve(eval_flags, "eval-fixed");
            auto outcome = evoq::harness::cmd_eval(config);
            const auto values = outcome.max_hvs();
            std::cout << evoq::harness::mode_name(outcome.mode) << ": " << outcome.runs.size()
                      << " runs, median max hv " << evoq::harness::median(values) << ", mean "
                      << evoq::harness::mean(values) << "\n";
            std::cout << "reports written to " << config.out_dir.string() << "\n";
        } else if (analyze->parsed()) {
            auto config = resolve(analyze_flags, "eval-trained");
            auto analysis = evoq::harness::cmd_policy_analyze(config);
            std::cout << "action fractions written to " << analysis.csv_file.string() << "\n";
        } else if (sens->parsed()) {
            auto config = resolve(sens_flags, "eval-trained");
            config.problem = "wdcp-lite";
            auto outcome = evoq::harness::cmd_sensitivity(config);
            for (const auto& comparison : outcome.variants) {
                std::cout << comparison.variant << ": trained median "
                          << evoq::harness::median(comparison.trained.max_hvs()) << ", fixed median "
                          << evoq::harness::median(comparison.fixed.max_hvs()) << "\n";
            }
            std::cout << "report written to " << outcome.report_file.string() << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
