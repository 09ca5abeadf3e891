#include "evoq/harness/runner.hpp"

#include "evoq/dqn/policy_io.hpp"
#include "evoq/harness/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace evoq::harness {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string hash_hex(std::uint64_t h) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::ofstream open_csv(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot open output file " + file.string());
    return out;
}

void write_seed_list(std::ofstream& out, const std::vector<std::uint64_t>& seeds) {
    for (std::size_t i = 0; i < seeds.size(); ++i) out << (i ? "," : "") << seeds[i];
}

/// Runs fn(i) for i in [0, count) on up to `workers` threads.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    const int n_threads = std::max(1, std::min<int>(workers, static_cast<int>(count)));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

RunRecord record_from(const apc::EpisodeResult& episode, std::uint64_t seed) {
    RunRecord r;
    r.seed = seed;
    r.total_return = episode.total_return;
    r.hv = episode.trace.per_generation_hv;
    r.max_hv = episode.trace.max_hv();
    r.rewards = episode.trace.per_generation_hv;
    r.actions = episode.actions;
    r.stagnation = episode.stagnation;
    return r;
}

void write_trace(const std::filesystem::path& file, const ExperimentConfig& config,
                 const RunRecord& run) {
    auto out = open_csv(file);
    out << "# config_hash=" << hash_hex(config.hash()) << " seed=" << run.seed << "\n";
    out << "episode,generation,action_index,reward,hv,stagnation\n";
    for (std::size_t g = 0; g < run.hv.size(); ++g) {
        out << run.seed << "," << (g + 1) << "," << run.actions[g] << "," << fmt(run.rewards[g])
            << "," << fmt(run.hv[g]) << "," << run.stagnation[g] << "\n";
    }
}

void write_reports(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const EvalOutcome& outcome) {
    const std::string mode = mode_name(outcome.mode);

    auto per_gen = open_csv(dir / ("per_generation_" + mode + ".csv"));
    per_gen << "# config_hash=" << hash_hex(config.hash()) << " seeds=";
    write_seed_list(per_gen, config.seeds);
    per_gen << "\n";
    per_gen << "mode,generation,hv_mean,hv_std,runs\n";
    const std::size_t generations = outcome.runs.empty() ? 0 : outcome.runs[0].hv.size();
    for (std::size_t g = 0; g < generations; ++g) {
        std::vector<double> column;
        for (const auto& run : outcome.runs) column.push_back(run.hv[g]);
        per_gen << mode << "," << (g + 1) << "," << fmt(mean(column)) << ","
                << fmt(sample_stddev(column)) << "," << column.size() << "\n";
    }

    auto summary = open_csv(dir / ("summary_" + mode + ".csv"));
    summary << "# config_hash=" << hash_hex(config.hash()) << " seeds=";
    write_seed_list(summary, config.seeds);
    summary << "\n";
    summary << "mode,seed,max_hv,total_return\n";
    for (const auto& run : outcome.runs)
        summary << mode << "," << run.seed << "," << fmt(run.max_hv) << ","
                << fmt(run.total_return) << "\n";
}

EvalOutcome run_mode(const ExperimentConfig& config, Mode mode,
                     const std::filesystem::path& out_dir) {
    const ProblemSpec problem = config.build_problem();

    apc::Policy policy;
    if (mode == Mode::eval_trained) {
        auto params = dqn::load_policy(config.policy_path);
        policy = dqn::greedy_policy(std::move(params));
    } else if (mode == Mode::eval_random) {
        policy = apc::random_policy();
    }

    EvalOutcome outcome;
    outcome.mode = mode;
    outcome.runs.resize(config.seeds.size());
    parallel_for(config.seeds.size(), config.workers, [&](std::size_t i) {
        apc::EpisodeConfig ep = config.episode;
        ep.problem = config.problem;
        ep.seed = config.seeds[i];
        const auto episode = mode == Mode::eval_fixed
                                 ? apc::run_fixed_episode(problem, ep)
                                 : apc::run_episode(policy, problem, ep);
        outcome.runs[i] = record_from(episode, ep.seed);
    });
    std::sort(outcome.runs.begin(), outcome.runs.end(),
              [](const RunRecord& a, const RunRecord& b) { return a.seed < b.seed; });

    std::filesystem::create_directories(out_dir);
    for (const auto& run : outcome.runs) {
        write_trace(out_dir / ("trace_" + mode_name(mode) + "_seed" + std::to_string(run.seed) +
                               ".csv"),
                    config, run);
    }
    write_reports(out_dir, config, outcome);
    return outcome;
}

} // namespace

std::vector<double> EvalOutcome::max_hvs() const {
    std::vector<double> out;
    for (const auto& r : runs) out.push_back(r.max_hv);
    return out;
}

std::vector<double> EvalOutcome::returns() const {
    std::vector<double> out;
    for (const auto& r : runs) out.push_back(r.total_return);
    return out;
}

TrainOutcome cmd_train(const ExperimentConfig& config) {
    config.validate();
    if (config.mode != Mode::train)
        throw std::invalid_argument("cmd_train: config mode must be 'train'");
    const ProblemSpec problem = config.build_problem();

    apc::EpisodeConfig ep = config.episode;
    ep.problem = config.problem;
    const auto result =
        dqn::train_agent(problem, ep, config.agent, config.episodes, config.seeds.front());

    std::filesystem::create_directories(config.out_dir);
    TrainOutcome out;
    out.policy_file =
        config.policy_path.empty() ? config.out_dir / "policy.txt" : config.policy_path;
    dqn::save_policy(result.params, out.policy_file);

    out.curve_file = config.out_dir / "learning_curve.csv";
    auto csv = open_csv(out.curve_file);
    csv << "# config_hash=" << hash_hex(config.hash()) << " seed=" << config.seeds.front() << "\n";
    csv << "episode,return,epsilon,loss_mean\n";
    for (const auto& stats : result.curve)
        csv << stats.episode << "," << fmt(stats.total_return) << "," << fmt(stats.epsilon) << ","
            << fmt(stats.mean_loss) << "\n";
    out.curve = result.curve;
    return out;
}

EvalOutcome cmd_eval(const ExperimentConfig& config) {
    config.validate();
    if (config.mode == Mode::train)
        throw std::invalid_argument("cmd_eval: config mode must be one of eval-*");
    return run_mode(config, config.mode, config.out_dir);
}

PolicyAnalysis cmd_policy_analyze(const ExperimentConfig& config) {
    config.validate();
    if (config.policy_path.empty())
        throw std::invalid_argument("cmd_policy_analyze: needs a policy path");
    const ProblemSpec problem = config.build_problem();
    auto params = dqn::load_policy(config.policy_path);
    auto policy = dqn::greedy_policy(std::move(params));

    const auto generations = static_cast<std::size_t>(config.episode.generations);
    std::vector<std::vector<double>> counts(generations,
                                            std::vector<double>(apc::kActionCount, 0.0));
    std::vector<apc::EpisodeResult> episodes(config.seeds.size());
    parallel_for(config.seeds.size(), config.workers, [&](std::size_t i) {
        apc::EpisodeConfig ep = config.episode;
        ep.problem = config.problem;
        ep.seed = config.seeds[i];
        episodes[i] = apc::run_episode(policy, problem, ep);
    });
    for (const auto& episode : episodes)
        for (std::size_t g = 0; g < episode.actions.size(); ++g)
            counts[g][static_cast<std::size_t>(episode.actions[g])] += 1.0;

    PolicyAnalysis analysis;
    analysis.fractions = std::move(counts);
    const double k = static_cast<double>(config.seeds.size());
    for (auto& row : analysis.fractions)
        for (auto& v : row) v /= k;

    std::filesystem::create_directories(config.out_dir);
    analysis.csv_file = config.out_dir / "policy_actions.csv";
    auto csv = open_csv(analysis.csv_file);
    csv << "# config_hash=" << hash_hex(config.hash()) << " seeds=";
    write_seed_list(csv, config.seeds);
    csv << "\n";
    csv << "generation";
    for (int a = 0; a < apc::kActionCount; ++a) csv << ",action_" << a;
    csv << "\n";
    for (std::size_t g = 0; g < analysis.fractions.size(); ++g) {
        csv << (g + 1);
        for (double v : analysis.fractions[g]) csv << "," << fmt(v);
        csv << "\n";
    }
    return analysis;
}

SensitivityOutcome cmd_sensitivity(const ExperimentConfig& config) {
    config.validate();
    if (config.problem != "wdcp-lite")
        throw std::invalid_argument("cmd_sensitivity: problem must be wdcp-lite");
    if (config.policy_path.empty())
        throw std::invalid_argument("cmd_sensitivity: needs a policy path");

    SensitivityOutcome outcome;
    for (auto kind : {wdcp::VariantKind::heavy_inbound, wdcp::VariantKind::irregular_arrivals,
                      wdcp::VariantKind::double_portfolio}) {
        ExperimentConfig variant_config = config;
        variant_config.variant = kind;
        const auto dir = config.out_dir / wdcp::variant_name(kind);

        VariantComparison comparison;
        comparison.variant = wdcp::variant_name(kind);
        variant_config.mode = Mode::eval_trained;
        comparison.trained = run_mode(variant_config, Mode::eval_trained, dir);
        variant_config.mode = Mode::eval_fixed;
        comparison.fixed = run_mode(variant_config, Mode::eval_fixed, dir);
        outcome.variants.push_back(std::move(comparison));
    }

    std::filesystem::create_directories(config.out_dir);
    outcome.report_file = config.out_dir / "sensitivity_report.csv";
    auto csv = open_csv(outcome.report_file);
    csv << "# config_hash=" << hash_hex(config.hash()) << " seeds=";
    write_seed_list(csv, config.seeds);
    csv << "\n";
    csv << "variant,mode,runs,median_max_hv,mean_max_hv,std_max_hv\n";
    for (const auto& comparison : outcome.variants) {
        for (const auto* outcome_ptr : {&comparison.trained, &comparison.fixed}) {
            const auto values = outcome_ptr->max_hvs();
            csv << comparison.variant << "," << mode_name(outcome_ptr->mode) << ","
                << values.size() << "," << fmt(median(values)) << "," << fmt(mean(values)) << ","
                << fmt(sample_stddev(values)) << "\n";
        }
    }
    return outcome;
}

} // namespace evoq::harness
