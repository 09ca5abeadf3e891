#include <doctest.h>

#include "evoq/harness/config.hpp"
#include "evoq/harness/runner.hpp"
#include "evoq/harness/stats.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace evoq;
using namespace evoq::harness;

namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "evoq_harness" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& file) {
    std::ifstream in(file);
    REQUIRE(in.good());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

ExperimentConfig tiny_eval_config(const fs::path& out, Mode mode) {
    ExperimentConfig config;
    config.problem = "dtlz2";
    config.episode.generations = 8;
    config.episode.population_size = 8;
    config.mode = mode;
    config.seeds = {1, 2, 3};
    config.out_dir = out;
    return config;
}

} // namespace

TEST_CASE("summary statistics") {
    CHECK(mean({1, 2, 3}) == doctest::Approx(2.0));
    CHECK(median({5, 1, 3}) == doctest::Approx(3.0));
    CHECK(median({4, 1, 3, 2}) == doctest::Approx(2.5));
    CHECK(sample_stddev({2, 4}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(sample_stddev({7}) == 0.0);
    CHECK_THROWS_AS(mean({}), std::invalid_argument);
}

TEST_CASE("rank test separates shifted samples and not identical ones") {
    // clearly shifted: all of xs above all of ys
    CHECK(mann_whitney_p_greater({3, 4, 5, 6, 7}, {0, 1, 2, 2.5, 2.9}) < 0.01);
    // the reverse direction has no evidence
    CHECK(mann_whitney_p_greater({0, 1, 2, 2.5, 2.9}, {3, 4, 5, 6, 7}) > 0.99);
    // fully tied samples sit near 1/2
    const double p_tied = mann_whitney_p_greater({1, 1, 1, 1}, {1, 1, 1, 1});
    CHECK(p_tied >= 0.45);
    CHECK(p_tied <= 1.0);

    // hand-computed normal approximation: U=6, mu=3, var=3, continuity 0.5
    const double p = mann_whitney_p_greater({3, 4, 5}, {1, 2});
    const double z = (6.0 - 3.0 - 0.5) / std::sqrt(3.0);
    CHECK(p == doctest::Approx(0.5 * std::erfc(z / std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("config file loading, overrides, and hashing") {
    const auto dir = fresh_dir("config");
    const auto file = dir / "experiment.json";
    std::ofstream out(file);
    out << R"({
        "problem": "dtlz2",
        "generations": 50,
        "population": 16,
        "mode": "eval-random",
        "seeds": {"start": 10, "count": 4},
        "agent": {"lr": 0.002, "hidden": [32, 32]},
        "out_dir": ")" << (dir / "runs").string() << R"("
    })";
    out.close();

    auto config = ExperimentConfig::from_file(file);
    CHECK(config.episode.generations == 50);
    CHECK(config.episode.population_size == 16);
    CHECK(config.mode == Mode::eval_random);
    CHECK(config.seeds == std::vector<std::uint64_t>{10, 11, 12, 13});
    CHECK(config.agent.learning_rate == doctest::Approx(0.002));
    CHECK(config.agent.hidden == std::vector<std::size_t>{32, 32});
    config.validate();

    const auto h1 = config.hash();
    CHECK(h1 == ExperimentConfig::from_file(file).hash());
    config.seeds.push_back(99);
    CHECK(config.hash() != h1);

    CHECK_THROWS_AS(ExperimentConfig::from_file(dir / "missing.json"), std::runtime_error);
    CHECK_THROWS_AS(parse_mode("evaluate"), std::invalid_argument);

    ExperimentConfig bad;
    bad.mode = Mode::eval_trained; // no policy path
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("training command writes policy and curve deterministically") {
    const auto dir = fresh_dir("train");
    ExperimentConfig config;
    config.mode = Mode::train;
    config.episodes = 10;
    config.episode.generations = 6;
    config.episode.population_size = 8;
    config.agent.hidden = {8, 8};
    config.agent.warmup_transitions = 16;
    config.agent.batch_size = 8;
    config.seeds = {7};
    config.out_dir = dir / "a";

    auto outcome = cmd_train(config);
    CHECK(fs::exists(outcome.policy_file));
    CHECK(outcome.curve.size() == 10);

    // curve rows: header comment + column header + 10 rows
    const auto curve_text = slurp(outcome.curve_file);
    CHECK(std::count(curve_text.begin(), curve_text.end(), '\n') == 12);
    CHECK(curve_text.find("# config_hash=") == 0);

    config.out_dir = dir / "b";
    auto again = cmd_train(config);
    CHECK(slurp(outcome.policy_file) == slurp(again.policy_file));
}

TEST_CASE("eval-fixed never touches the agent and reruns byte-identically") {
    const auto dir = fresh_dir("fixed");
    auto config = tiny_eval_config(dir / "x", Mode::eval_fixed);
    auto outcome = cmd_eval(config);
    REQUIRE(outcome.runs.size() == 3);
    for (const auto& run : outcome.runs)
        for (int a : run.actions) CHECK(a == -1); // action log absent throughout

    const auto trace = slurp(dir / "x" / "trace_eval-fixed_seed1.csv");
    CHECK(trace.find(",-1,") != std::string::npos);

    // identical bytes on rerun, and independent of the worker count
    config.out_dir = dir / "y";
    config.workers = 3;
    cmd_eval(config);
    for (const char* name :
         {"trace_eval-fixed_seed1.csv", "per_generation_eval-fixed.csv",
          "summary_eval-fixed.csv"}) {
        CHECK(slurp(dir / "x" / name) == slurp(dir / "y" / name));
    }
}

TEST_CASE("eval-random draws actions uniformly across runs") {
    const auto dir = fresh_dir("random");
    ExperimentConfig config = tiny_eval_config(dir, Mode::eval_random);
    config.episode.generations = 50;
    config.seeds.clear();
    for (std::uint64_t s = 1; s <= 40; ++s) config.seeds.push_back(s);

    auto outcome = cmd_eval(config);
    std::array<double, apc::kActionCount> counts{};
    double total = 0;
    for (const auto& run : outcome.runs)
        for (int a : run.actions) {
            REQUIRE(a >= 0);
            ++counts[static_cast<std::size_t>(a)];
            ++total;
        }
    const double expected = total / apc::kActionCount;
    const double sigma = std::sqrt(total * (1.0 / 15) * (14.0 / 15));
    for (double c : counts) CHECK(std::abs(c - expected) <= 3.0 * sigma);
}

TEST_CASE("trained policy evaluates on the warehouse problem unmodified") {
    const auto dir = fresh_dir("transfer");

    ExperimentConfig train_config;
    train_config.mode = Mode::train;
    train_config.problem = "dtlz2";
    train_config.episodes = 5;
    train_config.episode.generations = 6;
    train_config.episode.population_size = 8;
    train_config.agent.hidden = {8, 8};
    train_config.agent.warmup_transitions = 16;
    train_config.agent.batch_size = 8;
    train_config.seeds = {1};
    train_config.out_dir = dir;
    const auto trained = cmd_train(train_config);

    ExperimentConfig eval_config;
    eval_config.problem = "wdcp-lite";
    eval_config.mode = Mode::eval_trained;
    eval_config.policy_path = trained.policy_file;
    eval_config.episode.generations = 5;
    eval_config.episode.population_size = 8;
    eval_config.seeds = {1, 2};
    eval_config.out_dir = dir / "wdcp";
    auto outcome = cmd_eval(eval_config);
    REQUIRE(outcome.runs.size() == 2);
    for (const auto& run : outcome.runs) {
        CHECK(run.hv.size() == 5);
        for (int a : run.actions) CHECK(a >= 0); // agent actually drove the run
    }
}

TEST_CASE("policy analysis rows are distributions") {
    const auto dir = fresh_dir("analysis");

    ExperimentConfig train_config;
    train_config.mode = Mode::train;
    train_config.episodes = 3;
    train_config.episode.generations = 5;
    train_config.episode.population_size = 8;
    train_config.agent.hidden = {8};
    train_config.agent.warmup_transitions = 8;
    train_config.agent.batch_size = 8;
    train_config.seeds = {5};
    train_config.out_dir = dir;
    const auto trained = cmd_train(train_config);

    ExperimentConfig config;
    config.mode = Mode::eval_trained;
    config.policy_path = trained.policy_file;
    config.episode.generations = 5;
    config.episode.population_size = 8;
    config.seeds = {1, 2, 3, 4};
    config.out_dir = dir / "analysis";
    auto analysis = cmd_policy_analyze(config);
    REQUIRE(analysis.fractions.size() == 5);
    for (const auto& row : analysis.fractions) {
        double sum = 0;
        for (double v : row) sum += v;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }

    // K = 1: every row is one-hot
    config.seeds = {9};
    config.out_dir = dir / "single";
    auto single = cmd_policy_analyze(config);
    for (const auto& row : single.fractions) {
        int ones = 0, zeros = 0;
        for (double v : row) {
            if (v == 1.0) ++ones;
            if (v == 0.0) ++zeros;
        }
        CHECK(ones == 1);
        CHECK(zeros == apc::kActionCount - 1);
    }
}

TEST_CASE("sensitivity runs trained and fixed across all three variants") {
    const auto dir = fresh_dir("sensitivity");

    ExperimentConfig train_config;
    train_config.mode = Mode::train;
    train_config.episodes = 3;
    train_config.episode.generations = 4;
    train_config.episode.population_size = 8;
    train_config.agent.hidden = {8};
    train_config.agent.warmup_transitions = 8;
    train_config.agent.batch_size = 8;
    train_config.seeds = {5};
    train_config.out_dir = dir;
    const auto trained = cmd_train(train_config);

    ExperimentConfig config;
    config.problem = "wdcp-lite";
    config.mode = Mode::eval_trained;
    config.policy_path = trained.policy_file;
    config.episode.generations = 4;
    config.episode.population_size = 8;
    config.seeds = {1, 2};
    config.workers = 2;
    config.out_dir = dir / "out";
    auto outcome = cmd_sensitivity(config);

    REQUIRE(outcome.variants.size() == 3);
    CHECK(outcome.variants[0].variant == "heavy_inbound");
    CHECK(outcome.variants[1].variant == "irregular_arrivals");
    CHECK(outcome.variants[2].variant == "double_portfolio");
    for (const auto& comparison : outcome.variants) {
        CHECK(comparison.trained.mode == Mode::eval_trained);
        CHECK(comparison.fixed.mode == Mode::eval_fixed);
        CHECK(comparison.trained.runs.size() == 2);
        CHECK(comparison.fixed.runs.size() == 2);
    }
    CHECK(fs::exists(outcome.report_file));
    const auto report = slurp(outcome.report_file);
    CHECK(report.find("heavy_inbound,eval-trained") != std::string::npos);
    CHECK(report.find("heavy_inbound,eval-fixed") != std::string::npos);
}
