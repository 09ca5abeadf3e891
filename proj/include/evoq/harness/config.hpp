#pragma once

#include "evoq/apc/env.hpp"
#include "evoq/dqn/agent.hpp"
#include "evoq/problems.hpp"
#include "evoq/wdcp/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace evoq::harness {

enum class Mode { train, eval_trained, eval_random, eval_fixed };

Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

/// One experiment definition: problem, episode and agent settings, mode,
/// seed list, output paths. Loadable from a JSON file with flag overrides
/// applied on top; the canonical serialization feeds the config hash
/// every output CSV carries.
struct ExperimentConfig {
    std::string problem = "dtlz2"; // dtlz1 | dtlz2 | wdcp-lite
    std::size_t n_vars = 12;
    std::size_t n_objectives = 3;

    apc::EpisodeConfig episode;          // per-run generations / population
    dqn::AgentConfig agent;
    Mode mode = Mode::train;
    std::vector<std::uint64_t> seeds = {1};
    int episodes = 1000;                 // training budget
    std::filesystem::path out_dir = "out";
    std::filesystem::path policy_path;
    std::filesystem::path scenario_path; // empty: built-in desk-scale scenario
    std::uint64_t scenario_seed = 1;
    std::optional<wdcp::VariantKind> variant;
    int workers = 1;

    static ExperimentConfig from_file(const std::filesystem::path& file);

    void validate() const;

    /// Effective configuration as canonical JSON (sorted keys, full
    /// precision); identical configs hash identically.
    std::string canonical() const;
    std::uint64_t hash() const; // FNV-1a over canonical()

    /// Builds the problem this config names, applying scenario file,
    /// scenario seed and variant for the simulation-backed problem.
    ProblemSpec build_problem() const;

    /// The scenario the config resolves to (wdcp-lite only).
    wdcp::SimScenario build_scenario() const;
};

std::uint64_t fnv1a(const std::string& text);

} // namespace evoq::harness
