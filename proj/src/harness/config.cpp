#include "evoq/harness/config.hpp"

#include "evoq/wdcp/simulation.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace evoq::harness {

using nlohmann::json;

Mode parse_mode(const std::string& name) {
    if (name == "train") return Mode::train;
    if (name == "eval-trained") return Mode::eval_trained;
    if (name == "eval-random") return Mode::eval_random;
    if (name == "eval-fixed") return Mode::eval_fixed;
    throw std::invalid_argument("unknown mode '" + name +
                                "' (expected train | eval-trained | eval-random | eval-fixed)");
}

std::string mode_name(Mode mode) {
    switch (mode) {
    case Mode::train: return "train";
    case Mode::eval_trained: return "eval-trained";
    case Mode::eval_random: return "eval-random";
    case Mode::eval_fixed: return "eval-fixed";
    }
    return "unknown";
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("config: cannot open " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("config: parse error in " + file.string() + ": " + e.what());
    }

    ExperimentConfig c;
    try {
        c.problem = j.value("problem", c.problem);
        c.n_vars = j.value("n_vars", c.n_vars);
        c.n_objectives = j.value("objectives", c.n_objectives);
        c.episode.generations = j.value("generations", c.episode.generations);
        c.episode.population_size = j.value("population", c.episode.population_size);
        if (j.contains("ref_divisions") && !j["ref_divisions"].is_null())
            c.episode.ref_divisions = j["ref_divisions"].get<std::size_t>();
        if (j.contains("mode")) c.mode = parse_mode(j["mode"].get<std::string>());
        if (j.contains("seeds")) {
            const auto& s = j["seeds"];
            if (s.is_array()) {
                c.seeds = s.get<std::vector<std::uint64_t>>();
            } else {
                const auto start = s.value("start", std::uint64_t{1});
                const auto count = s.at("count").get<std::uint64_t>();
                c.seeds.clear();
                for (std::uint64_t k = 0; k < count; ++k) c.seeds.push_back(start + k);
            }
        }
        c.episodes = j.value("episodes", c.episodes);
        if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
        if (j.contains("policy")) c.policy_path = j["policy"].get<std::string>();
        if (j.contains("scenario")) c.scenario_path = j["scenario"].get<std::string>();
        c.scenario_seed = j.value("scenario_seed", c.scenario_seed);
        if (j.contains("variant") && !j["variant"].is_null()) {
            const auto name = j["variant"].get<std::string>();
            if (name == "heavy_inbound") c.variant = wdcp::VariantKind::heavy_inbound;
            else if (name == "irregular_arrivals") c.variant = wdcp::VariantKind::irregular_arrivals;
            else if (name == "double_portfolio") c.variant = wdcp::VariantKind::double_portfolio;
            else throw std::invalid_argument("config: unknown variant '" + name + "'");
        }
        c.workers = j.value("workers", c.workers);

        if (j.contains("agent")) {
            const auto& a = j["agent"];
            c.agent.gamma = a.value("gamma", c.agent.gamma);
            c.agent.epsilon_start = a.value("eps_start", c.agent.epsilon_start);
            c.agent.epsilon_end = a.value("eps_end", c.agent.epsilon_end);
            c.agent.epsilon_anneal_frac = a.value("anneal_frac", c.agent.epsilon_anneal_frac);
            c.agent.learning_rate = a.value("lr", c.agent.learning_rate);
            c.agent.batch_size = a.value("batch_size", c.agent.batch_size);
            c.agent.buffer_capacity = a.value("buffer", c.agent.buffer_capacity);
            c.agent.warmup_transitions = a.value("warmup", c.agent.warmup_transitions);
            c.agent.target_sync_period = a.value("sync", c.agent.target_sync_period);
            if (a.contains("hidden")) c.agent.hidden = a["hidden"].get<std::vector<std::size_t>>();
            c.agent.double_q = a.value("double_q", c.agent.double_q);
        }
    } catch (const json::exception& e) {
        throw std::runtime_error("config: bad schema in " + file.string() + ": " + e.what());
    }
    return c;
}

void ExperimentConfig::validate() const {
    if (problem != "dtlz1" && problem != "dtlz2" && problem != "wdcp-lite")
        throw std::invalid_argument("config: unknown problem '" + problem + "'");
    if (seeds.empty()) throw std::invalid_argument("config: needs at least one seed");
    if (mode == Mode::eval_trained && policy_path.empty())
        throw std::invalid_argument("config: eval-trained requires a policy path");
    if (mode == Mode::train && episodes < 1)
        throw std::invalid_argument("config: training needs episodes >= 1");
    if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
    agent.validate();
}

std::string ExperimentConfig::canonical() const {
    json j;
    j["problem"] = problem;
    j["n_vars"] = n_vars;
    j["objectives"] = n_objectives;
    j["generations"] = episode.generations;
    j["population"] = episode.population_size;
    if (episode.ref_divisions) j["ref_divisions"] = *episode.ref_divisions;
    j["mode"] = mode_name(mode);
    j["seeds"] = seeds;
    j["episodes"] = episodes;
    j["policy"] = policy_path.string();
    j["scenario"] = scenario_path.string();
    j["scenario_seed"] = scenario_seed;
    if (variant) j["variant"] = wdcp::variant_name(*variant);
    j["agent"] = {{"gamma", agent.gamma},
                  {"eps_start", agent.epsilon_start},
                  {"eps_end", agent.epsilon_end},
                  {"anneal_frac", agent.epsilon_anneal_frac},
                  {"lr", agent.learning_rate},
                  {"batch_size", agent.batch_size},
                  {"buffer", agent.buffer_capacity},
                  {"warmup", agent.warmup_transitions},
                  {"sync", agent.target_sync_period},
                  {"hidden", agent.hidden},
                  {"double_q", agent.double_q}};
    return j.dump();
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a(canonical()); }

wdcp::SimScenario ExperimentConfig::build_scenario() const {
    wdcp::SimScenario scenario = scenario_path.empty()
                                     ? wdcp::default_scenario(scenario_seed)
                                     : wdcp::load_scenario(scenario_path);
    if (variant) scenario = wdcp::scenario_variant(scenario, *variant);
    return scenario;
}

ProblemSpec ExperimentConfig::build_problem() const {
    if (problem == "dtlz1") return make_dtlz1(n_vars, n_objectives);
    if (problem == "dtlz2") return make_dtlz2(n_vars, n_objectives);
    if (problem == "wdcp-lite") return wdcp::make_wdcp_problem(build_scenario());
    throw std::invalid_argument("config: unknown problem '" + problem + "'");
}

} // namespace evoq::harness
