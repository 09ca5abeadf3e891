#include "evoq/dqn/policy_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace evoq::dqn {

namespace {

constexpr const char* kMagic = "evoq-policy";
constexpr const char* kFormatVersion = "v1";
constexpr const char* kStateSchema = "state-v1";

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void fail(const std::filesystem::path& file, const std::string& what) {
    throw std::runtime_error("load_policy: " + file.string() + ": " + what);
}

} // namespace

void save_policy(const MLPParams& params, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("save_policy: cannot open " + file.string());

    out << kMagic << " " << kFormatVersion << "\n";
    out << "state-schema " << kStateSchema << "\n";
    out << "activation relu\n";
    out << "layers";
    for (std::size_t s : params.layer_sizes) out << " " << s;
    out << "\n";
    out << "actions " << apc::kActionCount << "\n";

    const auto blocks = params.blocks();
    out << "blocks " << blocks.size() << "\n";
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        out << "block " << b << " " << blocks[b]->size() << "\n";
        for (std::size_t i = 0; i < blocks[b]->size(); ++i) {
            out << format_value((*blocks[b])[i]);
            out << ((i + 1) % 8 == 0 || i + 1 == blocks[b]->size() ? "\n" : " ");
        }
    }
    if (!out) throw std::runtime_error("save_policy: write failed for " + file.string());
}

MLPParams load_policy(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) fail(file, "cannot open");

    std::string magic, version;
    if (!(in >> magic >> version)) fail(file, "missing header");
    if (magic != kMagic) fail(file, "not a policy file (bad magic '" + magic + "')");
    if (version != kFormatVersion) fail(file, "unsupported format version '" + version + "'");

    std::string key, schema;
    if (!(in >> key >> schema) || key != "state-schema") fail(file, "missing state-schema line");
    if (schema != kStateSchema) fail(file, "incompatible state schema '" + schema + "'");

    std::string activation;
    if (!(in >> key >> activation) || key != "activation") fail(file, "missing activation line");
    if (activation != "relu") fail(file, "unsupported activation '" + activation + "'");

    if (!(in >> key) || key != "layers") fail(file, "missing layers line");
    MLPParams params;
    {
        std::string rest;
        std::getline(in, rest);
        std::istringstream ls(rest);
        std::size_t s;
        while (ls >> s) params.layer_sizes.push_back(s);
    }
    if (params.layer_sizes.size() < 2) fail(file, "needs at least input and one layer");
    if (params.layer_sizes.front() != kStateDim) fail(file, "input width does not match the state");

    std::size_t actions = 0;
    if (!(in >> key >> actions) || key != "actions") fail(file, "missing actions line");
    if (actions != apc::kActionCount) fail(file, "action count mismatch");

    std::size_t n_blocks = 0;
    if (!(in >> key >> n_blocks) || key != "blocks") fail(file, "missing blocks line");

    // materialize the expected shapes, then fill in declared order
    const std::size_t n_layers = params.layer_sizes.size() - 1;
    for (std::size_t l = 0; l < n_layers; ++l)
        params.trunk_w.emplace_back(params.layer_sizes[l] * params.layer_sizes[l + 1]);
    for (std::size_t l = 0; l < n_layers; ++l)
        params.trunk_b.emplace_back(params.layer_sizes[l + 1]);
    params.value_w.resize(params.trunk_out());
    params.value_b.resize(1);
    params.adv_w.resize(apc::kActionCount * params.trunk_out());
    params.adv_b.resize(apc::kActionCount);

    auto blocks = params.blocks();
    if (n_blocks != blocks.size()) fail(file, "block count mismatch");
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        std::size_t declared_index = 0, declared_size = 0;
        if (!(in >> key >> declared_index >> declared_size) || key != "block")
            fail(file, "missing block header " + std::to_string(b));
        if (declared_index != b) fail(file, "blocks out of order");
        if (declared_size != blocks[b]->size())
            fail(file, "block " + std::to_string(b) + " size mismatch");
        for (std::size_t i = 0; i < declared_size; ++i)
            if (!(in >> (*blocks[b])[i]))
                fail(file, "truncated in block " + std::to_string(b));
    }
    return params;
}

} // namespace evoq::dqn
