#include "evoq/wdcp/scenario.hpp"

#include "evoq/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace evoq::wdcp {

using nlohmann::json;

namespace {

// rng stream ids for scenario construction and variants
constexpr std::uint64_t kStreamTables = 101;
constexpr std::uint64_t kStreamVariant = 202;

} // namespace

std::size_t SimScenario::inbound_count() const {
    return static_cast<std::size_t>(std::count_if(trucks.begin(), trucks.end(), [](const Truck& t) {
        return t.direction == Truck::Direction::inbound;
    }));
}

std::size_t SimScenario::outbound_count() const {
    return trucks.size() - inbound_count();
}

std::size_t SimScenario::genome_length() const {
    return 4 + 5 + resources.size() + halls.size() * width_classes.size() * height_classes.size();
}

void SimScenario::validate() const {
    if (!(warmup_hours >= 0.0) || !(warmup_hours < horizon_hours))
        throw std::invalid_argument("scenario: warm-up must be non-negative and below the horizon");
    if (docks < 1) throw std::invalid_argument("scenario: needs at least one dock");
    if (halls.empty()) throw std::invalid_argument("scenario: needs at least one hall");
    if (resources.empty()) throw std::invalid_argument("scenario: needs at least one resource type");
    if (products.empty()) throw std::invalid_argument("scenario: needs a product catalog");
    if (width_classes.empty() || height_classes.empty())
        throw std::invalid_argument("scenario: needs width and height classes");
    if (width_access_min.size() != width_classes.size() ||
        height_access_min.size() != height_classes.size())
        throw std::invalid_argument("scenario: access-time tables must match class tables");
    if (!std::is_sorted(width_classes.begin(), width_classes.end()) ||
        !std::is_sorted(height_classes.begin(), height_classes.end()))
        throw std::invalid_argument("scenario: class dimensions must ascend");
    for (const auto& r : resources) {
        if (r.z_min < 0 || r.z_max < r.z_min)
            throw std::invalid_argument("scenario: resource count range invalid");
        if (!(r.speed_factor > 0.0))
            throw std::invalid_argument("scenario: resource speed must be positive");
    }
    for (const auto& h : halls) {
        if (h.capacity < 1) throw std::invalid_argument("scenario: hall capacity must be positive");
        if (!(h.travel_min >= 0.0)) throw std::invalid_argument("scenario: hall travel negative");
    }
    for (const auto& p : products) {
        if (p.affinity_hall < 0 || p.affinity_hall >= static_cast<int>(halls.size()))
            throw std::invalid_argument("scenario: product affinity hall out of range");
        if (!(p.width > 0.0) || !(p.height > 0.0))
            throw std::invalid_argument("scenario: product dimensions must be positive");
    }
    for (const auto& t : trucks) {
        if (t.arrival_min < 0.0 || t.arrival_min > horizon_minutes())
            throw std::invalid_argument("scenario: truck arrival outside the horizon");
        for (int id : t.manifest)
            if (id < 0 || id >= static_cast<int>(products.size()))
                throw std::invalid_argument("scenario: manifest references unknown product");
    }
}

SimScenario default_scenario(std::uint64_t seed) {
    SimScenario s;
    s.seed = seed;
    s.horizon_hours = 48.0;
    s.warmup_hours = 8.0;
    s.docks = 2;
    s.handling_min = 2.0;

    s.width_classes = {0.8, 1.0, 1.2};
    s.height_classes = {1.0, 1.8};
    s.width_access_min = {0.0, 0.5, 1.0};
    s.height_access_min = {0.0, 0.8};

    s.halls = {Hall{4.0, 36}, Hall{8.0, 24}};
    s.resources = {
        ResourceType{"agv", 6.0, 1.4, 0, 4},
        ResourceType{"forklift", 10.0, 1.0, 0, 4},
        ResourceType{"reach_truck", 18.0, 0.8, 0, 4},
    };

    Rng rng(mix_seed(seed, kStreamTables));
    for (int i = 0; i < 8; ++i) {
        Product p;
        p.name = "p" + std::to_string(i);
        p.width = 0.6 + 0.6 * rng.uniform();  // every base product fits the largest class
        p.height = 0.8 + 1.0 * rng.uniform();
        p.affinity_hall = i % 2;
        s.products.push_back(std::move(p));
    }

    const int n_inbound = 12;
    const int n_outbound = 8;
    const double inbound_first = 30.0;
    const double inbound_span = s.horizon_minutes() - 300.0 - inbound_first;
    for (int i = 0; i < n_inbound; ++i) {
        Truck t;
        t.direction = Truck::Direction::inbound;
        t.arrival_min = inbound_first + inbound_span * i / (n_inbound - 1.0);
        const std::size_t count = 4 + rng.uniform_index(4);
        for (std::size_t k = 0; k < count; ++k)
            t.manifest.push_back(static_cast<int>(rng.uniform_index(s.products.size())));
        s.trucks.push_back(std::move(t));
    }
    const double outbound_first = 420.0;
    const double outbound_span = s.horizon_minutes() - 120.0 - outbound_first;
    for (int i = 0; i < n_outbound; ++i) {
        Truck t;
        t.direction = Truck::Direction::outbound;
        t.arrival_min = outbound_first + outbound_span * i / (n_outbound - 1.0);
        const std::size_t count = 3 + rng.uniform_index(3);
        for (std::size_t k = 0; k < count; ++k)
            t.manifest.push_back(static_cast<int>(rng.uniform_index(s.products.size())));
        s.trucks.push_back(std::move(t));
    }

    std::stable_sort(s.trucks.begin(), s.trucks.end(),
                     [](const Truck& a, const Truck& b) { return a.arrival_min < b.arrival_min; });
    s.validate();
    return s;
}

namespace {

// Exponential inter-arrival spacings rescaled onto the original window:
// irregular gaps whose mean exactly matches the base schedule, and the
// schedule stays inside the horizon.
void respace_direction(std::vector<Truck*>& trucks, Rng& rng) {
    if (trucks.size() < 2) return;
    std::vector<double> arrivals;
    for (const Truck* t : trucks) arrivals.push_back(t->arrival_min);
    std::sort(arrivals.begin(), arrivals.end());
    const double span = arrivals.back() - arrivals.front();

    std::vector<double> gaps(arrivals.size() - 1);
    double total = 0.0;
    for (auto& g : gaps) {
        g = rng.exponential(1.0);
        total += g;
    }
    double t = arrivals.front();
    std::vector<double> redrawn{t};
    for (double g : gaps) {
        t += g * span / total;
        redrawn.push_back(t);
    }
    for (std::size_t i = 0; i < trucks.size(); ++i) trucks[i]->arrival_min = redrawn[i];
}

} // namespace

SimScenario scenario_variant(const SimScenario& base, VariantKind kind) {
    SimScenario out = base;
    Rng rng(mix_seed(base.seed, mix_seed(kStreamVariant, static_cast<std::uint64_t>(kind))));

    switch (kind) {
    case VariantKind::heavy_inbound: {
        std::vector<Truck> inbound, outbound;
        for (const auto& t : base.trucks)
            (t.direction == Truck::Direction::inbound ? inbound : outbound).push_back(t);
        if (inbound.empty()) break;
        const auto target = static_cast<std::size_t>(
            std::llround(1.5 * static_cast<double>(inbound.size())));

        const double first = inbound.front().arrival_min;
        const double last = inbound.back().arrival_min;
        std::vector<Truck> heavier;
        for (std::size_t i = 0; i < target; ++i) {
            Truck t;
            t.direction = Truck::Direction::inbound;
            t.arrival_min = target > 1
                                ? first + (last - first) * static_cast<double>(i) /
                                              static_cast<double>(target - 1)
                                : first;
            const auto base_size = inbound[i % inbound.size()].manifest.size();
            const auto size = static_cast<std::size_t>(
                std::llround(1.5 * static_cast<double>(base_size)));
            for (std::size_t k = 0; k < size; ++k)
                t.manifest.push_back(static_cast<int>(rng.uniform_index(out.products.size())));
            heavier.push_back(std::move(t));
        }
        out.trucks = std::move(heavier);
        out.trucks.insert(out.trucks.end(), outbound.begin(), outbound.end());
        break;
    }
    case VariantKind::irregular_arrivals: {
        std::vector<Truck*> inbound, outbound;
        for (auto& t : out.trucks)
            (t.direction == Truck::Direction::inbound ? inbound : outbound).push_back(&t);
        respace_direction(inbound, rng);
        respace_direction(outbound, rng);
        break;
    }
    case VariantKind::double_portfolio: {
        const std::size_t base_count = base.products.size();
        const double w_lo = base.width_classes.front() * 0.8;
        const double w_hi = base.width_classes.back() * 1.05; // occasionally oversized
        const double h_lo = base.height_classes.front() * 0.8;
        const double h_hi = base.height_classes.back() * 1.05;
        for (std::size_t i = 0; i < base_count; ++i) {
            Product p;
            p.name = "x" + std::to_string(i);
            p.width = rng.uniform(w_lo, w_hi);
            p.height = rng.uniform(h_lo, h_hi);
            p.affinity_hall = static_cast<int>(i % base.halls.size());
            out.products.push_back(std::move(p));
        }
        for (auto& t : out.trucks)
            for (auto& id : t.manifest)
                id = static_cast<int>(rng.uniform_index(out.products.size()));
        break;
    }
    }

    std::stable_sort(out.trucks.begin(), out.trucks.end(),
                     [](const Truck& a, const Truck& b) { return a.arrival_min < b.arrival_min; });
    out.validate();
    return out;
}

std::string variant_name(VariantKind kind) {
    switch (kind) {
    case VariantKind::heavy_inbound: return "heavy_inbound";
    case VariantKind::irregular_arrivals: return "irregular_arrivals";
    case VariantKind::double_portfolio: return "double_portfolio";
    }
    return "unknown";
}

namespace {

json to_json(const SimScenario& s) {
    json j;
    j["horizon_hours"] = s.horizon_hours;
    j["warmup_hours"] = s.warmup_hours;
    j["seed"] = s.seed;
    j["docks"] = s.docks;
    j["handling_min"] = s.handling_min;
    j["width_classes"] = s.width_classes;
    j["height_classes"] = s.height_classes;
    j["width_access_min"] = s.width_access_min;
    j["height_access_min"] = s.height_access_min;
    j["halls"] = json::array();
    for (const auto& h : s.halls) j["halls"].push_back({{"travel_min", h.travel_min}, {"capacity", h.capacity}});
    j["resources"] = json::array();
    for (const auto& r : s.resources)
        j["resources"].push_back({{"name", r.name},
                                  {"cost", r.cost},
                                  {"speed_factor", r.speed_factor},
                                  {"z_min", r.z_min},
                                  {"z_max", r.z_max}});
    j["products"] = json::array();
    for (const auto& p : s.products)
        j["products"].push_back({{"name", p.name},
                                 {"width", p.width},
                                 {"height", p.height},
                                 {"affinity_hall", p.affinity_hall}});
    j["trucks"] = json::array();
    for (const auto& t : s.trucks)
        j["trucks"].push_back(
            {{"direction", t.direction == Truck::Direction::inbound ? "in" : "out"},
             {"arrival_min", t.arrival_min},
             {"manifest", t.manifest}});
    return j;
}

SimScenario from_json(const json& j) {
    SimScenario s;
    s.horizon_hours = j.at("horizon_hours").get<double>();
    s.warmup_hours = j.at("warmup_hours").get<double>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.docks = j.at("docks").get<int>();
    s.handling_min = j.at("handling_min").get<double>();
    s.width_classes = j.at("width_classes").get<std::vector<double>>();
    s.height_classes = j.at("height_classes").get<std::vector<double>>();
    s.width_access_min = j.at("width_access_min").get<std::vector<double>>();
    s.height_access_min = j.at("height_access_min").get<std::vector<double>>();
    for (const auto& h : j.at("halls"))
        s.halls.push_back(Hall{h.at("travel_min").get<double>(), h.at("capacity").get<int>()});
    for (const auto& r : j.at("resources"))
        s.resources.push_back(ResourceType{r.at("name").get<std::string>(),
                                           r.at("cost").get<double>(),
                                           r.at("speed_factor").get<double>(),
                                           r.at("z_min").get<int>(), r.at("z_max").get<int>()});
    for (const auto& p : j.at("products"))
        s.products.push_back(Product{p.at("name").get<std::string>(), p.at("width").get<double>(),
                                     p.at("height").get<double>(), p.at("affinity_hall").get<int>()});
    for (const auto& t : j.at("trucks")) {
        Truck truck;
        truck.direction = t.at("direction").get<std::string>() == "in"
                              ? Truck::Direction::inbound
                              : Truck::Direction::outbound;
        truck.arrival_min = t.at("arrival_min").get<double>();
        truck.manifest = t.at("manifest").get<std::vector<int>>();
        s.trucks.push_back(std::move(truck));
    }
    return s;
}

} // namespace

SimScenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("load_scenario: cannot open " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("load_scenario: parse error in " + file.string() + ": " + e.what());
    }
    try {
        SimScenario s = from_json(j);
        s.validate();
        return s;
    } catch (const json::exception& e) {
        throw std::runtime_error("load_scenario: bad schema in " + file.string() + ": " + e.what());
    }
}

void save_scenario(const SimScenario& scenario, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("save_scenario: cannot open " + file.string());
    out << to_json(scenario).dump(2) << "\n";
}

} // namespace evoq::wdcp
