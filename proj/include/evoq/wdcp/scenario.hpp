#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace evoq::wdcp {

struct Hall {
    double travel_min = 5.0; // dock to hall, one way
    int capacity = 30;       // number of storage locations of any class
};

struct ResourceType {
    std::string name;
    double cost = 10.0;         // aggregate investment + operating cost per unit
    double speed_factor = 1.0;  // multiplies travel time; lower is faster
    int z_min = 0;
    int z_max = 4;
};

struct Product {
    std::string name;
    double width = 1.0;
    double height = 1.0;
    int affinity_hall = 0;
};

struct Truck {
    enum class Direction { inbound, outbound };
    Direction direction = Direction::inbound;
    double arrival_min = 0.0;
    std::vector<int> manifest; // product ids
};

/// Full warehouse configuration evaluated by the simulator. All tables are
/// explicit; the builders below generate them deterministically from the
/// seed.
struct SimScenario {
    double horizon_hours = 48.0;
    double warmup_hours = 8.0;
    std::uint64_t seed = 1;

    int docks = 2;
    double handling_min = 2.0;

    std::vector<double> width_classes;      // ascending location widths
    std::vector<double> height_classes;     // ascending location heights
    std::vector<double> width_access_min;   // extra travel per width class
    std::vector<double> height_access_min;  // extra travel per height class

    std::vector<Hall> halls;
    std::vector<ResourceType> resources;
    std::vector<Product> products;
    std::vector<Truck> trucks;

    double horizon_minutes() const { return horizon_hours * 60.0; }
    double warmup_minutes() const { return warmup_hours * 60.0; }

    std::size_t inbound_count() const;
    std::size_t outbound_count() const;

    /// Genome length implied by the tables:
    /// 4 rule ordinals + 5 rule parameters + one gene per resource type +
    /// one allocation weight per hall x width class x height class.
    std::size_t genome_length() const;

    /// Throws std::invalid_argument describing the first inconsistency
    /// (bad warm-up, empty tables, manifest referencing unknown products...).
    void validate() const;
};

/// Desk-scale default: 2 halls, 3x2 location classes, 3 resource types,
/// 8 products, ~20 trucks over 48 h; genome length 24.
SimScenario default_scenario(std::uint64_t seed);

enum class VariantKind { heavy_inbound, irregular_arrivals, double_portfolio };

/// Stress variants derived deterministically from the base scenario seed:
///  - heavy_inbound: 1.5x inbound trucks and 1.5x manifest sizes
///  - irregular_arrivals: per-direction arrivals redrawn as exponential
///    inter-arrival spacings rescaled onto the original window, preserving
///    the mean gap exactly
///  - double_portfolio: product catalog doubled with fresh dimension mixes,
///    manifests redrawn over the doubled catalog
SimScenario scenario_variant(const SimScenario& base, VariantKind kind);

std::string variant_name(VariantKind kind);

SimScenario load_scenario(const std::filesystem::path& file);
void save_scenario(const SimScenario& scenario, const std::filesystem::path& file);

} // namespace evoq::wdcp
