#include "evoq/wdcp/simulation.hpp"

#include "evoq/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <queue>
#include <stdexcept>

namespace evoq::wdcp {

double tardiness_factor(double delay_min) {
    if (delay_min < 30.0) return 0.0;
    if (delay_min <= 120.0) return 0.5;
    return 1.0;
}

namespace {

struct Cell {
    int hall = -1;
    int w = -1;
    int h = -1;
};

class Simulation {
public:
    Simulation(const WdcpGenome& genome, const SimScenario& sc) : g_(genome), sc_(sc) {
        sc_.validate();
        audit_genome(g_, sc_);

        n_cells_ = sc_.width_classes.size() * sc_.height_classes.size();
        occupied_.assign(sc_.halls.size(), std::vector<int>(n_cells_, 0));
        stored_.assign(sc_.products.size(),
                       std::vector<int>(sc_.halls.size() * n_cells_, 0));
        idle_ = g_.resource_counts;
        busy_.assign(sc_.resources.size(), 0);
        free_docks_ = sc_.docks;
        trucks_.assign(sc_.trucks.size(), TruckState{});
        for (std::size_t i = 0; i < sc_.trucks.size(); ++i)
            trucks_[i].remaining = static_cast<int>(sc_.trucks[i].manifest.size());

        mean_trip_.resize(sc_.resources.size());
        for (std::size_t t = 0; t < sc_.resources.size(); ++t) {
            double total = 0.0;
            std::size_t count = 0;
            for (std::size_t hall = 0; hall < sc_.halls.size(); ++hall)
                for (std::size_t w = 0; w < sc_.width_classes.size(); ++w)
                    for (std::size_t h = 0; h < sc_.height_classes.size(); ++h) {
                        total += trip_minutes(t, Cell{static_cast<int>(hall),
                                                       static_cast<int>(w),
                                                       static_cast<int>(h)});
                        ++count;
                    }
            mean_trip_[t] = total / static_cast<double>(count);
        }
    }

    SimResult run() {
        for (std::size_t i = 0; i < sc_.trucks.size(); ++i)
            push_event(sc_.trucks[i].arrival_min, EventKind::arrival, static_cast<int>(i));

        while (!events_.empty()) {
            Event ev = events_.top();
            events_.pop();
            if (ev.time > sc_.horizon_minutes()) break;
            now_ = ev.time;
            audit_state();
            switch (ev.kind) {
            case EventKind::arrival: on_arrival(ev.truck); break;
            case EventKind::job_done: on_job_done(ev); break;
            }
            dispatch();
        }

        // trucks still in the system at the horizon count as departing then
        for (std::size_t i = 0; i < sc_.trucks.size(); ++i) {
            if (trucks_[i].departed) continue;
            if (sc_.trucks[i].direction != Truck::Direction::outbound) continue;
            accumulate_tardiness(i, sc_.horizon_minutes());
        }

        for (std::size_t t = 0; t < sc_.resources.size(); ++t)
            result_.resource_cost += sc_.resources[t].cost * g_.resource_counts[t];
        return result_;
    }

private:
    enum class EventKind { arrival, job_done };
    enum class JobOutcome { placed, unplaceable, retrieved };

    struct Event {
        double time = 0.0;
        std::uint64_t seq = 0;
        EventKind kind = EventKind::arrival;
        int truck = -1;
        int resource_type = -1;
        JobOutcome outcome = JobOutcome::placed;
        int product = -1;
        Cell cell;

        bool operator>(const Event& other) const {
            if (time != other.time) return time > other.time;
            return seq > other.seq;
        }
    };

    struct TruckState {
        int remaining = 0;
        bool docked = false;
        bool departed = false;
    };

    struct Job {
        int truck = -1;
        int product = -1;
        bool inbound = true;
    };

    void push_event(double time, EventKind kind, int truck) {
        Event ev;
        ev.time = time;
        ev.seq = seq_++;
        ev.kind = kind;
        ev.truck = truck;
        events_.push(ev);
    }

    double trip_minutes(std::size_t resource_type, const Cell& c) const {
        const double one_way = sc_.halls[static_cast<std::size_t>(c.hall)].travel_min +
                               sc_.width_access_min[static_cast<std::size_t>(c.w)] +
                               sc_.height_access_min[static_cast<std::size_t>(c.h)];
        return 2.0 * one_way * sc_.resources[resource_type].speed_factor + sc_.handling_min;
    }

    int& occupied(const Cell& c) {
        return occupied_[static_cast<std::size_t>(c.hall)]
                        [static_cast<std::size_t>(c.w) * sc_.height_classes.size() +
                         static_cast<std::size_t>(c.h)];
    }

    int alloc(const Cell& c) const {
        return g_.storage_alloc[static_cast<std::size_t>(c.hall)]
                               [static_cast<std::size_t>(c.w) * sc_.height_classes.size() +
                                static_cast<std::size_t>(c.h)];
    }

    int& stored(int product, const Cell& c) {
        return stored_[static_cast<std::size_t>(product)]
                      [static_cast<std::size_t>(c.hall) * n_cells_ +
                       static_cast<std::size_t>(c.w) * sc_.height_classes.size() +
                       static_cast<std::size_t>(c.h)];
    }

    void on_arrival(int truck) {
        if (free_docks_ > 0)
            dock(truck);
        else
            dock_queue_.push_back(truck);
    }

    void dock(int truck) {
        --free_docks_;
        trucks_[static_cast<std::size_t>(truck)].docked = true;
        const auto& spec = sc_.trucks[static_cast<std::size_t>(truck)];
        if (spec.manifest.empty()) {
            depart(truck);
            return;
        }
        for (int product : spec.manifest)
            jobs_.push_back(Job{truck, product, spec.direction == Truck::Direction::inbound});
    }

    void depart(int truck) {
        auto& state = trucks_[static_cast<std::size_t>(truck)];
        state.departed = true;
        state.docked = false;
        ++free_docks_;
        const auto& spec = sc_.trucks[static_cast<std::size_t>(truck)];
        if (spec.direction == Truck::Direction::outbound)
            accumulate_tardiness(static_cast<std::size_t>(truck), now_);
        if (!dock_queue_.empty()) {
            const int next = dock_queue_.front();
            dock_queue_.pop_front();
            dock(next);
        }
    }

    void accumulate_tardiness(std::size_t truck, double departure) {
        const auto& spec = sc_.trucks[truck];
        // statistics only after warm-up: trucks arriving earlier are excluded
        if (spec.arrival_min < sc_.warmup_minutes()) return;
        const double delay = departure - spec.arrival_min;
        result_.tardiness += tardiness_factor(delay) * delay;
    }

    /// Fastest idle resource type, ties to the lower index; -1 when none.
    int pick_idle_resource() const {
        int best = -1;
        for (std::size_t t = 0; t < idle_.size(); ++t) {
            if (idle_[t] <= 0) continue;
            if (best == -1 || sc_.resources[t].speed_factor <
                                  sc_.resources[static_cast<std::size_t>(best)].speed_factor)
                best = static_cast<int>(t);
        }
        return best;
    }

    void dispatch() {
        while (!jobs_.empty()) {
            Job job = jobs_.front();
            if (!job.inbound) {
                // a missing unit is skipped without consuming a resource
                Cell cell = find_stored_unit(job.product);
                if (cell.hall == -1) {
                    jobs_.pop_front();
                    complete_truck_item(job.truck);
                    continue;
                }
                const int rt = pick_idle_resource();
                if (rt == -1) return;
                jobs_.pop_front();
                --idle_[static_cast<std::size_t>(rt)];
                ++busy_[static_cast<std::size_t>(rt)];
                --stored(job.product, cell);
                Event done;
                done.time = now_ + trip_minutes(static_cast<std::size_t>(rt), cell);
                done.seq = seq_++;
                done.kind = EventKind::job_done;
                done.truck = job.truck;
                done.resource_type = rt;
                done.outcome = JobOutcome::retrieved;
                done.product = job.product;
                done.cell = cell;
                events_.push(done);
                continue;
            }

            const int rt = pick_idle_resource();
            if (rt == -1) return;
            jobs_.pop_front();
            --idle_[static_cast<std::size_t>(rt)];
            ++busy_[static_cast<std::size_t>(rt)];

            Event done;
            done.seq = seq_++;
            done.kind = EventKind::job_done;
            done.truck = job.truck;
            done.resource_type = rt;
            done.product = job.product;
            Cell cell = place_product(job.product);
            if (cell.hall == -1) {
                // no feasible location: the product leaves the system and the
                // resource is held for the mean transport time
                if (now_ >= sc_.warmup_minutes()) ++result_.unplaceable;
                done.outcome = JobOutcome::unplaceable;
                done.time = now_ + mean_trip_[static_cast<std::size_t>(rt)];
            } else {
                ++occupied(cell);
                done.outcome = JobOutcome::placed;
                done.cell = cell;
                done.time = now_ + trip_minutes(static_cast<std::size_t>(rt), cell);
            }
            events_.push(done);
        }
    }

    void on_job_done(const Event& ev) {
        ++idle_[static_cast<std::size_t>(ev.resource_type)];
        --busy_[static_cast<std::size_t>(ev.resource_type)];
        switch (ev.outcome) {
        case JobOutcome::placed: ++stored(ev.product, ev.cell); break;
        case JobOutcome::retrieved: --occupied(ev.cell); break;
        case JobOutcome::unplaceable: break;
        }
        complete_truck_item(ev.truck);
    }

    void complete_truck_item(int truck) {
        auto& state = trucks_[static_cast<std::size_t>(truck)];
        if (--state.remaining == 0) depart(truck);
    }

    /// Product placement: feasible cells filtered through the four rules in
    /// genome order, each keeping candidates within its delta-scaled
    /// tolerance of the best criterion value. Deterministic final pick.
    Cell place_product(int product) {
        const auto& p = sc_.products[static_cast<std::size_t>(product)];
        std::vector<Cell> candidates;
        for (std::size_t hall = 0; hall < sc_.halls.size(); ++hall)
            for (std::size_t w = 0; w < sc_.width_classes.size(); ++w)
                for (std::size_t h = 0; h < sc_.height_classes.size(); ++h) {
                    if (sc_.width_classes[w] < p.width) continue;
                    if (sc_.height_classes[h] < p.height) continue;
                    Cell c{static_cast<int>(hall), static_cast<int>(w), static_cast<int>(h)};
                    if (occupied(c) >= alloc(c)) continue;
                    candidates.push_back(c);
                }
        if (candidates.empty()) return Cell{};

        for (int rule : g_.rule_order) {
            if (candidates.size() == 1) break;
            std::vector<double> crit(candidates.size());
            double tol = 0.0;
            switch (rule) {
            case 0: // nearest to dock
                for (std::size_t i = 0; i < candidates.size(); ++i)
                    crit[i] = sc_.halls[static_cast<std::size_t>(candidates[i].hall)].travel_min;
                tol = g_.deltas[0];
                break;
            case 1: // best fit by dimension; deltas[2] weighs height vs width
                for (std::size_t i = 0; i < candidates.size(); ++i) {
                    const auto& c = candidates[i];
                    const double wslack =
                        sc_.width_classes[static_cast<std::size_t>(c.w)] - p.width;
                    const double hslack =
                        sc_.height_classes[static_cast<std::size_t>(c.h)] - p.height;
                    crit[i] = (1.0 - g_.deltas[2]) * wslack + g_.deltas[2] * hslack;
                }
                tol = g_.deltas[1];
                break;
            case 2: // zone affinity
                for (std::size_t i = 0; i < candidates.size(); ++i)
                    crit[i] = candidates[i].hall == p.affinity_hall ? 0.0 : 1.0;
                tol = g_.deltas[3];
                break;
            case 3: // load balancing across halls
            default:
                for (std::size_t i = 0; i < candidates.size(); ++i) {
                    const auto hall = static_cast<std::size_t>(candidates[i].hall);
                    double occ = 0.0;
                    for (int v : occupied_[hall]) occ += v;
                    crit[i] = occ / sc_.halls[hall].capacity;
                }
                tol = g_.deltas[4];
                break;
            }
            double lo = crit[0], hi = crit[0];
            for (double v : crit) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            const double keep_below = lo + tol * (hi - lo) + 1e-12;
            std::vector<Cell> kept;
            for (std::size_t i = 0; i < candidates.size(); ++i)
                if (crit[i] <= keep_below) kept.push_back(candidates[i]);
            candidates = std::move(kept);
        }
        return candidates.front(); // lexicographic (hall, w, h) by construction
    }

    /// Nearest stored unit of the product, ties to the lower (hall, w, h).
    Cell find_stored_unit(int product) {
        Cell best{};
        double best_time = std::numeric_limits<double>::infinity();
        for (std::size_t hall = 0; hall < sc_.halls.size(); ++hall)
            for (std::size_t w = 0; w < sc_.width_classes.size(); ++w)
                for (std::size_t h = 0; h < sc_.height_classes.size(); ++h) {
                    Cell c{static_cast<int>(hall), static_cast<int>(w), static_cast<int>(h)};
                    if (stored(product, c) <= 0) continue;
                    const double t = sc_.halls[hall].travel_min + sc_.width_access_min[w] +
                                     sc_.height_access_min[h];
                    if (t < best_time) {
                        best_time = t;
                        best = c;
                    }
                }
        return best;
    }

    void audit_state() const {
        for (std::size_t t = 0; t < idle_.size(); ++t)
            if (idle_[t] + busy_[t] != g_.resource_counts[t] || idle_[t] < 0 || busy_[t] < 0)
                throw std::logic_error("simulation: resource conservation violated");
        for (std::size_t hall = 0; hall < occupied_.size(); ++hall)
            for (std::size_t cell = 0; cell < n_cells_; ++cell)
                if (occupied_[hall][cell] < 0 ||
                    occupied_[hall][cell] > g_.storage_alloc[hall][cell])
                    throw std::logic_error("simulation: cell occupancy out of range");
    }

    const WdcpGenome& g_;
    const SimScenario& sc_;

    std::size_t n_cells_ = 0;
    std::vector<std::vector<int>> occupied_;
    std::vector<std::vector<int>> stored_; // [product][hall * n_cells + cell]
    std::vector<int> idle_, busy_;
    std::vector<double> mean_trip_;
    int free_docks_ = 0;
    std::deque<int> dock_queue_;
    std::vector<TruckState> trucks_;
    std::deque<Job> jobs_;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
    std::uint64_t seq_ = 0;
    double now_ = 0.0;
    SimResult result_;
};

} // namespace

SimResult run_simulation(const WdcpGenome& genome, const SimScenario& scenario) {
    return Simulation(genome, scenario).run();
}

ObjectiveVector wdcp_lite_eval(const std::vector<double>& genes, const SimScenario& scenario) {
    const SimResult r = run_simulation(decode_genome(genes, scenario), scenario);
    return {r.tardiness, r.resource_cost, static_cast<double>(r.unplaceable)};
}

ProblemSpec make_wdcp_problem(const SimScenario& scenario) {
    scenario.validate();
    auto shared = std::make_shared<const SimScenario>(scenario);

    ProblemSpec spec;
    spec.name = "wdcp-lite";
    spec.n_vars = shared->genome_length();
    spec.n_objectives = 3;
    spec.bounds = make_unit_bounds(spec.n_vars);
    spec.evaluate = [shared](const std::vector<double>& genes) {
        return wdcp_lite_eval(genes, *shared);
    };

    // cost bounds are exact; tardiness and unplaceable bounds come from a
    // seeded random-genome probe with margin
    double cost_lo = 0.0, cost_hi = 0.0;
    for (const auto& r : shared->resources) {
        cost_lo += r.cost * r.z_min;
        cost_hi += r.cost * r.z_max;
    }
    Rng rng(mix_seed(shared->seed, 777));
    double tard_hi = 0.0;
    double unpl_hi = 0.0;
    std::vector<double> genes(spec.n_vars);
    for (int probe = 0; probe < 48; ++probe) {
        for (auto& v : genes) v = rng.uniform();
        const auto f = spec.evaluate(genes);
        tard_hi = std::max(tard_hi, f[0]);
        unpl_hi = std::max(unpl_hi, f[2]);
    }

    spec.known_ideal = ObjectiveVector{0.0, cost_lo, 0.0};
    spec.known_nadir = ObjectiveVector{tard_hi * 1.25 + 1.0, cost_hi, unpl_hi * 1.25 + 1.0};
    spec.hv_reference = HvReferencePoint{*spec.known_nadir};
    return spec;
}

} // namespace evoq::wdcp
