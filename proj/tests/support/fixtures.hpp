#pragma once

#include <cstdint>
#include <vector>

#include "fleetcharge/core/instance.hpp"
#include "fleetcharge/ingest/pipeline.hpp"
#include "fleetcharge/ingest/synthetic.hpp"

namespace fleetcharge::fixture {

struct TinySpec {
    int trucks = 2;
    int days = 2;
    int slots_per_day = 4;
    int zones = 2;
    int charger_types = 2;  // 1 = slow only
    double battery_kwh = 20.0;
    bool special_zone = true;  // zone 0 allows overnight waiting
    int max_parked = 4;        // per truck; keeps exhaustive search small (0 = no cap)
};

/// Random instance small enough for exhaustive enumeration. The effective
/// duration of a slot depends only on (truck, hour of day, zone), so moments
/// computed from the instance reproduce it exactly.
[[nodiscard]] FleetInstance tiny_instance(std::uint64_t seed, const TinySpec& spec = {});

/// One truck, one zone, custom parking pattern; handy for hand-built cases.
/// `zones[s]` is the zone of flat slot s (kNoZone = driving).
[[nodiscard]] FleetInstance line_instance(int slots_per_day, int days, const std::vector<int>& zones,
                                          const std::vector<double>& rho, int zone_count, bool special0,
                                          double battery_kwh = 100.0);

/// Synthetic traces through the ingestion pipeline.
struct SyntheticFleet {
    PipelineResult pipeline;
    std::vector<TruckTrace> traces;
    std::vector<double> temperature;
};

[[nodiscard]] SyntheticFleet synthetic_fleet(std::uint64_t seed, int trucks, int days, const FleetProfile& profile,
                                             double battery_kwh);

}  // namespace fleetcharge::fixture
