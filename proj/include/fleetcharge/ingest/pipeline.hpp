#pragma once

#include <vector>

#include "fleetcharge/core/instance.hpp"
#include "fleetcharge/ingest/energy.hpp"
#include "fleetcharge/ingest/trace.hpp"

namespace fleetcharge {

struct PipelineConfig {
    StopDetectionParams stops;
    int zone_count = 8;
    TimeGrid grid;
    double horizon_start = 1672531200.0;  // epoch seconds of slot (0, 0)
    double special_zone_min_hours = 4.0;  // mean stop length that marks an overnight zone
    std::vector<ChargerType> chargers{default_slow_charger(), default_fast_charger()};
    double battery_kwh = 100.0;
    double soc_min = 0.1;
    double soc_max = 1.0;
};

struct PipelineResult {
    FleetInstance instance;
    ZoneRanking ranking;
    std::vector<StopEvent> stops;       // all trucks, truck-major
    std::vector<double> out_of_zone_m;  // per truck, resampled stream
    std::vector<std::vector<double>> daily_km;  // [truck][day]
};

/// Traces to a gridded instance: resampling, stop detection, zone ranking,
/// parking windows, effective durations and per-slot energy.
[[nodiscard]] PipelineResult build_instance(const std::vector<TruckTrace>& traces, const FuelEconomyModel& economy,
                                            const PipelineConfig& config);

}  // namespace fleetcharge
