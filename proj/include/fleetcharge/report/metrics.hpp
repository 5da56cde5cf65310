#pragma once

#include <string>
#include <vector>

#include "fleetcharge/core/instance.hpp"
#include "fleetcharge/solver/solution.hpp"

namespace fleetcharge {

struct TruckSocStats {
    std::string truck;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;

    friend bool operator==(const TruckSocStats&, const TruckSocStats&) = default;
};

/// One entry of the long-format breakdown table. `zone` and `hour` are -1
/// for "all".
struct MetricRow {
    int zone = -1;
    int hour = -1;
    std::string metric;
    double value = 0.0;

    friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

struct ScheduleMetrics {
    int trucks = 0;
    int days = 0;
    double slow_hours = 0.0;
    double fast_hours = 0.0;
    double abandonment_hours = 0.0;
    double charged_kwh = 0.0;
    double avg_charging_hours_per_truck_day = 0.0;
    double avg_power_kw = 0.0;
    bool no_charging = true;  // avg_power_kw is 0 by convention
    double fleet_soc_mean = 0.0;
    double fleet_soc_min = 0.0;
    double fleet_soc_max = 0.0;
    std::vector<TruckSocStats> soc;   // sorted by mean, highest first
    std::vector<MetricRow> breakdown; // per zone and per hour of day

    [[nodiscard]] bool empty() const noexcept { return trucks == 0; }
    friend bool operator==(const ScheduleMetrics&, const ScheduleMetrics&) = default;
};

/// Per-slot schedule quantities from which all metrics are derived.
struct ScheduleView {
    const std::vector<std::vector<int>>* charger;     // [truck][slot], -1 idle
    const std::vector<std::vector<double>>* energy;   // kWh
    const std::vector<std::vector<int>>* abandoned;
    const std::vector<std::vector<double>>* soc;
};

[[nodiscard]] ScheduleMetrics metrics_from(const FleetInstance& instance, const ScheduleView& view);

/// Metrics of a solved model; `instance` must be the one the model was built on.
[[nodiscard]] ScheduleMetrics compute_metrics(const Solution& solution, const FleetInstance& instance);

}  // namespace fleetcharge
