#pragma once

#include <array>
#include <vector>

#include "fleetcharge/core/instance.hpp"

namespace fleetcharge {

inline constexpr int kDayCriteria = 10;

/// Per-day fleet statistics, in this order: total distance (km), moving
/// trucks, distance per moving truck, trucks above the distance threshold,
/// total energy (kWh), consuming trucks, energy per consuming truck, trucks
/// above the energy threshold, total stopped hours, stopped trucks.
struct DayScore {
    int day = 0;
    std::array<double, kDayCriteria> metrics{};
};

struct DayCriteriaConfig {
    double distance_threshold_km = 296.0;
    double energy_threshold_kwh = 75.0;
};

/// True for the criteria ranked from the bottom (the two stopping criteria).
[[nodiscard]] bool ranked_ascending(int criterion);

/// Scores every day of the instance. `daily_km` is [truck][day]; when empty
/// the distance criteria are zero.
[[nodiscard]] std::vector<DayScore> score_days(const FleetInstance& instance,
                                               const std::vector<std::vector<double>>& daily_km,
                                               const DayCriteriaConfig& config = {});

struct DaySelectionConfig {
    int per_criterion_top = 1;
    int padding = 2;        // days added on each side of a top day
    int boundary_days = 2;  // first and last days of the horizon always kept
};

/// Top days per criterion with padding and the horizon boundary days,
/// deduplicated and sorted. Ties go to the earlier day.
[[nodiscard]] std::vector<int> select_days(const std::vector<DayScore>& scores, const DaySelectionConfig& config);

}  // namespace fleetcharge
