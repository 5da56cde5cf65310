#pragma once

#include <cstdint>
#include <vector>

#include "fleetcharge/ingest/trace.hpp"

namespace fleetcharge {

/// Activity parameters of the synthetic fleet generator. Trucks sleep at a
/// depot, then drive between work sites with detours sized to hit the daily
/// distance target.
struct FleetProfile {
    double start_epoch = 1672531200.0;  // 2023-01-01T00:00:00Z
    double sample_period = 30.0;        // s
    double daily_miles = 74.0;
    double speed_mps = 8.5;
    int work_sites = 7;
    double site_spacing = 5000.0;  // m
    int min_visits = 3;
    int max_visits = 5;
    double min_visit_minutes = 10.0;
    double max_visit_minutes = 75.0;
    double depart_hour_min = 5.0;
    double depart_hour_max = 7.5;
    double stray_stop_probability = 0.25;  // short stop at a detour waypoint
    double intensity_spread = 0.2;         // per-truck distance factor in [1-s, 1+s]
    double noise_m = 3.0;                  // GPS jitter while stopped

    void validate() const;
};

/// Deterministic synthetic GPS streams for `trucks` trucks over `days` days.
/// Throws std::invalid_argument on zero counts or a profile without activity.
[[nodiscard]] std::vector<TruckTrace> synthesize_fleet(std::uint64_t seed, int trucks, int days,
                                                       const FleetProfile& profile = {});

/// Site coordinates used by the generator; entry 0 is the depot.
[[nodiscard]] std::vector<std::pair<double, double>> synthetic_sites(const FleetProfile& profile);

/// Hourly temperatures (F) within [30, 110] with a seasonal and a daily cycle.
/// `first_day_of_year` is zero-based.
[[nodiscard]] std::vector<double> synthesize_temperature(std::uint64_t seed, int hours, int first_day_of_year = 0);

}  // namespace fleetcharge
