#pragma once

#include <filesystem>
#include <vector>

#include "fleetcharge/core/time_grid.hpp"
#include "fleetcharge/ingest/trace.hpp"

namespace fleetcharge {

inline constexpr double kMetersPerMile = 1609.344;

/// Temperature-dependent fuel economy, miles per kWh:
///   economy(T) = a2*T^2 + a1*T + a0  with T in degrees Fahrenheit.
/// The defaults peak at 3.4 at 70 F and fall to 3.0 at 30 F and 110 F.
struct FuelEconomyModel {
    double a2 = -0.00025;
    double a1 = 0.035;
    double a0 = 2.175;
    std::vector<double> hourly_temp_f;  // index = hours since horizon start

    [[nodiscard]] double economy(double temp_f) const noexcept { return (a2 * temp_f + a1) * temp_f + a0; }
    /// Economy for the given hour since horizon start.
    [[nodiscard]] double economy_at_hour(int hour) const;
    /// Throws std::invalid_argument when some hour maps outside (0, 10].
    void validate() const;
};

/// Per-slot energy (kWh) of one truck. Distance is split across slots by
/// time; segments whose midpoint lies in a zone cell are not counted.
[[nodiscard]] std::vector<double> compute_energy(const std::vector<GpsPoint>& points, const FuelEconomyModel& model,
                                                 const TimeGrid& grid, const std::vector<Cell>& zones,
                                                 double cell_size, double horizon_start);

/// Distance travelled per day of the grid (km), split at midnight.
[[nodiscard]] std::vector<double> daily_distance_km(const std::vector<GpsPoint>& points, const TimeGrid& grid,
                                                  double horizon_start);

/// Total distance (m) of segments outside zone cells.
[[nodiscard]] double out_of_zone_distance(const std::vector<GpsPoint>& points, const std::vector<Cell>& zones,
                                          double cell_size);

/// CSV with columns hour_of_year,temp_f; rows are returned in hour order.
[[nodiscard]] std::vector<double> read_temperature_csv(const std::filesystem::path& path);
void write_temperature_csv(const std::vector<double>& temps, const std::filesystem::path& path);

}  // namespace fleetcharge
