#pragma once

#include <compare>
#include <filesystem>
#include <string>
#include <vector>

#include "fleetcharge/core/time_grid.hpp"

namespace fleetcharge {

/// One GPS fix in projected planar coordinates.
struct GpsPoint {
    double timestamp = 0.0;  // seconds since epoch
    double easting = 0.0;    // m
    double northing = 0.0;   // m
    double speed = 0.0;      // m/s

    friend bool operator==(const GpsPoint&, const GpsPoint&) = default;
};

struct TruckTrace {
    std::string truck;
    std::vector<GpsPoint> points;

    friend bool operator==(const TruckTrace&, const TruckTrace&) = default;
};

/// Square cell of the site grid.
struct Cell {
    long long row = 0;  // northing / size
    long long col = 0;  // easting / size

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

[[nodiscard]] Cell cell_of(double easting, double northing, double cell_size);

struct StopDetectionParams {
    double cell_size = 100.0;     // m
    double move_threshold = 50.0; // m
    double min_dwell = 5.0;       // minutes
    double max_gap = 60.0;        // s, coarser streams are interpolated

    void validate() const;
};

struct StopEvent {
    int truck = 0;
    Cell cell;
    double start = 0.0;  // s
    double end = 0.0;    // s

    [[nodiscard]] double duration_minutes() const noexcept { return (end - start) / 60.0; }
    friend bool operator==(const StopEvent&, const StopEvent&) = default;
};

/// Linear interpolation so that consecutive fixes are at most `max_gap`
/// seconds apart. Throws std::invalid_argument on non-increasing timestamps.
[[nodiscard]] std::vector<GpsPoint> resample(const std::vector<GpsPoint>& points, double max_gap);

/// Stops of one truck. A stop starts at an anchor fix and extends while every
/// later fix stays within `move_threshold` of the anchor; it is kept when it
/// lasts at least `min_dwell` minutes. The stop's cell is the anchor's cell.
/// Throws std::invalid_argument on an unsorted stream.
[[nodiscard]] std::vector<StopEvent> detect_stops(int truck, const std::vector<GpsPoint>& points,
                                                  const StopDetectionParams& params = {});

struct RankedZone {
    Cell cell;
    int stops = 0;
    double total_minutes = 0.0;
    double mean_minutes() const noexcept { return stops > 0 ? total_minutes / stops : 0.0; }
};

struct ZoneRanking {
    std::vector<RankedZone> zones;
    bool short_list = false;  // fewer than k cells had stops
};

/// The k cells with the most stops; ties go to the larger total stopped
/// time, then to the smaller cell.
[[nodiscard]] ZoneRanking rank_zones(const std::vector<StopEvent>& stops, int k);

/// Parking indicator and effective duration per [truck][flat slot].
struct ParkingWindows {
    std::vector<std::vector<int>> zone;    // kNoZone when not parked
    std::vector<std::vector<double>> pp;

    friend bool operator==(const ParkingWindows&, const ParkingWindows&) = default;
};

/// Intersects zone stops with the slot grid starting at `horizon_start`
/// (epoch seconds). A slot needs at least 5 stopped minutes; pp is the
/// stopped fraction of the slot. A slot claimed by two zones goes to the
/// zone with the longer dwell.
[[nodiscard]] ParkingWindows extract_windows(const std::vector<StopEvent>& stops, const std::vector<Cell>& zones,
                                             const TimeGrid& grid, int truck_count, double horizon_start);

/// Epoch seconds of an ISO-8601 UTC timestamp (`YYYY-MM-DDTHH:MM:SS[.fff][Z]`).
[[nodiscard]] double parse_iso_timestamp(const std::string& text);
[[nodiscard]] std::string format_iso_timestamp(double seconds);

/// CSV with columns truck_id,iso_timestamp,easting_m,northing_m,speed_mps.
/// Traces are returned in order of first appearance.
[[nodiscard]] std::vector<TruckTrace> read_traces_csv(const std::filesystem::path& path);
void write_traces_csv(const std::vector<TruckTrace>& traces, const std::filesystem::path& path);

}  // namespace fleetcharge
