#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fleetcharge/core/time_grid.hpp"

namespace fleetcharge {

/// Shortest admissible effective parking duration, as a fraction of a slot.
inline constexpr double kMinEffectiveDuration = 5.0 / 30.0;

enum class ChargerKind : int { slow = 0, fast = 1 };

[[nodiscard]] std::string to_string(ChargerKind kind);
[[nodiscard]] ChargerKind charger_kind_from_string(const std::string& name);

struct ChargerType {
    ChargerKind kind = ChargerKind::slow;
    double capital_cost = 0.0;   // $ per installed charger
    double rated_power_kw = 0.0;
    double efficiency = 1.0;
    double soc_floor = 0.0;
    double soc_ceiling = 1.0;

    void validate() const;
    /// Battery-side energy deliverable in one slot at full effective duration.
    [[nodiscard]] double slot_energy_kwh(double slot_hours) const noexcept {
        return efficiency * rated_power_kw * slot_hours;
    }

    friend bool operator==(const ChargerType&, const ChargerType&) = default;
};

/// Default slow (AC) charger.
[[nodiscard]] ChargerType default_slow_charger();
/// Default fast (DC) charger.
[[nodiscard]] ChargerType default_fast_charger();

struct Truck {
    std::string id;
    double battery_kwh = 100.0;

    friend bool operator==(const Truck&, const Truck&) = default;
};

struct Zone {
    std::string name;
    bool is_special = false;  // overnight zone: waiting is not capped

    friend bool operator==(const Zone&, const Zone&) = default;
};

inline constexpr int kNoZone = -1;

/// Per-truck time series on the flat slot index of the grid.
struct TruckSeries {
    std::vector<int> zone;     // kNoZone where the truck is not parked
    std::vector<double> pp;    // effective parking duration on parking slots, 0 elsewhere
    std::vector<double> rho;   // kWh consumed in the slot (battery side)

    friend bool operator==(const TruckSeries&, const TruckSeries&) = default;
};

/// Maximal run of consecutive parked slots in one zone. Runs may cross
/// midnight; `first` is a flat slot index.
struct ParkedStretch {
    int zone = kNoZone;
    int first = 0;
    int length = 0;

    [[nodiscard]] int last() const noexcept { return first + length - 1; }
    friend bool operator==(const ParkedStretch&, const ParkedStretch&) = default;
};

/// Time-gridded problem data. Built once and then treated as immutable.
struct FleetInstance {
    TimeGrid grid;
    std::vector<Truck> trucks;
    std::vector<Zone> zones;
    std::vector<ChargerType> chargers;   // at most one entry per ChargerKind
    std::vector<TruckSeries> series;     // one per truck
    double soc_min = 0.1;
    double soc_max = 1.0;
    double anxiety_threshold = 0.3;
    double fast_soc_ceiling = 0.8;
    double epsilon = 1e-6;

    /// Creates an instance with empty (never parked, zero consumption) series.
    static FleetInstance empty(TimeGrid grid, std::vector<Truck> trucks, std::vector<Zone> zones,
                               std::vector<ChargerType> chargers);

    /// Throws ContractViolation describing the first broken invariant.
    void validate() const;

    [[nodiscard]] int truck_count() const noexcept { return static_cast<int>(trucks.size()); }
    [[nodiscard]] int zone_count() const noexcept { return static_cast<int>(zones.size()); }
    [[nodiscard]] int charger_count() const noexcept { return static_cast<int>(chargers.size()); }
    [[nodiscard]] int slot_count() const noexcept { return grid.slot_count(); }

    [[nodiscard]] bool parked(int truck, int s) const { return series.at(truck).zone.at(s) != kNoZone; }
    [[nodiscard]] int zone_at(int truck, int s) const { return series.at(truck).zone.at(s); }
    [[nodiscard]] bool special_at(int truck, int s) const {
        const int z = zone_at(truck, s);
        return z != kNoZone && zones.at(z).is_special;
    }

    /// Index into `chargers` of the given kind, if present.
    [[nodiscard]] std::optional<int> charger_index(ChargerKind kind) const noexcept;

    /// Marks (truck, s) as parked in `zone` with effective duration `pp`.
    void set_parking(int truck, int s, int zone, double pp);
    void clear_parking(int truck, int s);

    friend bool operator==(const FleetInstance&, const FleetInstance&) = default;
};

/// Maximal same-zone contiguous runs of parking slots for one truck.
[[nodiscard]] std::vector<ParkedStretch> parked_stretches(const FleetInstance& instance, int truck);

/// Sub-horizon made of the given days (in the given order); days become
/// consecutive in the result.
[[nodiscard]] FleetInstance select_days(const FleetInstance& instance, const std::vector<int>& days);

/// Instance restricted to the listed trucks, in the listed order.
[[nodiscard]] FleetInstance select_trucks(const FleetInstance& instance, const std::vector<int>& trucks);

}  // namespace fleetcharge
