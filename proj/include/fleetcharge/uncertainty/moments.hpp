#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "fleetcharge/core/instance.hpp"

namespace fleetcharge {

/// (truck, hour of day, zone) key of the parking-duration statistics.
struct MomentKey {
    int truck = 0;
    int hour = 0;
    int zone = 0;

    friend auto operator<=>(const MomentKey&, const MomentKey&) = default;
};

struct Moment {
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation
    int count = 0;
};

/// One historical effective-duration observation.
struct DurationObservation {
    MomentKey key;
    double value = 0.0;
};

/// Mean / spread of effective parking durations with the per-charger-type
/// spread reduction factors and the width multiplier of the box set.
struct UncertaintyMoments {
    std::map<MomentKey, Moment> table;
    std::vector<double> gamma{1.0, 1.0};  // indexed by ChargerKind
    double sigma_multiplier = 0.0;

    [[nodiscard]] const Moment* find(const MomentKey& key) const {
        auto it = table.find(key);
        return it == table.end() ? nullptr : &it->second;
    }
    [[nodiscard]] double gamma_for(ChargerKind kind) const { return gamma.at(static_cast<int>(kind)); }

    void validate() const;
};

/// Sample mean and population standard deviation per key.
/// Throws std::invalid_argument on an empty history.
[[nodiscard]] UncertaintyMoments compute_moments(const std::vector<DurationObservation>& history);

/// One observation per parking slot of the instance, keyed by the slot's hour of day.
[[nodiscard]] std::vector<DurationObservation> observations_from_instance(const FleetInstance& instance);

/// Effective duration at the lower edge of the box set for the given key,
/// clamped into [5/30, 1]. Falls back to `fallback_pp` with zero spread
/// when the key has no history.
[[nodiscard]] double worst_case_duration(const UncertaintyMoments& moments, const MomentKey& key,
                                         ChargerKind kind, double fallback_pp);

/// Linearised robust power-bound coefficient (kWh):
///   eta * P * dt * clamp(mu - k * sigma * gamma_j, 5/30, 1)
[[nodiscard]] double robust_coefficient(const UncertaintyMoments& moments, const MomentKey& key,
                                        const ChargerType& charger, double slot_hours, double fallback_pp);

/// Robust coefficient for a parking slot of an instance.
[[nodiscard]] double robust_coefficient(const UncertaintyMoments& moments, const FleetInstance& instance, int truck,
                                        int slot, const ChargerType& charger);

/// Sampled effective durations: per truck, per flat slot, per charger index
/// of the instance catalog. Zero off parking slots.
struct DurationSample {
    std::vector<std::vector<std::vector<double>>> value;  // [truck][slot][charger]

    [[nodiscard]] double at(int truck, int slot, int charger) const { return value.at(truck).at(slot).at(charger); }
    friend bool operator==(const DurationSample&, const DurationSample&) = default;
};

/// Draws one realisation per parking slot. A single uniform u in [-1, 1] is
/// shared by the charger types of a slot; the value for type j is uniform on
/// [mu - k*sigma*gamma_j, mu + k*sigma*gamma_j] intersected with [5/30, 1].
[[nodiscard]] DurationSample sample_durations(const UncertaintyMoments& moments, const FleetInstance& instance,
                                              std::uint64_t seed);

/// Realisation at the lower edge of the box set for every slot and type.
[[nodiscard]] DurationSample lower_edge_durations(const UncertaintyMoments& moments, const FleetInstance& instance);

/// The instance's own effective durations, replicated per charger type.
[[nodiscard]] DurationSample planning_durations(const FleetInstance& instance);

/// Robust bound written with the product y * (mu*y - sigma*gamma*y), evaluated
/// on a binary assignment; `coef_per_type[j]` is eta_j * P_j * dt.
[[nodiscard]] double quadratic_robust_bound(std::span<const int> y, std::span<const double> coef_per_type,
                                            double mu, double sigma, std::span<const double> gamma);
/// The linear form sum_j coef_j * (mu*y_j - sigma*gamma_j*y_j).
[[nodiscard]] double linear_robust_bound(std::span<const int> y, std::span<const double> coef_per_type, double mu,
                                         double sigma, std::span<const double> gamma);
/// True when y*y == y makes both forms identical for this assignment.
[[nodiscard]] bool linearization_check(std::span<const int> y, std::span<const double> coef_per_type, double mu,
                                       double sigma, std::span<const double> gamma);

/// CSV with columns truck,hour,zone,mu,sigma,count.
void write_moments_csv(const UncertaintyMoments& moments, const std::filesystem::path& path);
/// Reads the table written by write_moments_csv; gamma and multiplier are left at defaults.
[[nodiscard]] UncertaintyMoments read_moments_csv(const std::filesystem::path& path);

}  // namespace fleetcharge
