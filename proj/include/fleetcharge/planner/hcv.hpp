#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fleetcharge/core/instance.hpp"
#include "fleetcharge/uncertainty/moments.hpp"

namespace fleetcharge {

struct HcvConfig {
    double sigma_multiplier = 0.0;  // > 0 plans with worst-case durations
    std::uint64_t seed = 1;
    int trials = 3;

    void validate() const;
};

struct HcvReport {
    std::vector<int> kept;
    std::vector<int> hcv;
    std::vector<std::string> reason;  // one per hcv entry
    std::vector<double> margin;       // per truck: worst final minus initial SoC over trials
};

/// Greedy pre-simulation: every truck starts from a random SoC and charges as
/// much as possible at every parking slot. Trucks that never park, fall below
/// soc_min, or end below their starting SoC in any trial are HCVs. With
/// `moments` and a positive multiplier the worst-case durations are used.
[[nodiscard]] HcvReport filter_hcv(const FleetInstance& instance, const UncertaintyMoments* moments,
                                   const HcvConfig& config);

/// Kept trucks ordered by increasing margin, i.e. the next candidates to exclude.
[[nodiscard]] std::vector<int> hcv_suggestions(const HcvReport& report, int count);

/// truck,reason
void write_hcv_csv(const FleetInstance& instance, const HcvReport& report, const std::filesystem::path& path);

}  // namespace fleetcharge
