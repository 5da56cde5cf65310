#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fleetcharge/core/instance.hpp"
#include "fleetcharge/report/metrics.hpp"
#include "fleetcharge/solver/solution.hpp"
#include "fleetcharge/uncertainty/moments.hpp"

namespace fleetcharge {

/// Charging decisions to replay. `initial_soc` is the state of charge before
/// the first slot.
struct Schedule {
    std::vector<std::vector<int>> charger;    // [truck][slot], catalog index or -1
    std::vector<std::vector<double>> energy;  // kWh charged in the slot
    std::vector<double> initial_soc;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

[[nodiscard]] Schedule schedule_from(const Solution& solution);

/// A broken rule. `tag` names the constraint family the same way the model
/// rows do (`powerbound`, `capacity`, `fastcap_pre`, ...); `window` and
/// `socbox` stand for the variable domains.
struct Violation {
    std::string tag;
    int truck = -1;  // -1 for zone-level rules
    int zone = -1;
    int slot = 0;    // flat index
    double amount = 0.0;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ReplayOptions {
    bool anxiety_allowance = true;
    double tolerance = 1e-6;
};

struct ReplayResult {
    bool feasible = true;
    std::vector<Violation> violations;
    std::vector<std::vector<double>> soc;   // end-of-slot state of charge
    std::vector<std::vector<double>> wait;  // hours
    std::vector<std::vector<int>> abandoned;
    ScheduleMetrics metrics;
};

/// Steps the waiting, abandonment and battery state of every truck through
/// the horizon under the given effective durations and checks every rule.
[[nodiscard]] ReplayResult replay(const FleetInstance& instance, const Installation& installation,
                                  const Schedule& schedule, const DurationSample& durations,
                                  const ReplayOptions& options = {});

/// CSV with columns truck,day,slot,charger,energy_kwh,soc; one row per slot.
/// `charger` is `slow`, `fast` or empty.
void write_schedule_csv(const FleetInstance& instance, const Solution& solution, const std::filesystem::path& path);
[[nodiscard]] Schedule read_schedule_csv(const FleetInstance& instance, const std::filesystem::path& path);

}  // namespace fleetcharge
