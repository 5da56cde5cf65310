#pragma once

#include <array>
#include <string>
#include <vector>

#include "fleetcharge/model/planning_model.hpp"
#include "fleetcharge/solver/backend.hpp"

namespace fleetcharge {

/// Installed chargers per zone, indexed by ChargerKind.
struct Installation {
    std::vector<std::array<int, 2>> count;  // [zone][kind]

    static Installation zeros(int zones) { return {std::vector<std::array<int, 2>>(zones, {0, 0})}; }
    [[nodiscard]] int zone_count() const noexcept { return static_cast<int>(count.size()); }
    [[nodiscard]] int at(int zone, ChargerKind kind) const { return count.at(zone)[static_cast<int>(kind)]; }
    [[nodiscard]] int total(ChargerKind kind) const;
    /// Sum of capital costs over the catalog kinds.
    [[nodiscard]] double cost(const std::vector<ChargerType>& catalog) const;
    /// Component-wise a >= b.
    [[nodiscard]] bool dominates(const Installation& other) const;

    friend bool operator==(const Installation&, const Installation&) = default;
};

/// Per-slot schedule of one truck. Off parking slots, charger is -1 and the
/// parking-only quantities are 0.
struct TruckSchedule {
    std::vector<int> charger;     // catalog index, -1 when idle
    std::vector<int> abandoned;   // 0/1
    std::vector<double> wait;     // hours
    std::vector<double> soc;
    std::vector<double> energy;   // kWh charged
    std::vector<double> shortfall;
    std::vector<int> low_soc;     // anxiety indicator

    friend bool operator==(const TruckSchedule&, const TruckSchedule&) = default;
};

struct ObjectiveTerms {
    double installation = 0.0;
    double low_soc_penalty = 0.0;
    double charging_penalty = 0.0;
    [[nodiscard]] double total() const noexcept { return installation + low_soc_penalty + charging_penalty; }
};

struct Solution {
    SolveStatus status = SolveStatus::infeasible;
    double objective = 0.0;
    double bound = 0.0;
    double gap = 0.0;
    double wall_time = 0.0;
    std::string backend;
    std::string infeasibility_hint;
    Installation installation;
    std::vector<TruckSchedule> trucks;
    ObjectiveTerms terms;
    std::vector<double> values;  // raw column values, usable as a warm start

    [[nodiscard]] bool usable() const noexcept { return has_incumbent(status); }
};

/// Rounds the installation columns, rejecting values more than 1e-6 away
/// from an integer.
[[nodiscard]] Installation extract_installation(const PlanningModel& model, const std::vector<double>& values);
[[nodiscard]] Installation extract_installation(const PlanningModel& model, const Solution& solution);

/// Turns raw column values into schedules. Waiting is recomputed from the
/// charging decisions and abandonment is reduced to its smallest feasible
/// value: a slot is abandoned once the wait exceeds its cap or an earlier
/// slot of the stretch was abandoned.
[[nodiscard]] Solution interpret(const PlanningModel& model, const SolveResult& result);

[[nodiscard]] Solution solve(const PlanningModel& model, const SolveSettings& settings, const MilpBackend& backend);
[[nodiscard]] Solution solve(const PlanningModel& model, const SolveSettings& settings);

/// Column vector of a solution mapped onto another model built from the same
/// instance (same catalog layout). Used to warm start re-solves.
[[nodiscard]] std::vector<double> warm_start_vector(const PlanningModel& model, const Solution& solution);

}  // namespace fleetcharge
