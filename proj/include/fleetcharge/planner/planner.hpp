#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fleetcharge/heuristic/fix_and_optimize.hpp"
#include "fleetcharge/planner/day_selection.hpp"
#include "fleetcharge/planner/hcv.hpp"
#include "fleetcharge/solver/solution.hpp"

namespace fleetcharge {

/// A planning step had no usable solution.
class PlanningError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PlannerConfig {
    ModelConfig model;              // case profile and penalties; the mode is derived
    double sigma_multiplier = 0.0;  // 0 plans with the instance durations
    double fast_gamma = 1.0;        // spread reduction of fast chargers
    bool use_heuristic = false;
    HeuristicConfig heuristic;
    SolveSettings settings;
    bool exclude_hcv = true;
    HcvConfig hcv;
    DaySelectionConfig days;
    DayCriteriaConfig criteria;
    int month_overlap = 3;        // days prepended to every month
    double penalty_slack = 0.05;  // scheduling-only penalty allowed above the joint one

    void validate() const;
};

/// Moments of the instance's own effective durations with the planner's
/// spread settings.
[[nodiscard]] UncertaintyMoments planner_moments(const FleetInstance& instance, const PlannerConfig& config);

struct PlanRecord {
    FleetInstance instance;  // sub-instance that was solved (before the case switches)
    std::vector<int> days;   // horizon days it covers
    std::vector<int> trucks; // horizon truck indices it covers
    HcvReport hcv;
    Installation installation;
    Solution solution;
    std::optional<PlanningModel> model;
    std::vector<IterationLog> logs;  // heuristic only
    bool degraded = false;
};

/// Solves `instance` with the planner's mode: robust when the multiplier is
/// positive (through fix-and-optimize if enabled), deterministic otherwise.
/// `carried` bounds the installation from below.
[[nodiscard]] PlanRecord plan_instance(const FleetInstance& instance, const UncertaintyMoments& moments,
                                       const PlannerConfig& config, const Installation* carried = nullptr);

/// Day selection: scores the horizon, keeps the representative days, removes
/// HCVs and solves the sub-instance.
[[nodiscard]] PlanRecord plan_ds(const FleetInstance& year, const std::vector<std::vector<double>>& daily_km,
                                 const PlannerConfig& config, const UncertaintyMoments* moments = nullptr);

struct MonthlyWindow {
    int month = 1;      // 1-based
    int first_day = 0;  // first day of the month proper
    int end_day = 0;    // one past the last day
    int window_first = 0;  // first day including the overlap
    Installation carried;  // installation after this month
    bool joint = false;    // installation re-optimised this month
    std::vector<int> trucks;
    Solution solution;
};

struct IpsRecord {
    std::vector<MonthlyWindow> months;
    Installation installation;
};

/// Month lengths of the horizon: calendar months for 365 or 366 days,
/// otherwise 12 near-equal parts (fewer when the horizon is shorter).
[[nodiscard]] std::vector<int> month_lengths(int days);

/// Iterative planning: months in order, scheduling-only with the carried
/// installation first, joint re-solve with the carried counts as lower
/// bounds when that fails or loses too much penalty.
[[nodiscard]] IpsRecord plan_ips(const FleetInstance& year, const std::vector<int>& months,
                                 const PlannerConfig& config, const UncertaintyMoments* moments = nullptr);

/// Scheduling-only re-solve of every month with the final installation,
/// replayed under the planning durations. One flag per month.
[[nodiscard]] std::vector<bool> ips_sufficiency(const FleetInstance& year, const IpsRecord& record,
                                                const PlannerConfig& config);

/// month,first_day,end_day,zone,slow,fast,joint
void write_trajectory_csv(const IpsRecord& record, const std::filesystem::path& path);

}  // namespace fleetcharge
