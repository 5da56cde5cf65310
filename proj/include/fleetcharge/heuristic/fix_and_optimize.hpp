#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "fleetcharge/model/planning_model.hpp"
#include "fleetcharge/solver/solution.hpp"
#include "fleetcharge/uncertainty/moments.hpp"

namespace fleetcharge {

struct HeuristicConfig {
    int max_iterations = 10;
    double kappa0 = 2.0;      // kWh slack on the slow-charger violation test
    double decay_rate = 0.7;  // per iteration
    std::uint64_t sample_seed = 1;
    int fast_cap_per_zone = 2;
    // Relative gap for the master and loop re-solves; the final solve uses
    // the caller's gap. The loop only forecasts violation slots.
    double loop_gap = 0.01;

    void validate() const;
};

struct IterationLog {
    int iteration = 0;
    int violations_found = 0;
    int fixed_slots = 0;  // cumulative
    double kappa = 0.0;
    double solve_time = 0.0;
    double objective = 0.0;

    friend bool operator==(const IterationLog&, const IterationLog&) = default;
};

/// kappa0 * decay_rate^(iteration - 1)
[[nodiscard]] double decay_kappa(int iteration, const HeuristicConfig& config);

/// Slots whose charged energy would not fit the sampled durations: slow
/// charging with p >= p' + kappa outside special zones, or fast charging
/// with p >= p'. `model` supplies the instance the solution belongs to.
[[nodiscard]] std::vector<TruckSlot> detect_violations(const PlanningModel& model, const Solution& solution,
                                                       const DurationSample& sampled, double kappa);

struct HeuristicResult {
    Installation installation;
    Solution solution;
    std::optional<PlanningModel> final_model;
    std::vector<IterationLog> logs;
    std::vector<TruckSlot> fixed;        // fixings kept for the final solve
    std::vector<int> dropped_zones;      // zones whose fast fixings were discarded
    DurationSample final_sample;
    bool degraded = false;               // final re-solve failed; best earlier incumbent returned
    double wall_time = 0.0;
};

/// Fix-and-optimize loop under parking-duration uncertainty. `base` carries
/// the case profile and penalties; its power-bound mode is overridden.
/// Throws std::runtime_error when the deterministic master has no solution.
[[nodiscard]] HeuristicResult run_fix_and_optimize(const FleetInstance& instance, const UncertaintyMoments& moments,
                                                   const HeuristicConfig& config, const SolveSettings& settings,
                                                   const ModelConfig& base = {},
                                                   const MilpBackend* backend = nullptr);

/// One JSON object per line: iteration, violations, fixed_total, kappa,
/// solve_seconds, objective.
void write_iteration_log(const std::vector<IterationLog>& logs, const std::filesystem::path& path);
[[nodiscard]] std::vector<IterationLog> read_iteration_log(const std::filesystem::path& path);

}  // namespace fleetcharge
