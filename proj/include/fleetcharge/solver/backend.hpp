#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fleetcharge/model/linear_program.hpp"

namespace fleetcharge {

enum class SolveStatus {
    optimal,
    gap_limit,             // stopped with gap <= rel_gap but > 0
    time_limit_incumbent,  // time limit hit, incumbent available
    no_incumbent,          // time limit hit without any feasible point
    infeasible,
    unbounded,
};

[[nodiscard]] std::string to_string(SolveStatus status);
[[nodiscard]] inline bool has_incumbent(SolveStatus s) {
    return s == SolveStatus::optimal || s == SolveStatus::gap_limit || s == SolveStatus::time_limit_incumbent;
}

/// Row satisfaction tolerance shared by all backends and by the checks on
/// returned points.
inline constexpr double kFeasibilityTolerance = 1e-6;

struct SolveSettings {
    double rel_gap = 0.01;
    double abs_gap = 1e-6;
    double time_limit = 3600.0;  // seconds
    int threads = 1;
    std::uint64_t seed = 0;
    std::optional<std::vector<double>> warm_start;  // full column vector
    bool log_to_console = false;
    bool polish = true;  // re-solve the continuous part with integers fixed, at tight tolerances

    void validate() const;
};

struct SolveResult {
    SolveStatus status = SolveStatus::infeasible;
    double objective = 0.0;
    double bound = 0.0;
    double gap = 0.0;
    std::vector<double> values;  // one per column; empty without incumbent
    double wall_time = 0.0;      // seconds
    std::string backend;
    std::string infeasibility_hint;  // row names of a conflicting subsystem, if known
};

class MilpBackend {
public:
    virtual ~MilpBackend() = default;
    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual SolveResult solve(const LinearProgram& program, const SolveSettings& settings) const = 0;
};

/// HiGHS branch-and-cut.
[[nodiscard]] std::unique_ptr<MilpBackend> make_highs_backend();
/// Branch-and-bound over a dense bounded simplex. Meant for small models.
[[nodiscard]] std::unique_ptr<MilpBackend> make_bnb_backend();

/// Backend by name: "highs" or "bnb".
[[nodiscard]] std::unique_ptr<MilpBackend> make_backend(const std::string& name);
/// Backend named by FLEETCHARGE_SOLVER, HiGHS when unset.
[[nodiscard]] std::unique_ptr<MilpBackend> default_backend();

/// Relative gap |primal - bound| / max(|primal|, 1) as reported in results.
[[nodiscard]] double relative_gap(double primal, double bound);

}  // namespace fleetcharge
