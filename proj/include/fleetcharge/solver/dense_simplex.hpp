#pragma once

#include <vector>

#include "fleetcharge/model/linear_program.hpp"

namespace fleetcharge {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    double objective = 0.0;
    std::vector<double> values;
};

/// LP relaxation of `program` with column bounds replaced by `lower`/`upper`.
/// Two-phase bounded primal simplex on a dense tableau.
[[nodiscard]] LpResult solve_lp_relaxation(const LinearProgram& program, const std::vector<double>& lower,
                                           const std::vector<double>& upper, int iteration_limit = 200000);

/// Same, using the program's own bounds.
[[nodiscard]] LpResult solve_lp_relaxation(const LinearProgram& program);

}  // namespace fleetcharge
