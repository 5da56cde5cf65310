#include "fleetcharge/solver/backend.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "fleetcharge/core/time_grid.hpp"
#include "fleetcharge/solver/dense_simplex.hpp"

namespace fleetcharge {

std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::gap_limit: return "gap_limit";
        case SolveStatus::time_limit_incumbent: return "time_limit_incumbent";
        case SolveStatus::no_incumbent: return "no_incumbent";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::unbounded: return "unbounded";
    }
    return "unknown";
}

void SolveSettings::validate() const {
    if (rel_gap < 0.0) throw ContractViolation("SolveSettings: rel_gap must be >= 0");
    if (abs_gap < 0.0) throw ContractViolation("SolveSettings: abs_gap must be >= 0");
    if (!(time_limit > 0.0)) throw ContractViolation("SolveSettings: time_limit must be > 0");
    if (threads < 1) throw ContractViolation("SolveSettings: threads must be >= 1");
}

double relative_gap(double primal, double bound) {
    return std::abs(primal - bound) / std::max(std::abs(primal), 1.0);
}

namespace {

class BnbBackend final : public MilpBackend {
public:
    [[nodiscard]] std::string name() const override { return "bnb"; }

    [[nodiscard]] SolveResult solve(const LinearProgram& lp, const SolveSettings& settings) const override {
        settings.validate();
        const auto start = std::chrono::steady_clock::now();
        auto elapsed = [&] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        };
        const int n = lp.column_count();
        SolveResult res;
        res.backend = name();

        double incumbent = kInf;
        std::vector<double> best;
        auto offer = [&](std::vector<double> x) {
            for (int j = 0; j < n; ++j)
                if (lp.is_integral(j)) x[j] = std::round(x[j]);
            if (lp.max_violation(x) > kFeasibilityTolerance) return;
            const double obj = lp.objective_value(x);
            if (obj < incumbent) incumbent = obj, best = std::move(x);
        };
        if (settings.warm_start && static_cast<int>(settings.warm_start->size()) == n) offer(*settings.warm_start);

        struct Node {
            std::vector<double> lower, upper;
            double bound;
        };
        std::vector<Node> stack;
        {
            Node root;
            for (const auto& c : lp.columns()) {
                double lo = c.lower, up = c.upper;
                if (c.type != VarType::continuous) lo = std::ceil(lo - 1e-9), up = std::floor(up + 1e-9);
                root.lower.push_back(lo);
                root.upper.push_back(up);
            }
            root.bound = -kInf;
            stack.push_back(std::move(root));
        }
        auto cutoff = [&] {
            return incumbent == kInf ? kInf
                                     : incumbent - std::max(settings.abs_gap, settings.rel_gap * std::abs(incumbent));
        };
        double pruned_bound = kInf;  // best bound among nodes dropped by the gap test
        bool root_done = false, timed_out = false;

        while (!stack.empty()) {
            if (elapsed() > settings.time_limit) {
                timed_out = true;
                break;
            }
            Node node = std::move(stack.back());
            stack.pop_back();
            if (node.bound >= cutoff()) {
                pruned_bound = std::min(pruned_bound, node.bound);
                continue;
            }
            const LpResult rel = solve_lp_relaxation(lp, node.lower, node.upper);
            if (!root_done) {
                root_done = true;
                if (rel.status == LpStatus::unbounded) {
                    res.status = SolveStatus::unbounded;
                    res.wall_time = elapsed();
                    return res;
                }
            }
            if (rel.status != LpStatus::optimal) continue;
            if (rel.objective >= cutoff()) {
                pruned_bound = std::min(pruned_bound, rel.objective);
                continue;
            }
            int branch = -1;
            double worst = 1e-6;
            for (int j = 0; j < n; ++j) {
                if (!lp.is_integral(j)) continue;
                const double f = rel.values[j] - std::floor(rel.values[j]);
                const double dist = std::min(f, 1.0 - f);
                if (dist > worst) worst = dist, branch = j;
            }
            if (branch < 0) {
                offer(rel.values);
                continue;
            }
            const double v = rel.values[branch];
            Node down{node.lower, node.upper, rel.objective};
            down.upper[branch] = std::floor(v);
            Node up{std::move(node.lower), std::move(node.upper), rel.objective};
            up.lower[branch] = std::ceil(v);
            // Nearer rounding is explored first.
            if (v - std::floor(v) < 0.5) {
                stack.push_back(std::move(up));
                stack.push_back(std::move(down));
            } else {
                stack.push_back(std::move(down));
                stack.push_back(std::move(up));
            }
        }

        res.wall_time = elapsed();
        if (best.empty()) {
            res.status = timed_out ? SolveStatus::no_incumbent : SolveStatus::infeasible;
            return res;
        }
        double bound = std::min(pruned_bound, incumbent);
        if (timed_out)
            for (const auto& node : stack) bound = std::min(bound, node.bound);
        res.objective = incumbent;
        res.bound = bound;
        res.gap = relative_gap(incumbent, bound);
        res.values = std::move(best);
        if (timed_out)
            res.status = SolveStatus::time_limit_incumbent;
        else
            res.status = res.gap <= 1e-9 ? SolveStatus::optimal : SolveStatus::gap_limit;
        return res;
    }
};

}  // namespace

std::unique_ptr<MilpBackend> make_bnb_backend() { return std::make_unique<BnbBackend>(); }

std::unique_ptr<MilpBackend> make_backend(const std::string& name) {
    if (name == "highs") return make_highs_backend();
    if (name == "bnb") return make_bnb_backend();
    throw std::invalid_argument("unknown solver backend: " + name);
}

std::unique_ptr<MilpBackend> default_backend() {
    const char* env = std::getenv("FLEETCHARGE_SOLVER");
    return make_backend(env && *env ? env : "highs");
}

}  // namespace fleetcharge
