#include <chrono>
#include <cmath>

#include <Highs.h>

#include "fleetcharge/solver/backend.hpp"

namespace fleetcharge {

namespace {

double to_highs(double v) {
    if (v == kInf) return kHighsInf;
    if (v == -kInf) return -kHighsInf;
    return v;
}

HighsLp convert(const LinearProgram& lp) {
    HighsLp h;
    const int n = lp.column_count(), m = lp.row_count();
    h.num_col_ = n;
    h.num_row_ = m;
    h.sense_ = ObjSense::kMinimize;
    h.offset_ = lp.objective_offset();
    h.col_cost_.resize(n);
    h.col_lower_.resize(n);
    h.col_upper_.resize(n);
    h.integrality_.assign(n, HighsVarType::kContinuous);
    bool any_int = false;
    for (int j = 0; j < n; ++j) {
        const auto& c = lp.column(j);
        h.col_cost_[j] = c.cost;
        h.col_lower_[j] = to_highs(c.lower);
        h.col_upper_[j] = to_highs(c.upper);
        if (c.type != VarType::continuous) h.integrality_[j] = HighsVarType::kInteger, any_int = true;
    }
    if (!any_int) h.integrality_.clear();
    h.row_lower_.resize(m);
    h.row_upper_.resize(m);
    h.a_matrix_.format_ = MatrixFormat::kRowwise;
    h.a_matrix_.num_col_ = n;
    h.a_matrix_.num_row_ = m;
    h.a_matrix_.start_.assign(1, 0);
    for (int r = 0; r < m; ++r) {
        const auto& row = lp.row(r);
        h.row_lower_[r] = to_highs(row.lower);
        h.row_upper_[r] = to_highs(row.upper);
        for (std::size_t k = 0; k < row.index.size(); ++k) {
            if (row.coef[k] == 0.0) continue;
            h.a_matrix_.index_.push_back(row.index[k]);
            h.a_matrix_.value_.push_back(row.coef[k]);
        }
        h.a_matrix_.start_.push_back(static_cast<HighsInt>(h.a_matrix_.index_.size()));
    }
    return h;
}

// Continuous re-solve with the integer columns fixed at `values`.
bool polish(const LinearProgram& lp, std::vector<double>& values) {
    HighsLp fixed = convert(lp);
    for (int j = 0; j < lp.column_count(); ++j)
        if (lp.is_integral(j)) fixed.col_lower_[j] = fixed.col_upper_[j] = std::round(values[j]);
    fixed.integrality_.clear();
    Highs h;
    h.setOptionValue("output_flag", false);
    h.setOptionValue("solver", "simplex");
    h.setOptionValue("primal_feasibility_tolerance", 1e-10);
    h.setOptionValue("dual_feasibility_tolerance", 1e-9);
    if (h.passModel(std::move(fixed)) == HighsStatus::kError) return false;
    h.run();
    if (h.getModelStatus() != HighsModelStatus::kOptimal) return false;
    auto polished = h.getSolution().col_value;
    for (int j = 0; j < lp.column_count(); ++j)
        if (lp.is_integral(j)) polished[j] = std::round(values[j]);
    if (lp.max_violation(polished) > lp.max_violation(values) + 1e-12 &&
        lp.max_violation(polished) > 1e-9)
        return false;
    values = std::move(polished);
    return true;
}

// Conflicting rows of the LP relaxation. When the relaxation is feasible the
// conflict lies in integrality and the hint says so.
std::string iis_hint(const LinearProgram& lp) {
    Highs highs;
    highs.setOptionValue("output_flag", false);
    highs.setOptionValue("threads", 1);
    HighsLp relaxed = convert(lp);
    relaxed.integrality_.clear();
    if (highs.passModel(std::move(relaxed)) == HighsStatus::kError) return {};
    highs.run();
    if (highs.getModelStatus() != HighsModelStatus::kInfeasible) return "integrality (relaxation is feasible)";
    HighsIis iis;
    if (highs.getIis(iis) != HighsStatus::kOk || !iis.valid_) return {};
    std::string out;
    for (std::size_t k = 0; k < iis.row_index_.size() && k < 20; ++k) {
        if (!out.empty()) out += ' ';
        out += lp.row(iis.row_index_[k]).name;
    }
    return out;
}

class HighsBackend final : public MilpBackend {
public:
    [[nodiscard]] std::string name() const override { return "highs"; }

    [[nodiscard]] SolveResult solve(const LinearProgram& lp, const SolveSettings& settings) const override {
        settings.validate();
        const auto start = std::chrono::steady_clock::now();
        SolveResult res;
        res.backend = name();

        Highs highs;
        highs.setOptionValue("output_flag", settings.log_to_console);
        highs.setOptionValue("mip_rel_gap", settings.rel_gap);
        highs.setOptionValue("mip_abs_gap", settings.abs_gap);
        highs.setOptionValue("time_limit", settings.time_limit);
        highs.setOptionValue("threads", settings.threads);
        highs.setOptionValue("random_seed", static_cast<HighsInt>(settings.seed % 2147483647));
        highs.setOptionValue("primal_feasibility_tolerance", 1e-7);
        highs.setOptionValue("mip_feasibility_tolerance", 1e-7);
        if (highs.passModel(convert(lp)) == HighsStatus::kError)
            throw std::runtime_error("HiGHS rejected the model");
        if (settings.warm_start && static_cast<int>(settings.warm_start->size()) == lp.column_count()) {
            HighsSolution sol;
            sol.col_value = *settings.warm_start;
            sol.value_valid = true;
            highs.setSolution(sol);
        }
        highs.run();
        res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        const auto model_status = highs.getModelStatus();
        const auto& info = highs.getInfo();
        const bool feasible = info.primal_solution_status == kSolutionStatusFeasible;
        const bool mip = lp.column_count() > 0 && highs.getLp().integrality_.size() > 0;
        if (feasible) {
            res.values = highs.getSolution().col_value;
            if (mip && settings.polish) polish(lp, res.values);
            res.objective = lp.objective_value(res.values);
            res.bound = mip ? info.mip_dual_bound : res.objective;
            res.gap = relative_gap(res.objective, res.bound);
        }
        switch (model_status) {
            case HighsModelStatus::kOptimal:
                res.status = res.gap <= 1e-9 ? SolveStatus::optimal : SolveStatus::gap_limit;
                break;
            case HighsModelStatus::kInfeasible:
                res.status = SolveStatus::infeasible;
                break;
            case HighsModelStatus::kUnbounded:
                res.status = SolveStatus::unbounded;
                break;
            case HighsModelStatus::kUnboundedOrInfeasible:
                res.status = feasible ? SolveStatus::unbounded : SolveStatus::infeasible;
                break;
            default:
                res.status = feasible ? SolveStatus::time_limit_incumbent : SolveStatus::no_incumbent;
                break;
        }
        if (res.status == SolveStatus::infeasible || res.status == SolveStatus::unbounded || !feasible) {
            if (res.status == SolveStatus::infeasible) res.infeasibility_hint = iis_hint(lp);
            res.values.clear();
        }
        return res;
    }
};

}  // namespace

std::unique_ptr<MilpBackend> make_highs_backend() { return std::make_unique<HighsBackend>(); }

}  // namespace fleetcharge
