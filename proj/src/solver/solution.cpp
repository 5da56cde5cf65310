#include "fleetcharge/solver/solution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fleetcharge {

int Installation::total(ChargerKind kind) const {
    int t = 0;
    for (const auto& c : count) t += c[static_cast<int>(kind)];
    return t;
}

double Installation::cost(const std::vector<ChargerType>& catalog) const {
    double total = 0.0;
    for (const auto& c : count)
        for (const auto& type : catalog) total += c[static_cast<int>(type.kind)] * type.capital_cost;
    return total;
}

bool Installation::dominates(const Installation& other) const {
    if (other.zone_count() != zone_count()) throw std::invalid_argument("Installation: zone count mismatch");
    for (int z = 0; z < zone_count(); ++z)
        for (int k = 0; k < 2; ++k)
            if (count[z][k] < other.count[z][k]) return false;
    return true;
}

namespace {

constexpr double kIntegralityTolerance = 1e-6;

long long checked_round(double v, const std::string& what) {
    const double r = std::round(v);
    if (std::abs(v - r) > kIntegralityTolerance)
        throw std::runtime_error(what + " is fractional (" + std::to_string(v) + ")");
    return static_cast<long long>(r);
}

}  // namespace

Installation extract_installation(const PlanningModel& model, const std::vector<double>& values) {
    const auto& inst = model.instance();
    if (static_cast<int>(values.size()) != model.program().column_count())
        throw std::invalid_argument("extract_installation: value vector does not match the model");
    Installation out = Installation::zeros(inst.zone_count());
    for (int z = 0; z < inst.zone_count(); ++z)
        for (int j = 0; j < inst.charger_count(); ++j) {
            const int col = model.vars().x[z][j];
            out.count[z][static_cast<int>(inst.chargers[j].kind)] =
                static_cast<int>(checked_round(values[col], model.program().column(col).name));
        }
    return out;
}

Installation extract_installation(const PlanningModel& model, const Solution& solution) {
    if (!solution.usable()) throw std::invalid_argument("extract_installation: solution has no incumbent");
    return extract_installation(model, solution.values);
}

Solution interpret(const PlanningModel& model, const SolveResult& result) {
    Solution sol;
    sol.status = result.status;
    sol.objective = result.objective;
    sol.bound = result.bound;
    sol.gap = result.gap;
    sol.wall_time = result.wall_time;
    sol.backend = result.backend;
    sol.infeasibility_hint = result.infeasibility_hint;
    if (!has_incumbent(result.status)) return sol;

    const auto& inst = model.instance();
    const auto& vars = model.vars();
    const auto& x = result.values;
    const int I = inst.truck_count(), S = inst.slot_count(), J = inst.charger_count();
    const double dt = inst.grid.slot_hours();
    const auto& pen = model.config().penalties;
    sol.values = x;
    sol.installation = extract_installation(model, x);
    sol.terms.installation = sol.installation.cost(inst.chargers);

    sol.trucks.resize(I);
    for (int i = 0; i < I; ++i) {
        auto& ts = sol.trucks[i];
        ts.charger.assign(S, -1);
        ts.abandoned.assign(S, 0);
        ts.wait.assign(S, 0.0);
        ts.soc.assign(S, 0.0);
        ts.energy.assign(S, 0.0);
        ts.shortfall.assign(S, 0.0);
        ts.low_soc.assign(S, 0);
        for (int s = 0; s < S; ++s) {
            ts.soc[s] = x[vars.b[i][s]];
            ts.shortfall[s] = x[vars.v[i][s]];
            sol.terms.low_soc_penalty += pen.low_soc * ts.shortfall[s];
            if (!inst.parked(i, s)) continue;
            for (int j = 0; j < J; ++j) {
                const int col = vars.y[i][s][j];
                if (checked_round(x[col], model.program().column(col).name) == 1) {
                    ts.charger[s] = j;
                    sol.terms.charging_penalty += pen.charging;
                }
            }
            ts.energy[s] = ts.charger[s] >= 0 ? x[vars.p[i][s]] : 0.0;
            const int d30 = vars.delta30[i][s];
            if (d30 != kNoColumn) ts.low_soc[s] = static_cast<int>(checked_round(x[d30], "low-SoC indicator"));
        }
        for (const auto& st : parked_stretches(inst, i)) {
            const bool special = inst.zones[st.zone].is_special;
            bool gone = false;
            for (int s = st.first; s <= st.last(); ++s) {
                if (s > st.first) ts.wait[s] = ts.wait[s - 1] + (ts.charger[s - 1] >= 0 ? 0.0 : dt);
                if (!gone && !special) {
                    const double cap = vars.delta30[i][s] != kNoColumn ? dt * ts.low_soc[s] : 0.0;
                    gone = ts.wait[s] > cap + 1e-9;
                }
                ts.abandoned[s] = gone ? 1 : 0;
            }
        }
    }
    return sol;
}

Solution solve(const PlanningModel& model, const SolveSettings& settings, const MilpBackend& backend) {
    return interpret(model, backend.solve(model.program(), settings));
}

Solution solve(const PlanningModel& model, const SolveSettings& settings) {
    return solve(model, settings, *default_backend());
}

std::vector<double> warm_start_vector(const PlanningModel& model, const Solution& solution) {
    const auto& inst = model.instance();
    const auto& vars = model.vars();
    const auto& lp = model.program();
    std::vector<double> x(lp.column_count(), 0.0);
    for (int j = 0; j < lp.column_count(); ++j) x[j] = std::clamp(0.0, lp.column(j).lower, lp.column(j).upper);
    for (int z = 0; z < inst.zone_count(); ++z)
        for (int j = 0; j < inst.charger_count(); ++j)
            x[vars.x[z][j]] = solution.installation.at(z, inst.chargers[j].kind);
    const double th = inst.anxiety_threshold;
    for (int i = 0; i < inst.truck_count(); ++i) {
        const auto& ts = solution.trucks.at(i);
        for (int s = 0; s < inst.slot_count(); ++s) {
            x[vars.b[i][s]] = ts.soc[s];
            x[vars.v[i][s]] = std::max(0.0, th - ts.soc[s]);
            if (!inst.parked(i, s)) continue;
            for (int j = 0; j < inst.charger_count(); ++j) x[vars.y[i][s][j]] = ts.charger[s] == j ? 1.0 : 0.0;
            x[vars.a[i][s]] = ts.abandoned[s];
            x[vars.w[i][s]] = ts.wait[s];
            x[vars.p[i][s]] = ts.energy[s];
            if (vars.delta30[i][s] != kNoColumn) x[vars.delta30[i][s]] = ts.soc[s] <= th ? 1.0 : 0.0;
        }
    }
    return x;
}

}  // namespace fleetcharge
