#include "fleetcharge/model/planning_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace fleetcharge {

BigMSet compute_big_m(const FleetInstance& instance) {
    instance.validate();
    BigMSet m;
    const double dt = instance.grid.slot_hours();
    const double th = instance.anxiety_threshold;
    m.m1 = std::max(instance.soc_max - th, th + instance.epsilon - instance.soc_min);
    m.m3 = instance.soc_max - instance.fast_soc_ceiling;
    int longest = 0, longest_special = 0;
    bool any = false;
    for (int i = 0; i < instance.truck_count(); ++i)
        for (const auto& st : parked_stretches(instance, i)) {
            any = true;
            if (instance.zones[st.zone].is_special)
                longest_special = std::max(longest_special, st.length);
            else
                longest = std::max(longest, st.length);
        }
    m.w_max = longest * dt;
    m.w_max_special = longest_special * dt;
    m.m2 = m.w_max;
    m.no_parking = !any;
    return m;
}

std::string to_string(CaseProfile profile) {
    switch (profile) {
        case CaseProfile::benchmark: return "benchmark";
        case CaseProfile::full_parking: return "full-parking";
        case CaseProfile::no_overnight: return "no-overnight";
        case CaseProfile::no_anxiety: return "no-anxiety";
    }
    throw std::invalid_argument("unknown case profile");
}

CaseProfile case_profile_from_string(const std::string& name) {
    std::string n = name;
    std::replace(n.begin(), n.end(), '_', '-');
    if (n == "benchmark") return CaseProfile::benchmark;
    if (n == "full-parking") return CaseProfile::full_parking;
    if (n == "no-overnight") return CaseProfile::no_overnight;
    if (n == "no-anxiety") return CaseProfile::no_anxiety;
    throw std::invalid_argument("unknown case profile: " + name);
}

ModelConfig set_case_profile(ModelConfig config, CaseProfile profile) {
    config.profile = profile;
    config.anxiety_allowance = profile != CaseProfile::no_anxiety;
    config.force_full_parking = profile == CaseProfile::full_parking;
    config.clear_special_zones = profile == CaseProfile::no_overnight;
    return config;
}

FleetInstance apply_case(const FleetInstance& instance, const ModelConfig& config) {
    FleetInstance out = instance;
    if (config.clear_special_zones)
        for (auto& z : out.zones) z.is_special = false;
    if (config.force_full_parking)
        for (auto& ser : out.series)
            for (std::size_t s = 0; s < ser.pp.size(); ++s)
                if (ser.zone[s] != kNoZone) ser.pp[s] = 1.0;
    return out;
}

std::string slot_label(const FleetInstance& instance, int truck, int slot) {
    const auto [d, t] = instance.grid.unflat(slot);
    return std::to_string(truck) + "_" + std::to_string(d) + "_" + std::to_string(t);
}

double PlanningModel::power_coefficient(int truck, int slot, int charger) const {
    return coef_.at(truck).at(slot).at(charger);
}

const std::vector<int>& PlanningModel::rows_tagged(const std::string& tag) const {
    static const std::vector<int> none;
    auto it = tags_.find(tag);
    return it == tags_.end() ? none : it->second;
}

PlanningModel build_model(const FleetInstance& source, const ModelConfig& config, const UncertaintyMoments* moments,
                          const DurationSample* durations) {
    if (config.penalties.low_soc < 0.0 || config.penalties.charging < 0.0)
        throw std::invalid_argument("build_model: penalties must be non-negative");
    if (config.mode == PowerBoundMode::robust && moments == nullptr)
        throw std::invalid_argument("build_model: robust mode requires uncertainty moments");
    if (config.mode == PowerBoundMode::sampled && durations == nullptr)
        throw std::invalid_argument("build_model: sampled mode requires a duration realisation");
    if (moments) moments->validate();

    PlanningModel m;
    m.instance_ = std::make_shared<const FleetInstance>(apply_case(source, config));
    m.config_ = config;
    const FleetInstance& inst = *m.instance_;
    m.big_m_ = compute_big_m(inst);
    const BigMSet& bm = m.big_m_;
    if (bm.no_parking) m.warnings_.push_back("instance has no parking slot; waiting cap constant is 0");

    const int I = inst.truck_count(), S = inst.slot_count(), Z = inst.zone_count(), J = inst.charger_count();
    const double dt = inst.grid.slot_hours();
    const double th = inst.anxiety_threshold;
    const auto fast = inst.charger_index(ChargerKind::fast);
    auto& lp = m.lp_;
    auto& vars = m.vars_;

    auto row = [&](const std::string& tag, const std::string& suffix, double lo, double hi, std::vector<int> idx,
                   std::vector<double> cf) {
        const int r = lp.add_row(tag + "_" + suffix, lo, hi, std::move(idx), std::move(cf));
        m.tags_[tag].push_back(r);
    };

    // Installation counts, bounded by the peak number of trucks parked together.
    std::vector<int> peak(Z, 0);
    for (int s = 0; s < S; ++s) {
        std::vector<int> here(Z, 0);
        for (int i = 0; i < I; ++i)
            if (inst.parked(i, s)) ++here[inst.zone_at(i, s)];
        for (int z = 0; z < Z; ++z) peak[z] = std::max(peak[z], here[z]);
    }
    vars.x.assign(Z, std::vector<int>(J, kNoColumn));
    for (int z = 0; z < Z; ++z)
        for (int j = 0; j < J; ++j)
            vars.x[z][j] = lp.add_column("x_" + std::to_string(z) + "_" + std::to_string(j), 0.0, peak[z],
                                         inst.chargers[j].capital_cost, VarType::integer);

    // Power-bound coefficients.
    m.coef_.assign(I, std::vector<std::vector<double>>(S, std::vector<double>(J, 0.0)));
    for (int i = 0; i < I; ++i)
        for (int s = 0; s < S; ++s) {
            if (!inst.parked(i, s)) continue;
            for (int j = 0; j < J; ++j) {
                const auto& c = inst.chargers[j];
                double coef = c.slot_energy_kwh(dt) * inst.series[i].pp[s];
                if (!config.force_full_parking) {
                    if (config.mode == PowerBoundMode::robust)
                        coef = robust_coefficient(*moments, inst, i, s, c);
                    else if (config.mode == PowerBoundMode::sampled)
                        coef = c.slot_energy_kwh(dt) * durations->at(i, s, j);
                }
                m.coef_[i][s][j] = coef;
            }
        }

    const auto none = std::vector<int>(S, kNoColumn);
    vars.y.assign(I, std::vector<std::vector<int>>(S, std::vector<int>(J, kNoColumn)));
    vars.a.assign(I, none);
    vars.w.assign(I, none);
    vars.b.assign(I, none);
    vars.p.assign(I, none);
    vars.v.assign(I, none);
    vars.delta30.assign(I, none);

    for (int i = 0; i < I; ++i) {
        const auto& ser = inst.series[i];
        const double E = inst.trucks[i].battery_kwh;
        const auto stretches = parked_stretches(inst, i);
        std::vector<int> position(S, -1);  // index within the parked stretch
        for (const auto& st : stretches)
            for (int k = 0; k < st.length; ++k) position[st.first + k] = k;

        double consumed = 0.0;
        for (double r : ser.rho) consumed += r;
        if (stretches.empty() && consumed > 0.0)
            m.warnings_.push_back("truck " + inst.trucks[i].id +
                                  " never parks but consumes energy; the cyclic SoC balance is infeasible");

        for (int s = 0; s < S; ++s) {
            const std::string lab = slot_label(inst, i, s);
            vars.b[i][s] = lp.add_column("b_" + lab, inst.soc_min, inst.soc_max, 0.0, VarType::continuous);
            vars.v[i][s] = lp.add_column("v_" + lab, 0.0, kInf, config.penalties.low_soc, VarType::continuous);
            if (!inst.parked(i, s)) continue;
            double pmax = 0.0;
            for (int j = 0; j < J; ++j) {
                vars.y[i][s][j] = lp.add_column("y_" + lab + "_" + std::to_string(j), 0.0, 1.0,
                                                config.penalties.charging, VarType::binary);
                pmax = std::max(pmax, m.coef_[i][s][j]);
            }
            vars.a[i][s] = lp.add_column("a_" + lab, 0.0, 1.0, 0.0, VarType::binary);
            vars.w[i][s] = lp.add_column("w_" + lab, 0.0, position[s] * dt, 0.0, VarType::continuous);
            vars.p[i][s] = lp.add_column("p_" + lab, 0.0, pmax, 0.0, VarType::continuous);
            if (config.anxiety_allowance && !inst.special_at(i, s))
                vars.delta30[i][s] = lp.add_column("d30_" + lab, 0.0, 1.0, 0.0, VarType::binary);
        }

        // Aggregate of the balance and power-bound rows over the cycle; redundant
        // but it gives the solver a knapsack row to cut on.
        if (!stretches.empty() && consumed > 0.0) {
            std::vector<int> idx;
            std::vector<double> cf;
            for (int s = 0; s < S; ++s)
                if (inst.parked(i, s))
                    for (int j = 0; j < J; ++j) idx.push_back(vars.y[i][s][j]), cf.push_back(m.coef_[i][s][j]);
            row("energycover", std::to_string(i), consumed, kInf, std::move(idx), std::move(cf));
        }

        for (int s = 0; s < S; ++s) {
            const std::string lab = slot_label(inst, i, s);
            const int b = vars.b[i][s];
            row("shortfall", lab, th, kInf, {vars.v[i][s], b}, {1.0, 1.0});

            // Battery energy balance; the first slot wraps to the last one.
            const int prev = vars.b[i][(s + S - 1) % S];
            std::vector<int> idx;
            std::vector<double> cf;
            if (prev != b) idx = {b, prev}, cf = {E, -E};
            if (vars.p[i][s] != kNoColumn) idx.push_back(vars.p[i][s]), cf.push_back(-1.0);
            if (idx.empty()) idx = {b}, cf = {0.0};
            row(s == 0 ? "cyclic" : "balance", lab, -ser.rho[s], -ser.rho[s], std::move(idx), std::move(cf));

            if (!inst.parked(i, s)) continue;
            const auto& ys = vars.y[i][s];
            const int a = vars.a[i][s], w = vars.w[i][s], d30 = vars.delta30[i][s];

            if (J >= 2) row("singlecharger", lab, -kInf, 1.0, ys, std::vector<double>(J, 1.0));
            {
                std::vector<int> idx2{vars.p[i][s]};
                std::vector<double> cf2{1.0};
                for (int j = 0; j < J; ++j) idx2.push_back(ys[j]), cf2.push_back(-m.coef_[i][s][j]);
                row("powerbound", lab, -kInf, 0.0, std::move(idx2), std::move(cf2));
            }
            {
                std::vector<int> idx2{a};
                std::vector<double> cf2{1.0};
                for (int j = 0; j < J; ++j) idx2.push_back(ys[j]), cf2.push_back(1.0);
                row("abandon", lab, -kInf, 1.0, std::move(idx2), std::move(cf2));
            }
            if (fast) {
                const int yf = ys[*fast];
                const double cap = inst.fast_soc_ceiling + bm.m3;
                row("fastcap_pre", lab, -kInf, cap, {b, yf}, {1.0, bm.m3});
                if (s + 1 < S) row("fastcap_post", lab, -kInf, cap, {vars.b[i][s + 1], yf}, {1.0, bm.m3});
            }
            if (d30 != kNoColumn) {
                row("lowsoc_lo", lab, th + inst.epsilon, kInf, {b, d30}, {1.0, bm.m1});
                row("lowsoc_hi", lab, -kInf, th + bm.m1, {b, d30}, {1.0, bm.m1});
            }
            if (!inst.special_at(i, s)) {
                if (d30 != kNoColumn)
                    row("waitcap", lab, -kInf, 0.0, {w, d30, a}, {1.0, -dt, -bm.m2});
                else
                    row("waitcap", lab, -kInf, 0.0, {w, a}, {1.0, -bm.m2});
            }
            if (position[s] == 0) row("waitreset", lab, 0.0, 0.0, {w}, {1.0});
            if (s + 1 < S && position[s + 1] == position[s] + 1) {
                const std::string nl = slot_label(inst, i, s + 1);
                std::vector<int> idx2{vars.w[i][s + 1], w};
                std::vector<double> cf2{1.0, -1.0};
                for (int j = 0; j < J; ++j) idx2.push_back(ys[j]), cf2.push_back(dt);
                row("waitrec", nl, dt, dt, std::move(idx2), std::move(cf2));
                row("abandonmono", nl, 0.0, kInf, {vars.a[i][s + 1], a}, {1.0, -1.0});
            }
        }
    }

    // Zone capacity.
    for (int z = 0; z < Z; ++z)
        for (int s = 0; s < S; ++s) {
            std::vector<int> here;
            for (int i = 0; i < I; ++i)
                if (inst.zone_at(i, s) == z) here.push_back(i);
            if (here.empty()) continue;
            const auto [d, t] = inst.grid.unflat(s);
            for (int j = 0; j < J; ++j) {
                std::vector<int> idx;
                std::vector<double> cf;
                for (int i : here) idx.push_back(vars.y[i][s][j]), cf.push_back(1.0);
                idx.push_back(vars.x[z][j]);
                cf.push_back(-1.0);
                row("capacity", std::to_string(z) + "_" + std::to_string(j) + "_" + std::to_string(d) + "_" +
                                    std::to_string(t),
                    -kInf, 0.0, std::move(idx), std::move(cf));
            }
        }
    return m;
}

void fix_fast_charging(PlanningModel& model, const std::vector<TruckSlot>& slots) {
    const auto fast = model.instance().charger_index(ChargerKind::fast);
    if (!slots.empty() && !fast) throw ContractViolation("fix_fast_charging: catalog has no fast charger");
    for (const auto& ts : slots) {
        if (ts.truck < 0 || ts.truck >= model.instance().truck_count() || ts.slot < 0 ||
            ts.slot >= model.instance().slot_count() || !model.instance().parked(ts.truck, ts.slot))
            throw ContractViolation("fix_fast_charging: slot " + std::to_string(ts.slot) + " of truck " +
                                    std::to_string(ts.truck) + " is not a parking slot");
    }
    for (const auto& ts : slots) {
        model.lp_.set_bounds(model.vars_.y[ts.truck][ts.slot][*fast], 1.0, 1.0);
        model.fixed_fast_.insert(ts);
    }
}

void set_installation_bounds(PlanningModel& model, int zone, int charger, double lower, double upper) {
    if (lower > upper) throw std::invalid_argument("set_installation_bounds: lower > upper");
    const int col = model.vars().x.at(zone).at(charger);
    model.program().set_bounds(col, lower, upper);
}

}  // namespace fleetcharge
