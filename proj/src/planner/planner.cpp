#include "fleetcharge/planner/planner.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "fleetcharge/report/replay.hpp"

namespace fleetcharge {

void PlannerConfig::validate() const {
    if (sigma_multiplier < 0.0) throw std::invalid_argument("planner: negative sigma multiplier");
    if (fast_gamma < 0.0 || fast_gamma > 1.0) throw std::invalid_argument("planner: gamma outside [0, 1]");
    if (month_overlap < 0) throw std::invalid_argument("planner: negative month overlap");
    if (penalty_slack < 0.0) throw std::invalid_argument("planner: negative penalty slack");
    settings.validate();
    if (use_heuristic) heuristic.validate();
    hcv.validate();
}

UncertaintyMoments planner_moments(const FleetInstance& instance, const PlannerConfig& config) {
    auto obs = observations_from_instance(instance);
    UncertaintyMoments m;
    if (!obs.empty()) m = compute_moments(obs);
    m.gamma = {1.0, config.fast_gamma};
    m.sigma_multiplier = config.sigma_multiplier;
    return m;
}

namespace {

// Moments re-keyed onto a truck subset (position k holds old truck trucks[k]).
UncertaintyMoments restrict_moments(const UncertaintyMoments& m, const std::vector<int>& trucks) {
    std::vector<int> position(1 + (trucks.empty() ? 0 : *std::max_element(trucks.begin(), trucks.end())), -1);
    for (int k = 0; k < static_cast<int>(trucks.size()); ++k) position[trucks[k]] = k;
    UncertaintyMoments out;
    out.gamma = m.gamma;
    out.sigma_multiplier = m.sigma_multiplier;
    for (const auto& [key, v] : m.table)
        if (key.truck < static_cast<int>(position.size()) && position[key.truck] >= 0)
            out.table[{position[key.truck], key.hour, key.zone}] = v;
    return out;
}

std::string describe_failure(const Solution& sol) {
    std::string out = "status " + to_string(sol.status);
    if (!sol.infeasibility_hint.empty()) out += "; conflicting rows: " + sol.infeasibility_hint;
    return out;
}

void bound_installation(PlanningModel& model, const Installation& carried, bool fix) {
    const auto& inst = model.instance();
    for (int z = 0; z < inst.zone_count(); ++z)
        for (int j = 0; j < inst.charger_count(); ++j) {
            const double c = carried.at(z, inst.chargers[j].kind);
            const double upper = model.program().column(model.vars().x[z][j]).upper;
            set_installation_bounds(model, z, j, c, fix ? c : std::max(upper, c));
        }
}

ModelConfig mode_config(const PlannerConfig& config) {
    ModelConfig m = config.model;
    m.mode = config.sigma_multiplier > 0.0 ? PowerBoundMode::robust : PowerBoundMode::deterministic;
    return m;
}

struct Prepared {
    FleetInstance instance;
    std::vector<int> trucks;
    HcvReport hcv;
    UncertaintyMoments moments;
};

// Removes the HCVs of `sub` (whose trucks are those of the horizon instance).
Prepared prepare(FleetInstance sub, const UncertaintyMoments& moments, const PlannerConfig& config) {
    Prepared p;
    std::vector<int> all(sub.truck_count());
    std::iota(all.begin(), all.end(), 0);
    if (config.exclude_hcv) {
        HcvConfig hc = config.hcv;
        hc.sigma_multiplier = config.sigma_multiplier;
        p.hcv = filter_hcv(sub, &moments, hc);
        p.trucks = p.hcv.kept;
    } else {
        p.trucks = all;
        p.hcv.kept = all;
        p.hcv.margin.assign(all.size(), 0.0);
    }
    if (p.trucks.empty()) throw PlanningError("every truck was excluded as a high consumption vehicle");
    p.instance = p.trucks.size() == all.size() ? std::move(sub) : select_trucks(sub, p.trucks);
    p.moments = restrict_moments(moments, p.trucks);
    return p;
}

}  // namespace

PlanRecord plan_instance(const FleetInstance& instance, const UncertaintyMoments& moments,
                         const PlannerConfig& config, const Installation* carried) {
    config.validate();
    PlanRecord rec;
    rec.instance = instance;
    const ModelConfig mc = mode_config(config);
    if (config.use_heuristic && config.sigma_multiplier > 0.0 && carried == nullptr) {
        auto h = run_fix_and_optimize(instance, moments, config.heuristic, config.settings, config.model);
        rec.installation = h.installation;
        rec.solution = std::move(h.solution);
        rec.model = std::move(h.final_model);
        rec.logs = std::move(h.logs);
        rec.degraded = h.degraded;
        return rec;
    }
    auto model = build_model(instance, mc, &moments);
    if (carried != nullptr) bound_installation(model, *carried, false);
    rec.solution = solve(model, config.settings);
    if (!rec.solution.usable()) throw PlanningError("planning solve failed: " + describe_failure(rec.solution));
    rec.installation = rec.solution.installation;
    rec.model = std::move(model);
    return rec;
}

PlanRecord plan_ds(const FleetInstance& year, const std::vector<std::vector<double>>& daily_km,
                   const PlannerConfig& config, const UncertaintyMoments* moments) {
    config.validate();
    const UncertaintyMoments m = moments ? *moments : planner_moments(year, config);
    const auto days = select_days(score_days(year, daily_km, config.criteria), config.days);
    auto prep = prepare(select_days(year, days), m, config);
    PlanRecord rec;
    try {
        rec = plan_instance(prep.instance, prep.moments, config);
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        std::string names;
        for (int k : hcv_suggestions(prep.hcv, 3)) names += ' ' + year.trucks.at(k).id;
        if (!names.empty()) msg += "; candidates for exclusion:" + names;
        throw PlanningError(msg);
    }
    rec.days = days;
    rec.trucks = prep.trucks;
    rec.hcv = std::move(prep.hcv);
    return rec;
}

std::vector<int> month_lengths(int days) {
    if (days < 1) throw std::invalid_argument("month_lengths: empty horizon");
    if (days == 365 || days == 366)
        return {31, days == 366 ? 29 : 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const int parts = std::min(12, days);
    std::vector<int> out(parts, days / parts);
    for (int k = 0; k < days % parts; ++k) ++out[k];
    return out;
}

IpsRecord plan_ips(const FleetInstance& year, const std::vector<int>& months, const PlannerConfig& config,
                   const UncertaintyMoments* moments) {
    config.validate();
    if (std::accumulate(months.begin(), months.end(), 0) != year.grid.days ||
        std::any_of(months.begin(), months.end(), [](int n) { return n < 1; }))
        throw std::invalid_argument("plan_ips: months must partition the horizon");
    const UncertaintyMoments m = moments ? *moments : planner_moments(year, config);
    const ModelConfig mc = mode_config(config);

    IpsRecord rec;
    Installation carried = Installation::zeros(year.zone_count());
    int first = 0;
    for (int k = 0; k < static_cast<int>(months.size()); ++k) {
        MonthlyWindow win;
        win.month = k + 1;
        win.first_day = first;
        win.end_day = first + months[k];
        win.window_first = std::max(0, first - config.month_overlap);
        std::vector<int> days(win.end_day - win.window_first);
        std::iota(days.begin(), days.end(), win.window_first);
        auto prep = prepare(select_days(year, days), m, config);
        win.trucks = prep.trucks;

        auto sched = build_model(prep.instance, mc, &prep.moments);
        bound_installation(sched, carried, true);
        Solution only = solve(sched, config.settings);

        auto joint_model = build_model(prep.instance, mc, &prep.moments);
        bound_installation(joint_model, carried, false);
        SolveSettings js = config.settings;
        if (only.usable()) js.warm_start = warm_start_vector(joint_model, only);
        Solution joint = solve(joint_model, js);

        const auto penalty = [](const Solution& s) { return s.terms.low_soc_penalty + s.terms.charging_penalty; };
        if (!joint.usable() && !only.usable())
            throw PlanningError("month " + std::to_string(win.month) +
                                ": joint re-solve failed, " + describe_failure(joint));
        const bool keep = only.usable() &&
                          (!joint.usable() || penalty(only) <= penalty(joint) * (1.0 + config.penalty_slack) + 1e-9);
        if (keep) {
            win.solution = std::move(only);
        } else {
            win.joint = true;
            win.solution = std::move(joint);
            for (int z = 0; z < year.zone_count(); ++z)
                for (int c = 0; c < 2; ++c)
                    carried.count[z][c] = std::max(carried.count[z][c], win.solution.installation.count[z][c]);
        }
        win.carried = carried;
        rec.months.push_back(std::move(win));
        first += months[k];
    }
    rec.installation = carried;
    return rec;
}

std::vector<bool> ips_sufficiency(const FleetInstance& year, const IpsRecord& record, const PlannerConfig& config) {
    const UncertaintyMoments m = planner_moments(year, config);
    const ModelConfig mc = mode_config(config);
    std::vector<bool> ok;
    for (const auto& win : record.months) {
        std::vector<int> days(win.end_day - win.window_first);
        std::iota(days.begin(), days.end(), win.window_first);
        auto sub = select_trucks(select_days(year, days), win.trucks);
        const auto sm = restrict_moments(m, win.trucks);
        auto model = build_model(sub, mc, &sm);
        bound_installation(model, record.installation, true);
        const auto sol = solve(model, config.settings);
        if (!sol.usable()) {
            ok.push_back(false);
            continue;
        }
        const auto& eff = model.instance();
        const auto r = replay(eff, record.installation, schedule_from(sol), planning_durations(eff),
                              {model.config().anxiety_allowance, 1e-6});
        ok.push_back(r.feasible);
    }
    return ok;
}

void write_trajectory_csv(const IpsRecord& record, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "month,first_day,end_day,zone,slow,fast,joint\n";
    for (const auto& w : record.months)
        for (int z = 0; z < w.carried.zone_count(); ++z)
            out << w.month << ',' << w.first_day << ',' << w.end_day << ',' << z << ',' << w.carried.count[z][0]
                << ',' << w.carried.count[z][1] << ',' << (w.joint ? 1 : 0) << '\n';
}

}  // namespace fleetcharge
