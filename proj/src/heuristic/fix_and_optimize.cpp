#include "fleetcharge/heuristic/fix_and_optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace fleetcharge {

void HeuristicConfig::validate() const {
    if (max_iterations < 1) throw std::invalid_argument("heuristic: max_iterations must be >= 1");
    if (!(kappa0 > 0.0)) throw std::invalid_argument("heuristic: kappa0 must be positive");
    if (!(decay_rate > 0.0 && decay_rate < 1.0)) throw std::invalid_argument("heuristic: decay_rate must lie in (0, 1)");
    if (fast_cap_per_zone < 0) throw std::invalid_argument("heuristic: fast_cap_per_zone must be >= 0");
    if (!(loop_gap >= 0.0 && loop_gap < 1.0)) throw std::invalid_argument("heuristic: loop_gap must lie in [0, 1)");
}

double decay_kappa(int iteration, const HeuristicConfig& config) {
    if (iteration < 1) throw std::invalid_argument("decay_kappa: iteration starts at 1");
    return config.kappa0 * std::pow(config.decay_rate, iteration - 1);
}

std::vector<TruckSlot> detect_violations(const PlanningModel& model, const Solution& solution,
                                         const DurationSample& sampled, double kappa) {
    const auto& inst = model.instance();
    const double dt = inst.grid.slot_hours();
    std::vector<TruckSlot> out;
    for (int i = 0; i < inst.truck_count(); ++i) {
        const auto& ts = solution.trucks.at(i);
        for (int s = 0; s < inst.slot_count(); ++s) {
            const int j = ts.charger[s];
            if (j < 0 || !inst.parked(i, s)) continue;
            const auto& c = inst.chargers[j];
            const double bound = c.slot_energy_kwh(dt) * sampled.at(i, s, j);
            const double p = ts.energy[s];
            const bool flagged = c.kind == ChargerKind::fast ? p >= bound
                                                              : (p >= bound + kappa && !inst.special_at(i, s));
            if (flagged) out.push_back({i, s});
        }
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Solution run_solve(const PlanningModel& model, SolveSettings settings, const Solution* warm,
                   const MilpBackend& backend) {
    if (warm != nullptr && warm->usable()) settings.warm_start = warm_start_vector(model, *warm);
    return solve(model, settings, backend);
}

}  // namespace

HeuristicResult run_fix_and_optimize(const FleetInstance& instance, const UncertaintyMoments& moments,
                                     const HeuristicConfig& config, const SolveSettings& settings,
                                     const ModelConfig& base, const MilpBackend* backend) {
    config.validate();
    moments.validate();
    const auto t0 = Clock::now();
    std::unique_ptr<MilpBackend> owned;
    if (backend == nullptr) {
        owned = default_backend();
        backend = owned.get();
    }

    ModelConfig det = base;
    det.mode = PowerBoundMode::deterministic;

    SolveSettings loop_settings = settings;
    loop_settings.rel_gap = std::max(settings.rel_gap, config.loop_gap);

    HeuristicResult result;
    PlanningModel model = build_model(instance, det);
    Solution incumbent = run_solve(model, loop_settings, nullptr, *backend);
    if (!incumbent.usable()) {
        std::string msg = "fix-and-optimize: deterministic master has no solution (" + to_string(incumbent.status) + ")";
        if (!incumbent.infeasibility_hint.empty()) msg += "; conflicting rows: " + incumbent.infeasibility_hint;
        for (const auto& w : model.warnings()) msg += "; " + w;
        throw std::runtime_error(msg);
    }
    const FleetInstance& effective = model.instance();

    std::set<TruckSlot> fixed;
    for (int it = 1; it <= config.max_iterations; ++it) {
        const double kappa = decay_kappa(it, config);
        result.final_sample = sample_durations(moments, effective, config.sample_seed + static_cast<std::uint64_t>(it));
        const auto flagged = detect_violations(model, incumbent, result.final_sample, kappa);
        std::vector<TruckSlot> added;
        for (const auto& ts : flagged)
            if (!fixed.contains(ts)) added.push_back(ts);

        IterationLog log;
        log.iteration = it;
        log.violations_found = static_cast<int>(flagged.size());
        log.kappa = kappa;
        if (added.empty()) {
            log.fixed_slots = static_cast<int>(fixed.size());
            log.objective = incumbent.objective;
            result.logs.push_back(log);
            break;
        }

        PlanningModel next = build_model(instance, det);
        std::set<TruckSlot> trial = fixed;
        trial.insert(added.begin(), added.end());
        fix_fast_charging(next, {trial.begin(), trial.end()});
        Solution sol = run_solve(next, loop_settings, &incumbent, *backend);
        log.solve_time = sol.wall_time;
        if (!sol.usable()) {
            // The new fixings over-constrain the schedule; keep the previous batch.
            log.fixed_slots = static_cast<int>(fixed.size());
            log.objective = incumbent.objective;
            result.logs.push_back(log);
            break;
        }
        fixed = std::move(trial);
        model = std::move(next);
        incumbent = std::move(sol);
        log.fixed_slots = static_cast<int>(fixed.size());
        log.objective = incumbent.objective;
        result.logs.push_back(log);
    }

    // Post-processing: zones that ended with too many fast chargers lose their fast fixings.
    const auto fast_j = effective.charger_index(ChargerKind::fast);
    const auto slow_j = effective.charger_index(ChargerKind::slow);
    std::set<int> dropped;
    for (int z = 0; z < effective.zone_count(); ++z)
        if (incumbent.installation.at(z, ChargerKind::fast) > config.fast_cap_per_zone) dropped.insert(z);
    for (const auto& ts : fixed)
        if (!dropped.contains(effective.zone_at(ts.truck, ts.slot))) result.fixed.push_back(ts);
    result.dropped_zones.assign(dropped.begin(), dropped.end());

    ModelConfig sampled = base;
    sampled.mode = PowerBoundMode::sampled;
    PlanningModel final_model = build_model(instance, sampled, nullptr, &result.final_sample);
    if (fast_j && !result.fixed.empty()) fix_fast_charging(final_model, result.fixed);
    if (slow_j) {
        for (int z = 0; z < effective.zone_count(); ++z) {
            const int col = final_model.vars().x[z][*slow_j];
            const double upper = final_model.program().column(col).upper;
            const double lower = std::min<double>(incumbent.installation.at(z, ChargerKind::slow), upper);
            set_installation_bounds(final_model, z, *slow_j, lower, upper);
        }
    }
    Solution final_sol = run_solve(final_model, settings, &incumbent, *backend);
    if (final_sol.usable()) {
        result.solution = std::move(final_sol);
        result.final_model = std::move(final_model);
    } else {
        result.degraded = true;
        result.solution = std::move(incumbent);
        result.final_model = std::move(model);
    }
    result.installation = result.solution.installation;
    result.wall_time = seconds_since(t0);
    return result;
}

void write_iteration_log(const std::vector<IterationLog>& logs, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& l : logs) {
        nlohmann::ordered_json j;
        j["iteration"] = l.iteration;
        j["violations"] = l.violations_found;
        j["fixed_total"] = l.fixed_slots;
        j["kappa"] = l.kappa;
        j["solve_seconds"] = l.solve_time;
        j["objective"] = l.objective;
        out << j.dump() << '\n';
    }
}

std::vector<IterationLog> read_iteration_log(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<IterationLog> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        out.push_back({j.at("iteration").get<int>(), j.at("violations").get<int>(), j.at("fixed_total").get<int>(),
                       j.at("kappa").get<double>(), j.at("solve_seconds").get<double>(),
                       j.at("objective").get<double>()});
    }
    return out;
}

}  // namespace fleetcharge
