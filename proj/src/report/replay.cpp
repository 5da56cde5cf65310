#include "fleetcharge/report/replay.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "fleetcharge/core/csv.hpp"

namespace fleetcharge {

Schedule schedule_from(const Solution& solution) {
    if (!solution.usable()) throw std::invalid_argument("schedule_from: solution has no schedule");
    Schedule out;
    for (const auto& t : solution.trucks) {
        out.charger.push_back(t.charger);
        out.energy.push_back(t.energy);
        out.initial_soc.push_back(t.soc.empty() ? 0.0 : t.soc.back());
    }
    return out;
}

namespace {

constexpr double kCeilingAudit = 1e-9;

}  // namespace

ReplayResult replay(const FleetInstance& inst, const Installation& installation, const Schedule& schedule,
                    const DurationSample& durations, const ReplayOptions& options) {
    const int I = inst.truck_count(), S = inst.slot_count(), Z = inst.zone_count();
    if (static_cast<int>(schedule.charger.size()) != I || static_cast<int>(schedule.energy.size()) != I ||
        static_cast<int>(schedule.initial_soc.size()) != I)
        throw std::invalid_argument("replay: schedule does not match the instance");
    if (installation.zone_count() != Z) throw std::invalid_argument("replay: installation does not match zones");
    const double dt = inst.grid.slot_hours();
    const double tol = options.tolerance;
    ReplayResult r;
    r.soc.assign(I, std::vector<double>(S, 0.0));
    r.wait.assign(I, std::vector<double>(S, 0.0));
    r.abandoned.assign(I, std::vector<int>(S, 0));
    auto flag = [&](std::string tag, int truck, int zone, int slot, double amount) {
        r.violations.push_back({std::move(tag), truck, zone, slot, amount});
    };

    // Chargers in use per zone, kind and slot.
    std::vector<std::vector<std::array<int, 2>>> in_use(Z, std::vector<std::array<int, 2>>(S, {0, 0}));

    for (int i = 0; i < I; ++i) {
        const auto& ser = inst.series[i];
        const auto& plan = schedule.charger[i];
        const auto& energy = schedule.energy[i];
        if (static_cast<int>(plan.size()) != S || static_cast<int>(energy.size()) != S)
            throw std::invalid_argument("replay: schedule length does not match the horizon");
        const double cap_kwh = inst.trucks[i].battery_kwh;
        double soc = schedule.initial_soc[i];
        double wait = 0.0;
        bool gone = false;
        bool fast_before = false;
        for (int s = 0; s < S; ++s) {
            const int z = ser.zone[s];
            const int j = plan[s];
            const double e = energy[s];
            if (j >= 0 && z == kNoZone) flag("window", i, -1, s, 1.0);
            if (j < 0 && std::abs(e) > tol) flag("powerbound", i, z, s, std::abs(e));
            if (e < -tol) flag("powerbound", i, z, s, -e);
            if (j >= 0 && z != kNoZone) {
                const auto& c = inst.chargers.at(j);
                const double bound = c.slot_energy_kwh(dt) * durations.at(i, s, j);
                if (e > bound + tol) flag("powerbound", i, z, s, e - bound);
                ++in_use[z][s][static_cast<int>(c.kind)];
            }

            soc += ((j >= 0 ? e : 0.0) - ser.rho[s]) / cap_kwh;
            r.soc[i][s] = soc;
            if (soc < inst.soc_min - tol) flag("socbox", i, z, s, inst.soc_min - soc);
            if (soc > inst.soc_max + tol) flag("socbox", i, z, s, soc - inst.soc_max);
            const bool fast_now = j >= 0 && inst.chargers.at(j).kind == ChargerKind::fast;
            if (fast_now && soc > inst.fast_soc_ceiling + kCeilingAudit)
                flag("fastcap_pre", i, z, s, soc - inst.fast_soc_ceiling);
            if (fast_before && soc > inst.fast_soc_ceiling + kCeilingAudit)
                flag("fastcap_post", i, z, s, soc - inst.fast_soc_ceiling);
            fast_before = fast_now;

            if (z == kNoZone) {
                wait = 0.0;
                gone = false;
                continue;
            }
            if (s > 0 && ser.zone[s - 1] == z) {
                wait += plan[s - 1] >= 0 ? 0.0 : dt;
            } else {
                wait = 0.0;
                gone = false;
            }
            r.wait[i][s] = wait;
            if (!inst.zones[z].is_special && !gone) {
                const bool low = options.anxiety_allowance && soc <= inst.anxiety_threshold + tol;
                gone = wait > (low ? dt : 0.0) + 1e-9;
            }
            r.abandoned[i][s] = gone ? 1 : 0;
            if (gone && j >= 0) flag("abandon", i, z, s, 1.0);
        }
        if (S > 0 && std::abs(soc - schedule.initial_soc[i]) > tol)
            flag("cyclic", i, -1, S - 1, std::abs(soc - schedule.initial_soc[i]));
    }

    for (int z = 0; z < Z; ++z)
        for (int s = 0; s < S; ++s)
            for (int k = 0; k < 2; ++k)
                if (in_use[z][s][k] > installation.count[z][k])
                    flag("capacity", -1, z, s, in_use[z][s][k] - installation.count[z][k]);

    r.feasible = r.violations.empty();
    r.metrics = metrics_from(inst, {&schedule.charger, &schedule.energy, &r.abandoned, &r.soc});
    return r;
}

void write_schedule_csv(const FleetInstance& inst, const Solution& solution, const std::filesystem::path& path) {
    if (!solution.usable()) throw std::invalid_argument("write_schedule_csv: solution has no schedule");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "truck,day,slot,charger,energy_kwh,soc\n";
    for (int i = 0; i < inst.truck_count(); ++i) {
        const auto& t = solution.trucks.at(i);
        for (int s = 0; s < inst.slot_count(); ++s) {
            const auto [d, ts] = inst.grid.unflat(s);
            out << i << ',' << d << ',' << ts << ',';
            if (t.charger[s] >= 0) out << to_string(inst.chargers[t.charger[s]].kind);
            out << ',' << csv::decimal(t.charger[s] >= 0 ? t.energy[s] : 0.0) << ',' << csv::decimal(t.soc[s])
                << '\n';
        }
    }
}

Schedule read_schedule_csv(const FleetInstance& inst, const std::filesystem::path& path) {
    const auto t = csv::Table::read(path);
    const auto ci = t.column("truck"), cd = t.column("day"), cs = t.column("slot"), cc = t.column("charger"),
               ce = t.column("energy_kwh"), cb = t.column("soc");
    const int I = inst.truck_count(), S = inst.slot_count();
    Schedule out;
    out.charger.assign(I, std::vector<int>(S, -1));
    out.energy.assign(I, std::vector<double>(S, 0.0));
    out.initial_soc.assign(I, 0.0);
    std::vector<bool> seen_last(I, false);
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const auto i = t.integer(r, ci);
        if (i < 0 || i >= I) throw std::runtime_error("schedule.csv: truck index out of range");
        const int s = inst.grid.flat({static_cast<int>(t.integer(r, cd)), static_cast<int>(t.integer(r, cs))});
        const std::string& kind = t.at(r, cc);
        if (!kind.empty()) {
            const auto j = inst.charger_index(charger_kind_from_string(kind));
            if (!j) throw std::runtime_error("schedule.csv: charger kind not in the catalog: " + kind);
            out.charger[i][s] = *j;
        }
        out.energy[i][s] = t.number(r, ce);
        if (s == S - 1) out.initial_soc[i] = t.number(r, cb), seen_last[i] = true;
    }
    for (int i = 0; i < I; ++i)
        if (!seen_last[i]) throw std::runtime_error("schedule.csv: missing the final slot of truck " + std::to_string(i));
    return out;
}

}  // namespace fleetcharge
