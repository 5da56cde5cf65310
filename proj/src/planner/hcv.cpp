#include "fleetcharge/planner/hcv.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>
#include <numeric>
#include <random>
#include <stdexcept>

#include "fleetcharge/core/csv.hpp"

namespace fleetcharge {

void HcvConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("HCV filter: trials must be >= 1");
    if (sigma_multiplier < 0.0) throw std::invalid_argument("HCV filter: negative sigma multiplier");
}

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct TrialOutcome {
    bool dropped_below_min = false;
    double margin = 0.0;  // final - initial
};

// Greedy pass over the horizon from `initial`; returns the end SoC.
double greedy_pass(const FleetInstance& inst, const UncertaintyMoments* moments, int i, double initial,
                   bool& dropped) {
    const double E = inst.trucks[i].battery_kwh;
    const double dt = inst.grid.slot_hours();
    const auto& ser = inst.series[i];
    double soc = initial;
    for (int s = 0; s < inst.slot_count(); ++s) {
        double best = 0.0;
        if (inst.parked(i, s)) {
            const int t = s % inst.grid.slots_per_day;
            const MomentKey key{i, inst.grid.hour_of_day(t), inst.zone_at(i, s)};
            for (const auto& c : inst.chargers) {
                const double pp = moments ? worst_case_duration(*moments, key, c.kind, ser.pp[s]) : ser.pp[s];
                const double ceiling = c.kind == ChargerKind::fast ? inst.fast_soc_ceiling : inst.soc_max;
                if (soc > ceiling) continue;
                const double room = (ceiling - soc) * E + ser.rho[s];
                best = std::max(best, std::min(c.slot_energy_kwh(dt) * pp, std::max(0.0, room)));
            }
        }
        soc = std::min(inst.soc_max, soc + (best - ser.rho[s]) / E);
        if (soc < inst.soc_min - 1e-9) dropped = true;
    }
    return soc;
}

// The horizon is cyclic, so the first pass from the random start only warms
// up the state; the second pass must then restore its own starting SoC.
TrialOutcome simulate(const FleetInstance& inst, const UncertaintyMoments* moments, int i, double initial) {
    TrialOutcome out;
    bool warmup_dropped = false;
    const double start = greedy_pass(inst, moments, i, initial, warmup_dropped);
    const double end = greedy_pass(inst, moments, i, start, out.dropped_below_min);
    out.margin = end - start;
    return out;
}

}  // namespace

HcvReport filter_hcv(const FleetInstance& inst, const UncertaintyMoments* moments, const HcvConfig& config) {
    config.validate();
    std::optional<UncertaintyMoments> worst;
    if (moments != nullptr && config.sigma_multiplier > 0.0) {
        worst = *moments;
        worst->sigma_multiplier = config.sigma_multiplier;
    }
    const UncertaintyMoments* used = worst ? &*worst : nullptr;

    HcvReport rep;
    rep.margin.assign(inst.truck_count(), 0.0);
    std::mt19937_64 rng(config.seed);
    for (int i = 0; i < inst.truck_count(); ++i) {
        std::vector<double> starts;
        for (int k = 0; k < config.trials; ++k)
            starts.push_back(inst.soc_min + unit_uniform(rng) * (inst.soc_max - inst.soc_min));
        bool parks = false;
        for (int s = 0; s < inst.slot_count() && !parks; ++s) parks = inst.parked(i, s);
        if (!parks) {
            rep.hcv.push_back(i);
            rep.reason.push_back("never_parks");
            rep.margin[i] = -std::numeric_limits<double>::infinity();
            continue;
        }
        std::string reason;
        double margin = std::numeric_limits<double>::infinity();
        for (double init : starts) {
            const auto o = simulate(inst, used, i, init);
            margin = std::min(margin, o.margin);
            if (reason.empty() && o.dropped_below_min) reason = "below_soc_min";
            if (reason.empty() && o.margin < -1e-9) reason = "soc_not_restored";
        }
        rep.margin[i] = margin;
        if (reason.empty()) {
            rep.kept.push_back(i);
        } else {
            rep.hcv.push_back(i);
            rep.reason.push_back(reason);
        }
    }
    return rep;
}

std::vector<int> hcv_suggestions(const HcvReport& report, int count) {
    std::vector<int> order = report.kept;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return report.margin.at(a) < report.margin.at(b); });
    if (static_cast<int>(order.size()) > count) order.resize(count);
    return order;
}

void write_hcv_csv(const FleetInstance& instance, const HcvReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "truck,reason\n";
    for (std::size_t k = 0; k < report.hcv.size(); ++k)
        out << instance.trucks.at(report.hcv[k]).id << ',' << report.reason[k] << '\n';
}

}  // namespace fleetcharge
