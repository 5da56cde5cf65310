#include "fleetcharge/planner/day_selection.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fleetcharge {

bool ranked_ascending(int criterion) { return criterion >= 8; }

std::vector<DayScore> score_days(const FleetInstance& inst, const std::vector<std::vector<double>>& daily_km,
                                 const DayCriteriaConfig& config) {
    if (!daily_km.empty() && static_cast<int>(daily_km.size()) != inst.truck_count())
        throw std::invalid_argument("score_days: one distance row per truck expected");
    const int D = inst.grid.days, T = inst.grid.slots_per_day;
    const double dt = inst.grid.slot_hours();
    std::vector<DayScore> out(D);
    for (int d = 0; d < D; ++d) {
        auto& m = out[d].metrics;
        out[d].day = d;
        int moving = 0, consuming = 0;
        for (int i = 0; i < inst.truck_count(); ++i) {
            const double km = daily_km.empty() ? 0.0 : daily_km[i].at(d);
            double kwh = 0.0, stopped = 0.0;
            for (int t = 0; t < T; ++t) {
                const int s = d * T + t;
                kwh += inst.series[i].rho[s];
                if (inst.parked(i, s)) stopped += dt;
            }
            m[0] += km;
            if (km > 0.0) ++moving;
            if (km > config.distance_threshold_km) m[3] += 1.0;
            m[4] += kwh;
            if (kwh > 0.0) ++consuming;
            if (kwh > config.energy_threshold_kwh) m[7] += 1.0;
            m[8] += stopped;
            if (stopped > 0.0) m[9] += 1.0;
        }
        m[1] = moving;
        m[2] = moving > 0 ? m[0] / moving : 0.0;
        m[5] = consuming;
        m[6] = consuming > 0 ? m[4] / consuming : 0.0;
    }
    return out;
}

std::vector<int> select_days(const std::vector<DayScore>& scores, const DaySelectionConfig& config) {
    if (config.per_criterion_top < 0 || config.padding < 0 || config.boundary_days < 0)
        throw std::invalid_argument("select_days: negative count");
    const int D = static_cast<int>(scores.size());
    std::set<int> days;
    if (D == 0) return {};
    int last_day = 0;
    for (const auto& s : scores) last_day = std::max(last_day, s.day);
    auto add = [&](int d) {
        if (d >= 0 && d <= last_day) days.insert(d);
    };
    for (int c = 0; c < kDayCriteria; ++c) {
        std::vector<int> order(D);
        std::iota(order.begin(), order.end(), 0);
        const bool asc = ranked_ascending(c);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            const double va = scores[a].metrics[c], vb = scores[b].metrics[c];
            if (va != vb) return asc ? va < vb : va > vb;
            return scores[a].day < scores[b].day;
        });
        for (int k = 0; k < std::min(config.per_criterion_top, D); ++k)
            for (int o = -config.padding; o <= config.padding; ++o) add(scores[order[k]].day + o);
    }
    for (int k = 0; k < config.boundary_days; ++k) {
        add(k);
        add(last_day - k);
    }
    return {days.begin(), days.end()};
}

}  // namespace fleetcharge
