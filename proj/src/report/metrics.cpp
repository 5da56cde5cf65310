#include "fleetcharge/report/metrics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace fleetcharge {

ScheduleMetrics metrics_from(const FleetInstance& instance, const ScheduleView& view) {
    ScheduleMetrics m;
    const int I = instance.truck_count(), S = instance.slot_count();
    m.trucks = I;
    m.days = instance.grid.days;
    if (I == 0) return m;
    const double dt = instance.grid.slot_hours();

    // (zone, hour, metric) -> value; zone/hour -1 aggregate.
    std::map<std::tuple<int, int, std::string>, double> table;
    double soc_sum = 0.0;
    m.fleet_soc_min = std::numeric_limits<double>::infinity();
    m.fleet_soc_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < I; ++i) {
        TruckSocStats st{instance.trucks[i].id, 0.0, std::numeric_limits<double>::infinity(),
                         -std::numeric_limits<double>::infinity()};
        for (int s = 0; s < S; ++s) {
            const double b = (*view.soc)[i][s];
            st.mean += b;
            st.min = std::min(st.min, b);
            st.max = std::max(st.max, b);
            const int z = instance.zone_at(i, s);
            if (z == kNoZone) continue;
            const int hour = instance.grid.hour_of_day(s % instance.grid.slots_per_day);
            const int j = (*view.charger)[i][s];
            auto add = [&](const std::string& metric, double v) {
                table[{z, hour, metric}] += v;
                table[{z, -1, metric}] += v;
                table[{-1, hour, metric}] += v;
            };
            if (j >= 0) {
                const bool fast = instance.chargers.at(j).kind == ChargerKind::fast;
                (fast ? m.fast_hours : m.slow_hours) += dt;
                m.charged_kwh += (*view.energy)[i][s];
                add(fast ? "fast_hours" : "slow_hours", dt);
                add("charged_kwh", (*view.energy)[i][s]);
            }
            if ((*view.abandoned)[i][s]) {
                m.abandonment_hours += dt;
                add("abandonment_hours", dt);
            }
        }
        soc_sum += st.mean;
        st.mean /= S;
        m.fleet_soc_min = std::min(m.fleet_soc_min, st.min);
        m.fleet_soc_max = std::max(m.fleet_soc_max, st.max);
        m.soc.push_back(st);
    }
    m.fleet_soc_mean = soc_sum / (static_cast<double>(I) * S);
    std::stable_sort(m.soc.begin(), m.soc.end(),
                     [](const TruckSocStats& a, const TruckSocStats& b) { return a.mean > b.mean; });

    const double hours = m.slow_hours + m.fast_hours;
    m.avg_charging_hours_per_truck_day = hours / (static_cast<double>(I) * m.days);
    m.no_charging = hours == 0.0;
    m.avg_power_kw = m.no_charging ? 0.0 : m.charged_kwh / hours;
    for (const auto& [key, v] : table) m.breakdown.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v});
    return m;
}

ScheduleMetrics compute_metrics(const Solution& solution, const FleetInstance& instance) {
    if (!solution.usable()) throw std::invalid_argument("compute_metrics: solution has no schedule");
    if (static_cast<int>(solution.trucks.size()) != instance.truck_count())
        throw std::invalid_argument("compute_metrics: solution does not match the instance");
    std::vector<std::vector<int>> charger, abandoned;
    std::vector<std::vector<double>> energy, soc;
    for (const auto& t : solution.trucks) {
        charger.push_back(t.charger);
        abandoned.push_back(t.abandoned);
        energy.push_back(t.energy);
        soc.push_back(t.soc);
    }
    return metrics_from(instance, {&charger, &energy, &abandoned, &soc});
}

}  // namespace fleetcharge
