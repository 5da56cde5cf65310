#include "fixtures.hpp"

#include <map>
#include <random>
#include <tuple>

namespace fleetcharge::fixture {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

FleetInstance tiny_instance(std::uint64_t seed, const TinySpec& spec) {
    std::mt19937_64 rng(seed);
    TimeGrid grid{spec.days, spec.slots_per_day, 30.0};
    std::vector<Truck> trucks;
    for (int i = 0; i < spec.trucks; ++i) trucks.push_back({"t" + std::to_string(i), spec.battery_kwh});
    std::vector<Zone> zones;
    for (int z = 0; z < spec.zones; ++z) zones.push_back({"z" + std::to_string(z), spec.special_zone && z == 0});
    std::vector<ChargerType> chargers{default_slow_charger()};
    if (spec.charger_types > 1) chargers.push_back(default_fast_charger());
    auto inst = FleetInstance::empty(grid, std::move(trucks), std::move(zones), std::move(chargers));

    std::map<std::tuple<int, int, int>, double> pp_of;
    const int S = grid.slot_count();
    for (int i = 0; i < spec.trucks; ++i) {
        // Alternate driving and parked runs; at least one parked slot.
        int s = 0;
        bool parked = unit(rng) < 0.5;
        while (s < S) {
            const int len = 1 + static_cast<int>(unit(rng) * 3.0);
            const int zone = static_cast<int>(unit(rng) * spec.zones);
            for (int k = 0; k < len && s < S; ++k, ++s) {
                if (parked) {
                    const auto key = std::make_tuple(i, grid.hour_of_day(s % grid.slots_per_day), zone);
                    auto it = pp_of.find(key);
                    if (it == pp_of.end())
                        it = pp_of.emplace(key, kMinEffectiveDuration + unit(rng) * (1.0 - kMinEffectiveDuration)).first;
                    inst.set_parking(i, s, zone, it->second);
                } else {
                    inst.series[i].rho[s] = 1.0 + unit(rng) * 4.0;
                }
            }
            parked = !parked;
        }
        int kept = 0;
        for (int k = 0; k < S; ++k)
            if (inst.parked(i, k) && spec.max_parked > 0 && ++kept > spec.max_parked) inst.clear_parking(i, k);
        bool any = false;
        for (int k = 0; k < S; ++k) any = any || inst.parked(i, k);
        if (!any) inst.set_parking(i, 0, 0, 1.0);
    }
    inst.validate();
    return inst;
}

FleetInstance line_instance(int slots_per_day, int days, const std::vector<int>& zones, const std::vector<double>& rho,
                            int zone_count, bool special0, double battery_kwh) {
    TimeGrid grid{days, slots_per_day, 30.0};
    std::vector<Zone> zs;
    for (int z = 0; z < zone_count; ++z) zs.push_back({"z" + std::to_string(z), special0 && z == 0});
    auto inst = FleetInstance::empty(grid, {{"t0", battery_kwh}}, std::move(zs),
                                     {default_slow_charger(), default_fast_charger()});
    for (int s = 0; s < grid.slot_count(); ++s) {
        if (zones.at(s) != kNoZone) inst.set_parking(0, s, zones[s], 1.0);
        inst.series[0].rho[s] = rho.empty() ? 0.0 : rho.at(s);
    }
    inst.validate();
    return inst;
}

SyntheticFleet synthetic_fleet(std::uint64_t seed, int trucks, int days, const FleetProfile& profile,
                               double battery_kwh) {
    SyntheticFleet out;
    out.traces = synthesize_fleet(seed, trucks, days, profile);
    out.temperature = synthesize_temperature(seed, 24 * days);
    FuelEconomyModel economy;
    economy.hourly_temp_f = out.temperature;
    PipelineConfig pc;
    pc.grid.days = days;
    pc.horizon_start = profile.start_epoch;
    pc.battery_kwh = battery_kwh;
    out.pipeline = build_instance(out.traces, economy, pc);
    return out;
}

}  // namespace fleetcharge::fixture
