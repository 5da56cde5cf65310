#include "fleetcharge/ingest/pipeline.hpp"

#include <stdexcept>

namespace fleetcharge {

PipelineResult build_instance(const std::vector<TruckTrace>& traces, const FuelEconomyModel& economy,
                              const PipelineConfig& config) {
    if (traces.empty()) throw std::invalid_argument("build_instance: no traces");
    config.grid.validate();
    config.stops.validate();
    economy.validate();

    PipelineResult out;
    std::vector<std::vector<GpsPoint>> streams;
    for (int i = 0; i < static_cast<int>(traces.size()); ++i) {
        streams.push_back(resample(traces[i].points, config.stops.max_gap));
        auto stops = detect_stops(i, streams.back(), config.stops);
        out.stops.insert(out.stops.end(), stops.begin(), stops.end());
    }
    out.ranking = rank_zones(out.stops, config.zone_count);

    std::vector<Cell> cells;
    std::vector<Zone> zones;
    for (std::size_t z = 0; z < out.ranking.zones.size(); ++z) {
        const auto& rz = out.ranking.zones[z];
        cells.push_back(rz.cell);
        zones.push_back({"Z" + std::to_string(z + 1) + "@" + std::to_string(rz.cell.row) + ":" +
                             std::to_string(rz.cell.col),
                         rz.mean_minutes() >= 60.0 * config.special_zone_min_hours});
    }
    if (zones.empty()) throw std::invalid_argument("build_instance: no stops detected in any trace");

    std::vector<Truck> trucks;
    for (const auto& tr : traces) trucks.push_back({tr.truck, config.battery_kwh});
    auto inst = FleetInstance::empty(config.grid, std::move(trucks), std::move(zones), config.chargers);
    inst.soc_min = config.soc_min;
    inst.soc_max = config.soc_max;

    const auto windows =
        extract_windows(out.stops, cells, config.grid, static_cast<int>(traces.size()), config.horizon_start);
    for (int i = 0; i < inst.truck_count(); ++i) {
        for (int s = 0; s < inst.slot_count(); ++s)
            if (windows.zone[i][s] != kNoZone) inst.set_parking(i, s, windows.zone[i][s], windows.pp[i][s]);
        inst.series[i].rho = compute_energy(streams[i], economy, config.grid, cells, config.stops.cell_size,
                                            config.horizon_start);
        out.out_of_zone_m.push_back(out_of_zone_distance(streams[i], cells, config.stops.cell_size));
        out.daily_km.push_back(daily_distance_km(streams[i], config.grid, config.horizon_start));
    }
    inst.validate();
    out.instance = std::move(inst);
    return out;
}

}  // namespace fleetcharge
