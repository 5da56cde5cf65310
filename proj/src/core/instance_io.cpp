#include "fleetcharge/core/instance_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "fleetcharge/core/csv.hpp"

namespace fleetcharge {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

void write_bundle(const FleetInstance& instance, const std::filesystem::path& dir) {
    instance.validate();
    std::filesystem::create_directories(dir);

    json meta;
    meta["format_version"] = kBundleFormatVersion;
    meta["grid"] = {{"days", instance.grid.days},
                    {"slots_per_day", instance.grid.slots_per_day},
                    {"slot_minutes", instance.grid.slot_minutes}};
    meta["soc_min"] = instance.soc_min;
    meta["soc_max"] = instance.soc_max;
    meta["anxiety_threshold"] = instance.anxiety_threshold;
    meta["fast_soc_ceiling"] = instance.fast_soc_ceiling;
    meta["epsilon"] = instance.epsilon;
    meta["chargers"] = json::array();
    for (const auto& c : instance.chargers)
        meta["chargers"].push_back({{"kind", to_string(c.kind)},
                                    {"capital_cost", c.capital_cost},
                                    {"rated_power_kw", c.rated_power_kw},
                                    {"efficiency", c.efficiency},
                                    {"soc_floor", c.soc_floor},
                                    {"soc_ceiling", c.soc_ceiling}});
    meta["zones"] = json::array();
    for (const auto& z : instance.zones) meta["zones"].push_back({{"name", z.name}, {"special", z.is_special}});
    meta["trucks"] = json::array();
    for (const auto& t : instance.trucks) meta["trucks"].push_back({{"id", t.id}, {"battery_kwh", t.battery_kwh}});
    open_out(dir / "meta.json") << meta.dump(2) << '\n';

    auto parking = open_out(dir / "parking.csv");
    auto pp = open_out(dir / "pp.csv");
    auto rho = open_out(dir / "rho.csv");
    parking << "truck,day,slot,zone\n";
    pp << "truck,day,slot,fraction\n";
    rho << "truck,day,slot,kwh\n";
    for (int i = 0; i < instance.truck_count(); ++i) {
        const auto& ser = instance.series[i];
        for (int s = 0; s < instance.slot_count(); ++s) {
            const auto [d, t] = instance.grid.unflat(s);
            if (ser.zone[s] != kNoZone) {
                parking << i << ',' << d << ',' << t << ',' << ser.zone[s] << '\n';
                pp << i << ',' << d << ',' << t << ',' << csv::decimal(ser.pp[s]) << '\n';
            }
            if (ser.rho[s] != 0.0) rho << i << ',' << d << ',' << t << ',' << csv::decimal(ser.rho[s]) << '\n';
        }
    }
}

FleetInstance read_bundle(const std::filesystem::path& dir) {
    std::ifstream meta_in(dir / "meta.json");
    if (!meta_in) throw std::runtime_error("cannot open " + (dir / "meta.json").string());
    const json meta = json::parse(meta_in);
    const int version = meta.at("format_version").get<int>();
    if (version != kBundleFormatVersion)
        throw std::runtime_error("unsupported bundle format version " + std::to_string(version));

    TimeGrid grid{meta.at("grid").at("days").get<int>(), meta.at("grid").at("slots_per_day").get<int>(),
                  meta.at("grid").at("slot_minutes").get<double>()};
    grid.validate();

    std::vector<ChargerType> chargers;
    for (const auto& c : meta.at("chargers"))
        chargers.push_back({charger_kind_from_string(c.at("kind").get<std::string>()), c.at("capital_cost").get<double>(),
                            c.at("rated_power_kw").get<double>(), c.at("efficiency").get<double>(),
                            c.at("soc_floor").get<double>(), c.at("soc_ceiling").get<double>()});
    std::vector<Zone> zones;
    for (const auto& z : meta.at("zones")) zones.push_back({z.at("name").get<std::string>(), z.at("special").get<bool>()});
    std::vector<Truck> trucks;
    for (const auto& t : meta.at("trucks")) trucks.push_back({t.at("id").get<std::string>(), t.at("battery_kwh").get<double>()});

    auto inst = FleetInstance::empty(grid, std::move(trucks), std::move(zones), std::move(chargers));
    inst.soc_min = meta.at("soc_min").get<double>();
    inst.soc_max = meta.at("soc_max").get<double>();
    inst.anxiety_threshold = meta.at("anxiety_threshold").get<double>();
    inst.fast_soc_ceiling = meta.at("fast_soc_ceiling").get<double>();
    inst.epsilon = meta.at("epsilon").get<double>();

    auto slot_of = [&](const csv::Table& t, std::size_t r, std::size_t cd, std::size_t cs) {
        return grid.flat({static_cast<int>(t.integer(r, cd)), static_cast<int>(t.integer(r, cs))});
    };
    auto truck_of = [&](const csv::Table& t, std::size_t r, std::size_t c) {
        const auto i = t.integer(r, c);
        if (i < 0 || i >= inst.truck_count()) throw std::runtime_error("truck index out of range in bundle");
        return static_cast<int>(i);
    };

    const auto parking = csv::Table::read(dir / "parking.csv");
    {
        const auto ci = parking.column("truck"), cd = parking.column("day"), cs = parking.column("slot"),
                   cz = parking.column("zone");
        for (std::size_t r = 0; r < parking.rows(); ++r) {
            const int i = truck_of(parking, r, ci);
            const int s = slot_of(parking, r, cd, cs);
            if (inst.series[i].zone[s] != kNoZone)
                throw std::runtime_error("parking.csv: truck assigned to two zones in one slot");
            inst.series[i].zone[s] = static_cast<int>(parking.integer(r, cz));
        }
    }
    const auto pp = csv::Table::read(dir / "pp.csv");
    {
        const auto ci = pp.column("truck"), cd = pp.column("day"), cs = pp.column("slot"), cf = pp.column("fraction");
        for (std::size_t r = 0; r < pp.rows(); ++r)
            inst.series[truck_of(pp, r, ci)].pp[slot_of(pp, r, cd, cs)] = pp.number(r, cf);
    }
    const auto rho = csv::Table::read(dir / "rho.csv");
    {
        const auto ci = rho.column("truck"), cd = rho.column("day"), cs = rho.column("slot"), ck = rho.column("kwh");
        for (std::size_t r = 0; r < rho.rows(); ++r)
            inst.series[truck_of(rho, r, ci)].rho[slot_of(rho, r, cd, cs)] = rho.number(r, ck);
    }
    inst.validate();
    return inst;
}

}  // namespace fleetcharge
