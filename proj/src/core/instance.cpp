#include "fleetcharge/core/instance.hpp"

#include <cmath>
#include <sstream>

namespace fleetcharge {

namespace {

constexpr double kClampTolerance = 1e-9;

[[noreturn]] void fail(const std::string& what) { throw ContractViolation("FleetInstance: " + what); }

}  // namespace

std::string to_string(ChargerKind kind) { return kind == ChargerKind::slow ? "slow" : "fast"; }

ChargerKind charger_kind_from_string(const std::string& name) {
    if (name == "slow" || name == "0") return ChargerKind::slow;
    if (name == "fast" || name == "1") return ChargerKind::fast;
    throw std::invalid_argument("unknown charger kind '" + name + "'");
}

void ChargerType::validate() const {
    if (!(efficiency > 0.0 && efficiency <= 1.0)) throw ContractViolation("ChargerType: efficiency must be in (0, 1]");
    if (!(soc_floor < soc_ceiling && soc_ceiling <= 1.0))
        throw ContractViolation("ChargerType: need soc_floor < soc_ceiling <= 1");
    if (!(rated_power_kw > 0.0)) throw ContractViolation("ChargerType: rated power must be > 0");
    if (capital_cost < 0.0) throw ContractViolation("ChargerType: negative capital cost");
}

ChargerType default_slow_charger() {
    return {ChargerKind::slow, 1500.0, 11.2, 0.90, 0.10, 1.00};
}

ChargerType default_fast_charger() {
    return {ChargerKind::fast, 38000.0, 150.0, 0.95, 0.10, 0.80};
}

FleetInstance FleetInstance::empty(TimeGrid grid, std::vector<Truck> trucks, std::vector<Zone> zones,
                                   std::vector<ChargerType> chargers) {
    FleetInstance inst;
    inst.grid = grid;
    inst.trucks = std::move(trucks);
    inst.zones = std::move(zones);
    inst.chargers = std::move(chargers);
    const auto n = static_cast<std::size_t>(grid.slot_count());
    inst.series.assign(inst.trucks.size(), TruckSeries{std::vector<int>(n, kNoZone), std::vector<double>(n, 0.0),
                                                       std::vector<double>(n, 0.0)});
    if (auto fast = inst.charger_index(ChargerKind::fast)) inst.fast_soc_ceiling = inst.chargers[*fast].soc_ceiling;
    return inst;
}

std::optional<int> FleetInstance::charger_index(ChargerKind kind) const noexcept {
    for (int j = 0; j < charger_count(); ++j)
        if (chargers[j].kind == kind) return j;
    return std::nullopt;
}

void FleetInstance::set_parking(int truck, int s, int zone, double pp) {
    if (zone < 0 || zone >= zone_count()) throw ContractViolation("set_parking: zone out of range");
    auto& ser = series.at(truck);
    ser.zone.at(s) = zone;
    ser.pp.at(s) = pp;
}

void FleetInstance::clear_parking(int truck, int s) {
    auto& ser = series.at(truck);
    ser.zone.at(s) = kNoZone;
    ser.pp.at(s) = 0.0;
}

void FleetInstance::validate() const {
    grid.validate();
    if (zones.empty()) fail("at least one zone is required");
    if (chargers.empty()) fail("at least one charger type is required");
    for (std::size_t j = 0; j < chargers.size(); ++j) {
        chargers[j].validate();
        for (std::size_t k = j + 1; k < chargers.size(); ++k)
            if (chargers[k].kind == chargers[j].kind) fail("duplicate charger kind in catalog");
    }
    if (!(soc_min < anxiety_threshold && anxiety_threshold < fast_soc_ceiling && fast_soc_ceiling <= soc_max &&
          soc_max <= 1.0))
        fail("need soc_min < anxiety_threshold < fast ceiling <= soc_max <= 1");
    if (!(epsilon > 0.0)) fail("epsilon must be positive");
    if (series.size() != trucks.size()) fail("one series per truck is required");
    const auto n = static_cast<std::size_t>(grid.slot_count());
    for (std::size_t i = 0; i < trucks.size(); ++i) {
        if (!(trucks[i].battery_kwh > 0.0)) fail("truck " + trucks[i].id + " has non-positive battery");
        const auto& ser = series[i];
        if (ser.zone.size() != n || ser.pp.size() != n || ser.rho.size() != n)
            fail("series length mismatch for truck " + trucks[i].id);
        for (std::size_t s = 0; s < n; ++s) {
            const int z = ser.zone[s];
            std::ostringstream where;
            where << " (truck " << trucks[i].id << ", slot " << s << ")";
            if (z != kNoZone && (z < 0 || z >= zone_count())) fail("zone index out of range" + where.str());
            if (z == kNoZone) {
                if (ser.pp[s] != 0.0) fail("pp defined off a parking slot" + where.str());
            } else if (ser.pp[s] < kMinEffectiveDuration - kClampTolerance || ser.pp[s] > 1.0 + kClampTolerance) {
                fail("pp outside [5/30, 1]" + where.str());
            }
            if (!(ser.rho[s] >= 0.0) || !std::isfinite(ser.rho[s])) fail("rho must be finite and >= 0" + where.str());
        }
    }
}

std::vector<ParkedStretch> parked_stretches(const FleetInstance& instance, int truck) {
    const auto& zone = instance.series.at(truck).zone;
    std::vector<ParkedStretch> runs;
    for (int s = 0; s < static_cast<int>(zone.size()); ++s) {
        if (zone[s] == kNoZone) continue;
        if (!runs.empty() && runs.back().zone == zone[s] && runs.back().last() == s - 1) {
            ++runs.back().length;
        } else {
            runs.push_back({zone[s], s, 1});
        }
    }
    return runs;
}

FleetInstance select_days(const FleetInstance& instance, const std::vector<int>& days) {
    if (days.empty()) throw ContractViolation("select_days: empty day list");
    FleetInstance out = instance;
    out.grid.days = static_cast<int>(days.size());
    const int T = instance.grid.slots_per_day;
    for (std::size_t i = 0; i < instance.series.size(); ++i) {
        const auto& src = instance.series[i];
        auto& dst = out.series[i];
        dst.zone.clear();
        dst.pp.clear();
        dst.rho.clear();
        for (int d : days) {
            if (d < 0 || d >= instance.grid.days) throw ContractViolation("select_days: day out of range");
            dst.zone.insert(dst.zone.end(), src.zone.begin() + d * T, src.zone.begin() + (d + 1) * T);
            dst.pp.insert(dst.pp.end(), src.pp.begin() + d * T, src.pp.begin() + (d + 1) * T);
            dst.rho.insert(dst.rho.end(), src.rho.begin() + d * T, src.rho.begin() + (d + 1) * T);
        }
    }
    return out;
}

FleetInstance select_trucks(const FleetInstance& instance, const std::vector<int>& trucks) {
    FleetInstance out = instance;
    out.trucks.clear();
    out.series.clear();
    for (int i : trucks) {
        out.trucks.push_back(instance.trucks.at(i));
        out.series.push_back(instance.series.at(i));
    }
    return out;
}

}  // namespace fleetcharge
