#include "fleetcharge/report/report_io.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "fleetcharge/core/csv.hpp"

namespace fleetcharge {

using nlohmann::json;

ReportFormat report_format_from_string(const std::string& name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    throw std::invalid_argument("unknown report format: " + name);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::string index_text(int v) { return v < 0 ? "all" : std::to_string(v); }

int index_value(const std::string& s) { return s == "all" ? -1 : std::stoi(s); }

// Scalar metrics in a fixed order.
std::vector<std::pair<std::string, double>> scalars(const ScheduleMetrics& m) {
    return {{"trucks", m.trucks},
            {"days", m.days},
            {"slow_hours", m.slow_hours},
            {"fast_hours", m.fast_hours},
            {"abandonment_hours", m.abandonment_hours},
            {"charged_kwh", m.charged_kwh},
            {"avg_charging_hours_per_truck_day", m.avg_charging_hours_per_truck_day},
            {"avg_power_kw", m.avg_power_kw},
            {"no_charging", m.no_charging ? 1.0 : 0.0},
            {"fleet_soc_mean", m.fleet_soc_mean},
            {"fleet_soc_min", m.fleet_soc_min},
            {"fleet_soc_max", m.fleet_soc_max}};
}

void assign_scalar(ScheduleMetrics& m, const std::string& name, double v) {
    if (name == "trucks") m.trucks = static_cast<int>(v);
    else if (name == "days") m.days = static_cast<int>(v);
    else if (name == "slow_hours") m.slow_hours = v;
    else if (name == "fast_hours") m.fast_hours = v;
    else if (name == "abandonment_hours") m.abandonment_hours = v;
    else if (name == "charged_kwh") m.charged_kwh = v;
    else if (name == "avg_charging_hours_per_truck_day") m.avg_charging_hours_per_truck_day = v;
    else if (name == "avg_power_kw") m.avg_power_kw = v;
    else if (name == "no_charging") m.no_charging = v != 0.0;
    else if (name == "fleet_soc_mean") m.fleet_soc_mean = v;
    else if (name == "fleet_soc_min") m.fleet_soc_min = v;
    else if (name == "fleet_soc_max") m.fleet_soc_max = v;
    else throw std::runtime_error("unknown metric in report: " + name);
}

}  // namespace

void emit_report(const ScheduleMetrics& m, ReportFormat format, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    if (format == ReportFormat::json) {
        json j;
        j["summary"] = json::object();
        if (!m.empty())
            for (const auto& [k, v] : scalars(m)) j["summary"][k] = v;
        j["soc"] = json::array();
        for (const auto& s : m.soc) j["soc"].push_back({{"truck", s.truck}, {"mean", s.mean}, {"min", s.min}, {"max", s.max}});
        j["breakdown"] = json::array();
        for (const auto& r : m.breakdown)
            j["breakdown"].push_back({{"zone", r.zone}, {"hour", r.hour}, {"metric", r.metric}, {"value", r.value}});
        open_out(dir / "metrics.json") << j.dump(2) << '\n';
        return;
    }
    auto out = open_out(dir / "metrics.csv");
    out << "zone,hour,metric,value\n";
    if (!m.empty()) {
        for (const auto& [k, v] : scalars(m)) out << "all,all," << k << ',' << csv::decimal(v) << '\n';
        for (const auto& r : m.breakdown)
            out << index_text(r.zone) << ',' << index_text(r.hour) << ',' << r.metric << ',' << csv::decimal(r.value)
                << '\n';
    }
    auto soc = open_out(dir / "soc_summary.csv");
    soc << "truck,mean,min,max\n";
    for (const auto& s : m.soc)
        soc << s.truck << ',' << csv::decimal(s.mean) << ',' << csv::decimal(s.min) << ',' << csv::decimal(s.max)
            << '\n';
}

ScheduleMetrics read_report(ReportFormat format, const std::filesystem::path& dir) {
    ScheduleMetrics m;
    if (format == ReportFormat::json) {
        std::ifstream in(dir / "metrics.json");
        if (!in) throw std::runtime_error("cannot open " + (dir / "metrics.json").string());
        const json j = json::parse(in);
        for (const auto& [k, v] : j.at("summary").items()) assign_scalar(m, k, v.get<double>());
        for (const auto& s : j.at("soc"))
            m.soc.push_back({s.at("truck").get<std::string>(), s.at("mean").get<double>(), s.at("min").get<double>(),
                             s.at("max").get<double>()});
        for (const auto& r : j.at("breakdown"))
            m.breakdown.push_back({r.at("zone").get<int>(), r.at("hour").get<int>(), r.at("metric").get<std::string>(),
                                   r.at("value").get<double>()});
        return m;
    }
    const auto t = csv::Table::read(dir / "metrics.csv");
    const auto cz = t.column("zone"), ch = t.column("hour"), cm = t.column("metric"), cv = t.column("value");
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const int zone = index_value(t.at(r, cz)), hour = index_value(t.at(r, ch));
        if (zone < 0 && hour < 0)
            assign_scalar(m, t.at(r, cm), t.number(r, cv));
        else
            m.breakdown.push_back({zone, hour, t.at(r, cm), t.number(r, cv)});
    }
    const auto soc = csv::Table::read(dir / "soc_summary.csv");
    const auto st = soc.column("truck"), sm = soc.column("mean"), sn = soc.column("min"), sx = soc.column("max");
    for (std::size_t r = 0; r < soc.rows(); ++r)
        m.soc.push_back({soc.at(r, st), soc.number(r, sm), soc.number(r, sn), soc.number(r, sx)});
    return m;
}

void write_violations_csv(const FleetInstance& instance, const std::vector<Violation>& violations,
                          const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "truck,day,slot,tag,zone,amount\n";
    for (const auto& v : violations) {
        const auto [d, t] = instance.grid.unflat(v.slot);
        out << (v.truck < 0 ? std::string() : std::to_string(v.truck)) << ',' << d << ',' << t << ',' << v.tag << ','
            << (v.zone < 0 ? std::string() : std::to_string(v.zone)) << ',' << csv::decimal(v.amount) << '\n';
    }
}

void write_soc_trajectories_csv(const FleetInstance& instance, const ReplayResult& result,
                                const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "truck,day,slot,soc,wait_h,abandoned\n";
    for (int i = 0; i < instance.truck_count(); ++i)
        for (int s = 0; s < instance.slot_count(); ++s) {
            const auto [d, t] = instance.grid.unflat(s);
            out << i << ',' << d << ',' << t << ',' << csv::decimal(result.soc[i][s]) << ','
                << csv::decimal(result.wait[i][s]) << ',' << result.abandoned[i][s] << '\n';
        }
}

void write_installation_csv(const Installation& installation, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "zone,slow,fast\n";
    for (int z = 0; z < installation.zone_count(); ++z)
        out << z << ',' << installation.count[z][0] << ',' << installation.count[z][1] << '\n';
}

Installation read_installation_csv(const std::filesystem::path& path, int zones) {
    const auto t = csv::Table::read(path);
    const auto cz = t.column("zone"), cs = t.column("slow"), cf = t.column("fast");
    Installation out = Installation::zeros(zones);
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const auto z = t.integer(r, cz);
        if (z < 0 || z >= zones) throw std::runtime_error("installation.csv: zone out of range");
        out.count[z] = {static_cast<int>(t.integer(r, cs)), static_cast<int>(t.integer(r, cf))};
    }
    return out;
}

}  // namespace fleetcharge
