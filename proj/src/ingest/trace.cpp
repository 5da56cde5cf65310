#include "fleetcharge/ingest/trace.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "fleetcharge/core/csv.hpp"
#include "fleetcharge/core/instance.hpp"

namespace fleetcharge {

Cell cell_of(double easting, double northing, double cell_size) {
    return {static_cast<long long>(std::floor(northing / cell_size)),
            static_cast<long long>(std::floor(easting / cell_size))};
}

void StopDetectionParams::validate() const {
    if (!(move_threshold > 0.0) || !(cell_size > move_threshold))
        throw std::invalid_argument("StopDetectionParams: need cell_size > move_threshold > 0");
    if (!(min_dwell > 0.0)) throw std::invalid_argument("StopDetectionParams: min_dwell must be > 0");
    if (!(max_gap > 0.0)) throw std::invalid_argument("StopDetectionParams: max_gap must be > 0");
}

namespace {

void require_sorted(const std::vector<GpsPoint>& points) {
    for (std::size_t k = 1; k < points.size(); ++k)
        if (!(points[k].timestamp > points[k - 1].timestamp))
            throw std::invalid_argument("GPS stream not strictly increasing in time at fix " + std::to_string(k) +
                                        " (t=" + std::to_string(points[k].timestamp) + ")");
}

double distance(const GpsPoint& a, const GpsPoint& b) {
    return std::hypot(a.easting - b.easting, a.northing - b.northing);
}

}  // namespace

std::vector<GpsPoint> resample(const std::vector<GpsPoint>& points, double max_gap) {
    require_sorted(points);
    if (!(max_gap > 0.0)) throw std::invalid_argument("resample: max_gap must be > 0");
    std::vector<GpsPoint> out;
    out.reserve(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (k > 0) {
            const auto& a = points[k - 1];
            const auto& b = points[k];
            const double gap = b.timestamp - a.timestamp;
            const int pieces = static_cast<int>(std::ceil(gap / max_gap - 1e-9));
            for (int q = 1; q < pieces; ++q) {
                const double f = static_cast<double>(q) / pieces;
                out.push_back({a.timestamp + f * gap, a.easting + f * (b.easting - a.easting),
                               a.northing + f * (b.northing - a.northing), a.speed + f * (b.speed - a.speed)});
            }
        }
        out.push_back(points[k]);
    }
    return out;
}

std::vector<StopEvent> detect_stops(int truck, const std::vector<GpsPoint>& points,
                                    const StopDetectionParams& params) {
    params.validate();
    require_sorted(points);
    std::vector<StopEvent> out;
    const std::size_t n = points.size();
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && distance(points[j + 1], points[i]) < params.move_threshold) ++j;
        const double dwell = points[j].timestamp - points[i].timestamp;
        if (dwell >= params.min_dwell * 60.0 - 1e-9) {
            out.push_back({truck, cell_of(points[i].easting, points[i].northing, params.cell_size),
                           points[i].timestamp, points[j].timestamp});
            i = j + 1;
        } else {
            ++i;
        }
    }
    return out;
}

ZoneRanking rank_zones(const std::vector<StopEvent>& stops, int k) {
    if (k < 1) throw std::invalid_argument("rank_zones: k must be >= 1");
    std::map<Cell, RankedZone> acc;
    for (const auto& s : stops) {
        auto& z = acc[s.cell];
        z.cell = s.cell;
        ++z.stops;
        z.total_minutes += s.duration_minutes();
    }
    ZoneRanking out;
    for (const auto& [cell, z] : acc) out.zones.push_back(z);
    std::sort(out.zones.begin(), out.zones.end(), [](const RankedZone& a, const RankedZone& b) {
        if (a.stops != b.stops) return a.stops > b.stops;
        if (a.total_minutes != b.total_minutes) return a.total_minutes > b.total_minutes;
        return a.cell < b.cell;
    });
    out.short_list = static_cast<int>(out.zones.size()) < k;
    if (!out.short_list) out.zones.resize(k);
    return out;
}

ParkingWindows extract_windows(const std::vector<StopEvent>& stops, const std::vector<Cell>& zones,
                               const TimeGrid& grid, int truck_count, double horizon_start) {
    grid.validate();
    std::map<Cell, int> zone_of;
    for (int z = 0; z < static_cast<int>(zones.size()); ++z) zone_of.emplace(zones[z], z);
    const int S = grid.slot_count();
    const double slot_s = grid.slot_minutes * 60.0;

    // minutes[(truck, slot)][zone]
    std::map<std::pair<int, int>, std::map<int, double>> minutes;
    for (const auto& st : stops) {
        auto it = zone_of.find(st.cell);
        if (it == zone_of.end()) continue;
        if (st.truck < 0 || st.truck >= truck_count) throw std::invalid_argument("extract_windows: truck out of range");
        const double a = st.start - horizon_start, b = st.end - horizon_start;
        const int first = std::max(0, static_cast<int>(std::floor(a / slot_s)));
        const int last = std::min(S - 1, static_cast<int>(std::floor(b / slot_s)));
        for (int s = first; s <= last; ++s) {
            const double lo = std::max(a, s * slot_s), hi = std::min(b, (s + 1) * slot_s);
            if (hi > lo) minutes[{st.truck, s}][it->second] += (hi - lo) / 60.0;
        }
    }

    ParkingWindows out;
    out.zone.assign(truck_count, std::vector<int>(S, kNoZone));
    out.pp.assign(truck_count, std::vector<double>(S, 0.0));
    for (const auto& [key, per_zone] : minutes) {
        int best = kNoZone;
        double best_min = -1.0;
        for (const auto& [z, m] : per_zone)
            if (m > best_min) best = z, best_min = m;
        if (best_min < 5.0 - 1e-9) continue;
        out.zone[key.first][key.second] = best;
        out.pp[key.first][key.second] = std::clamp(best_min / grid.slot_minutes, kMinEffectiveDuration, 1.0);
    }
    return out;
}

double parse_iso_timestamp(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double sec = 0.0;
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%lf%n", &y, &mo, &d, &h, &mi, &sec, &consumed) != 6)
        throw std::invalid_argument("bad ISO timestamp: " + text);
    const std::string rest = text.substr(consumed);
    if (!(rest.empty() || rest == "Z")) throw std::invalid_argument("bad ISO timestamp suffix: " + text);
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || sec < 0.0 || sec >= 61.0)
        throw std::invalid_argument("invalid ISO timestamp: " + text);
    const auto days = std::chrono::sys_days{ymd}.time_since_epoch().count();
    return static_cast<double>(days) * 86400.0 + h * 3600.0 + mi * 60.0 + sec;
}

std::string format_iso_timestamp(double seconds) {
    const double whole = std::floor(seconds);
    const long long ms = std::llround((seconds - whole) * 1000.0);
    const auto total = static_cast<long long>(whole) + (ms == 1000 ? 1 : 0);
    const long long frac = ms == 1000 ? 0 : ms;
    const auto day = std::chrono::sys_days{std::chrono::days{total >= 0 ? total / 86400 : (total - 86399) / 86400}};
    const long long tod = total - day.time_since_epoch().count() * 86400LL;
    const std::chrono::year_month_day ymd{day};
    char buf[64];
    if (frac == 0)
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), tod / 3600,
                      tod / 60 % 60, tod % 60);
    else
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), tod / 3600,
                      tod / 60 % 60, tod % 60, frac);
    return buf;
}

std::vector<TruckTrace> read_traces_csv(const std::filesystem::path& path) {
    const auto t = csv::Table::read(path);
    const auto ci = t.column("truck_id"), ct = t.column("iso_timestamp"), ce = t.column("easting_m"),
               cn = t.column("northing_m"), cs = t.column("speed_mps");
    std::vector<TruckTrace> out;
    std::map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const std::string& id = t.at(r, ci);
        auto [it, fresh] = index.emplace(id, out.size());
        if (fresh) out.push_back({id, {}});
        out[it->second].points.push_back(
            {parse_iso_timestamp(t.at(r, ct)), t.number(r, ce), t.number(r, cn), t.number(r, cs)});
    }
    for (const auto& tr : out) require_sorted(tr.points);
    return out;
}

void write_traces_csv(const std::vector<TruckTrace>& traces, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "truck_id,iso_timestamp,easting_m,northing_m,speed_mps\n";
    for (const auto& tr : traces)
        for (const auto& p : tr.points)
            out << tr.truck << ',' << format_iso_timestamp(p.timestamp) << ',' << csv::shortest(p.easting) << ','
                << csv::shortest(p.northing) << ',' << csv::shortest(p.speed) << '\n';
}

}  // namespace fleetcharge
