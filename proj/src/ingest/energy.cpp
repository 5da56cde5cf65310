#include "fleetcharge/ingest/energy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "fleetcharge/core/csv.hpp"

namespace fleetcharge {

double FuelEconomyModel::economy_at_hour(int hour) const {
    if (hour < 0 || hour >= static_cast<int>(hourly_temp_f.size()))
        throw std::invalid_argument("FuelEconomyModel: no temperature for hour " + std::to_string(hour));
    return economy(hourly_temp_f[hour]);
}

void FuelEconomyModel::validate() const {
    if (hourly_temp_f.empty()) throw std::invalid_argument("FuelEconomyModel: empty temperature series");
    for (std::size_t h = 0; h < hourly_temp_f.size(); ++h) {
        const double e = economy(hourly_temp_f[h]);
        if (!(e > 0.0) || e > 10.0)
            throw std::invalid_argument("FuelEconomyModel: economy " + std::to_string(e) + " mi/kWh at hour " +
                                        std::to_string(h) + " (" + std::to_string(hourly_temp_f[h]) +
                                        " F) outside (0, 10]");
    }
}

namespace {

bool in_zone(const std::set<Cell>& cells, double e, double n, double cell_size) {
    return cells.count(cell_of(e, n, cell_size)) > 0;
}

}  // namespace

std::vector<double> compute_energy(const std::vector<GpsPoint>& points, const FuelEconomyModel& model,
                                   const TimeGrid& grid, const std::vector<Cell>& zones, double cell_size,
                                   double horizon_start) {
    model.validate();
    const std::set<Cell> cells(zones.begin(), zones.end());
    const int S = grid.slot_count();
    const double slot_s = grid.slot_minutes * 60.0;
    const double end = horizon_start + S * slot_s;
    std::vector<double> rho(S, 0.0);
    for (std::size_t k = 1; k < points.size(); ++k) {
        const auto& a = points[k - 1];
        const auto& b = points[k];
        if (!(b.timestamp > a.timestamp)) throw std::invalid_argument("compute_energy: unsorted stream");
        const double dist = std::hypot(b.easting - a.easting, b.northing - a.northing);
        if (dist == 0.0) continue;
        if (in_zone(cells, 0.5 * (a.easting + b.easting), 0.5 * (a.northing + b.northing), cell_size)) continue;
        const double t0 = std::max(a.timestamp, horizon_start), t1 = std::min(b.timestamp, end);
        if (!(t1 > t0)) continue;
        const double per_s = dist / (b.timestamp - a.timestamp);
        // Walk the segment in pieces that stay inside one slot and one hour.
        double t = t0;
        while (t < t1) {
            const double rel = t - horizon_start;
            const int slot = std::min(S - 1, static_cast<int>(std::floor(rel / slot_s)));
            const int hour = static_cast<int>(std::floor(rel / 3600.0));
            const double next = std::min({t1, horizon_start + (slot + 1) * slot_s, horizon_start + (hour + 1) * 3600.0});
            const double miles = per_s * (next - t) / kMetersPerMile;
            rho[slot] += miles / model.economy_at_hour(hour);
            t = next;
        }
    }
    return rho;
}

std::vector<double> daily_distance_km(const std::vector<GpsPoint>& points, const TimeGrid& grid,
                                      double horizon_start) {
    std::vector<double> km(grid.days, 0.0);
    const double day_s = grid.slots_per_day * grid.slot_minutes * 60.0;
    for (std::size_t k = 1; k < points.size(); ++k) {
        const auto& a = points[k - 1];
        const auto& b = points[k];
        const double dist = std::hypot(b.easting - a.easting, b.northing - a.northing);
        const double span = b.timestamp - a.timestamp;
        if (dist == 0.0 || span <= 0.0) continue;
        double t = std::max(a.timestamp, horizon_start);
        const double end = std::min(b.timestamp, horizon_start + grid.days * day_s);
        while (t < end) {
            const int day = static_cast<int>(std::floor((t - horizon_start) / day_s));
            const double next = std::min(end, horizon_start + (day + 1) * day_s);
            km[day] += dist * (next - t) / span / 1000.0;
            t = next;
        }
    }
    return km;
}

double out_of_zone_distance(const std::vector<GpsPoint>& points, const std::vector<Cell>& zones, double cell_size) {
    const std::set<Cell> cells(zones.begin(), zones.end());
    double total = 0.0;
    for (std::size_t k = 1; k < points.size(); ++k) {
        const auto& a = points[k - 1];
        const auto& b = points[k];
        if (in_zone(cells, 0.5 * (a.easting + b.easting), 0.5 * (a.northing + b.northing), cell_size)) continue;
        total += std::hypot(b.easting - a.easting, b.northing - a.northing);
    }
    return total;
}

std::vector<double> read_temperature_csv(const std::filesystem::path& path) {
    const auto t = csv::Table::read(path);
    const auto ch = t.column("hour_of_year"), ct = t.column("temp_f");
    std::vector<std::pair<long long, double>> rows;
    for (std::size_t r = 0; r < t.rows(); ++r) rows.emplace_back(t.integer(r, ch), t.number(r, ct));
    std::sort(rows.begin(), rows.end());
    std::vector<double> out;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].first != static_cast<long long>(k))
            throw std::invalid_argument("temperature series must cover hours 0..n-1 without gaps");
        out.push_back(rows[k].second);
    }
    return out;
}

void write_temperature_csv(const std::vector<double>& temps, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "hour_of_year,temp_f\n";
    for (std::size_t h = 0; h < temps.size(); ++h) out << h << ',' << csv::shortest(temps[h]) << '\n';
}

}  // namespace fleetcharge
