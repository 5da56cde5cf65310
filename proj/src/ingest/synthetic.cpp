#include "fleetcharge/ingest/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fleetcharge/ingest/energy.hpp"

namespace fleetcharge {

void FleetProfile::validate() const {
    if (!(daily_miles > 0.0) || !(speed_mps > 0.0))
        throw std::invalid_argument("FleetProfile: zero activity (daily_miles and speed_mps must be > 0)");
    if (work_sites < 1) throw std::invalid_argument("FleetProfile: need at least one work site");
    if (min_visits < 1 || max_visits < min_visits) throw std::invalid_argument("FleetProfile: bad visit counts");
    if (!(sample_period > 0.0) || !(site_spacing > 0.0)) throw std::invalid_argument("FleetProfile: bad geometry");
    if (!(min_visit_minutes >= 5.0) || max_visit_minutes < min_visit_minutes)
        throw std::invalid_argument("FleetProfile: visit durations must be >= 5 minutes");
    if (depart_hour_min < 0.0 || depart_hour_max < depart_hour_min || depart_hour_max >= 24.0)
        throw std::invalid_argument("FleetProfile: bad departure window");
    if (intensity_spread < 0.0 || intensity_spread >= 1.0)
        throw std::invalid_argument("FleetProfile: intensity_spread must be in [0, 1)");
}

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

private:
    std::mt19937_64 gen_;
};

struct Key {
    double t, e, n;
};

constexpr double kCell = 100.0;
constexpr double kOrigin = 50000.0;

}  // namespace

std::vector<std::pair<double, double>> synthetic_sites(const FleetProfile& profile) {
    std::vector<std::pair<double, double>> sites;
    auto snap = [](double v) { return std::floor(v / kCell) * kCell + kCell / 2; };
    sites.emplace_back(snap(kOrigin), snap(kOrigin));
    for (int k = 0; k < profile.work_sites; ++k) {
        const double ang = 2.0 * std::numbers::pi * k / profile.work_sites + 0.3;
        const double r = profile.site_spacing * (1.0 + 0.15 * (k % 3));
        sites.emplace_back(snap(kOrigin + r * std::cos(ang)), snap(kOrigin + r * std::sin(ang)));
    }
    return sites;
}

std::vector<TruckTrace> synthesize_fleet(std::uint64_t seed, int trucks, int days, const FleetProfile& profile) {
    if (trucks < 1) throw std::invalid_argument("synthesize_fleet: trucks must be >= 1");
    if (days < 1) throw std::invalid_argument("synthesize_fleet: days must be >= 1");
    profile.validate();
    const auto sites = synthetic_sites(profile);
    const double horizon_end = profile.start_epoch + days * 86400.0;

    std::vector<TruckTrace> out;
    for (int i = 0; i < trucks; ++i) {
        Rng rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(i) * 0xBF58476D1CE4E5B9ULL + 1);
        const double intensity = rng.uniform(1.0 - profile.intensity_spread, 1.0 + profile.intensity_spread);
        std::vector<Key> keys{{profile.start_epoch, sites[0].first, sites[0].second}};
        auto go = [&](double e, double n) {
            const Key& last = keys.back();
            const double dist = std::hypot(e - last.e, n - last.n);
            keys.push_back({last.t + dist / profile.speed_mps, e, n});
        };
        auto wait = [&](double seconds) { keys.push_back({keys.back().t + seconds, keys.back().e, keys.back().n}); };

        for (int d = 0; d < days; ++d) {
            const double depart =
                profile.start_epoch + d * 86400.0 + 3600.0 * rng.uniform(profile.depart_hour_min, profile.depart_hour_max);
            wait(std::max(0.0, depart - keys.back().t));
            const int visits = rng.integer(profile.min_visits, profile.max_visits);
            std::vector<int> route{0};
            for (int v = 0; v < visits; ++v) {
                int s;
                do s = rng.integer(1, profile.work_sites);
                while (s == route.back() && profile.work_sites > 1);
                route.push_back(s);
            }
            route.push_back(0);
            double direct = 0.0;
            for (std::size_t k = 1; k < route.size(); ++k)
                direct += std::hypot(sites[route[k]].first - sites[route[k - 1]].first,
                                     sites[route[k]].second - sites[route[k - 1]].second);
            const double budget = profile.daily_miles * kMetersPerMile * intensity * rng.uniform(0.9, 1.1);
            const double scale = direct > 0.0 ? std::max(1.0, budget / direct) : 1.0;
            for (std::size_t k = 1; k < route.size(); ++k) {
                const auto [ae, an] = sites[route[k - 1]];
                const auto [be, bn] = sites[route[k]];
                const double len = std::hypot(be - ae, bn - an);
                const double target = len * scale;
                const double h = std::sqrt(std::max(0.0, target * target / 4.0 - len * len / 4.0));
                const double side = rng.uniform() < 0.5 ? -1.0 : 1.0;
                double me = 0.5 * (ae + be), mn = 0.5 * (an + bn);
                if (len > 0.0) {
                    me += side * h * -(bn - an) / len;
                    mn += side * h * (be - ae) / len;
                } else {
                    me += side * h;
                }
                go(me, mn);
                if (rng.uniform() < profile.stray_stop_probability) wait(60.0 * rng.uniform(5.5, 8.0));
                go(be, bn);
                if (k + 1 < route.size())
                    wait(60.0 * rng.uniform(profile.min_visit_minutes, profile.max_visit_minutes));
            }
        }
        if (keys.back().t < horizon_end) wait(horizon_end - keys.back().t);

        TruckTrace tr;
        char name[32];
        std::snprintf(name, sizeof name, "T%03d", i + 1);
        tr.truck = name;
        std::size_t seg = 0;
        for (double t = profile.start_epoch; t < horizon_end; t += profile.sample_period) {
            while (seg + 1 < keys.size() - 1 && keys[seg + 1].t <= t) ++seg;
            const Key& a = keys[seg];
            const Key& b = keys[std::min(seg + 1, keys.size() - 1)];
            const bool moving = a.e != b.e || a.n != b.n;
            const double f = b.t > a.t ? std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0) : 0.0;
            GpsPoint p{t, a.e + f * (b.e - a.e), a.n + f * (b.n - a.n), moving ? profile.speed_mps : 0.0};
            if (!moving) {
                p.easting += rng.uniform(-profile.noise_m, profile.noise_m);
                p.northing += rng.uniform(-profile.noise_m, profile.noise_m);
            }
            tr.points.push_back(p);
        }
        out.push_back(std::move(tr));
    }
    return out;
}

std::vector<double> synthesize_temperature(std::uint64_t seed, int hours, int first_day_of_year) {
    if (hours < 0) throw std::invalid_argument("synthesize_temperature: negative length");
    Rng rng(seed ^ 0x5851F42D4C957F2DULL);
    std::vector<double> out(hours);
    for (int h = 0; h < hours; ++h) {
        const double day = first_day_of_year + h / 24.0;
        const double seasonal = 70.0 - 25.0 * std::cos(2.0 * std::numbers::pi * (day - 15.0) / 365.0);
        const double daily = -10.0 * std::cos(2.0 * std::numbers::pi * ((h % 24) - 3.0) / 24.0);
        out[h] = std::clamp(seasonal + daily + rng.uniform(-3.0, 3.0), 30.0, 110.0);
    }
    return out;
}

}  // namespace fleetcharge
