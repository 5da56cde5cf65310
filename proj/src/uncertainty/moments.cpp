#include "fleetcharge/uncertainty/moments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include "fleetcharge/core/csv.hpp"

namespace fleetcharge {

void UncertaintyMoments::validate() const {
    for (const auto& [key, m] : table) {
        if (m.mean < kMinEffectiveDuration - 1e-9 || m.mean > 1.0 + 1e-9)
            throw ContractViolation("UncertaintyMoments: mean outside [5/30, 1]");
        if (m.stddev < 0.0) throw ContractViolation("UncertaintyMoments: negative standard deviation");
    }
    for (double g : gamma)
        if (g < 0.0 || g > 1.0) throw ContractViolation("UncertaintyMoments: gamma outside [0, 1]");
    if (sigma_multiplier < 0.0) throw ContractViolation("UncertaintyMoments: negative sigma multiplier");
}

UncertaintyMoments compute_moments(const std::vector<DurationObservation>& history) {
    if (history.empty()) throw std::invalid_argument("compute_moments: empty history");
    struct Acc {
        double sum = 0.0;
        int n = 0;
        std::vector<double> values;
    };
    std::map<MomentKey, Acc> acc;
    for (const auto& obs : history) {
        auto& a = acc[obs.key];
        a.sum += obs.value;
        ++a.n;
        a.values.push_back(obs.value);
    }
    UncertaintyMoments out;
    for (const auto& [key, a] : acc) {
        const double mean = a.sum / a.n;
        double ss = 0.0;
        for (double v : a.values) ss += (v - mean) * (v - mean);
        out.table[key] = Moment{mean, a.n > 1 ? std::sqrt(ss / a.n) : 0.0, a.n};
    }
    return out;
}

std::vector<DurationObservation> observations_from_instance(const FleetInstance& instance) {
    std::vector<DurationObservation> obs;
    for (int i = 0; i < instance.truck_count(); ++i)
        for (int s = 0; s < instance.slot_count(); ++s)
            if (instance.parked(i, s)) {
                const int t = s % instance.grid.slots_per_day;
                obs.push_back({{i, instance.grid.hour_of_day(t), instance.zone_at(i, s)}, instance.series[i].pp[s]});
            }
    return obs;
}

double worst_case_duration(const UncertaintyMoments& moments, const MomentKey& key, ChargerKind kind,
                           double fallback_pp) {
    const Moment* m = moments.find(key);
    const double raw = m ? m->mean - moments.sigma_multiplier * m->stddev * moments.gamma_for(kind) : fallback_pp;
    return std::clamp(raw, kMinEffectiveDuration, 1.0);
}

double robust_coefficient(const UncertaintyMoments& moments, const MomentKey& key, const ChargerType& charger,
                          double slot_hours, double fallback_pp) {
    return charger.slot_energy_kwh(slot_hours) * worst_case_duration(moments, key, charger.kind, fallback_pp);
}

namespace {

MomentKey key_for(const FleetInstance& instance, int truck, int slot) {
    const int t = slot % instance.grid.slots_per_day;
    return {truck, instance.grid.hour_of_day(t), instance.zone_at(truck, slot)};
}

DurationSample blank_sample(const FleetInstance& instance) {
    DurationSample out;
    out.value.assign(instance.truck_count(),
                     std::vector<std::vector<double>>(instance.slot_count(),
                                                      std::vector<double>(instance.charger_count(), 0.0)));
    return out;
}

// Platform-independent uniform in [0, 1).
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double robust_coefficient(const UncertaintyMoments& moments, const FleetInstance& instance, int truck, int slot,
                          const ChargerType& charger) {
    if (!instance.parked(truck, slot)) throw ContractViolation("robust_coefficient: not a parking slot");
    return robust_coefficient(moments, key_for(instance, truck, slot), charger, instance.grid.slot_hours(),
                              instance.series[truck].pp[slot]);
}

DurationSample sample_durations(const UncertaintyMoments& moments, const FleetInstance& instance,
                                std::uint64_t seed) {
    auto out = blank_sample(instance);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < instance.truck_count(); ++i)
        for (int s = 0; s < instance.slot_count(); ++s) {
            if (!instance.parked(i, s)) continue;
            const double u = 2.0 * unit_uniform(rng) - 1.0;
            const Moment* m = moments.find(key_for(instance, i, s));
            for (int j = 0; j < instance.charger_count(); ++j) {
                if (!m) {
                    out.value[i][s][j] = instance.series[i].pp[s];
                    continue;
                }
                const double half = moments.sigma_multiplier * m->stddev * moments.gamma_for(instance.chargers[j].kind);
                const double lo = std::clamp(m->mean - half, kMinEffectiveDuration, 1.0);
                const double hi = std::clamp(m->mean + half, kMinEffectiveDuration, 1.0);
                out.value[i][s][j] = lo + 0.5 * (u + 1.0) * (hi - lo);
            }
        }
    return out;
}

DurationSample lower_edge_durations(const UncertaintyMoments& moments, const FleetInstance& instance) {
    auto out = blank_sample(instance);
    for (int i = 0; i < instance.truck_count(); ++i)
        for (int s = 0; s < instance.slot_count(); ++s) {
            if (!instance.parked(i, s)) continue;
            for (int j = 0; j < instance.charger_count(); ++j)
                out.value[i][s][j] = worst_case_duration(moments, key_for(instance, i, s), instance.chargers[j].kind,
                                                         instance.series[i].pp[s]);
        }
    return out;
}

DurationSample planning_durations(const FleetInstance& instance) {
    auto out = blank_sample(instance);
    for (int i = 0; i < instance.truck_count(); ++i)
        for (int s = 0; s < instance.slot_count(); ++s)
            for (int j = 0; j < instance.charger_count(); ++j) out.value[i][s][j] = instance.series[i].pp[s];
    return out;
}

double quadratic_robust_bound(std::span<const int> y, std::span<const double> coef_per_type, double mu, double sigma,
                              std::span<const double> gamma) {
    double total = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        const double yj = y[j];
        total += coef_per_type[j] * yj * (mu * yj - sigma * gamma[j] * yj);
    }
    return total;
}

double linear_robust_bound(std::span<const int> y, std::span<const double> coef_per_type, double mu, double sigma,
                           std::span<const double> gamma) {
    double total = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        const double yj = y[j];
        total += coef_per_type[j] * (mu * yj - sigma * gamma[j] * yj);
    }
    return total;
}

bool linearization_check(std::span<const int> y, std::span<const double> coef_per_type, double mu, double sigma,
                         std::span<const double> gamma) {
    for (int v : y)
        if (v != 0 && v != 1) throw ContractViolation("linearization_check: y must be binary");
    return quadratic_robust_bound(y, coef_per_type, mu, sigma, gamma) ==
           linear_robust_bound(y, coef_per_type, mu, sigma, gamma);
}

void write_moments_csv(const UncertaintyMoments& moments, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "truck,hour,zone,mu,sigma,count\n";
    for (const auto& [k, m] : moments.table)
        out << k.truck << ',' << k.hour << ',' << k.zone << ',' << csv::decimal(m.mean) << ','
            << csv::decimal(m.stddev) << ',' << m.count << '\n';
}

UncertaintyMoments read_moments_csv(const std::filesystem::path& path) {
    const auto t = csv::Table::read(path);
    const auto ci = t.column("truck"), ch = t.column("hour"), cz = t.column("zone"), cm = t.column("mu"),
               cs = t.column("sigma");
    const bool has_count = t.has_column("count");
    UncertaintyMoments out;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        MomentKey k{static_cast<int>(t.integer(r, ci)), static_cast<int>(t.integer(r, ch)),
                    static_cast<int>(t.integer(r, cz))};
        out.table[k] = Moment{t.number(r, cm), t.number(r, cs),
                              has_count ? static_cast<int>(t.integer(r, t.column("count"))) : 1};
    }
    out.validate();
    return out;
}

}  // namespace fleetcharge
