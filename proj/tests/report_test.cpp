#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>

#include "fixtures.hpp"
#include "fleetcharge/model/planning_model.hpp"
#include "fleetcharge/report/metrics.hpp"
#include "fleetcharge/report/replay.hpp"
#include "fleetcharge/report/report_io.hpp"

using namespace fleetcharge;

namespace {

SolveSettings exact() {
    SolveSettings s;
    s.rel_gap = 0.0;
    s.abs_gap = 1e-9;
    return s;
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("fleetcharge_report_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Idle schedule starting at the given SoC.
Schedule idle(const FleetInstance& inst, double soc) {
    Schedule s;
    s.charger.assign(inst.truck_count(), std::vector<int>(inst.slot_count(), -1));
    s.energy.assign(inst.truck_count(), std::vector<double>(inst.slot_count(), 0.0));
    s.initial_soc.assign(inst.truck_count(), soc);
    return s;
}

}  // namespace

TEST(Metrics, TwoSlowSlotsAtTenKwh) {
    const std::vector<int> zones{0, 0, kNoZone, kNoZone};
    const auto inst = fixture::line_instance(4, 1, zones, {}, 1, false);
    std::vector<std::vector<int>> charger{{0, 0, -1, -1}}, abandoned{{0, 0, 0, 0}};
    std::vector<std::vector<double>> energy{{10.0, 10.0, 0.0, 0.0}}, soc{{0.5, 0.6, 0.6, 0.6}};
    const auto m = metrics_from(inst, {&charger, &energy, &abandoned, &soc});
    EXPECT_DOUBLE_EQ(m.slow_hours, 1.0);
    EXPECT_DOUBLE_EQ(m.fast_hours, 0.0);
    EXPECT_DOUBLE_EQ(m.avg_power_kw, 20.0);
    EXPECT_FALSE(m.no_charging);
    EXPECT_DOUBLE_EQ(m.abandonment_hours, 0.0);
    EXPECT_DOUBLE_EQ(m.avg_charging_hours_per_truck_day, 1.0);
}

TEST(Metrics, NoChargingFlagged) {
    const auto inst = fixture::line_instance(4, 1, {0, 0, kNoZone, kNoZone}, {}, 1, false);
    std::vector<std::vector<int>> charger{{-1, -1, -1, -1}}, abandoned{{0, 1, 0, 0}};
    std::vector<std::vector<double>> energy{{0, 0, 0, 0}}, soc{{0.5, 0.5, 0.5, 0.5}};
    const auto m = metrics_from(inst, {&charger, &energy, &abandoned, &soc});
    EXPECT_TRUE(m.no_charging);
    EXPECT_DOUBLE_EQ(m.avg_power_kw, 0.0);
    EXPECT_DOUBLE_EQ(m.abandonment_hours, 0.5);
}

TEST(Metrics, SocTableSortedDescending) {
    const auto inst = fixture::tiny_instance(3, {4, 2, 6, 2, 2, 20.0, true, 0});
    const auto sol = solve(build_model(inst, {}), exact());
    ASSERT_TRUE(sol.usable());
    const auto m = compute_metrics(sol, inst);
    ASSERT_EQ(m.soc.size(), 4u);
    for (std::size_t k = 1; k < m.soc.size(); ++k) EXPECT_GE(m.soc[k - 1].mean, m.soc[k].mean);
    double aband = 0.0;
    for (const auto& t : sol.trucks) aband += std::accumulate(t.abandoned.begin(), t.abandoned.end(), 0) * 0.5;
    EXPECT_DOUBLE_EQ(m.abandonment_hours, aband);
}

void expect_metrics_near(const ScheduleMetrics& a, const ScheduleMetrics& b) {
    constexpr double tol = 1e-9;
    EXPECT_EQ(a.trucks, b.trucks);
    EXPECT_EQ(a.days, b.days);
    EXPECT_EQ(a.no_charging, b.no_charging);
    EXPECT_NEAR(a.slow_hours, b.slow_hours, tol);
    EXPECT_NEAR(a.fast_hours, b.fast_hours, tol);
    EXPECT_NEAR(a.abandonment_hours, b.abandonment_hours, tol);
    EXPECT_NEAR(a.charged_kwh, b.charged_kwh, 1e-6);
    EXPECT_NEAR(a.avg_power_kw, b.avg_power_kw, 1e-6);
    EXPECT_NEAR(a.fleet_soc_mean, b.fleet_soc_mean, 1e-6);
    ASSERT_EQ(a.soc.size(), b.soc.size());
    for (std::size_t k = 0; k < a.soc.size(); ++k) {
        EXPECT_NEAR(a.soc[k].mean, b.soc[k].mean, 1e-6);
        EXPECT_NEAR(a.soc[k].min, b.soc[k].min, 1e-6);
    }
    EXPECT_EQ(a.breakdown.size(), b.breakdown.size());
}

TEST(Replay, SolverSolutionsReplayClean) {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto inst = fixture::tiny_instance(seed, {3, 2, 8, 2, 2, 20.0, true, 6});
        const auto model = build_model(inst, {});
        const auto sol = solve(model, exact());
        if (!sol.usable()) continue;
        ++checked;
        const auto r = replay(inst, sol.installation, schedule_from(sol), planning_durations(inst));
        EXPECT_TRUE(r.feasible) << seed << " " << (r.violations.empty() ? "" : r.violations[0].tag);
        expect_metrics_near(r.metrics, compute_metrics(sol, inst));
        for (int i = 0; i < inst.truck_count(); ++i)
            for (int s = 0; s < inst.slot_count(); ++s) {
                EXPECT_NEAR(r.soc[i][s], sol.trucks[i].soc[s], 1e-6);
                EXPECT_NEAR(r.wait[i][s], sol.trucks[i].wait[s], 1e-9);
                EXPECT_EQ(r.abandoned[i][s], sol.trucks[i].abandoned[s]);
            }
    }
    EXPECT_GE(checked, 4);
}

TEST(Replay, LowerEdgeBreaksOnlyPowerBounds) {
    int broken = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto inst = fixture::tiny_instance(seed, {3, 2, 8, 2, 2, 20.0, true, 6});
        const auto sol = solve(build_model(inst, {}), exact());
        if (!sol.usable()) continue;
        auto moments = compute_moments(observations_from_instance(inst));
        for (auto& [k, m] : moments.table) m.stddev = 0.2;
        moments.sigma_multiplier = 2.0;
        const auto r = replay(inst, sol.installation, schedule_from(sol), lower_edge_durations(moments, inst));
        for (const auto& v : r.violations) {
            EXPECT_EQ(v.tag, "powerbound");
            ++broken;
        }
    }
    EXPECT_GT(broken, 0);
}

TEST(Replay, WaitingAcrossDayBoundary) {
    // Uncharged same-zone stretch over midnight: w = (0, dt, 2dt).
    std::vector<int> zones(8, kNoZone);
    zones[3] = zones[4] = zones[5] = 1;
    const auto inst = fixture::line_instance(4, 2, zones, {}, 2, true);
    const auto r = replay(inst, Installation::zeros(2), idle(inst, 0.6), planning_durations(inst));
    EXPECT_DOUBLE_EQ(r.wait[0][3], 0.0);
    EXPECT_DOUBLE_EQ(r.wait[0][4], 0.5);
    EXPECT_DOUBLE_EQ(r.wait[0][5], 1.0);
}

TEST(Replay, WaitingResetsOnZoneChange) {
    std::vector<int> zones{1, 1, 2, kNoZone};
    const auto inst = fixture::line_instance(4, 1, zones, {}, 3, true);
    const auto r = replay(inst, Installation::zeros(3), idle(inst, 0.6), planning_durations(inst));
    EXPECT_DOUBLE_EQ(r.wait[0][0], 0.0);
    EXPECT_DOUBLE_EQ(r.wait[0][1], 0.5);
    EXPECT_DOUBLE_EQ(r.wait[0][2], 0.0);
}

TEST(Replay, DetectsCapacityAndWindowViolations) {
    const auto inst = fixture::line_instance(4, 1, {1, 1, kNoZone, kNoZone}, {}, 2, true);
    auto s = idle(inst, 0.5);
    s.charger[0][0] = 0;
    s.energy[0][0] = 1.0;
    s.charger[0][2] = 0;
    s.energy[0][2] = 1.0;
    const auto r = replay(inst, Installation::zeros(2), s, planning_durations(inst));
    EXPECT_FALSE(r.feasible);
    bool capacity = false, window = false;
    for (const auto& v : r.violations) capacity |= v.tag == "capacity", window |= v.tag == "window";
    EXPECT_TRUE(capacity);
    EXPECT_TRUE(window);
}

TEST(Replay, DetectsFastCeiling) {
    const auto inst = fixture::line_instance(4, 1, {1, 1, kNoZone, kNoZone}, {}, 2, true);
    auto s = idle(inst, 0.85);
    s.charger[0][0] = 1;
    Installation x = Installation::zeros(2);
    x.count[1] = {0, 1};
    const auto r = replay(inst, x, s, planning_durations(inst));
    bool pre = false;
    for (const auto& v : r.violations) pre |= v.tag == "fastcap_pre";
    EXPECT_TRUE(pre);
}

TEST(Replay, DetectsSocBox) {
    const auto inst = fixture::line_instance(4, 1, {1, kNoZone, kNoZone, kNoZone}, {0, 30, 0, 0}, 2, true, 40.0);
    const auto r = replay(inst, Installation::zeros(2), idle(inst, 0.5), planning_durations(inst));
    bool box = false;
    for (const auto& v : r.violations) box |= v.tag == "socbox";
    EXPECT_TRUE(box);
}

TEST(ReportIo, RoundTripBothFormats) {
    const auto inst = fixture::tiny_instance(9, {3, 2, 6, 2, 2, 20.0, true, 0});
    const auto sol = solve(build_model(inst, {}), exact());
    ASSERT_TRUE(sol.usable());
    const auto m = compute_metrics(sol, inst);
    for (auto fmt : {ReportFormat::csv, ReportFormat::json}) {
        const auto dir = scratch(fmt == ReportFormat::csv ? "csv" : "json");
        emit_report(m, fmt, dir);
        const auto back = read_report(fmt, dir);
        EXPECT_EQ(back.slow_hours, m.slow_hours);
        EXPECT_EQ(back.avg_power_kw, m.avg_power_kw);
        EXPECT_EQ(back.soc, m.soc);
        EXPECT_EQ(back.breakdown, m.breakdown);
        std::filesystem::remove_all(dir);
    }
}

TEST(ReportIo, EmptyMetricsHeaderOnly) {
    const auto dir = scratch("empty");
    emit_report(ScheduleMetrics{}, ReportFormat::csv, dir);
    std::ifstream in(dir / "soc_summary.csv");
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    EXPECT_EQ(lines, 1);
    std::filesystem::remove_all(dir);
}

TEST(ReportIo, UnwritableDirectoryFails) {
    EXPECT_THROW(emit_report(ScheduleMetrics{}, ReportFormat::csv, "/proc/nonexistent/dir"), std::exception);
    EXPECT_THROW((void)report_format_from_string("xml"), std::invalid_argument);
}

TEST(ReportIo, ScheduleAndInstallationRoundTrip) {
    const auto inst = fixture::tiny_instance(12, {3, 2, 6, 2, 2, 20.0, true, 0});
    const auto sol = solve(build_model(inst, {}), exact());
    ASSERT_TRUE(sol.usable());
    const auto dir = scratch("sched");
    write_schedule_csv(inst, sol, dir / "schedule.csv");
    const auto back = read_schedule_csv(inst, dir / "schedule.csv");
    const auto orig = schedule_from(sol);
    EXPECT_EQ(back.charger, orig.charger);
    for (int i = 0; i < inst.truck_count(); ++i) {
        EXPECT_NEAR(back.initial_soc[i], orig.initial_soc[i], 1e-12);
        for (int s = 0; s < inst.slot_count(); ++s) EXPECT_NEAR(back.energy[i][s], orig.energy[i][s], 1e-9);
    }
    const auto r = replay(inst, sol.installation, back, planning_durations(inst));
    EXPECT_TRUE(r.feasible);
    write_installation_csv(sol.installation, dir / "installation.csv");
    EXPECT_EQ(read_installation_csv(dir / "installation.csv", inst.zone_count()), sol.installation);
    std::filesystem::remove_all(dir);
}
