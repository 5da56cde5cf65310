#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numeric>
#include <fstream>
#include <set>

#include "fixtures.hpp"
#include "fleetcharge/planner/day_selection.hpp"
#include "fleetcharge/planner/hcv.hpp"
#include "fleetcharge/planner/planner.hpp"

using namespace fleetcharge;

namespace {

SolveSettings exact() {
    SolveSettings s;
    s.rel_gap = 0.0;
    s.abs_gap = 1e-9;
    return s;
}

// Trucks park at the overnight depot (zone 0) for slots 0..1 and at a work
// site (zone 1) for slot 3 every day and drive `kwh` in slot 2. Truck k only
// operates from day active_from[k]; before that it never moves or parks.
FleetInstance depot_fleet(int days, const std::vector<int>& active_from, double kwh) {
    const int T = 6;
    std::vector<Truck> trucks;
    for (std::size_t k = 0; k < active_from.size(); ++k) trucks.push_back({"t" + std::to_string(k), 40.0});
    auto inst = FleetInstance::empty({days, T, 30.0}, trucks, {{"depot", true}, {"site", false}},
                                     {default_slow_charger(), default_fast_charger()});
    for (int i = 0; i < inst.truck_count(); ++i)
        for (int d = active_from[i]; d < days; ++d) {
            inst.set_parking(i, d * T + 0, 0, 1.0);
            inst.set_parking(i, d * T + 1, 0, 1.0);
            inst.series[i].rho[d * T + 2] = kwh;
            inst.set_parking(i, d * T + 3, 1, 0.5);
            inst.series[i].rho[d * T + 4] = 1.0;
        }
    inst.validate();
    return inst;
}

PlannerConfig exact_config() {
    PlannerConfig c;
    c.settings = exact();
    return c;
}

std::vector<DayScore> flat_scores(int days) {
    std::vector<DayScore> s(days);
    for (int d = 0; d < days; ++d) s[d].day = d;
    return s;
}

}  // namespace

TEST(Hcv, ZeroConsumptionKept) {
    const auto inst = fixture::line_instance(4, 1, {0, 0, kNoZone, kNoZone}, {}, 1, false);
    const auto r = filter_hcv(inst, nullptr, {});
    EXPECT_EQ(r.kept, std::vector<int>{0});
    EXPECT_TRUE(r.hcv.empty());
}

TEST(Hcv, ConsumptionBeyondDeliverableEnergy) {
    // One fast slot at pp 1 delivers 71.25 kWh; the truck drives 80.
    std::vector<double> rho{0, 80, 0, 0};
    const auto inst = fixture::line_instance(4, 1, {1, kNoZone, kNoZone, kNoZone}, rho, 2, true, 200.0);
    const auto r = filter_hcv(inst, nullptr, {});
    ASSERT_EQ(r.hcv, std::vector<int>{0});
    EXPECT_TRUE(r.reason[0] == "soc_not_restored" || r.reason[0] == "below_soc_min");
}

TEST(Hcv, NeverParksIsHcv) {
    auto inst = depot_fleet(2, {0, 5}, 5.0);
    const auto r = filter_hcv(inst, nullptr, {});
    EXPECT_EQ(r.kept, std::vector<int>{0});
    ASSERT_EQ(r.hcv, std::vector<int>{1});
    EXPECT_EQ(r.reason[0], "never_parks");
}

TEST(Hcv, DeterministicForFixedSeed) {
    const auto inst = fixture::tiny_instance(9, {6, 3, 6, 2, 2, 20.0, true, 0});
    HcvConfig c;
    c.seed = 4;
    const auto a = filter_hcv(inst, nullptr, c);
    const auto b = filter_hcv(inst, nullptr, c);
    EXPECT_EQ(a.kept, b.kept);
    EXPECT_EQ(a.hcv, b.hcv);
    EXPECT_EQ(a.margin, b.margin);
}

TEST(Hcv, SuggestionsOrderedByMargin) {
    const auto inst = fixture::tiny_instance(9, {6, 3, 6, 2, 2, 20.0, true, 0});
    const auto r = filter_hcv(inst, nullptr, {});
    const auto s = hcv_suggestions(r, 3);
    for (std::size_t k = 1; k < s.size(); ++k) EXPECT_LE(r.margin[s[k - 1]], r.margin[s[k]]);
    for (int t : s) EXPECT_NE(std::find(r.kept.begin(), r.kept.end(), t), r.kept.end());
}

TEST(DaySelection, CriteriaDirections) {
    for (int c = 0; c < kDayCriteria; ++c) EXPECT_EQ(ranked_ascending(c), c >= 8);
}

TEST(DaySelection, SingleTopDayWithBoundaries) {
    auto scores = flat_scores(10);
    for (auto& s : scores) s.metrics[8] = s.metrics[9] = 1.0;
    scores[5].metrics[0] = 7.0;
    scores[0].metrics[8] = scores[0].metrics[9] = 0.0;
    const auto days = select_days(scores, {1, 0, 1});
    EXPECT_EQ(days, (std::vector<int>{0, 5, 9}));
}

TEST(DaySelection, ThreeDayHorizonClipsPadding) {
    const auto days = select_days(flat_scores(3), {1, 5, 2});
    EXPECT_EQ(days, (std::vector<int>{0, 1, 2}));
}

TEST(DaySelection, SharedTopDayKeptOnce) {
    auto scores = flat_scores(20);
    for (auto& s : scores) s.metrics[8] = s.metrics[9] = 1.0;
    scores[0].metrics[8] = scores[0].metrics[9] = 0.0;
    scores[10].metrics[0] = scores[10].metrics[4] = 3.0;
    const auto days = select_days(scores, {1, 0, 1});
    EXPECT_EQ(days, (std::vector<int>{0, 10, 19}));
}

TEST(DaySelection, YearOfScatteredTopDays) {
    // Top day per criterion, zero-based day of year.
    auto build = [](int energy_top) {
        const std::array<int, kDayCriteria> top{347, 338, 6, 166, energy_top, 324, 6, 63, 364, 7};
        auto scores = flat_scores(365);
        for (int c = 0; c < kDayCriteria; ++c)
            for (auto& s : scores) s.metrics[c] = ranked_ascending(c) ? (s.day == top[c] ? 0.0 : 1.0)
                                                                       : (s.day == top[c] ? 1.0 : 0.0);
        return select_days(scores, {});
    };
    const auto table = build(350);  // a second December top day merges into one 8-day block
    EXPECT_EQ(table.size(), 39u);
    const std::vector<std::pair<int, int>> ranges{{0, 1}, {4, 9}, {61, 65}, {164, 168}, {322, 326},
                                                  {336, 340}, {345, 352}, {362, 364}};
    std::vector<int> expected;
    for (auto [a, b] : ranges)
        for (int d = a; d <= b; ++d) expected.push_back(d);
    EXPECT_EQ(table, expected);
    EXPECT_EQ(build(347).size(), 36u);
}

TEST(DaySelection, ScoresAreFiniteAndNonNegative) {
    const auto fleet = fixture::synthetic_fleet(2, 4, 4, {}, 100.0);
    const auto scores = score_days(fleet.pipeline.instance, fleet.pipeline.daily_km);
    ASSERT_EQ(scores.size(), 4u);
    for (const auto& s : scores)
        for (double v : s.metrics) {
            EXPECT_TRUE(std::isfinite(v));
            EXPECT_GE(v, 0.0);
        }
    EXPECT_GT(scores[0].metrics[0], 0.0);
    EXPECT_GT(scores[0].metrics[4], 0.0);
    const auto no_km = score_days(fleet.pipeline.instance, {});
    EXPECT_DOUBLE_EQ(no_km[0].metrics[0], 0.0);
}

TEST(MonthLengths, CalendarAndEqualParts) {
    const auto y = month_lengths(365);
    EXPECT_EQ(y.size(), 12u);
    EXPECT_EQ(y[1], 28);
    EXPECT_EQ(month_lengths(366)[1], 29);
    EXPECT_EQ(month_lengths(36), std::vector<int>(12, 3));
    EXPECT_EQ(month_lengths(5), std::vector<int>(5, 1));
    const auto odd = month_lengths(40);
    EXPECT_EQ(std::accumulate(odd.begin(), odd.end(), 0), 40);
    EXPECT_THROW((void)month_lengths(0), std::invalid_argument);
}

TEST(PlanDs, FullHorizonEqualsDirectSolve) {
    const auto inst = depot_fleet(5, {0, 0, 0}, 12.0);
    const auto cfg = exact_config();
    const auto rec = plan_ds(inst, {}, cfg);
    EXPECT_EQ(rec.days, (std::vector<int>{0, 1, 2, 3, 4}));
    const auto direct = solve(build_model(inst, {}), exact());
    ASSERT_TRUE(direct.usable());
    EXPECT_EQ(rec.trucks.size(), 3u);
    EXPECT_NEAR(rec.solution.objective, direct.objective, 1e-6);
    EXPECT_NEAR(rec.solution.terms.installation, direct.terms.installation, 1e-6);
    EXPECT_NEAR(rec.solution.terms.low_soc_penalty, direct.terms.low_soc_penalty, 1e-6);
    EXPECT_DOUBLE_EQ(rec.installation.cost(inst.chargers), rec.solution.terms.installation);
}

TEST(PlanDs, InfeasibleSurfacesSuggestions) {
    std::vector<double> rho{0, 80, 0, 0};
    const auto inst = fixture::line_instance(4, 1, {1, kNoZone, kNoZone, kNoZone}, rho, 2, true, 200.0);
    auto cfg = exact_config();
    cfg.exclude_hcv = false;
    try {
        (void)plan_ds(inst, {}, cfg);
        FAIL() << "expected PlanningError";
    } catch (const PlanningError& e) {
        EXPECT_NE(std::string(e.what()).find("candidates for exclusion"), std::string::npos) << e.what();
    }
    cfg.exclude_hcv = true;
    EXPECT_THROW((void)plan_ds(inst, {}, cfg), PlanningError);
}

TEST(PlanIps, ConstantDemandIsFlat) {
    const auto inst = depot_fleet(12, {0, 0}, 12.0);
    auto cfg = exact_config();
    cfg.month_overlap = 1;
    const auto rec = plan_ips(inst, month_lengths(12), cfg);
    ASSERT_EQ(rec.months.size(), 12u);
    for (const auto& m : rec.months) EXPECT_EQ(m.carried, rec.months[0].carried);
    EXPECT_EQ(rec.installation, rec.months[0].carried);
    EXPECT_EQ(rec.months[1].window_first, 0);
    EXPECT_EQ(rec.months[5].window_first, 4);
}

TEST(PlanIps, RampIsMonotoneAndSufficient) {
    // A new truck starts every other month.
    const auto inst = depot_fleet(12, {0, 2, 4, 6, 8, 10}, 14.0);
    auto cfg = exact_config();
    cfg.month_overlap = 1;
    const auto rec = plan_ips(inst, month_lengths(12), cfg);
    for (std::size_t k = 1; k < rec.months.size(); ++k)
        EXPECT_TRUE(rec.months[k].carried.dominates(rec.months[k - 1].carried)) << k;
    EXPECT_GT(rec.installation.total(ChargerKind::slow) + rec.installation.total(ChargerKind::fast),
              rec.months[0].carried.total(ChargerKind::slow) + rec.months[0].carried.total(ChargerKind::fast));
    for (bool ok : ips_sufficiency(inst, rec, cfg)) EXPECT_TRUE(ok);
}

TEST(PlanIps, SingleMonthEqualsDs) {
    const auto inst = depot_fleet(5, {0, 0, 1}, 12.0);
    auto cfg = exact_config();
    cfg.month_overlap = 0;
    const auto ips = plan_ips(inst, {5}, cfg);
    const auto ds = plan_ds(inst, {}, cfg);
    ASSERT_EQ(ips.months.size(), 1u);
    EXPECT_EQ(ips.installation, ds.installation);
    EXPECT_NEAR(ips.months[0].solution.objective, ds.solution.objective, 1e-6);
}

TEST(PlanIps, MonthsMustPartition) {
    const auto inst = depot_fleet(5, {0}, 5.0);
    EXPECT_THROW((void)plan_ips(inst, {2, 2}, exact_config()), std::invalid_argument);
}

TEST(PlanIps, TrajectoryCsv) {
    const auto inst = depot_fleet(4, {0, 2}, 12.0);
    auto cfg = exact_config();
    cfg.month_overlap = 1;
    const auto rec = plan_ips(inst, {2, 2}, cfg);
    const auto path = std::filesystem::temp_directory_path() / "fleetcharge_trajectory.csv";
    write_trajectory_csv(rec, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "month,first_day,end_day,zone,slow,fast,joint");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    EXPECT_EQ(rows, 2 * inst.zone_count());
    std::filesystem::remove(path);
}

TEST(PlannerConfig, Validation) {
    PlannerConfig c;
    EXPECT_NO_THROW(c.validate());
    c.month_overlap = -1;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.fast_gamma = 1.5;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}
