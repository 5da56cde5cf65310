#include <gtest/gtest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "fleetcharge/uncertainty/moments.hpp"

using namespace fleetcharge;

namespace {

UncertaintyMoments single(double mu, double sigma, double k, std::vector<double> gamma = {1.0, 1.0}) {
    UncertaintyMoments m;
    m.table[{0, 0, 0}] = {mu, sigma, 2};
    m.sigma_multiplier = k;
    m.gamma = std::move(gamma);
    return m;
}

// One truck parked in zone 0 during slot 0 of a one-day grid.
FleetInstance one_slot(double pp) {
    auto inst = FleetInstance::empty({1, 48, 30.0}, {{"t0", 100.0}}, {{"z0", false}},
                                     {default_slow_charger(), default_fast_charger()});
    inst.set_parking(0, 0, 0, pp);
    return inst;
}

}  // namespace

TEST(ComputeMoments, ConstantObservations) {
    const auto m = compute_moments({{{0, 1, 2}, 0.5}, {{0, 1, 2}, 0.5}, {{0, 1, 2}, 0.5}});
    const auto* e = m.find({0, 1, 2});
    ASSERT_NE(e, nullptr);
    EXPECT_DOUBLE_EQ(e->mean, 0.5);
    EXPECT_DOUBLE_EQ(e->stddev, 0.0);
    EXPECT_EQ(e->count, 3);
}

TEST(ComputeMoments, TwoPointPopulationSpread) {
    const auto m = compute_moments({{{0, 0, 0}, 5.0 / 30.0}, {{0, 0, 0}, 1.0}});
    const auto* e = m.find({0, 0, 0});
    ASSERT_NE(e, nullptr);
    EXPECT_NEAR(e->mean, 0.5833333333333334, 1e-12);
    EXPECT_NEAR(e->stddev, 0.4166666666666667, 1e-12);
}

TEST(ComputeMoments, SingleObservationHasNoSpread) {
    const auto m = compute_moments({{{3, 4, 5}, 0.7}});
    EXPECT_DOUBLE_EQ(m.find({3, 4, 5})->stddev, 0.0);
}

TEST(ComputeMoments, AbsentKeysStayAbsent) {
    const auto m = compute_moments({{{0, 0, 0}, 0.7}});
    EXPECT_EQ(m.find({0, 0, 1}), nullptr);
    EXPECT_EQ(m.table.size(), 1u);
}

TEST(ComputeMoments, EmptyHistoryRejected) { EXPECT_THROW((void)compute_moments({}), std::invalid_argument); }

TEST(ComputeMoments, InstanceObservationsReproduceDurations) {
    const auto inst = fixture::tiny_instance(4, {3, 3, 6, 2, 2, 20.0, true, 0});
    const auto m = compute_moments(observations_from_instance(inst));
    for (int i = 0; i < inst.truck_count(); ++i)
        for (int s = 0; s < inst.slot_count(); ++s) {
            if (!inst.parked(i, s)) continue;
            const auto* e = m.find({i, inst.grid.hour_of_day(s % inst.grid.slots_per_day), inst.zone_at(i, s)});
            ASSERT_NE(e, nullptr);
            EXPECT_DOUBLE_EQ(e->mean, inst.series[i].pp[s]);
            EXPECT_NEAR(e->stddev, 0.0, 1e-12);
        }
}

TEST(RobustCoefficient, FastWithSpreadReduction) {
    const auto m = single(0.8, 0.2, 1.0, {1.0, 0.5});
    EXPECT_NEAR(robust_coefficient(m, {0, 0, 0}, default_fast_charger(), 0.5, 0.8), 49.875, 1e-9);
}

TEST(RobustCoefficient, ZeroMultiplierUsesMean) {
    const auto m = single(0.8, 0.2, 0.0, {1.0, 0.5});
    EXPECT_NEAR(robust_coefficient(m, {0, 0, 0}, default_fast_charger(), 0.5, 0.8), 57.0, 1e-9);
}

TEST(RobustCoefficient, ClampsAtShortestDuration) {
    const auto m = single(0.2, 0.5, 2.0);
    EXPECT_NEAR(robust_coefficient(m, {0, 0, 0}, default_fast_charger(), 0.5, 0.2), 11.875, 1e-9);
}

TEST(RobustCoefficient, MissingKeyFallsBackToInstance) {
    const auto m = single(0.8, 0.2, 2.0);
    EXPECT_NEAR(robust_coefficient(m, {0, 1, 0}, default_slow_charger(), 0.5, 0.6), 0.9 * 11.2 * 0.5 * 0.6, 1e-12);
}

TEST(RobustCoefficient, MonotoneInMultiplierAndGamma) {
    const auto fast = default_fast_charger();
    double prev = 1e9;
    for (double k : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        const double c = robust_coefficient(single(0.7, 0.15, k), {0, 0, 0}, fast, 0.5, 0.7);
        EXPECT_LE(c, prev + 1e-12);
        prev = c;
    }
    prev = -1.0;
    for (double g : {1.0, 0.75, 0.5, 0.25, 0.0}) {
        const double c = robust_coefficient(single(0.7, 0.15, 2.0, {1.0, g}), {0, 0, 0}, fast, 0.5, 0.7);
        EXPECT_GE(c, prev - 1e-12);
        prev = c;
    }
}

TEST(RobustCoefficient, WorstCaseOfBoxIsLowerEdge) {
    // Brute-force the minimum of the deliverable energy over a fine grid of the box.
    const auto fast = default_fast_charger();
    for (double mu : {0.3, 0.55, 0.9})
        for (double sigma : {0.0, 0.1, 0.3}) {
            const auto m = single(mu, sigma, 2.0, {1.0, 0.5});
            const double lo = std::max(kMinEffectiveDuration, mu - 2.0 * sigma * 0.5);
            const double hi = std::min(1.0, mu + 2.0 * sigma * 0.5);
            double worst = 1e9;
            for (int k = 0; k <= 1000; ++k)
                worst = std::min(worst, fast.slot_energy_kwh(0.5) * (lo + (hi - lo) * k / 1000.0));
            EXPECT_NEAR(robust_coefficient(m, {0, 0, 0}, fast, 0.5, mu), worst, 1e-9);
        }
}

TEST(Sampling, ZeroSpreadReturnsMean) {
    const auto inst = one_slot(0.6);
    const auto s = sample_durations(single(0.6, 0.0, 2.0), inst, 17);
    EXPECT_DOUBLE_EQ(s.at(0, 0, 0), 0.6);
    EXPECT_DOUBLE_EQ(s.at(0, 0, 1), 0.6);
    EXPECT_DOUBLE_EQ(s.at(0, 1, 0), 0.0);
}

TEST(Sampling, DrawsStayInsideBox) {
    const auto inst = one_slot(0.5);
    const auto m = single(0.5, 0.2, 1.0);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        const double v = sample_durations(m, inst, seed).at(0, 0, 0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    EXPECT_GE(lo, 0.3 - 1e-9);
    EXPECT_LE(hi, 0.7 + 1e-9);
    EXPECT_LT(lo, 0.31);
    EXPECT_GT(hi, 0.69);
    EXPECT_NEAR(sum / 10000.0, 0.5, 0.01);
}

TEST(Sampling, ClampedIntoDurationBox) {
    const auto inst = one_slot(0.9);
    const auto m = single(0.9, 0.3, 2.0);
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const auto s = sample_durations(m, inst, seed);
        for (int j = 0; j < 2; ++j) {
            EXPECT_GE(s.at(0, 0, j), kMinEffectiveDuration - 1e-12);
            EXPECT_LE(s.at(0, 0, j), 1.0 + 1e-12);
        }
    }
}

TEST(Sampling, SameSeedSameSample) {
    const auto inst = fixture::tiny_instance(8, {3, 3, 6, 2, 2, 20.0, true, 0});
    auto m = compute_moments(observations_from_instance(inst));
    for (auto& [k, v] : m.table) v.stddev = 0.1;
    m.sigma_multiplier = 2.0;
    EXPECT_EQ(sample_durations(m, inst, 3), sample_durations(m, inst, 3));
    EXPECT_NE(sample_durations(m, inst, 3), sample_durations(m, inst, 4));
}

TEST(Sampling, LowerEdgeAndPlanning) {
    const auto inst = one_slot(0.5);
    const auto m = single(0.5, 0.2, 1.0, {1.0, 0.5});
    const auto low = lower_edge_durations(m, inst);
    EXPECT_NEAR(low.at(0, 0, 0), 0.3, 1e-12);
    EXPECT_NEAR(low.at(0, 0, 1), 0.4, 1e-12);
    EXPECT_DOUBLE_EQ(planning_durations(inst).at(0, 0, 1), 0.5);
}

TEST(Linearization, ScalarCases) {
    const std::vector<double> coef{5.04, 71.25};
    const std::vector<double> gamma{1.0, 0.5};
    const std::vector<int> zero{0, 0}, slow{1, 0}, fast{0, 1};
    EXPECT_DOUBLE_EQ(quadratic_robust_bound(zero, coef, 0.7, 0.1, gamma), 0.0);
    EXPECT_DOUBLE_EQ(linear_robust_bound(zero, coef, 0.7, 0.1, gamma), 0.0);
    EXPECT_DOUBLE_EQ(linear_robust_bound(slow, coef, 0.7, 0.1, gamma), 5.04 * (0.7 - 0.1));
    EXPECT_DOUBLE_EQ(quadratic_robust_bound(fast, coef, 0.7, 0.1, gamma), 71.25 * (0.7 - 0.05));
}

TEST(Linearization, ExhaustiveUpToTwelve) {
    for (int n = 1; n <= 12; ++n) {
        std::vector<double> coef(n), gamma(n);
        for (int j = 0; j < n; ++j) coef[j] = 1.0 + 3.7 * j, gamma[j] = 1.0 - 0.07 * j;
        std::vector<int> y(n);
        for (int mask = 0; mask < (1 << n); ++mask) {
            for (int j = 0; j < n; ++j) y[j] = (mask >> j) & 1;
            ASSERT_TRUE(linearization_check(y, coef, 0.63, 0.21, gamma));
            ASSERT_DOUBLE_EQ(quadratic_robust_bound(y, coef, 0.63, 0.21, gamma),
                             linear_robust_bound(y, coef, 0.63, 0.21, gamma));
        }
    }
}

TEST(MomentsCsv, RoundTrip) {
    const auto path = std::filesystem::temp_directory_path() / "fleetcharge_moments.csv";
    UncertaintyMoments m;
    m.table[{0, 3, 1}] = {1.0 / 3.0, 0.1, 4};
    m.table[{2, 23, 0}] = {0.9, 0.0, 1};
    write_moments_csv(m, path);
    const auto back = read_moments_csv(path);
    ASSERT_EQ(back.table.size(), 2u);
    EXPECT_EQ(back.find({0, 3, 1})->mean, 1.0 / 3.0);
    EXPECT_EQ(back.find({0, 3, 1})->count, 4);
    EXPECT_EQ(back.find({2, 23, 0})->mean, 0.9);
    std::filesystem::remove(path);
}

TEST(Moments, ValidateRejectsBadValues) {
    EXPECT_THROW(single(0.1, 0.0, 1.0).validate(), std::exception);
    EXPECT_THROW(single(0.5, -0.1, 1.0).validate(), std::exception);
    EXPECT_THROW(single(0.5, 0.1, 1.0, {1.0, 1.5}).validate(), std::exception);
}
