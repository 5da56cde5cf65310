#include <gtest/gtest.h>

#include <cstdlib>

#include "fixtures.hpp"
#include "fleetcharge/model/planning_model.hpp"
#include "fleetcharge/solver/dense_simplex.hpp"
#include "fleetcharge/solver/solution.hpp"
#include "oracle.hpp"

using namespace fleetcharge;

namespace {

SolveSettings exact() {
    SolveSettings s;
    s.rel_gap = 0.0;
    s.abs_gap = 1e-9;
    return s;
}

}  // namespace

TEST(Settings, Validation) {
    SolveSettings s;
    EXPECT_DOUBLE_EQ(s.rel_gap, 0.01);
    s.rel_gap = -0.1;
    EXPECT_THROW(s.validate(), ContractViolation);
    s.rel_gap = 0.01;
    s.time_limit = 0.0;
    EXPECT_THROW(s.validate(), ContractViolation);
}

TEST(Backends, SelectionByName) {
    EXPECT_EQ(make_backend("highs")->name(), "highs");
    EXPECT_EQ(make_backend("bnb")->name(), "bnb");
    EXPECT_THROW((void)make_backend("cplex"), std::invalid_argument);
    ::setenv("FLEETCHARGE_SOLVER", "bnb", 1);
    EXPECT_EQ(default_backend()->name(), "bnb");
    ::unsetenv("FLEETCHARGE_SOLVER");
    EXPECT_EQ(default_backend()->name(), "highs");
}

TEST(DenseSimplex, SmallLp) {
    // min -x - y  s.t.  x + 2y <= 4, 3x + y <= 6
    LinearProgram lp;
    const int x = lp.add_column("x", 0.0, kInf, -1.0, VarType::continuous);
    const int y = lp.add_column("y", 0.0, kInf, -1.0, VarType::continuous);
    lp.add_row("a", -kInf, 4.0, {x, y}, {1.0, 2.0});
    lp.add_row("b", -kInf, 6.0, {x, y}, {3.0, 1.0});
    const auto r = solve_lp_relaxation(lp);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_NEAR(r.objective, -2.8, 1e-9);
    EXPECT_NEAR(r.values[x], 1.6, 1e-9);
}

TEST(DenseSimplex, InfeasibleAndUnbounded) {
    LinearProgram lp;
    const int x = lp.add_column("x", 0.0, 1.0, 1.0, VarType::continuous);
    lp.add_row("r", 2.0, kInf, {x}, {1.0});
    EXPECT_EQ(solve_lp_relaxation(lp).status, LpStatus::infeasible);
    LinearProgram ub;
    const int z = ub.add_column("z", 0.0, kInf, -1.0, VarType::continuous);
    ub.add_row("r", 0.0, kInf, {z}, {1.0});
    EXPECT_EQ(solve_lp_relaxation(ub).status, LpStatus::unbounded);
}

TEST(Solve, ZeroDemandOptimal) {
    auto inst = fixture::tiny_instance(1);
    for (auto& s : inst.series) std::fill(s.rho.begin(), s.rho.end(), 0.0);
    for (const auto& backend : {make_highs_backend(), make_bnb_backend()}) {
        const auto sol = solve(build_model(inst, {}), exact(), *backend);
        EXPECT_EQ(sol.status, SolveStatus::optimal) << backend->name();
        EXPECT_NEAR(sol.objective, 0.0, 1e-9);
    }
}

TEST(Solve, BothBackendsMatchOracle) {
    const auto highs = make_highs_backend();
    const auto bnb = make_bnb_backend();
    int compared = 0;
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        const auto inst = fixture::tiny_instance(seed, {2, 1, 6, 2, 2, 20.0, true, 3});
        const auto model = build_model(inst, {});
        const auto oracle = fixture::brute_force_optimum(inst);
        const auto a = solve(model, exact(), *highs);
        const auto b = solve(model, exact(), *bnb);
        ASSERT_EQ(a.usable(), oracle.feasible) << seed;
        ASSERT_EQ(b.usable(), oracle.feasible) << seed;
        if (!oracle.feasible) {
            EXPECT_EQ(a.status, SolveStatus::infeasible);
            EXPECT_EQ(b.status, SolveStatus::infeasible);
            continue;
        }
        ++compared;
        EXPECT_NEAR(a.objective, oracle.objective, 1e-6) << seed;
        EXPECT_NEAR(b.objective, oracle.objective, 1e-6) << seed;
        EXPECT_LE(model.program().max_violation(a.values), kFeasibilityTolerance);
        EXPECT_LE(model.program().max_violation(b.values), kFeasibilityTolerance);
    }
    EXPECT_GE(compared, 3);
}

TEST(Solve, InfeasibleReportsHint) {
    // The truck drives 30 kWh but only parks for one slot.
    std::vector<int> zones(4, kNoZone);
    zones[0] = 0;
    const auto inst = fixture::line_instance(4, 1, zones, {0.0, 30.0, 0.0, 0.0}, 1, false, 40.0);
    const auto sol = solve(build_model(inst, {}), exact());
    EXPECT_EQ(sol.status, SolveStatus::infeasible);
    EXPECT_FALSE(sol.usable());
    EXPECT_FALSE(sol.infeasibility_hint.empty());
}

TEST(Solve, TimeLimitKeepsIncumbent) {
    const auto fleet = fixture::synthetic_fleet(11, 8, 3, {}, 60.0);
    const auto model = build_model(fleet.pipeline.instance, {});
    SolveSettings loose;
    loose.rel_gap = 0.05;
    const auto first = solve(model, loose);
    ASSERT_TRUE(first.usable());
    SolveSettings tight = exact();
    tight.time_limit = 0.2;
    tight.warm_start = first.values;
    const auto limited = solve(model, tight);
    if (limited.status == SolveStatus::optimal) GTEST_SKIP() << "solved to optimality within the limit";
    EXPECT_EQ(limited.status, SolveStatus::time_limit_incumbent);
    EXPECT_GE(limited.gap, 0.0);
    EXPECT_LE(limited.objective, first.objective + 1e-6);
}

TEST(Solve, DeterministicObjective) {
    const auto inst = fixture::tiny_instance(61, {3, 2, 8, 2, 2, 20.0, true, 6});
    const auto model = build_model(inst, {});
    SolveSettings s = exact();
    s.seed = 5;
    const auto a = solve(model, s);
    const auto b = solve(model, s);
    ASSERT_EQ(a.status, b.status);
    EXPECT_NEAR(a.objective, b.objective, 1e-9);
}

TEST(Solve, WarmStartNeverWorse) {
    for (std::uint64_t seed = 62; seed < 66; ++seed) {
        const auto inst = fixture::tiny_instance(seed, {3, 2, 8, 2, 2, 20.0, true, 6});
        const auto model = build_model(inst, {});
        const auto cold = solve(model, exact());
        if (!cold.usable()) continue;
        SolveSettings s = exact();
        s.warm_start = warm_start_vector(model, cold);
        const auto warm = solve(model, s);
        ASSERT_TRUE(warm.usable());
        EXPECT_LE(warm.objective, cold.objective + 1e-6);
    }
}

TEST(Installation, ExtractAndCost) {
    const auto inst = fixture::tiny_instance(70, {2, 1, 6, 2, 2, 20.0, true, 3});
    const auto model = build_model(inst, {});
    const auto sol = solve(model, exact());
    ASSERT_TRUE(sol.usable());
    const auto x = extract_installation(model, sol);
    EXPECT_EQ(x, sol.installation);
    EXPECT_NEAR(x.cost(inst.chargers), sol.terms.installation, 1e-9);

    auto values = sol.values;
    values[model.vars().x[0][0]] = 2.4999;
    EXPECT_THROW((void)extract_installation(model, values), std::runtime_error);
    values[model.vars().x[0][0]] = 2.0000004;
    EXPECT_EQ(extract_installation(model, values).at(0, ChargerKind::slow), 2);
}

TEST(Installation, EmptyIsZero) {
    const auto z = Installation::zeros(8);
    EXPECT_EQ(z.total(ChargerKind::slow), 0);
    EXPECT_EQ(z.total(ChargerKind::fast), 0);
    EXPECT_DOUBLE_EQ(z.cost({default_slow_charger(), default_fast_charger()}), 0.0);
    Installation plan{std::vector<std::array<int, 2>>(8, {9, 0})};
    plan.count[0] = {0, 6};
    EXPECT_EQ(plan.total(ChargerKind::slow), 63);
    EXPECT_TRUE(plan.dominates(z));
    EXPECT_FALSE(z.dominates(plan));
}

TEST(Interpret, CanonicalAbandonmentAndWaiting) {
    for (std::uint64_t seed = 80; seed < 86; ++seed) {
        const auto inst = fixture::tiny_instance(seed, {3, 2, 8, 2, 2, 20.0, true, 6});
        const auto model = build_model(inst, {});
        const auto sol = solve(model, exact());
        if (!sol.usable()) continue;
        const double dt = inst.grid.slot_hours();
        for (int i = 0; i < inst.truck_count(); ++i)
            for (const auto& st : parked_stretches(inst, i)) {
                double wait = 0.0;
                for (int s = st.first; s <= st.last(); ++s) {
                    const auto& ts = sol.trucks[i];
                    if (s > st.first) wait += ts.charger[s - 1] >= 0 ? 0.0 : dt;
                    EXPECT_NEAR(ts.wait[s], wait, 1e-9);
                }
            }
    }
}
