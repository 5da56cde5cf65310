#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include <json.hpp>

#include "fleetcharge/core/csv.hpp"
#include "fleetcharge/core/instance_io.hpp"
#include "fleetcharge/ingest/pipeline.hpp"
#include "fleetcharge/ingest/synthetic.hpp"
#include "fleetcharge/planner/planner.hpp"
#include "fleetcharge/report/replay.hpp"
#include "fleetcharge/report/report_io.hpp"

namespace fs = std::filesystem;

namespace fleetcharge::cli {

namespace {

struct SolverFlags {
    double gap = 0.01;
    double time_limit = 3600.0;
    int threads = 1;
    std::uint64_t seed = 0;
    bool verbose = false;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--verbose", verbose, "print the solver log");
        cmd->add_option("--gap", gap, "relative MIP gap")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--time-limit", time_limit, "seconds per solve")->check(CLI::PositiveNumber);
        cmd->add_option("--threads", threads, "solver threads")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "solver and sampling seed");
    }
    [[nodiscard]] SolveSettings settings() const {
        SolveSettings s;
        s.rel_gap = gap;
        s.time_limit = time_limit;
        s.threads = threads;
        s.seed = seed;
        s.log_to_console = verbose;
        return s;
    }
};

struct CaseFlags {
    std::string name = "benchmark";
    double sigma = 0.0;
    double gamma = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--case", name, "benchmark|full-parking|no-overnight|no-anxiety");
        cmd->add_option("--sigma", sigma, "width multiplier of the duration box set")->check(CLI::NonNegativeNumber);
        cmd->add_option("--gamma", gamma, "spread reduction of fast chargers")->check(CLI::Range(0.0, 1.0));
    }
    [[nodiscard]] ModelConfig model() const { return set_case_profile({}, case_profile_from_string(name)); }
};

void write_daily_km(const std::vector<std::vector<double>>& km, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "truck,day,km\n";
    for (std::size_t i = 0; i < km.size(); ++i)
        for (std::size_t d = 0; d < km[i].size(); ++d) out << i << ',' << d << ',' << csv::decimal(km[i][d]) << '\n';
}

std::vector<std::vector<double>> read_daily_km(const fs::path& path, const FleetInstance& inst) {
    if (!fs::exists(path)) return {};
    const auto t = csv::Table::read(path);
    const auto ci = t.column("truck"), cd = t.column("day"), ck = t.column("km");
    std::vector<std::vector<double>> km(inst.truck_count(), std::vector<double>(inst.grid.days, 0.0));
    for (std::size_t r = 0; r < t.rows(); ++r) km.at(t.integer(r, ci)).at(t.integer(r, cd)) = t.number(r, ck);
    return km;
}

void write_solve_log(const Solution& sol, const fs::path& path) {
    nlohmann::ordered_json j;
    j["status"] = to_string(sol.status);
    j["backend"] = sol.backend;
    j["objective"] = sol.objective;
    j["bound"] = sol.bound;
    j["gap"] = sol.gap;
    j["wall_seconds"] = sol.wall_time;
    j["installation_cost"] = sol.terms.installation;
    j["low_soc_penalty"] = sol.terms.low_soc_penalty;
    j["charging_penalty"] = sol.terms.charging_penalty;
    std::ofstream(path) << j.dump(2) << '\n';
}

void cmd_synth(CLI::App& app) {
    auto* cmd = app.add_subcommand("synth", "generate a synthetic GPS fleet and hourly temperatures");
    auto trucks = std::make_shared<int>(10);
    auto days = std::make_shared<int>(5);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto out = std::make_shared<std::string>();
    auto profile = std::make_shared<FleetProfile>();
    cmd->add_option("--daily-miles", profile->daily_miles)->check(CLI::PositiveNumber);
    cmd->add_option("--visits-min", profile->min_visits)->check(CLI::NonNegativeNumber);
    cmd->add_option("--visits-max", profile->max_visits)->check(CLI::NonNegativeNumber);
    cmd->add_option("--trucks", *trucks)->check(CLI::PositiveNumber);
    cmd->add_option("--days", *days)->check(CLI::PositiveNumber);
    cmd->add_option("--seed", *seed);
    cmd->add_option("--out", *out)->required();
    cmd->callback([=] {
        fs::create_directories(*out);
        write_traces_csv(synthesize_fleet(*seed, *trucks, *days, *profile), fs::path(*out) / "traces.csv");
        write_temperature_csv(synthesize_temperature(*seed, 24 * *days), fs::path(*out) / "temperature.csv");
    });
}

void cmd_ingest(CLI::App& app) {
    auto* cmd = app.add_subcommand("ingest", "turn GPS traces into an instance bundle");
    auto traces = std::make_shared<std::string>();
    auto temperature = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto cfg = std::make_shared<PipelineConfig>();
    auto days = std::make_shared<int>(0);
    cmd->add_option("--traces", *traces)->required()->check(CLI::ExistingFile);
    cmd->add_option("--temperature", *temperature, "hour_of_year,temp_f")->check(CLI::ExistingFile);
    cmd->add_option("--days", *days, "horizon length; default covers the traces");
    cmd->add_option("--zones", cfg->zone_count)->check(CLI::PositiveNumber);
    cmd->add_option("--battery", cfg->battery_kwh, "kWh per truck")->check(CLI::PositiveNumber);
    cmd->add_option("--start", cfg->horizon_start, "epoch seconds of the first slot");
    cmd->add_option("--out", *out)->required();
    cmd->callback([=] {
        const auto tr = read_traces_csv(*traces);
        FuelEconomyModel economy;
        if (!temperature->empty()) economy.hourly_temp_f = read_temperature_csv(*temperature);
        PipelineConfig pc = *cfg;
        if (*days > 0) {
            pc.grid.days = *days;
        } else {
            double last = pc.horizon_start;
            for (const auto& t : tr)
                if (!t.points.empty()) last = std::max(last, t.points.back().timestamp);
            pc.grid.days = std::max(1, static_cast<int>(std::ceil((last - pc.horizon_start) / 86400.0)));
        }
        const auto res = build_instance(tr, economy, pc);
        write_bundle(res.instance, *out);
        write_daily_km(res.daily_km, fs::path(*out) / "distance.csv");
        std::ofstream zones(fs::path(*out) / "zones.csv");
        zones << "zone,row,col,stops,total_minutes,mean_minutes\n";
        for (std::size_t z = 0; z < res.ranking.zones.size(); ++z) {
            const auto& rz = res.ranking.zones[z];
            zones << z << ',' << rz.cell.row << ',' << rz.cell.col << ',' << rz.stops << ','
                  << csv::decimal(rz.total_minutes) << ',' << csv::decimal(rz.mean_minutes()) << '\n';
        }
    });
}

void cmd_moments(CLI::App& app) {
    auto* cmd = app.add_subcommand("moments", "parking-duration moments of an instance");
    auto instance = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    cmd->add_option("--instance", *instance)->required()->check(CLI::ExistingDirectory);
    cmd->add_option("--out", *out)->required();
    cmd->callback([=] {
        const auto inst = read_bundle(*instance);
        write_moments_csv(compute_moments(observations_from_instance(inst)), *out);
    });
}

void cmd_plan(CLI::App& app) {
    auto* cmd = app.add_subcommand("plan", "plan charger installations (ds or ips)");
    auto method = std::make_shared<std::string>();
    auto instance = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto heuristic = std::make_shared<std::string>("off");
    auto iterations = std::make_shared<int>(10);
    auto overlap = std::make_shared<int>(3);
    auto solver = std::make_shared<SolverFlags>();
    auto cases = std::make_shared<CaseFlags>();
    cmd->add_option("method", *method, "ds or ips")->required()->check(CLI::IsMember({"ds", "ips"}));
    cmd->add_option("--instance", *instance)->required()->check(CLI::ExistingDirectory);
    cmd->add_option("--heuristic", *heuristic, "on|off")->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--iterations", *iterations, "fix-and-optimize iterations")->check(CLI::PositiveNumber);
    cmd->add_option("--overlap", *overlap, "days prepended to each month (ips)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", *out)->required();
    solver->attach(cmd);
    cases->attach(cmd);
    cmd->callback([=] {
        const auto year = read_bundle(*instance);
        PlannerConfig pc;
        pc.model = cases->model();
        pc.sigma_multiplier = cases->sigma;
        pc.fast_gamma = cases->gamma;
        pc.use_heuristic = *heuristic == "on";
        pc.heuristic.max_iterations = *iterations;
        pc.heuristic.sample_seed = solver->seed;
        pc.settings = solver->settings();
        pc.hcv.seed = solver->seed;
        pc.month_overlap = *overlap;
        const fs::path dir(*out);
        fs::create_directories(dir);
        if (*method == "ds") {
            const auto rec = plan_ds(year, read_daily_km(fs::path(*instance) / "distance.csv", year), pc);
            write_installation_csv(rec.installation, dir / "installation.csv");
            write_hcv_csv(select_days(year, rec.days), rec.hcv, dir / "hcv.csv");
            write_bundle(rec.instance, dir / "instance");
            write_schedule_csv(rec.instance, rec.solution, dir / "schedule.csv");
            write_solve_log(rec.solution, dir / "solve.json");
            if (!rec.logs.empty()) write_iteration_log(rec.logs, dir / "iterations.jsonl");
            std::cout << "days " << rec.days.size() << ", trucks " << rec.trucks.size() << ", objective "
                      << csv::decimal(rec.solution.objective) << (rec.degraded ? " (degraded)" : "") << '\n';
        } else {
            const auto rec = plan_ips(year, month_lengths(year.grid.days), pc);
            write_installation_csv(rec.installation, dir / "installation.csv");
            write_trajectory_csv(rec, dir / "trajectory.csv");
            std::ofstream hcv(dir / "hcv.csv");
            hcv << "month,truck\n";
            for (const auto& m : rec.months) {
                std::vector<bool> kept(year.truck_count(), false);
                for (int i : m.trucks) kept[i] = true;
                for (int i = 0; i < year.truck_count(); ++i)
                    if (!kept[i]) hcv << m.month << ',' << year.trucks[i].id << '\n';
            }
            std::ofstream log(dir / "solves.jsonl");
            for (const auto& m : rec.months) {
                nlohmann::ordered_json j;
                j["month"] = m.month;
                j["joint"] = m.joint;
                j["status"] = to_string(m.solution.status);
                j["objective"] = m.solution.objective;
                j["gap"] = m.solution.gap;
                j["wall_seconds"] = m.solution.wall_time;
                log << j.dump() << '\n';
            }
            std::cout << "months " << rec.months.size() << ", slow " << rec.installation.total(ChargerKind::slow)
                      << ", fast " << rec.installation.total(ChargerKind::fast) << '\n';
        }
    });
}

DurationSample durations_for(const std::string& spec, const FleetInstance& inst, const UncertaintyMoments& m) {
    if (spec == "planning") return planning_durations(inst);
    if (spec == "lower") return lower_edge_durations(m, inst);
    if (spec.rfind("sampled:", 0) == 0) return sample_durations(m, inst, std::stoull(spec.substr(8)));
    throw std::invalid_argument("--pp expects planning, lower or sampled:<seed>");
}

void cmd_simulate(CLI::App& app) {
    auto* cmd = app.add_subcommand("simulate", "replay a schedule and report metrics and violations");
    auto instance = std::make_shared<std::string>();
    auto installation = std::make_shared<std::string>();
    auto schedule = std::make_shared<std::string>();
    auto pp = std::make_shared<std::string>("planning");
    auto format = std::make_shared<std::string>("csv");
    auto out = std::make_shared<std::string>(".");
    auto cases = std::make_shared<CaseFlags>();
    cmd->add_option("--instance", *instance)->required()->check(CLI::ExistingDirectory);
    cmd->add_option("--installation", *installation)->required()->check(CLI::ExistingFile);
    cmd->add_option("--schedule", *schedule)->required()->check(CLI::ExistingFile);
    cmd->add_option("--pp", *pp, "planning|lower|sampled:<seed>");
    cmd->add_option("--format", *format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", *out);
    cases->attach(cmd);
    cmd->callback([=] {
        const auto raw = read_bundle(*instance);
        const auto mc = cases->model();
        const auto inst = apply_case(raw, mc);
        PlannerConfig pc;
        pc.sigma_multiplier = cases->sigma;
        pc.fast_gamma = cases->gamma;
        const auto moments = planner_moments(inst, pc);
        const auto res = replay(inst, read_installation_csv(*installation, inst.zone_count()),
                                read_schedule_csv(inst, *schedule), durations_for(*pp, inst, moments),
                                {mc.anxiety_allowance, 1e-6});
        const fs::path dir(*out);
        emit_report(res.metrics, report_format_from_string(*format), dir);
        write_violations_csv(inst, res.violations, dir / "violations.csv");
        write_soc_trajectories_csv(inst, res, dir / "soc_trajectories.csv");
        std::cout << (res.feasible ? "feasible" : "infeasible") << ", " << res.violations.size() << " violations\n";
    });
}

void cmd_export_lp(CLI::App& app) {
    auto* cmd = app.add_subcommand("export-lp", "write the planning model in LP format");
    auto instance = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto cases = std::make_shared<CaseFlags>();
    cmd->add_option("--instance", *instance)->required()->check(CLI::ExistingDirectory);
    cmd->add_option("--out", *out)->required();
    cases->attach(cmd);
    cmd->callback([=] {
        const auto inst = read_bundle(*instance);
        PlannerConfig pc;
        pc.sigma_multiplier = cases->sigma;
        pc.fast_gamma = cases->gamma;
        ModelConfig mc = cases->model();
        mc.mode = cases->sigma > 0.0 ? PowerBoundMode::robust : PowerBoundMode::deterministic;
        const auto moments = planner_moments(inst, pc);
        const auto model = build_model(inst, mc, &moments);
        std::ofstream f(*out);
        if (!f) throw std::runtime_error("cannot write " + *out);
        model.program().write_lp(f);
        for (const auto& w : model.warnings()) std::cerr << "warning: " << w << '\n';
    });
}

}  // namespace

void register_commands(CLI::App& app) {
    cmd_synth(app);
    cmd_ingest(app);
    cmd_moments(app);
    cmd_plan(app);
    cmd_simulate(app);
    cmd_export_lp(app);
}

}  // namespace fleetcharge::cli
