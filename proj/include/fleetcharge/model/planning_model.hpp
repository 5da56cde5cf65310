#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fleetcharge/core/instance.hpp"
#include "fleetcharge/model/linear_program.hpp"
#include "fleetcharge/uncertainty/moments.hpp"

namespace fleetcharge {

/// Big-M constants of the indicator and abandonment rows.
struct BigMSet {
    double m1 = 0.0;             // low-SoC indicator
    double m2 = 0.0;             // waiting cap, = w_max
    double m3 = 0.0;             // fast-charging SoC ceiling
    double w_max = 0.0;          // hours, longest non-special parked stretch
    double w_max_special = 0.0;  // hours, longest special-zone parked stretch
    bool no_parking = false;     // instance has no parking slot at all
};

[[nodiscard]] BigMSet compute_big_m(const FleetInstance& instance);

enum class CaseProfile { benchmark, full_parking, no_overnight, no_anxiety };

[[nodiscard]] std::string to_string(CaseProfile profile);
/// Accepts both `full_parking` and `full-parking` spellings.
[[nodiscard]] CaseProfile case_profile_from_string(const std::string& name);

/// How the power-bound row coefficients are obtained.
enum class PowerBoundMode {
    deterministic,  // instance pp
    robust,         // lower edge of the box set (needs moments)
    sampled,        // an explicit duration realisation
};

struct Penalties {
    double low_soc = 1.0;
    double charging = 1.0;
};

struct ModelConfig {
    PowerBoundMode mode = PowerBoundMode::deterministic;
    Penalties penalties;
    CaseProfile profile = CaseProfile::benchmark;
    bool anxiety_allowance = true;  // one extra waiting slot below the anxiety threshold
    bool force_full_parking = false;
    bool clear_special_zones = false;
};

/// Applies the case-specific switches to a builder configuration.
[[nodiscard]] ModelConfig set_case_profile(ModelConfig config, CaseProfile profile);

/// Instance as seen by the model after the case switches (pp forced to 1,
/// special flags cleared).
[[nodiscard]] FleetInstance apply_case(const FleetInstance& instance, const ModelConfig& config);

inline constexpr int kNoColumn = -1;

/// Column indices of the decision variables. kNoColumn marks a variable that
/// does not exist (e.g. y off the parking windows).
struct VariableCatalog {
    std::vector<std::vector<int>> x;               // [zone][charger]
    std::vector<std::vector<std::vector<int>>> y;  // [truck][slot][charger]
    std::vector<std::vector<int>> a;               // [truck][slot]
    std::vector<std::vector<int>> w;
    std::vector<std::vector<int>> b;
    std::vector<std::vector<int>> p;
    std::vector<std::vector<int>> v;
    std::vector<std::vector<int>> delta30;
};

/// A (truck, flat slot) pair.
struct TruckSlot {
    int truck = 0;
    int slot = 0;
    friend auto operator<=>(const TruckSlot&, const TruckSlot&) = default;
};

/// Assembled MILP together with the data it was built from.
class PlanningModel {
public:
    [[nodiscard]] const FleetInstance& instance() const noexcept { return *instance_; }
    [[nodiscard]] const ModelConfig& config() const noexcept { return config_; }
    [[nodiscard]] const BigMSet& big_m() const noexcept { return big_m_; }
    [[nodiscard]] const VariableCatalog& vars() const noexcept { return vars_; }
    [[nodiscard]] const LinearProgram& program() const noexcept { return lp_; }
    [[nodiscard]] LinearProgram& program() noexcept { return lp_; }
    [[nodiscard]] const std::set<TruckSlot>& fixed_fast() const noexcept { return fixed_fast_; }
    [[nodiscard]] const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    /// Energy bound coefficient (kWh per unit y) used in the power-bound row.
    [[nodiscard]] double power_coefficient(int truck, int slot, int charger) const;
    [[nodiscard]] const std::vector<int>& rows_tagged(const std::string& tag) const;

private:
    friend PlanningModel build_model(const FleetInstance&, const ModelConfig&, const UncertaintyMoments*,
                                     const DurationSample*);
    friend void fix_fast_charging(PlanningModel&, const std::vector<TruckSlot>&);

    std::shared_ptr<const FleetInstance> instance_;
    ModelConfig config_;
    BigMSet big_m_;
    VariableCatalog vars_;
    LinearProgram lp_;
    std::set<TruckSlot> fixed_fast_;
    std::vector<std::string> warnings_;
    std::vector<std::vector<std::vector<double>>> coef_;  // [truck][slot][charger]
    std::map<std::string, std::vector<int>> tags_;
};

/// Builds the planning MILP. `moments` is required in robust mode and
/// `durations` in sampled mode; both are ignored otherwise.
[[nodiscard]] PlanningModel build_model(const FleetInstance& instance, const ModelConfig& config,
                                        const UncertaintyMoments* moments = nullptr,
                                        const DurationSample* durations = nullptr);

/// Forces fast charging on the listed parking slots. Idempotent.
void fix_fast_charging(PlanningModel& model, const std::vector<TruckSlot>& slots);

/// Restricts x[zone][charger] to [lower, upper].
void set_installation_bounds(PlanningModel& model, int zone, int charger, double lower, double upper);

/// Name stem for a slot, `<i>_<d>_<t>`.
[[nodiscard]] std::string slot_label(const FleetInstance& instance, int truck, int slot);

}  // namespace fleetcharge
