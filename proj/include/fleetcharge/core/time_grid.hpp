#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace fleetcharge {

/// Broken-down slot coordinate on the planning horizon.
struct SlotIndex {
    int day = 0;
    int slot = 0;

    friend bool operator==(const SlotIndex&, const SlotIndex&) = default;
    friend auto operator<=>(const SlotIndex&, const SlotIndex&) = default;
};

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Uniform day x slot discretisation of the horizon. Slots are addressed
/// either as (day, slot) pairs or as a flat index `day * slots_per_day + slot`.
struct TimeGrid {
    int days = 1;
    int slots_per_day = 48;
    double slot_minutes = 30.0;

    void validate() const {
        if (days < 1) throw ContractViolation("TimeGrid: days must be >= 1");
        if (slots_per_day < 1) throw ContractViolation("TimeGrid: slots_per_day must be >= 1");
        if (!(slot_minutes > 0.0)) throw ContractViolation("TimeGrid: slot_minutes must be > 0");
    }

    [[nodiscard]] int slot_count() const noexcept { return days * slots_per_day; }
    [[nodiscard]] double slot_hours() const noexcept { return slot_minutes / 60.0; }

    [[nodiscard]] bool contains(SlotIndex s) const noexcept {
        return s.day >= 0 && s.day < days && s.slot >= 0 && s.slot < slots_per_day;
    }

    [[nodiscard]] int flat(SlotIndex s) const {
        if (!contains(s)) throw ContractViolation("TimeGrid: slot index out of range");
        return s.day * slots_per_day + s.slot;
    }

    [[nodiscard]] SlotIndex unflat(int flat_index) const {
        if (flat_index < 0 || flat_index >= slot_count())
            throw ContractViolation("TimeGrid: flat index out of range");
        return {flat_index / slots_per_day, flat_index % slots_per_day};
    }

    /// Hour of day (0-based) in which the slot starts.
    [[nodiscard]] int hour_of_day(int slot) const noexcept {
        return static_cast<int>(slot * slot_minutes / 60.0 + 1e-9);
    }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/// Next slot after (d, t): (d, t+1) inside a day, (d+1, 0) across midnight,
/// nothing at the end of the horizon.
[[nodiscard]] inline std::optional<SlotIndex> successor(SlotIndex s, const TimeGrid& grid) {
    if (!grid.contains(s)) throw ContractViolation("successor: slot outside grid");
    if (s.slot < grid.slots_per_day - 1) return SlotIndex{s.day, s.slot + 1};
    if (s.day < grid.days - 1) return SlotIndex{s.day + 1, 0};
    return std::nullopt;
}

}  // namespace fleetcharge
