#pragma once

#include <filesystem>

#include "fleetcharge/core/instance.hpp"

namespace fleetcharge {

/// Current version tag written to meta.json.
inline constexpr int kBundleFormatVersion = 1;

/// Writes the instance as a directory bundle:
///   meta.json   grid, SoC bounds, charger catalog, zones (special flags), trucks, epsilon
///   parking.csv truck,day,slot,zone
///   pp.csv      truck,day,slot,fraction
///   rho.csv     truck,day,slot,kwh   (zero entries omitted)
/// All indices are zero-based.
void write_bundle(const FleetInstance& instance, const std::filesystem::path& dir);

/// Reads and validates a bundle written by write_bundle.
[[nodiscard]] FleetInstance read_bundle(const std::filesystem::path& dir);

}  // namespace fleetcharge
