#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fleetcharge/core/instance.hpp"
#include "fleetcharge/report/metrics.hpp"
#include "fleetcharge/report/replay.hpp"
#include "fleetcharge/solver/solution.hpp"

namespace fleetcharge {

enum class ReportFormat { csv, json };

[[nodiscard]] ReportFormat report_format_from_string(const std::string& name);

/// csv: `metrics.csv` (zone,hour,metric,value; "all" marks aggregates) and
/// `soc_summary.csv` (truck,mean,min,max, highest mean first).
/// json: `metrics.json` with the same content.
void emit_report(const ScheduleMetrics& metrics, ReportFormat format, const std::filesystem::path& dir);

/// Reads back what emit_report wrote in either format.
[[nodiscard]] ScheduleMetrics read_report(ReportFormat format, const std::filesystem::path& dir);

/// truck,day,slot,tag,zone,amount
void write_violations_csv(const FleetInstance& instance, const std::vector<Violation>& violations,
                          const std::filesystem::path& path);

/// truck,day,slot,soc,wait_h,abandoned
void write_soc_trajectories_csv(const FleetInstance& instance, const ReplayResult& result,
                                const std::filesystem::path& path);

/// zone,slow,fast
void write_installation_csv(const Installation& installation, const std::filesystem::path& path);
[[nodiscard]] Installation read_installation_csv(const std::filesystem::path& path, int zones);

}  // namespace fleetcharge
