#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fleetcharge::csv {

/// Header-addressed CSV table. Fields are plain comma-separated values;
/// quoting is not supported (none of the bundle files need it).
class Table {
public:
    static Table read(const std::filesystem::path& path);
    static Table parse(std::istream& in, const std::string& origin = "<stream>");

    [[nodiscard]] const std::vector<std::string>& header() const noexcept { return header_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
    [[nodiscard]] std::size_t column(std::string_view name) const;
    [[nodiscard]] bool has_column(std::string_view name) const noexcept;

    [[nodiscard]] const std::string& at(std::size_t row, std::size_t col) const { return rows_.at(row).at(col); }
    [[nodiscard]] double number(std::size_t row, std::size_t col) const;
    [[nodiscard]] long long integer(std::size_t row, std::size_t col) const;

private:
    std::string origin_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Decimal rendering with at least `min_digits` fractional digits that reads
/// back to the identical double.
[[nodiscard]] std::string decimal(double value, int min_digits = 6);

/// Shortest round-trip rendering.
[[nodiscard]] std::string shortest(double value);

}  // namespace fleetcharge::csv
