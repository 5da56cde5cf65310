#include "fleetcharge/core/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fleetcharge::csv {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

Table Table::read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return parse(in, path.string());
}

Table Table::parse(std::istream& in, const std::string& origin) {
    Table t;
    t.origin_ = origin;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(origin + ": missing header");
    strip_cr(line);
    t.header_ = split(line);
    while (std::getline(in, line)) {
        strip_cr(line);
        if (line.empty()) continue;
        auto fields = split(line);
        if (fields.size() != t.header_.size())
            throw std::runtime_error(origin + ": row " + std::to_string(t.rows_.size() + 2) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(t.header_.size()));
        t.rows_.push_back(std::move(fields));
    }
    return t;
}

bool Table::has_column(std::string_view name) const noexcept {
    for (const auto& h : header_)
        if (h == name) return true;
    return false;
}

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == name) return i;
    throw std::runtime_error(origin_ + ": missing column '" + std::string(name) + "'");
}

double Table::number(std::size_t row, std::size_t col) const {
    const auto& s = at(row, col);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error(origin_ + ": bad number '" + s + "' in column " + header_.at(col));
    return v;
}

long long Table::integer(std::size_t row, std::size_t col) const {
    const auto& s = at(row, col);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error(origin_ + ": bad integer '" + s + "' in column " + header_.at(col));
    return v;
}

std::string decimal(double value, int min_digits) {
    char buf[64];
    for (int digits = min_digits; digits <= 17; ++digits) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
        if (ec != std::errc()) break;
        double back = 0.0;
        std::from_chars(buf, ptr, back);
        if (back == value) return std::string(buf, ptr);
    }
    return shortest(value);
}

std::string shortest(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

}  // namespace fleetcharge::csv
