#include "fleetcharge/model/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "fleetcharge/core/csv.hpp"

namespace fleetcharge {

int LinearProgram::add_column(std::string name, double lower, double upper, double cost, VarType type) {
    if (lower > upper) throw std::invalid_argument("column " + name + ": lower > upper");
    if (type == VarType::binary) {
        lower = std::max(lower, 0.0);
        upper = std::min(upper, 1.0);
    }
    columns_.push_back({std::move(name), lower, upper, cost, type});
    return column_count() - 1;
}

int LinearProgram::add_row(std::string name, double lower, double upper, std::vector<int> index,
                           std::vector<double> coef) {
    if (index.size() != coef.size()) throw std::invalid_argument("row " + name + ": index/coef size mismatch");
    for (int j : index)
        if (j < 0 || j >= column_count()) throw std::invalid_argument("row " + name + ": column out of range");
    rows_.push_back({std::move(name), lower, upper, std::move(index), std::move(coef)});
    return row_count() - 1;
}

void LinearProgram::set_bounds(int j, double lower, double upper) {
    auto& c = columns_.at(j);
    c.lower = lower;
    c.upper = upper;
}

void LinearProgram::set_row_bounds(int r, double lower, double upper) {
    auto& row = rows_.at(r);
    row.lower = lower;
    row.upper = upper;
}

double LinearProgram::objective_value(std::span<const double> x) const {
    double v = offset_;
    for (int j = 0; j < column_count(); ++j) v += columns_[j].cost * x[j];
    return v;
}

double LinearProgram::row_activity(int r, std::span<const double> x) const {
    const auto& row = rows_.at(r);
    double a = 0.0;
    for (std::size_t k = 0; k < row.index.size(); ++k) a += row.coef[k] * x[row.index[k]];
    return a;
}

double LinearProgram::max_violation(std::span<const double> x) const {
    double worst = 0.0;
    for (int j = 0; j < column_count(); ++j) {
        worst = std::max({worst, columns_[j].lower - x[j], x[j] - columns_[j].upper});
        if (is_integral(j)) worst = std::max(worst, std::abs(x[j] - std::round(x[j])));
    }
    for (int r = 0; r < row_count(); ++r) {
        const double a = row_activity(r, x);
        worst = std::max({worst, rows_[r].lower - a, a - rows_[r].upper});
    }
    return worst;
}

std::string LinearProgram::worst_violation(std::span<const double> x, double tolerance) const {
    double worst = tolerance;
    std::string name;
    for (int j = 0; j < column_count(); ++j) {
        const double v = std::max(columns_[j].lower - x[j], x[j] - columns_[j].upper);
        if (v > worst) worst = v, name = columns_[j].name;
    }
    for (int r = 0; r < row_count(); ++r) {
        const double a = row_activity(r, x);
        const double v = std::max(rows_[r].lower - a, a - rows_[r].upper);
        if (v > worst) worst = v, name = rows_[r].name;
    }
    return name;
}

namespace {

void write_terms(std::ostream& out, const std::vector<int>& index, const std::vector<double>& coef,
                 const std::vector<Column>& cols) {
    bool first = true;
    int on_line = 0;
    for (std::size_t k = 0; k < index.size(); ++k) {
        if (coef[k] == 0.0) continue;
        const double c = coef[k];
        out << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        const double mag = std::abs(c);
        if (mag != 1.0) out << csv::shortest(mag) << ' ';
        out << cols[index[k]].name;
        first = false;
        if (++on_line % 8 == 0) out << "\n   ";
    }
    if (first) out << "0 " << cols.front().name;
}

std::string bound_text(double v) {
    if (v == kInf) return "+inf";
    if (v == -kInf) return "-inf";
    return csv::shortest(v);
}

}  // namespace

void LinearProgram::write_lp(std::ostream& out) const {
    out << "\\ fleetcharge planning model\n";
    out << "Minimize\n obj: ";
    std::vector<int> idx;
    std::vector<double> cf;
    for (int j = 0; j < column_count(); ++j)
        if (columns_[j].cost != 0.0) idx.push_back(j), cf.push_back(columns_[j].cost);
    if (idx.empty() && column_count() > 0) idx.push_back(0), cf.push_back(0.0);
    if (column_count() > 0) write_terms(out, idx, cf, columns_);
    if (offset_ != 0.0) out << (offset_ < 0 ? " - " : " + ") << csv::shortest(std::abs(offset_));
    out << "\nSubject To\n";
    for (const auto& row : rows_) {
        const bool has_lo = row.lower != -kInf, has_hi = row.upper != kInf;
        if (has_lo && has_hi && row.lower == row.upper) {
            out << ' ' << row.name << ": ";
            write_terms(out, row.index, row.coef, columns_);
            out << " = " << csv::shortest(row.lower) << '\n';
            continue;
        }
        const bool split = has_lo && has_hi;
        if (has_lo) {
            out << ' ' << row.name << (split ? "_lo" : "") << ": ";
            write_terms(out, row.index, row.coef, columns_);
            out << " >= " << csv::shortest(row.lower) << '\n';
        }
        if (has_hi) {
            out << ' ' << row.name << (split ? "_hi" : "") << ": ";
            write_terms(out, row.index, row.coef, columns_);
            out << " <= " << csv::shortest(row.upper) << '\n';
        }
    }
    out << "Bounds\n";
    for (const auto& c : columns_) {
        if (c.type == VarType::binary && c.lower == 0.0 && c.upper == 1.0) continue;
        if (c.lower == c.upper) {
            out << ' ' << c.name << " = " << csv::shortest(c.lower) << '\n';
        } else if (c.lower == -kInf && c.upper == kInf) {
            out << ' ' << c.name << " free\n";
        } else {
            out << ' ' << bound_text(c.lower) << " <= " << c.name << " <= " << bound_text(c.upper) << '\n';
        }
    }
    bool any_int = false, any_bin = false;
    for (const auto& c : columns_) any_int |= c.type == VarType::integer, any_bin |= c.type == VarType::binary;
    if (any_int) {
        out << "Generals\n";
        for (const auto& c : columns_)
            if (c.type == VarType::integer) out << ' ' << c.name << '\n';
    }
    if (any_bin) {
        out << "Binaries\n";
        for (const auto& c : columns_)
            if (c.type == VarType::binary) out << ' ' << c.name << '\n';
    }
    out << "End\n";
}

}  // namespace fleetcharge
