#pragma once

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace fleetcharge {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarType : int { continuous = 0, integer = 1, binary = 2 };

struct Column {
    std::string name;
    double lower = 0.0;
    double upper = kInf;
    double cost = 0.0;
    VarType type = VarType::continuous;
};

/// lower <= sum(coef * x[index]) <= upper
struct Row {
    std::string name;
    double lower = -kInf;
    double upper = kInf;
    std::vector<int> index;
    std::vector<double> coef;
};

/// Sparse minimisation MILP in row form. Backends consume this directly.
class LinearProgram {
public:
    int add_column(std::string name, double lower, double upper, double cost, VarType type);
    int add_row(std::string name, double lower, double upper, std::vector<int> index, std::vector<double> coef);

    [[nodiscard]] int column_count() const noexcept { return static_cast<int>(columns_.size()); }
    [[nodiscard]] int row_count() const noexcept { return static_cast<int>(rows_.size()); }
    [[nodiscard]] const std::vector<Column>& columns() const noexcept { return columns_; }
    [[nodiscard]] const std::vector<Row>& rows() const noexcept { return rows_; }
    [[nodiscard]] const Column& column(int j) const { return columns_.at(j); }
    [[nodiscard]] const Row& row(int r) const { return rows_.at(r); }

    void set_bounds(int j, double lower, double upper);
    void set_cost(int j, double cost) { columns_.at(j).cost = cost; }
    void set_row_bounds(int r, double lower, double upper);
    void set_objective_offset(double offset) noexcept { offset_ = offset; }
    [[nodiscard]] double objective_offset() const noexcept { return offset_; }

    [[nodiscard]] bool is_integral(int j) const { return columns_.at(j).type != VarType::continuous; }

    [[nodiscard]] double objective_value(std::span<const double> x) const;
    [[nodiscard]] double row_activity(int r, std::span<const double> x) const;

    /// Largest bound or row violation of `x` (0 when feasible).
    [[nodiscard]] double max_violation(std::span<const double> x) const;
    /// Name of the row (or column) that attains max_violation; empty if feasible.
    [[nodiscard]] std::string worst_violation(std::span<const double> x, double tolerance) const;

    /// Writes the model in CPLEX LP text format. Ranged rows are split into
    /// `<name>_lo` / `<name>_hi`.
    void write_lp(std::ostream& out) const;

private:
    std::vector<Column> columns_;
    std::vector<Row> rows_;
    double offset_ = 0.0;
};

}  // namespace fleetcharge
