#include "fleetcharge/solver/dense_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fleetcharge {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kPhaseOneTol = 1e-7;
constexpr int kDegenerateSwitch = 50;

// Columns: structurals [0, n), row slacks [n, n+m), artificials [n+m, n+2m).
// Row i reads  sum_j a_ij x_j - s_i + sign_i * r_i = 0.
class Tableau {
public:
    Tableau(const LinearProgram& lp, const std::vector<double>& lower, const std::vector<double>& upper)
        : m_(lp.row_count()), ns_(lp.column_count()), n_(ns_ + 2 * m_) {
        lo_.assign(n_, 0.0);
        up_.assign(n_, 0.0);
        x_.assign(n_, 0.0);
        basic_.assign(n_, false);
        cols_.resize(n_);
        for (int j = 0; j < ns_; ++j) lo_[j] = lower[j], up_[j] = upper[j];
        for (int i = 0; i < m_; ++i) {
            const auto& row = lp.row(i);
            lo_[ns_ + i] = row.lower;
            up_[ns_ + i] = row.upper;
            for (std::size_t k = 0; k < row.index.size(); ++k)
                if (row.coef[k] != 0.0) cols_[row.index[k]].push_back({i, row.coef[k]});
            cols_[ns_ + i].push_back({i, -1.0});
        }
        for (int j = 0; j < ns_ + m_; ++j) x_[j] = resting_value(j);

        std::vector<double> resid(m_, 0.0);
        for (int j = 0; j < ns_ + m_; ++j)
            for (const auto& [i, a] : cols_[j]) resid[i] -= a * x_[j];
        sign_.assign(m_, 1.0);
        for (int i = 0; i < m_; ++i) {
            sign_[i] = resid[i] >= 0.0 ? 1.0 : -1.0;
            const int art = ns_ + m_ + i;
            cols_[art].push_back({i, sign_[i]});
            lo_[art] = 0.0;
            up_[art] = kInf;
            x_[art] = std::abs(resid[i]);
        }
        t_.assign(static_cast<std::size_t>(m_) * n_, 0.0);
        basis_.resize(m_);
        for (int j = 0; j < n_; ++j)
            for (const auto& [i, a] : cols_[j]) at(i, j) = a * sign_[i];
        for (int i = 0; i < m_; ++i) {
            basis_[i] = ns_ + m_ + i;
            basic_[basis_[i]] = true;
        }
    }

    LpStatus phase(const std::vector<double>& cost, int& budget) {
        std::vector<double> d(cost);
        for (int i = 0; i < m_; ++i) {
            const double cb = cost[basis_[i]];
            if (cb == 0.0) continue;
            for (int j = 0; j < n_; ++j) d[j] -= cb * at(i, j);
        }
        int degenerate = 0;
        while (true) {
            if (--budget < 0) return LpStatus::iteration_limit;
            const bool bland = degenerate > kDegenerateSwitch;
            int enter = -1;
            double best = 0.0;
            for (int j = 0; j < n_; ++j) {
                if (basic_[j] || lo_[j] == up_[j]) continue;
                double score = 0.0;
                if (d[j] < -kCostTol && x_[j] < up_[j]) score = -d[j];
                else if (d[j] > kCostTol && x_[j] > lo_[j]) score = d[j];
                if (score == 0.0) continue;
                if (bland) {
                    enter = j;
                    break;
                }
                if (score > best) best = score, enter = j;
            }
            if (enter < 0) return LpStatus::optimal;
            const double dir = d[enter] < 0.0 ? 1.0 : -1.0;

            double theta = up_[enter] - lo_[enter];
            int leave = -1;
            double leave_alpha = 0.0;
            for (int i = 0; i < m_; ++i) {
                const double alpha = at(i, enter) * dir;
                const int bj = basis_[i];
                double lim = kInf;
                if (alpha > kPivotTol && lo_[bj] != -kInf) lim = std::max(0.0, (x_[bj] - lo_[bj]) / alpha);
                else if (alpha < -kPivotTol && up_[bj] != kInf) lim = std::max(0.0, (up_[bj] - x_[bj]) / -alpha);
                if (lim == kInf) continue;
                bool take = lim < theta - 1e-12;
                if (!take && lim <= theta + 1e-12)
                    take = leave < 0 ||
                           (bland ? bj < basis_[leave] : std::abs(alpha) > std::abs(leave_alpha));
                if (take) {
                    theta = std::min(theta, lim);
                    leave = i;
                    leave_alpha = alpha;
                }
            }
            if (theta == kInf) return LpStatus::unbounded;
            degenerate = theta < 1e-12 ? degenerate + 1 : 0;

            x_[enter] += dir * theta;
            for (int i = 0; i < m_; ++i) x_[basis_[i]] -= at(i, enter) * dir * theta;
            if (leave < 0) continue;  // bound flip

            const int out = basis_[leave];
            x_[out] = leave_alpha > 0.0 ? lo_[out] : up_[out];
            pivot(leave, enter, d);
            basic_[out] = false;
            basic_[enter] = true;
            basis_[leave] = enter;
        }
    }

    // Recomputes basic values from the nonbasic ones: x_B = -B^-1 N x_N.
    void refresh() {
        std::vector<double> r(m_, 0.0);
        for (int j = 0; j < n_; ++j) {
            if (basic_[j] || x_[j] == 0.0) continue;
            for (const auto& [i, a] : cols_[j]) r[i] -= a * x_[j];
        }
        for (int i = 0; i < m_; ++i) {
            double v = 0.0;
            for (int k = 0; k < m_; ++k) v += at(i, ns_ + m_ + k) * sign_[k] * r[k];
            x_[basis_[i]] = v;
        }
    }

    [[nodiscard]] double artificial_sum() const {
        double s = 0.0;
        for (int i = 0; i < m_; ++i) s += std::abs(x_[ns_ + m_ + i]);
        return s;
    }

    void close_artificials() {
        for (int i = 0; i < m_; ++i) {
            const int art = ns_ + m_ + i;
            up_[art] = 0.0;
            if (!basic_[art]) x_[art] = 0.0;
        }
    }

    [[nodiscard]] int size() const { return n_; }
    [[nodiscard]] int structurals() const { return ns_; }
    [[nodiscard]] double value(int j) const { return x_[j]; }

private:
    double& at(int i, int j) { return t_[static_cast<std::size_t>(i) * n_ + j]; }
    [[nodiscard]] double at(int i, int j) const { return t_[static_cast<std::size_t>(i) * n_ + j]; }

    [[nodiscard]] double resting_value(int j) const {
        if (lo_[j] != -kInf) return lo_[j];
        if (up_[j] != kInf) return up_[j];
        return 0.0;
    }

    void pivot(int r, int c, std::vector<double>& d) {
        double* pr = &t_[static_cast<std::size_t>(r) * n_];
        const double inv = 1.0 / pr[c];
        for (int j = 0; j < n_; ++j) pr[j] *= inv;
        pr[c] = 1.0;
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            double* pi = &t_[static_cast<std::size_t>(i) * n_];
            const double f = pi[c];
            if (f == 0.0) continue;
            for (int j = 0; j < n_; ++j) pi[j] -= f * pr[j];
            pi[c] = 0.0;
        }
        const double f = d[c];
        if (f != 0.0) {
            for (int j = 0; j < n_; ++j) d[j] -= f * pr[j];
            d[c] = 0.0;
        }
    }

    int m_, ns_, n_;
    std::vector<double> t_;
    std::vector<double> lo_, up_, x_;
    std::vector<bool> basic_;
    std::vector<int> basis_;
    std::vector<double> sign_;
    std::vector<std::vector<std::pair<int, double>>> cols_;
};

}  // namespace

LpResult solve_lp_relaxation(const LinearProgram& program, const std::vector<double>& lower,
                             const std::vector<double>& upper, int iteration_limit) {
    const int n = program.column_count();
    if (static_cast<int>(lower.size()) != n || static_cast<int>(upper.size()) != n)
        throw std::invalid_argument("solve_lp_relaxation: bound vectors must match the column count");
    for (int j = 0; j < n; ++j)
        if (lower[j] > upper[j]) return {LpStatus::infeasible, 0.0, {}};

    Tableau tab(program, lower, upper);
    int budget = iteration_limit;
    std::vector<double> cost(tab.size(), 0.0);
    for (int j = n + program.row_count(); j < tab.size(); ++j) cost[j] = 1.0;
    LpStatus st = tab.phase(cost, budget);
    if (st == LpStatus::iteration_limit) return {st, 0.0, {}};
    tab.refresh();
    if (tab.artificial_sum() > kPhaseOneTol) return {LpStatus::infeasible, 0.0, {}};

    tab.close_artificials();
    std::fill(cost.begin(), cost.end(), 0.0);
    for (int j = 0; j < n; ++j) cost[j] = program.column(j).cost;
    st = tab.phase(cost, budget);
    if (st != LpStatus::optimal) return {st, 0.0, {}};
    tab.refresh();

    LpResult out;
    out.status = LpStatus::optimal;
    out.values.resize(n);
    for (int j = 0; j < n; ++j) out.values[j] = std::clamp(tab.value(j), lower[j], upper[j]);
    out.objective = program.objective_value(out.values);
    return out;
}

LpResult solve_lp_relaxation(const LinearProgram& program) {
    std::vector<double> lo, up;
    for (const auto& c : program.columns()) lo.push_back(c.lower), up.push_back(c.upper);
    return solve_lp_relaxation(program, lo, up);
}

}  // namespace fleetcharge
