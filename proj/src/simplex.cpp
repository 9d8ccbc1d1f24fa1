#include "crn/simplex.hpp"

#include <optional>
#include <stdexcept>

namespace crn {

namespace {

class Tableau {
public:
    Tableau(RationalMatrix rows, std::vector<std::size_t> basis) : t_(std::move(rows)), basis_(std::move(basis)) {}

    std::size_t rows() const { return t_.size(); }
    std::size_t rhs_col() const { return t_.front().size() - 1; }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const Rational& at(std::size_t i, std::size_t j) const { return t_[i][j]; }

    void pivot(std::size_t row, std::size_t col) {
        const Rational p = t_[row][col];
        for (auto& v : t_[row]) v /= p;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == row || t_[i][col] == 0) continue;
            const Rational f = t_[i][col];
            for (std::size_t j = 0; j < t_[i].size(); ++j) t_[i][j] -= f * t_[row][j];
        }
        basis_[row] = col;
    }

    void drop_row(std::size_t row) {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(row));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row));
    }

    /// Minimizes cost over columns [0, active). Returns false when unbounded.
    bool optimize(const std::vector<Rational>& cost, std::size_t active) {
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < active && !entering; ++j) {
                Rational reduced = cost[j];
                for (std::size_t i = 0; i < rows(); ++i) reduced -= cost[basis_[i]] * t_[i][j];
                if (reduced < 0) entering = j;
            }
            if (!entering) return true;
            std::optional<std::size_t> leaving;
            Rational best;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (t_[i][*entering] <= 0) continue;
                const Rational ratio = t_[i][rhs_col()] / t_[i][*entering];
                if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best = ratio;
                }
            }
            if (!leaving) return false;
            pivot(*leaving, *entering);
        }
    }

private:
    RationalMatrix t_;
    std::vector<std::size_t> basis_;
};

} // namespace

LpSolution solve(const LinearProgram& lp) {
    const std::size_t m = lp.constraints.size();
    const std::size_t n = lp.cost.size();
    if (lp.rhs.size() != m) throw std::invalid_argument("LP rhs size mismatch");
    for (const auto& row : lp.constraints)
        if (row.size() != n) throw std::invalid_argument("LP constraint width mismatch");

    LpSolution out;
    if (m == 0) {
        // x = 0 is optimal unless some cost is negative
        for (const auto& c : lp.cost)
            if (c < 0) {
                out.status = LpSolution::Status::unbounded;
                return out;
            }
        out.status = LpSolution::Status::optimal;
        out.x.assign(n, Rational(0));
        return out;
    }

    // columns: x (n), artificials (m), rhs
    RationalMatrix rows(m, std::vector<Rational>(n + m + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = lp.rhs[i] < 0;
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = flip ? Rational(-lp.constraints[i][j]) : lp.constraints[i][j];
        rows[i][n + i] = 1;
        rows[i][n + m] = flip ? Rational(-lp.rhs[i]) : lp.rhs[i];
        basis[i] = n + i;
    }
    Tableau tab(std::move(rows), std::move(basis));

    std::vector<Rational> phase1(n + m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1;
    tab.optimize(phase1, n + m);

    Rational infeasibility = 0;
    for (std::size_t i = 0; i < tab.rows(); ++i)
        if (tab.basis()[i] >= n) infeasibility += tab.at(i, tab.rhs_col());
    if (infeasibility != 0) return out;

    // drive remaining (zero-valued) artificials out of the basis
    for (std::size_t i = 0; i < tab.rows();) {
        if (tab.basis()[i] < n) {
            ++i;
            continue;
        }
        std::optional<std::size_t> col;
        for (std::size_t j = 0; j < n && !col; ++j)
            if (tab.at(i, j) != 0) col = j;
        if (col) {
            tab.pivot(i, *col);
            ++i;
        } else {
            tab.drop_row(i);
        }
    }

    std::vector<Rational> phase2(n + m, Rational(0));
    for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.cost[j];
    if (!tab.optimize(phase2, n)) {
        out.status = LpSolution::Status::unbounded;
        return out;
    }

    out.status = LpSolution::Status::optimal;
    out.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < tab.rows(); ++i) out.x[tab.basis()[i]] = tab.at(i, tab.rhs_col());
    for (std::size_t j = 0; j < n; ++j) out.objective += lp.cost[j] * out.x[j];
    return out;
}

} // namespace crn
