#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "statsolve/rational.hpp"

namespace statsolve {

enum class Relation { LessEq, GreaterEq, Equal };

struct LinearConstraint {
    std::vector<Rational> coeffs;
    Relation rel = Relation::LessEq;
    Rational rhs;
};

// Linear program over implicitly nonnegative variables.
struct LinearProgram {
    int num_vars = 0;
    std::vector<LinearConstraint> constraints;
    std::vector<Rational> objective;
    bool maximize = false;

    void validate() const {
        if (num_vars <= 0) throw std::invalid_argument("LP needs at least one variable");
        if (static_cast<int>(objective.size()) != num_vars)
            throw std::invalid_argument("LP objective length does not match variable count");
        for (const auto& c : constraints)
            if (static_cast<int>(c.coeffs.size()) != num_vars)
                throw std::invalid_argument("LP constraint length does not match variable count");
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> x;
    Rational objective;
};

// Two-phase primal simplex in exact rational arithmetic. Pivoting follows
// Bland's rule over a fixed column order (structural variables first, then
// slacks, then artificials), so the solver terminates and always lands on the
// same optimal vertex for the same input.
class SimplexSolver {
public:
    explicit SimplexSolver(const LinearProgram& lp) : lp_(lp) { lp_.validate(); }

    LpSolution solve() {
        build_tableau();
        if (!rows_.empty()) {
            run_phase1();
            if (phase1_objective_ > Rational(0)) return {LpStatus::Infeasible, {}, Rational(0)};
            purge_artificials();
        }
        if (!run_phase2()) return {LpStatus::Unbounded, {}, Rational(0)};
        return extract();
    }

private:
    LinearProgram lp_;
    int num_structural_ = 0;
    int num_total_ = 0;
    int first_artificial_ = 0;
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> rhs_;
    std::vector<int> basic_;
    std::vector<Rational> cost_;
    Rational cost_rhs_;
    Rational phase1_objective_;

    void build_tableau() {
        num_structural_ = lp_.num_vars;
        const std::size_t m = lp_.constraints.size();

        int num_slack = 0;
        for (const auto& c : lp_.constraints)
            if (c.rel != Relation::Equal) ++num_slack;
        first_artificial_ = num_structural_ + num_slack;
        // worst case one artificial per row; unused ones are never created
        rows_.assign(m, {});
        rhs_.assign(m, Rational(0));
        basic_.assign(m, -1);

        int next_slack = num_structural_;
        int next_artificial = first_artificial_;
        std::vector<int> slack_col(m, -1), art_col(m, -1);
        std::vector<Relation> rel(m);
        std::vector<bool> negated(m, false);
        for (std::size_t r = 0; r < m; ++r) {
            rel[r] = lp_.constraints[r].rel;
            negated[r] = lp_.constraints[r].rhs < Rational(0);
            if (negated[r]) {
                if (rel[r] == Relation::LessEq) rel[r] = Relation::GreaterEq;
                else if (rel[r] == Relation::GreaterEq) rel[r] = Relation::LessEq;
            }
            if (lp_.constraints[r].rel != Relation::Equal) slack_col[r] = next_slack++;
            if (rel[r] != Relation::LessEq) art_col[r] = next_artificial++;
        }
        num_total_ = next_artificial;

        for (std::size_t r = 0; r < m; ++r) {
            auto& row = rows_[r];
            row.assign(num_total_, Rational(0));
            const auto& c = lp_.constraints[r];
            for (int j = 0; j < num_structural_; ++j)
                row[j] = negated[r] ? -c.coeffs[j] : c.coeffs[j];
            rhs_[r] = negated[r] ? -c.rhs : c.rhs;
            if (slack_col[r] >= 0) {
                // sign follows the normalized relation: slack for <=, surplus for >=
                const bool surplus = (rel[r] == Relation::GreaterEq);
                row[slack_col[r]] = surplus ? Rational(-1) : Rational(1);
            }
            if (art_col[r] >= 0) {
                row[art_col[r]] = Rational(1);
                basic_[r] = art_col[r];
            } else {
                basic_[r] = slack_col[r];
            }
        }
    }

    void run_phase1() {
        cost_.assign(num_total_, Rational(0));
        for (int j = first_artificial_; j < num_total_; ++j) cost_[j] = Rational(1);
        cost_rhs_ = Rational(0);
        // make reduced costs of the basic artificials zero
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (basic_[r] >= first_artificial_) {
                for (int j = 0; j < num_total_; ++j) cost_[j] -= rows_[r][j];
                cost_rhs_ -= rhs_[r];
            }
        }
        const bool bounded = pivot_loop(num_total_);
        (void)bounded;  // phase 1 objective is bounded below by zero
        phase1_objective_ = -cost_rhs_;
    }

    // Drive leftover artificials out of the basis; rows that cannot pivot are
    // redundant and get dropped.
    void purge_artificials() {
        std::vector<std::size_t> keep;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (basic_[r] < first_artificial_) {
                keep.push_back(r);
                continue;
            }
            int col = -1;
            for (int j = 0; j < first_artificial_; ++j)
                if (!rows_[r][j].is_zero()) {
                    col = j;
                    break;
                }
            if (col >= 0) {
                pivot(r, col);
                keep.push_back(r);
            }
        }
        if (keep.size() != rows_.size()) {
            std::vector<std::vector<Rational>> nr;
            std::vector<Rational> nh;
            std::vector<int> nb;
            for (std::size_t r : keep) {
                nr.push_back(std::move(rows_[r]));
                nh.push_back(rhs_[r]);
                nb.push_back(basic_[r]);
            }
            rows_ = std::move(nr);
            rhs_ = std::move(nh);
            basic_ = std::move(nb);
        }
    }

    bool run_phase2() {
        cost_.assign(num_total_, Rational(0));
        for (int j = 0; j < num_structural_; ++j)
            cost_[j] = lp_.maximize ? -lp_.objective[j] : lp_.objective[j];
        cost_rhs_ = Rational(0);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (cost_[basic_[r]].is_zero()) continue;
            const Rational f = cost_[basic_[r]];
            for (int j = 0; j < num_total_; ++j) cost_[j] -= f * rows_[r][j];
            cost_rhs_ -= f * rhs_[r];
        }
        return pivot_loop(first_artificial_);
    }

    // Bland: entering column is the lowest index with negative reduced cost;
    // leaving row is the minimum-ratio row, ties broken by lowest basic
    // index. Returns false on unboundedness.
    bool pivot_loop(int col_limit) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < col_limit; ++j)
                if (cost_[j] < Rational(0)) {
                    enter = j;
                    break;
                }
            if (enter < 0) return true;

            int leave = -1;
            Rational best_ratio;
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                if (rows_[r][enter] <= Rational(0)) continue;
                const Rational ratio = rhs_[r] / rows_[r][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basic_[r] < basic_[leave])) {
                    leave = static_cast<int>(r);
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(static_cast<std::size_t>(leave), enter);
        }
    }

    void pivot(std::size_t row, int col) {
        const Rational p = rows_[row][col];
        for (int j = 0; j < num_total_; ++j) rows_[row][j] /= p;
        rhs_[row] /= p;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (r == row || rows_[r][col].is_zero()) continue;
            const Rational f = rows_[r][col];
            for (int j = 0; j < num_total_; ++j) rows_[r][j] -= f * rows_[row][j];
            rhs_[r] -= f * rhs_[row];
        }
        if (!cost_[col].is_zero()) {
            const Rational f = cost_[col];
            for (int j = 0; j < num_total_; ++j) cost_[j] -= f * rows_[row][j];
            cost_rhs_ -= f * rhs_[row];
        }
        basic_[row] = col;
    }

    LpSolution extract() const {
        LpSolution sol;
        sol.status = LpStatus::Optimal;
        sol.x.assign(num_structural_, Rational(0));
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (basic_[r] < num_structural_) sol.x[basic_[r]] = rhs_[r];
        Rational obj(0);
        for (int j = 0; j < num_structural_; ++j) obj += lp_.objective[j] * sol.x[j];
        sol.objective = obj;
        return sol;
    }
};

inline LpSolution simplex_solve(const LinearProgram& lp) { return SimplexSolver(lp).solve(); }

}  // namespace statsolve
