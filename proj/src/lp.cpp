#include "liftlab/lp.hpp"

#include <cmath>
#include <limits>

namespace liftlab {

namespace {

constexpr double kTol = 1e-9;
constexpr int kMaxIters = 50000;

class Tableau {
  public:
    // Columns: structural vars, then slack/surplus, then artificials, then rhs.
    Tableau(const LinearProgram& lp) {
        m_ = lp.rows.size();
        n_struct_ = lp.num_vars;
        std::size_t n_slack = 0, n_art = 0;
        for (const auto& r : lp.rows) {
            bool rhs_neg = r.rhs < 0;
            LinearProgram::Rel rel = r.rel;
            if (rhs_neg) rel = flip(rel);
            if (rel != LinearProgram::Rel::eq) ++n_slack;
            if (rel != LinearProgram::Rel::le) ++n_art;
        }
        n_ = n_struct_ + n_slack + n_art;
        a_.assign(m_, std::vector<double>(n_ + 1, 0.0));
        basis_.assign(m_, 0);
        art_start_ = n_struct_ + n_slack;

        std::size_t slack_at = n_struct_, art_at = art_start_;
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& r = lp.rows[i];
            double sgn = r.rhs < 0 ? -1.0 : 1.0;
            LinearProgram::Rel rel = sgn < 0 ? flip(r.rel) : r.rel;
            for (std::size_t j = 0; j < n_struct_; ++j) a_[i][j] = sgn * r.a[j];
            a_[i][n_] = sgn * r.rhs;
            if (rel == LinearProgram::Rel::le) {
                a_[i][slack_at] = 1.0;
                basis_[i] = slack_at++;
            } else if (rel == LinearProgram::Rel::ge) {
                a_[i][slack_at++] = -1.0;
                a_[i][art_at] = 1.0;
                basis_[i] = art_at++;
            } else {
                a_[i][art_at] = 1.0;
                basis_[i] = art_at++;
            }
        }
    }

    LpSolution solve(const std::vector<double>& objective) {
        // Phase 1: minimize the sum of artificial variables.
        if (art_start_ < n_) {
            std::vector<double> phase1(n_, 0.0);
            for (std::size_t j = art_start_; j < n_; ++j) phase1[j] = 1.0;
            auto st = optimize(phase1, /*allow_artificial=*/true);
            if (st != LpSolution::Status::optimal) return {st, 0.0, {}};
            double infeas = 0.0;
            for (std::size_t i = 0; i < m_; ++i)
                if (basis_[i] >= art_start_) infeas += a_[i][n_];
            if (infeas > 1e-7) return {LpSolution::Status::infeasible, 0.0, {}};
            expel_artificials();
        }
        std::vector<double> obj(n_, 0.0);
        for (std::size_t j = 0; j < n_struct_ && j < objective.size(); ++j)
            obj[j] = objective[j];
        auto st = optimize(obj, /*allow_artificial=*/false);
        LpSolution out;
        out.status = st;
        if (st != LpSolution::Status::optimal) return out;
        out.x.assign(n_struct_, 0.0);
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_struct_) out.x[basis_[i]] = a_[i][n_];
        out.objective = 0.0;
        for (std::size_t j = 0; j < n_struct_ && j < objective.size(); ++j)
            out.objective += objective[j] * out.x[j];
        return out;
    }

  private:
    static LinearProgram::Rel flip(LinearProgram::Rel r) {
        if (r == LinearProgram::Rel::le) return LinearProgram::Rel::ge;
        if (r == LinearProgram::Rel::ge) return LinearProgram::Rel::le;
        return LinearProgram::Rel::eq;
    }

    LpSolution::Status optimize(const std::vector<double>& obj, bool allow_artificial) {
        // Reduced costs r_j = obj_j - sum_i obj_{basis_i} a_ij.
        for (int iter = 0; iter < kMaxIters; ++iter) {
            std::size_t enter = n_;
            for (std::size_t j = 0; j < n_; ++j) {  // Bland: first improving index
                if (!allow_artificial && j >= art_start_) break;
                double rc = obj[j];
                for (std::size_t i = 0; i < m_; ++i)
                    if (obj[basis_[i]] != 0.0) rc -= obj[basis_[i]] * a_[i][j];
                if (rc < -kTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_) return LpSolution::Status::optimal;
            std::size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (a_[i][enter] > kTol) {
                    double ratio = a_[i][n_] / a_[i][enter];
                    if (ratio < best - kTol ||
                        (ratio < best + kTol && (leave == m_ || basis_[i] < basis_[leave]))) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == m_) return LpSolution::Status::unbounded;
            pivot(leave, enter);
        }
        return LpSolution::Status::iteration_limit;
    }

    void pivot(std::size_t row, std::size_t col) {
        double p = a_[row][col];
        for (std::size_t j = 0; j <= n_; ++j) a_[row][j] /= p;
        a_[row][col] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || a_[i][col] == 0.0) continue;
            double factor = a_[i][col];
            for (std::size_t j = 0; j <= n_; ++j) a_[i][j] -= factor * a_[row][j];
            a_[i][col] = 0.0;
        }
        basis_[row] = col;
    }

    // After phase 1, pivot basic artificials (at value 0) onto any usable
    // structural or slack column; rows with no such column are redundant.
    void expel_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < art_start_) continue;
            for (std::size_t j = 0; j < art_start_; ++j) {
                if (std::abs(a_[i][j]) > kTol) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    std::size_t m_ = 0, n_ = 0, n_struct_ = 0, art_start_ = 0;
    std::vector<std::vector<double>> a_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    Tableau t(lp);
    return t.solve(lp.objective);
}

}  // namespace liftlab
