#pragma once

#include <cstddef>
#include <vector>

namespace liftlab {

/// Minimize c.x subject to a.x (<=|>=|=) rhs per row and x >= 0.
/// The modeling layer splits free variables; callers never see the tableau.
struct LinearProgram {
    enum class Rel { le, ge, eq };
    struct Row {
        std::vector<double> a;
        Rel rel = Rel::le;
        double rhs = 0.0;
    };

    std::size_t num_vars = 0;
    std::vector<double> objective;
    std::vector<Row> rows;

    Row& add_row(Rel rel, double rhs) {
        rows.push_back(Row{std::vector<double>(num_vars, 0.0), rel, rhs});
        return rows.back();
    }
};

struct LpSolution {
    enum class Status { optimal, infeasible, unbounded, iteration_limit };
    Status status = Status::iteration_limit;
    double objective = 0.0;
    std::vector<double> x;

    bool ok() const { return status == Status::optimal; }
};

/// Dense two-phase simplex with Bland's rule; feasibility tolerance 1e-9.
/// Any backend meeting that tolerance is interchangeable here, since every
/// certificate is re-verified by direct substitution downstream.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace liftlab
