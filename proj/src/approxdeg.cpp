#include "liftlab/approxdeg.hpp"

#include <cmath>

#include "liftlab/errors.hpp"
#include "liftlab/guard.hpp"
#include "liftlab/lp.hpp"

namespace liftlab {

namespace {

double chi(std::uint32_t subset_mask, std::uint32_t point) {
    return parity32(subset_mask & point) ? -1.0 : 1.0;
}

}  // namespace

ApproxDegreeResult approx_degree(const BooleanFunction& f, double epsilon) {
    if (!f.sign_valued()) throw DomainError("approx_degree: f must be sign-valued");
    if (epsilon < 0.0 || epsilon >= 1.0)
        throw DomainError("approx_degree: epsilon must be in [0,1)");
    const int m = f.domain().size();
    if (m > 5) throw GuardError("approx_degree: |J| > 5");
    const std::uint32_t npts = f.table_size();

    ApproxDegreeResult out;
    out.epsilon = epsilon;
    for (int d = 0; d <= m; ++d) {
        std::vector<std::uint32_t> monomials;
        for (std::uint32_t s = 0; s < npts; ++s)
            if (std::popcount(s) <= d) monomials.push_back(s);

        // Variables: (c_S+, c_S-) per monomial, then t.
        LinearProgram lp;
        lp.num_vars = 2 * monomials.size() + 1;
        lp.objective.assign(lp.num_vars, 0.0);
        lp.objective.back() = 1.0;
        lp.rows.reserve(2 * npts);
        for (std::uint32_t x = 0; x < npts; ++x) {
            auto& up = lp.add_row(LinearProgram::Rel::le, f(x));
            for (std::size_t k = 0; k < monomials.size(); ++k) {
                double ch = chi(monomials[k], x);
                up.a[2 * k] = ch;
                up.a[2 * k + 1] = -ch;
            }
            up.a[lp.num_vars - 1] = -1.0;
            auto& lo = lp.add_row(LinearProgram::Rel::le, -f(x));
            for (std::size_t k = 0; k < monomials.size(); ++k) {
                double ch = chi(monomials[k], x);
                lo.a[2 * k] = -ch;
                lo.a[2 * k + 1] = ch;
            }
            lo.a[lp.num_vars - 1] = -1.0;
        }
        LpSolution sol = solve_lp(lp);
        if (!sol.ok())
            throw std::runtime_error("approx_degree: LP solver failed at degree " +
                                     std::to_string(d));
        out.errors_by_degree.push_back(sol.objective);
        if (sol.objective <= epsilon + kApproxDegreeTol) {
            out.d = d;
            out.optimal_error = sol.objective;
            std::vector<double> coeffs(npts, 0.0);
            for (std::size_t k = 0; k < monomials.size(); ++k)
                coeffs[monomials[k]] = sol.x[2 * k] - sol.x[2 * k + 1];
            out.primal = FourierTable{f.domain(), std::move(coeffs)};
            return out;
        }
    }
    throw std::runtime_error("approx_degree: no degree accepted (unreachable)");
}

DualWitness dual_polynomial(const BooleanFunction& f, int d, double epsilon) {
    if (!f.sign_valued()) throw DomainError("dual_polynomial: f must be sign-valued");
    const int m = f.domain().size();
    if (m > 5) throw GuardError("dual_polynomial: |J| > 5");
    if (d < 0 || d > m + 1) throw DomainError("dual_polynomial: d out of range");
    const std::uint32_t npts = f.table_size();

    // Variables: (psi_x+, psi_x-) per point.
    LinearProgram lp;
    lp.num_vars = 2 * npts;
    lp.objective.assign(lp.num_vars, 0.0);
    for (std::uint32_t x = 0; x < npts; ++x) {
        lp.objective[2 * x] = -f(x);  // maximize <f, psi>
        lp.objective[2 * x + 1] = f(x);
    }
    auto& norm = lp.add_row(LinearProgram::Rel::le, 1.0);
    for (std::size_t j = 0; j < lp.num_vars; ++j) norm.a[j] = 1.0;
    for (std::uint32_t s = 0; s < npts; ++s) {
        if (std::popcount(s) >= d) continue;
        auto& row = lp.add_row(LinearProgram::Rel::eq, 0.0);
        for (std::uint32_t x = 0; x < npts; ++x) {
            double ch = chi(s, x);
            row.a[2 * x] = ch;
            row.a[2 * x + 1] = -ch;
        }
    }
    LpSolution sol = solve_lp(lp);
    if (!sol.ok())
        throw std::runtime_error("dual_polynomial: LP solver failed at d = " +
                                 std::to_string(d));

    std::vector<double> psi(npts);
    double one_norm = 0.0;
    for (std::uint32_t x = 0; x < npts; ++x) {
        psi[x] = sol.x[2 * x] - sol.x[2 * x + 1];
        one_norm += std::abs(psi[x]);
    }
    DualWitness w{BooleanFunction(f.domain(), psi), d, -sol.objective, std::nullopt};
    if (one_norm > 1e-12) {
        double corr = 0.0;
        for (std::uint32_t x = 0; x < npts; ++x) {
            psi[x] /= one_norm;
            corr += f(x) * psi[x];
        }
        w.psi = BooleanFunction(f.domain(), std::move(psi));
        w.correlation = corr;
    }
    if (w.correlation <= epsilon)
        w.diagnostic = "correlation " + std::to_string(w.correlation) +
                       " <= epsilon: certifies deg_eps(f) < " + std::to_string(d);
    return w;
}

DualReport verify_dual(const BooleanFunction& f, const DualWitness& w, double epsilon) {
    if (f.domain() != w.psi.domain())
        throw DomainError("verify_dual: mismatched domains");
    DualReport rep;

    double one_norm = 0.0, corr = 0.0;
    for (std::uint32_t x = 0; x < f.table_size(); ++x) {
        one_norm += std::abs(w.psi(x));
        corr += f(x) * w.psi(x);
    }
    double norm_slack = std::abs(one_norm - 1.0);
    rep.checks.push_back({"one_norm", norm_slack <= 1e-7, one_norm, norm_slack});

    double corr_slack = corr >= epsilon ? 0.0 : epsilon - corr;
    rep.checks.push_back({"correlation", corr >= epsilon, corr, corr_slack});

    FourierTable t = fourier(w.psi);
    double worst = 0.0;
    for (std::uint32_t s = 0; s < t.coeffs.size(); ++s)
        if (std::popcount(s) < w.d) worst = std::max(worst, std::abs(t.coeffs[s]));
    rep.checks.push_back({"low_order_vanishing", worst <= 1e-7, worst, worst});

    rep.all_pass = true;
    for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

}  // namespace liftlab
