#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liftlab/boolfn.hpp"

namespace liftlab {

/// Acceptance slack for the primal LP optimum when deciding deg_eps.
inline constexpr double kApproxDegreeTol = 1e-7;

struct ApproxDegreeResult {
    double epsilon = 0.0;
    int d = 0;
    FourierTable primal;          // approximating polynomial of degree <= d
    double optimal_error = 0.0;   // ||f - p||_inf at degree d
    std::vector<double> errors_by_degree;  // LP optimum for each degree tried
};

/// Smallest d such that some degree-d polynomial p has ||f - p||_inf within
/// epsilon (+ tolerance); solved by one LP per candidate degree.
ApproxDegreeResult approx_degree(const BooleanFunction& f, double epsilon);

struct DualWitness {
    BooleanFunction psi;  // real table over the same domain
    int d = 0;
    double correlation = 0.0;  // <f, psi>
    /// Set when the LP certifies deg_eps(f) < d instead of producing a witness.
    std::optional<std::string> diagnostic;
};

/// Maximizes <f, psi> over ||psi||_1 <= 1 with hat{psi}_S = 0 for |S| < d,
/// then rescales to unit 1-norm. correlation > epsilon iff deg_eps(f) >= d.
DualWitness dual_polynomial(const BooleanFunction& f, int d, double epsilon);

struct DualCheck {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double slack = 0.0;  // violation magnitude, 0 when satisfied
};

struct DualReport {
    std::vector<DualCheck> checks;
    bool all_pass = false;
};

/// Re-verifies a witness by direct substitution: unit 1-norm, correlation at
/// least epsilon, vanishing low-order coefficients.
DualReport verify_dual(const BooleanFunction& f, const DualWitness& w, double epsilon);

}  // namespace liftlab
