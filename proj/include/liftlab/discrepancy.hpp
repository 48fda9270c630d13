#pragma once

#include <cstdint>
#include <vector>

#include "liftlab/approxdeg.hpp"
#include "liftlab/boolfn.hpp"
#include "liftlab/density.hpp"
#include "liftlab/gadget.hpp"

namespace liftlab {

/// Psi(u,v) = (2^{|J|} / |R|) * psi(G^J(x_u, y_v)) with |R| = |U| |V|.
struct WitnessMatrix {
    Support rows;
    Support cols;
    BooleanFunction psi;
    std::vector<double> entries;  // row-major

    double at(std::size_t r, std::size_t c) const { return entries[r * cols.size() + c]; }
    std::size_t num_rows() const { return rows.size(); }
    std::size_t num_cols() const { return cols.size(); }
};

WitnessMatrix build_witness(const BooleanFunction& psi, const Support& U, const Support& V,
                            kernels::Exec mode = kernels::default_exec());
WitnessMatrix build_witness(const DualWitness& w, const Support& U, const Support& V,
                            kernels::Exec mode = kernels::default_exec());

double one_norm(const std::vector<double>& entries,
                kernels::Exec mode = kernels::default_exec());
double one_norm(const WitnessMatrix& m, kernels::Exec mode = kernels::default_exec());

double sign_correlation(const ComposedMatrix& f, const WitnessMatrix& m,
                        kernels::Exec mode = kernels::default_exec());

/// How the witness matrix inherits psi's norms on a rectangle, in exact
/// parametric form: with dev = uniformity_deviation(X, Y).max_dev,
///   ||Psi||_1           <= (1 + dev) ||psi||_1
///   <F, Psi>            >= <f, psi> - dev ||psi||_1
/// (the familiar 1.01 / 0.33 constants follow when dev <= 0.01 and
/// <f, psi> >= 1/3).
struct WitnessBounds {
    double psi_one_norm = 0.0;
    double f_psi_correlation = 0.0;
    double dev = 0.0;
    double matrix_one_norm = 0.0;
    double one_norm_bound = 0.0;
    double matrix_correlation = 0.0;
    double correlation_bound = 0.0;
    bool one_norm_holds = false;
    bool correlation_holds = false;
};

WitnessBounds witness_bounds(const BooleanFunction& f, const BooleanFunction& psi,
                             const Support& U, const Support& V,
                             kernels::Exec mode = kernels::default_exec());

/// Largest singular value (exact symmetric eigensolve on the smaller Gram
/// matrix); verified against the Schatten-4 bound (tr (MM^T)^2)^{1/4}.
double spectral_norm(const std::vector<double>& entries, std::size_t rows, std::size_t cols);
double spectral_norm(const WitnessMatrix& m);

/// Independent cross-check: 200 power iterations at tolerance 1e-8.
double spectral_norm_power_iteration(const std::vector<double>& entries, std::size_t rows,
                                     std::size_t cols,
                                     kernels::Exec mode = kernels::default_exec());

struct TraceMomentReport {
    double direct = 0.0;     // tr (Psi Psi^T)^2 from the matrix
    double expansion = 0.0;  // via the M_S cross-trace sum
    double rel_error = 0.0;
};

/// Computes tr (Psi Psi^T)^2 both directly and through the Fourier expansion
/// Psi = (2^m/|R|) sum_S hat{psi}_S M_S; the two must agree (exact identity).
TraceMomentReport trace_fourth_moment(const BooleanFunction& psi, const Support& U,
                                      const Support& V,
                                      kernels::Exec mode = kernels::default_exec());

/// Subset quadruple (S1, T1, S2, T2) with the derived disjoint pieces
/// A = S cap T, B = S minus T, C = T minus S on each layer.
struct ValidPairSpec {
    CoordSet s1, t1, s2, t2;
    int b = 1;

    CoordSet a1() const { return s1.intersect(t1); }
    CoordSet b1() const { return s1.minus(t1); }
    CoordSet c1() const { return t1.minus(s1); }
    CoordSet a2() const { return s2.intersect(t2); }
    CoordSet b2() const { return s2.minus(t2); }
    CoordSet c2() const { return t2.minus(s2); }

    CoordSet w1_domain() const { return s1.unite(t2); }
    CoordSet w2_domain() const { return s2.unite(t1); }
    CoordSet y1_domain() const { return s1.unite(t1); }
    CoordSet y2_domain() const { return s2.unite(t2); }
};

/// (w1)_{A1 u A2} = (w2)_{A1 u A2}, (w1)_{B1 u C2} = 0, (w2)_{C1 u B2} = 0.
bool is_valid_pair(const ValidPairSpec& spec, std::uint64_t w1, std::uint64_t w2);

struct ValidTermResult {
    long long direct = 0;  // sum over (y1, y2) of the four-character product
    long long closed = 0;  // 2^{b(|S1 u T1| + |S2 u T2|)} [valid]
    bool agree = false;
};

/// Both evaluation routes of the collision sum; exact integers.
ValidTermResult valid_term(const ValidPairSpec& spec, std::uint64_t w1, std::uint64_t w2);

struct CountValidResult {
    long long count = 0;
    double bound = 0.0;  // 2^{b(|S1uT2|+|S2uT1|)} 2^{-b(|S1|+|T1|+|S2|+|T2|)/4}
    bool holds = false;
};

CountValidResult count_valid(const ValidPairSpec& spec,
                             kernels::Exec mode = kernels::default_exec());

struct TraceTermReport {
    double lhs = 0.0;     // |tr(M_S1 M_T1^t M_S2 M_T2^t)| / |R|^2
    double target = 0.0;  // 2^{-0.11 b (|S1|+|T1|+|S2|+|T2|)}
    bool within = false;  // asymptotic comparison, reported only
};

/// Both sides of the per-term trace bound. The target presumes the
/// high-density, large-b regime, so `within` is informational.
TraceTermReport trace_term_bound(const ValidPairSpec& spec, const Support& U,
                                 const Support& V,
                                 kernels::Exec mode = kernels::default_exec());

struct DiscrepancyBound {
    double bits = 0.0;  // log2((corr - 2 eps ||.||_1) / (3 ||.|| sqrt(|U||V|)))
    bool vacuous = true;
    double numerator = 0.0;
    double denominator = 0.0;
};

/// The generalized-discrepancy value with no hidden constant applied;
/// vacuous (never thrown) when the numerator is nonpositive.
DiscrepancyBound gen_discrepancy_bound(const ComposedMatrix& f, const WitnessMatrix& m,
                                       double epsilon,
                                       kernels::Exec mode = kernels::default_exec());

}  // namespace liftlab
