#include "liftlab/discrepancy.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "liftlab/errors.hpp"
#include "liftlab/guard.hpp"

namespace liftlab {

namespace {

void check_shapes(std::size_t a, std::size_t b, const char* where) {
    if (a != b) throw DomainError(std::string(where) + ": shape mismatch");
}

}  // namespace

WitnessMatrix build_witness(const BooleanFunction& psi, const Support& U, const Support& V,
                            kernels::Exec mode) {
    if (U.coords != V.coords || U.b != V.b)
        throw DomainError("build_witness: mismatched supports");
    if (U.size() * V.size() > (std::size_t{1} << 24))
        throw GuardError("build_witness: matrix would exceed 2^24 entries");
    if (!psi.domain().subset_of(U.coords))
        throw DomainError("build_witness: psi domain not within support coordinates");
    std::vector<int> pos(static_cast<std::size_t>(psi.domain().size()));
    for (int t = 0; t < psi.domain().size(); ++t)
        pos[static_cast<std::size_t>(t)] = U.coords.position(psi.domain().label(t));

    WitnessMatrix m{U, V, psi, std::vector<double>(U.size() * V.size())};
    const double scale = std::ldexp(1.0, psi.domain().size()) /
                         (static_cast<double>(U.size()) * static_cast<double>(V.size()));
    const std::size_t ncols = V.size();
    const int b = U.b;
    kernels::fill(
        m.entries.data(), m.entries.size(),
        [&](std::size_t idx) {
            std::uint64_t xe = U.elements[idx / ncols];
            std::uint64_t ye = V.elements[idx % ncols];
            return scale * psi(gadget_output(xe, ye, b, pos));
        },
        mode);
    return m;
}

WitnessMatrix build_witness(const DualWitness& w, const Support& U, const Support& V,
                            kernels::Exec mode) {
    return build_witness(w.psi, U, V, mode);
}

double one_norm(const std::vector<double>& entries, kernels::Exec mode) {
    return kernels::sum(entries.size(),
                        [&](std::size_t i) { return std::abs(entries[i]); }, mode);
}

double one_norm(const WitnessMatrix& m, kernels::Exec mode) {
    return one_norm(m.entries, mode);
}

double sign_correlation(const ComposedMatrix& f, const WitnessMatrix& m, kernels::Exec mode) {
    check_shapes(f.entries.size(), m.entries.size(), "sign_correlation");
    return kernels::sum(
        m.entries.size(), [&](std::size_t i) { return f.entries[i] * m.entries[i]; }, mode);
}

WitnessBounds witness_bounds(const BooleanFunction& f, const BooleanFunction& psi,
                             const Support& U, const Support& V, kernels::Exec mode) {
    if (f.domain() != psi.domain())
        throw DomainError("witness_bounds: f and psi domains differ");
    WitnessBounds out;
    for (std::uint32_t x = 0; x < psi.table_size(); ++x) {
        out.psi_one_norm += std::abs(psi(x));
        out.f_psi_correlation += f(x) * psi(x);
    }
    // The deviation is computed for the marginals on psi's coordinates.
    SupportDistribution xd = SupportDistribution::from_support(U).marginal(psi.domain());
    SupportDistribution yd = SupportDistribution::from_support(V).marginal(psi.domain());
    out.dev = uniformity_deviation(xd, yd, mode).max_dev;

    WitnessMatrix psi_m = build_witness(psi, U, V, mode);
    ComposedMatrix f_m = compose_matrix(f, U, V, mode);
    out.matrix_one_norm = one_norm(psi_m, mode);
    out.matrix_correlation = sign_correlation(f_m, psi_m, mode);
    out.one_norm_bound = (1.0 + out.dev) * out.psi_one_norm;
    out.correlation_bound = out.f_psi_correlation - out.dev * out.psi_one_norm;
    out.one_norm_holds = out.matrix_one_norm <= out.one_norm_bound + 1e-9;
    out.correlation_holds = out.matrix_correlation >= out.correlation_bound - 1e-9;
    return out;
}

namespace {

// Gram matrix on the smaller side, as an Eigen matrix.
Eigen::MatrixXd gram(const std::vector<double>& entries, std::size_t rows, std::size_t cols) {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        m(entries.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    if (rows <= cols) return m * m.transpose();
    return m.transpose() * m;
}

}  // namespace

double spectral_norm(const std::vector<double>& entries, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) return 0.0;
    if (std::min(rows, cols) > 4096)
        throw GuardError("spectral_norm: min dimension exceeds 4096");
    check_shapes(entries.size(), rows * cols, "spectral_norm");
    Eigen::MatrixXd g = gram(entries, rows, cols);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spectral_norm: eigensolver failed");
    double lambda = es.eigenvalues().maxCoeff();
    double value = std::sqrt(std::max(0.0, lambda));
    // Schatten-4 dominates the spectral norm: ||M|| <= (tr (MM^T)^2)^{1/4}.
    double schatten4 = std::pow(g.squaredNorm(), 0.25);
    if (value > schatten4 + 1e-9)
        throw std::logic_error("spectral_norm: exceeded the trace-moment bound");
    return value;
}

double spectral_norm(const WitnessMatrix& m) {
    return spectral_norm(m.entries, m.num_rows(), m.num_cols());
}

double spectral_norm_power_iteration(const std::vector<double>& entries, std::size_t rows,
                                     std::size_t cols, kernels::Exec mode) {
    if (rows == 0 || cols == 0) return 0.0;
    check_shapes(entries.size(), rows * cols, "spectral_norm_power_iteration");
    // Iterate on M^T M v to avoid forming the Gram matrix.
    std::vector<double> v(cols, 1.0), mv(rows), mtmv(cols);
    double lambda = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        kernels::matvec(entries.data(), v.data(), mv.data(), rows, cols, mode);
        // mtmv = M^T (M v)
        for (std::size_t j = 0; j < cols; ++j) mtmv[j] = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            const double w = mv[i];
            if (w == 0.0) continue;
            const double* row = entries.data() + i * cols;
            for (std::size_t j = 0; j < cols; ++j) mtmv[j] += w * row[j];
        }
        double norm = 0.0;
        for (std::size_t j = 0; j < cols; ++j) norm += mtmv[j] * mtmv[j];
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        double next = 0.0;  // Rayleigh quotient v . (M^T M v) with unit v
        double vv = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            next += v[j] * mtmv[j];
            vv += v[j] * v[j];
        }
        next /= vv;
        for (std::size_t j = 0; j < cols; ++j) v[j] = mtmv[j] / norm;
        if (iter > 0 && std::abs(next - lambda) <= 1e-8 * std::max(1.0, std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(0.0, lambda));
}

TraceMomentReport trace_fourth_moment(const BooleanFunction& psi, const Support& U,
                                      const Support& V, kernels::Exec mode) {
    const int m = psi.domain().size();
    if (m > 2 || U.b > 2) throw GuardError("trace_fourth_moment: quadruple-sum guard (|J| <= 2, b <= 2)");
    TraceMomentReport rep;

    WitnessMatrix w = build_witness(psi, U, V, mode);
    const std::size_t nr = w.num_rows(), nc = w.num_cols();
    // tr (Psi Psi^T)^2 = ||Psi Psi^T||_F^2.
    std::vector<double> gram_rr(nr * nr);
    kernels::matmul_nt(w.entries.data(), w.entries.data(), gram_rr.data(), nr, nr, nc, mode);
    rep.direct = kernels::frobenius_sq(gram_rr.data(), gram_rr.size(), mode);

    // Expansion: precompute P[T][S] = M_T^T M_S, then
    // tr(M_S1 M_T1^T M_S2 M_T2^T) = sum_{ij} P[T1][S2]_{ij} P[T2][S1]_{ji}.
    FourierTable coeffs = fourier(psi);
    const std::uint32_t nsub = psi.table_size();
    std::vector<std::vector<double>> msub(nsub);
    for (std::uint32_t s = 0; s < nsub; ++s)
        msub[s] = character_matrix(psi.domain().from_mask(s), U, V, mode).entries;
    std::vector<std::vector<double>> p(static_cast<std::size_t>(nsub) * nsub);
    for (std::uint32_t t = 0; t < nsub; ++t)
        for (std::uint32_t s = 0; s < nsub; ++s) {
            // (M_T^T M_S)_{ij} = sum_k M_T(k,i) M_S(k,j)
            std::vector<double>& out = p[static_cast<std::size_t>(t) * nsub + s];
            out.assign(nc * nc, 0.0);
            for (std::size_t k = 0; k < nr; ++k)
                for (std::size_t i = 0; i < nc; ++i) {
                    double mtki = msub[t][k * nc + i];
                    if (mtki == 0.0) continue;
                    for (std::size_t j = 0; j < nc; ++j)
                        out[i * nc + j] += mtki * msub[s][k * nc + j];
                }
        }

    const double scale = std::ldexp(1.0, m) / (static_cast<double>(nr) * static_cast<double>(nc));
    const std::size_t ntuples = std::size_t{1} << (4 * m);
    rep.expansion =
        kernels::sum(
            ntuples,
            [&](std::size_t tuple) {
                std::uint32_t s1 = tuple & (nsub - 1);
                std::uint32_t t1 = tuple >> m & (nsub - 1);
                std::uint32_t s2 = tuple >> (2 * m) & (nsub - 1);
                std::uint32_t t2 = tuple >> (3 * m) & (nsub - 1);
                double c = coeffs.coeff(s1) * coeffs.coeff(t1) * coeffs.coeff(s2) *
                           coeffs.coeff(t2);
                if (c == 0.0) return 0.0;
                const auto& p1 = p[static_cast<std::size_t>(t1) * nsub + s2];
                const auto& p2 = p[static_cast<std::size_t>(t2) * nsub + s1];
                double tr = 0.0;
                for (std::size_t i = 0; i < nc; ++i)
                    for (std::size_t j = 0; j < nc; ++j) tr += p1[i * nc + j] * p2[j * nc + i];
                return c * tr;
            },
            mode) *
        scale * scale * scale * scale;

    double denom = std::max(std::abs(rep.direct), 1e-300);
    rep.rel_error = std::abs(rep.direct - rep.expansion) / denom;
    return rep;
}

namespace {

// Word of an encoded input on a given label, under the domain's label order.
std::uint32_t word_of(std::uint64_t enc, const CoordSet& domain, int label, int b) {
    int p = domain.position(label);
    return static_cast<std::uint32_t>(enc >> (b * p) & ((std::uint64_t{1} << b) - 1));
}

// chi_S(x, y) = (-1)^{sum_{i in S} ip(x_i, y_i)} for x, y on domains
// containing S.
int chi_sign(const CoordSet& s, std::uint64_t x, const CoordSet& xdom, std::uint64_t y,
             const CoordSet& ydom, int b) {
    int par = 0;
    for (int l : s.labels())
        par ^= ip(word_of(x, xdom, l, b), word_of(y, ydom, l, b), b);
    return par ? -1 : 1;
}

}  // namespace

bool is_valid_pair(const ValidPairSpec& spec, std::uint64_t w1, std::uint64_t w2) {
    const CoordSet d1 = spec.w1_domain(), d2 = spec.w2_domain();
    const int b = spec.b;
    const CoordSet shared = spec.a1().unite(spec.a2());
    const CoordSet w1_zero = spec.b1().unite(spec.c2());
    const CoordSet w2_zero = spec.c1().unite(spec.b2());
    for (int l : shared.labels())
        if (word_of(w1, d1, l, b) != word_of(w2, d2, l, b)) return false;
    for (int l : w1_zero.labels())
        if (word_of(w1, d1, l, b) != 0) return false;
    for (int l : w2_zero.labels())
        if (word_of(w2, d2, l, b) != 0) return false;
    return true;
}

ValidTermResult valid_term(const ValidPairSpec& spec, std::uint64_t w1, std::uint64_t w2) {
    const CoordSet d1 = spec.w1_domain(), d2 = spec.w2_domain();
    const CoordSet e1 = spec.y1_domain(), e2 = spec.y2_domain();
    const int b = spec.b;
    if (b * (e1.size() + e2.size()) > 24)
        throw GuardError("valid_term: enumeration guard");
    ValidTermResult out;
    const std::uint64_t n1 = std::uint64_t{1} << (b * e1.size());
    const std::uint64_t n2 = std::uint64_t{1} << (b * e2.size());
    long long acc = 0;
    for (std::uint64_t y1 = 0; y1 < n1; ++y1) {
        int f1 = chi_sign(spec.s1, w1, d1, y1, e1, b) * chi_sign(spec.t1, w2, d2, y1, e1, b);
        for (std::uint64_t y2 = 0; y2 < n2; ++y2) {
            int f2 =
                chi_sign(spec.s2, w2, d2, y2, e2, b) * chi_sign(spec.t2, w1, d1, y2, e2, b);
            acc += f1 * f2;
        }
    }
    out.direct = acc;
    out.closed = is_valid_pair(spec, w1, w2)
                     ? (long long)(std::uint64_t{1} << (b * (e1.size() + e2.size())))
                     : 0;
    out.agree = out.direct == out.closed;
    return out;
}

CountValidResult count_valid(const ValidPairSpec& spec, kernels::Exec mode) {
    const CoordSet d1 = spec.w1_domain(), d2 = spec.w2_domain();
    const int b = spec.b;
    if (b * (d1.size() + d2.size()) > 24)
        throw GuardError("count_valid: enumeration guard");
    const std::uint64_t n1 = std::uint64_t{1} << (b * d1.size());
    const std::uint64_t n2 = std::uint64_t{1} << (b * d2.size());
    CountValidResult out;
    out.count = kernels::int_sum(
        n1,
        [&](std::size_t w1) {
            long long local = 0;
            for (std::uint64_t w2 = 0; w2 < n2; ++w2)
                if (is_valid_pair(spec, w1, w2)) ++local;
            return local;
        },
        mode);
    const int sum_sizes =
        spec.s1.size() + spec.t1.size() + spec.s2.size() + spec.t2.size();
    out.bound = std::exp2(static_cast<double>(b) * (d1.size() + d2.size()) -
                          static_cast<double>(b) * sum_sizes / 4.0);
    // count is 0 or a power of two and the bound's exponent is a quarter
    // integer, so this comparison is exact in doubles.
    out.holds = static_cast<double>(out.count) <= out.bound;
    return out;
}

TraceTermReport trace_term_bound(const ValidPairSpec& spec, const Support& U,
                                 const Support& V, kernels::Exec mode) {
    TraceTermReport rep;
    auto ms1 = character_matrix(spec.s1, U, V, mode);
    auto mt1 = character_matrix(spec.t1, U, V, mode);
    auto ms2 = character_matrix(spec.s2, U, V, mode);
    auto mt2 = character_matrix(spec.t2, U, V, mode);
    const std::size_t nr = U.size(), nc = V.size();
    // tr(A B^t C D^t) = sum_{ij} (B^t C)_{ij} (D^t A)_{ji}.
    std::vector<double> btc(nc * nc, 0.0), dta(nc * nc, 0.0);
    for (std::size_t k = 0; k < nr; ++k)
        for (std::size_t i = 0; i < nc; ++i) {
            double bki = mt1.entries[k * nc + i];
            double dki = mt2.entries[k * nc + i];
            for (std::size_t j = 0; j < nc; ++j) {
                btc[i * nc + j] += bki * ms2.entries[k * nc + j];
                dta[i * nc + j] += dki * ms1.entries[k * nc + j];
            }
        }
    double tr = 0.0;
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = 0; j < nc; ++j) tr += btc[i * nc + j] * dta[j * nc + i];
    const double r = static_cast<double>(nr) * static_cast<double>(nc);
    rep.lhs = std::abs(tr) / (r * r);
    rep.target = std::exp2(-0.11 * U.b *
                           (spec.s1.size() + spec.t1.size() + spec.s2.size() +
                            spec.t2.size()));
    rep.within = rep.lhs <= rep.target + 1e-12;
    return rep;
}

DiscrepancyBound gen_discrepancy_bound(const ComposedMatrix& f, const WitnessMatrix& m,
                                       double epsilon, kernels::Exec mode) {
    DiscrepancyBound out;
    double corr = sign_correlation(f, m, mode);
    double norm1 = one_norm(m, mode);
    double spec = spectral_norm(m);
    out.numerator = corr - 2.0 * epsilon * norm1;
    out.denominator =
        3.0 * spec *
        std::sqrt(static_cast<double>(m.num_rows()) * static_cast<double>(m.num_cols()));
    if (out.numerator <= 0.0 || out.denominator <= 0.0) {
        out.vacuous = true;
        return out;
    }
    out.vacuous = false;
    out.bits = std::log2(out.numerator / out.denominator);
    return out;
}

}  // namespace liftlab
