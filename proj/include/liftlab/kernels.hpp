#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace liftlab::kernels {

enum class Exec { serial, parallel };

/// Process-wide default; parallel when compiled with OpenMP.
inline Exec& default_exec() {
#if defined(_OPENMP)
    static Exec mode = Exec::parallel;
#else
    static Exec mode = Exec::serial;
#endif
    return mode;
}

inline constexpr std::size_t kBlock = 4096;

/// out[i] = gen(i) for i in [0, n). Entries are independent, so the parallel
/// path is bit-identical to the serial one.
template <class Gen>
void fill(double* out, std::size_t n, Gen&& gen, Exec mode = default_exec()) {
    if (mode == Exec::parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
            out[i] = gen(static_cast<std::size_t>(i));
        return;
#endif
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = gen(i);
}

/// Serial reference: plain left-to-right accumulation.
template <class F>
double sum_serial(std::size_t n, F&& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += f(i);
    return acc;
}

/// Blocked sum: per-block partials in parallel, then a serial combine in
/// block order. The result does not depend on the thread count.
template <class F>
double sum(std::size_t n, F&& f, Exec mode = default_exec()) {
    if (mode == Exec::serial || n < 2 * kBlock) return sum_serial(n, f);
    std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks, 0.0);
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(nblocks); ++bi) {
        std::size_t lo = static_cast<std::size_t>(bi) * kBlock;
        std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += f(i);
        partial[static_cast<std::size_t>(bi)] = acc;
    }
    double acc = 0.0;
    for (double p : partial) acc += p;
    return acc;
}

template <class F>
long long int_sum_serial(std::size_t n, F&& f) {
    long long acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += f(i);
    return acc;
}

/// Integer reduction; exact in any order.
template <class F>
long long int_sum(std::size_t n, F&& f, Exec mode = default_exec()) {
    if (mode == Exec::serial) return int_sum_serial(n, f);
    long long acc = 0;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) reduction(+ : acc)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
        acc += f(static_cast<std::size_t>(i));
    return acc;
}

/// keep[i] = pred(i); evaluation order free, output deterministic.
template <class Pred>
void keep_mask(std::size_t n, Pred&& pred, std::vector<char>& keep,
               Exec mode = default_exec()) {
    keep.assign(n, 0);
    if (mode == Exec::parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 8)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
            keep[static_cast<std::size_t>(i)] = pred(static_cast<std::size_t>(i)) ? 1 : 0;
        return;
#endif
    }
    for (std::size_t i = 0; i < n; ++i) keep[i] = pred(i) ? 1 : 0;
}

void matmul_nt_serial(const double* a, const double* b, double* c, std::size_t n,
                      std::size_t m, std::size_t k);
/// c (n x m) = a (n x k) * b^T (b is m x k), row-major.
void matmul_nt(const double* a, const double* b, double* c, std::size_t n, std::size_t m,
               std::size_t k, Exec mode = default_exec());

void matvec_serial(const double* a, const double* x, double* y, std::size_t n,
                   std::size_t m);
/// y (n) = a (n x m) * x (m), row-major.
void matvec(const double* a, const double* x, double* y, std::size_t n, std::size_t m,
            Exec mode = default_exec());

double frobenius_sq_serial(const double* a, std::size_t n);
double frobenius_sq(const double* a, std::size_t n, Exec mode = default_exec());

/// counts[eval(r, c)] += weight(r, c) over all pairs. Counts are exact
/// regardless of execution mode.
template <class Eval, class Weight>
void pair_histogram(std::size_t rows, std::size_t cols, std::size_t bins, Eval&& eval,
                    Weight&& weight, std::vector<long long>& counts,
                    Exec mode = default_exec()) {
    counts.assign(bins, 0);
    if (mode == Exec::parallel) {
#if defined(_OPENMP)
#pragma omp parallel
        {
            std::vector<long long> local(bins, 0);
#pragma omp for schedule(static)
            for (std::int64_t r = 0; r < static_cast<std::int64_t>(rows); ++r)
                for (std::size_t c = 0; c < cols; ++c)
                    local[eval(static_cast<std::size_t>(r), c)] +=
                        weight(static_cast<std::size_t>(r), c);
#pragma omp critical
            for (std::size_t z = 0; z < bins; ++z) counts[z] += local[z];
        }
        return;
#endif
    }
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) counts[eval(r, c)] += weight(r, c);
}

}  // namespace liftlab::kernels
