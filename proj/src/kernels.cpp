#include "liftlab/kernels.hpp"

namespace liftlab::kernels {

void matmul_nt_serial(const double* a, const double* b, double* c, std::size_t n,
                      std::size_t m, std::size_t k) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double acc = 0.0;
            const double* ai = a + i * k;
            const double* bj = b + j * k;
            for (std::size_t t = 0; t < k; ++t) acc += ai[t] * bj[t];
            c[i * m + j] = acc;
        }
    }
}

void matmul_nt(const double* a, const double* b, double* c, std::size_t n, std::size_t m,
               std::size_t k, Exec mode) {
    if (mode == Exec::serial) {
        matmul_nt_serial(a, b, c, n, m, k);
        return;
    }
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            double acc = 0.0;
            const double* ai = a + static_cast<std::size_t>(i) * k;
            const double* bj = b + j * k;
            for (std::size_t t = 0; t < k; ++t) acc += ai[t] * bj[t];
            c[static_cast<std::size_t>(i) * m + j] = acc;
        }
    }
#else
    matmul_nt_serial(a, b, c, n, m, k);
#endif
}

void matvec_serial(const double* a, const double* x, double* y, std::size_t n,
                   std::size_t m) {
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const double* ai = a + i * m;
        for (std::size_t j = 0; j < m; ++j) acc += ai[j] * x[j];
        y[i] = acc;
    }
}

void matvec(const double* a, const double* x, double* y, std::size_t n, std::size_t m,
            Exec mode) {
    if (mode == Exec::serial) {
        matvec_serial(a, x, y, n, m);
        return;
    }
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        double acc = 0.0;
        const double* ai = a + static_cast<std::size_t>(i) * m;
        for (std::size_t j = 0; j < m; ++j) acc += ai[j] * x[j];
        y[static_cast<std::size_t>(i)] = acc;
    }
#else
    matvec_serial(a, x, y, n, m);
#endif
}

double frobenius_sq_serial(const double* a, std::size_t n) {
    return sum_serial(n, [a](std::size_t i) { return a[i] * a[i]; });
}

double frobenius_sq(const double* a, std::size_t n, Exec mode) {
    return sum(n, [a](std::size_t i) { return a[i] * a[i]; }, mode);
}

}  // namespace liftlab::kernels
