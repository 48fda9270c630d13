#include <benchmark/benchmark.h>

#include "liftlab/density.hpp"
#include "liftlab/discrepancy.hpp"
#include "liftlab/gadget.hpp"
#include "liftlab/kernels.hpp"
#include "liftlab/rng.hpp"

namespace {

using namespace liftlab;
using kernels::Exec;

BooleanFunction make_parity(int n) {
    return BooleanFunction::from_evaluator(CoordSet::range(n), [](std::uint32_t x) {
        return std::popcount(x) % 2 ? -1.0 : 1.0;
    });
}

void bm_compose_fill(benchmark::State& state, Exec mode) {
    const int n = 2, b = 5;  // 1024 x 1024 matrix
    BooleanFunction f = make_parity(n);
    Support u = Support::full(f.domain(), b);
    for (auto _ : state) {
        auto m = compose_matrix(f, u, u, mode);
        benchmark::DoNotOptimize(m.entries.data());
    }
}

void bm_one_norm(benchmark::State& state, Exec mode) {
    Rng rng(7);
    std::vector<double> entries(1 << 20);
    for (double& v : entries) v = rng.unit() - 0.5;
    for (auto _ : state) {
        double s = one_norm(entries, mode);
        benchmark::DoNotOptimize(s);
    }
}

void bm_matmul(benchmark::State& state, Exec mode) {
    const std::size_t n = 256;
    Rng rng(11);
    std::vector<double> a(n * n), c(n * n);
    for (double& v : a) v = rng.unit();
    for (auto _ : state) {
        kernels::matmul_nt(a.data(), a.data(), c.data(), n, n, n, mode);
        benchmark::DoNotOptimize(c.data());
    }
}

void bm_pair_histogram(benchmark::State& state, Exec mode) {
    const int n = 2, b = 5;
    Support u = Support::full(CoordSet::range(n), b);
    std::vector<int> pos{0, 1};
    std::vector<long long> counts;
    for (auto _ : state) {
        kernels::pair_histogram(
            u.size(), u.size(), std::size_t{1} << n,
            [&](std::size_t r, std::size_t c) {
                return gadget_output(u.elements[r], u.elements[c], b, pos);
            },
            [](std::size_t, std::size_t) { return 1LL; }, counts, mode);
        benchmark::DoNotOptimize(counts.data());
    }
}

void bm_bad_filter(benchmark::State& state, Exec mode) {
    const int n = 2, b = 3;
    CoordSet coords = CoordSet::range(n);
    Rng rng(3);
    std::vector<std::uint64_t> v;
    for (std::uint64_t e = 0; e < 64; ++e)
        if (rng.unit() < 0.8) v.push_back(e);
    auto y = SupportDistribution::uniform(coords, b, v);
    Support u = Support::full(coords, b);
    std::vector<char> keep;
    for (auto _ : state) {
        kernels::keep_mask(
            u.size(),
            [&](std::size_t i) {
                GadgetInput a = GadgetInput::decode(coords, b, u.elements[i]);
                return !is_bad(a, y, 0.44).bad;
            },
            keep, mode);
        benchmark::DoNotOptimize(keep.data());
    }
}

}  // namespace

BENCHMARK_CAPTURE(bm_compose_fill, serial, Exec::serial);
BENCHMARK_CAPTURE(bm_compose_fill, parallel, Exec::parallel);
BENCHMARK_CAPTURE(bm_one_norm, serial, Exec::serial);
BENCHMARK_CAPTURE(bm_one_norm, parallel, Exec::parallel);
BENCHMARK_CAPTURE(bm_matmul, serial, Exec::serial);
BENCHMARK_CAPTURE(bm_matmul, parallel, Exec::parallel);
BENCHMARK_CAPTURE(bm_pair_histogram, serial, Exec::serial);
BENCHMARK_CAPTURE(bm_pair_histogram, parallel, Exec::parallel);
BENCHMARK_CAPTURE(bm_bad_filter, serial, Exec::serial);
BENCHMARK_CAPTURE(bm_bad_filter, parallel, Exec::parallel);

BENCHMARK_MAIN();
