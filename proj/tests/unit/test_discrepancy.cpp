#include <cmath>

#include "doctest.h"
#include "liftlab/discrepancy.hpp"
#include "test_helpers.hpp"

using namespace liftlab;
using namespace liftlab::testing;

TEST_CASE("build_witness: scaling, zero, rank one") {
    CoordSet j{1};
    Support full = Support::full(j, 1);
    auto psi = BooleanFunction::from_evaluator(
        j, [](std::uint32_t x) { return (x & 1u ? -1.0 : 1.0) / 2.0; });  // chi_1 / 2
    auto w = build_witness(psi, full, full);
    // Entry (x,y) = (2/4) * psi(x y): brute-force the four entries.
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            CHECK(w.at(x, y) == doctest::Approx(0.5 * ((x & y & 1u) ? -0.5 : 0.5)));

    auto zero = build_witness(BooleanFunction::constant(j, 0.0), full, full);
    for (double v : zero.entries) CHECK(v == 0.0);

    Support one{j, 1, {1}};
    auto col = build_witness(psi, full, one);
    CHECK(col.num_cols() == 1);
    // Single column: trivially rank <= 1.
    CHECK(col.entries.size() == 2);
}

TEST_CASE("one_norm and sign_correlation basics") {
    CoordSet j{1};
    Support full = Support::full(j, 1);
    auto psi = BooleanFunction::from_evaluator(
        j, [](std::uint32_t x) { return (x & 1u ? -1.0 : 1.0) / 2.0; });
    auto w = build_witness(psi, full, full);
    // |psi| is constant 1/2 here, so ||Psi||_1 = ||psi||_1 = 1 exactly.
    CHECK(one_norm(w) == doctest::Approx(1.0));

    auto all_ones = compose_matrix(BooleanFunction::constant(j, 1.0), full, full);
    double corr = sign_correlation(all_ones, w);
    double entry_sum = 0.0;
    for (double v : w.entries) entry_sum += v;
    CHECK(corr == doctest::Approx(entry_sum));

    auto wz = build_witness(BooleanFunction::constant(j, 0.0), full, full);
    CHECK(one_norm(wz) == 0.0);
    CHECK(sign_correlation(all_ones, wz) == 0.0);
}

TEST_CASE("witness_bounds: parametric one-norm and correlation inequalities") {
    Rng rng(1212);
    for (int trial = 0; trial < 40; ++trial) {
        int b = 1 + static_cast<int>(rng.below(2));
        int nj = 1 + static_cast<int>(rng.below(2));
        CoordSet j = CoordSet::range(nj);
        const std::uint64_t universe = std::uint64_t{1} << (b * nj);
        Support u{j, b, random_support(rng, universe)};
        Support v{j, b, random_support(rng, universe)};
        auto f = random_sign(rng, nj);
        auto psi = random_real(rng, nj);
        auto rep = witness_bounds(f, psi, u, v);
        CHECK(rep.one_norm_holds);
        CHECK(rep.correlation_holds);
    }
}

TEST_CASE("spectral_norm: Hadamard, tensor powers, power-iteration cross-check") {
    std::vector<double> h2{1, 1, 1, -1};
    CHECK(spectral_norm(h2, 2, 2) == doctest::Approx(std::sqrt(2.0)));

    // H^{tensor m} via the parity composed matrix at b = 1.
    for (int m = 1; m <= 6; ++m) {
        CoordSet j = CoordSet::range(m);
        Support full = Support::full(j, 1);
        auto hm = compose_matrix(parity(m), full, full);
        CHECK(spectral_norm(hm.entries, full.size(), full.size()) ==
              doctest::Approx(std::exp2(m / 2.0)));
    }

    Rng rng(88);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> a(64);
        for (double& v : a) v = rng.bit() ? 1.0 : -1.0;
        double exact = spectral_norm(a, 8, 8);
        double iter = spectral_norm_power_iteration(a, 8, 8);
        CHECK(iter == doctest::Approx(exact).epsilon(1e-6));
    }
}

TEST_CASE("trace fourth moment: zero, single character, random equality") {
    CoordSet j = CoordSet::range(2);
    Support full = Support::full(j, 2);
    auto zero = trace_fourth_moment(BooleanFunction::constant(j, 0.0), full, full);
    CHECK(zero.direct == 0.0);
    CHECK(zero.expansion == 0.0);

    auto chi = BooleanFunction::from_evaluator(
        j, [](std::uint32_t x) { return parity32(x & 0b11) ? -1.0 : 1.0; });
    auto single = trace_fourth_moment(chi, full, full);
    CHECK(single.rel_error <= 1e-6);

    Rng rng(3131);
    for (int trial = 0; trial < 25; ++trial) {
        int b = 1 + static_cast<int>(rng.below(2));
        int nj = 1 + static_cast<int>(rng.below(2));
        CoordSet jj = CoordSet::range(nj);
        const std::uint64_t universe = std::uint64_t{1} << (b * nj);
        Support u{jj, b, random_support(rng, universe)};
        Support v{jj, b, random_support(rng, universe)};
        auto psi = random_real(rng, nj);
        auto rep = trace_fourth_moment(psi, u, v);
        CHECK(rep.rel_error <= 1e-6);
    }
}

TEST_CASE("valid_term: all-zero pair, forced zero, exhaustive identity") {
    ValidPairSpec spec{CoordSet{1}, CoordSet{1}, CoordSet{2}, CoordSet{1, 2}, 2};
    auto r = valid_term(spec, 0, 0);
    CHECK(r.agree);
    CHECK(r.direct ==
          (1LL << (2 * (spec.y1_domain().size() + spec.y2_domain().size()))));

    // B1 u C2 nonempty forces zero whenever w1 is nonzero there.
    ValidPairSpec sp2{CoordSet{1}, CoordSet{}, CoordSet{}, CoordSet{}, 1};
    // w1 lives on {1} = B1; w1 = 1 violates validity.
    auto r2 = valid_term(sp2, 1, 0);
    CHECK(r2.agree);
    CHECK(r2.direct == 0);

    Rng rng(55);
    for (int trial = 0; trial < 6; ++trial) {
        CoordSet jj = CoordSet::range(2);
        auto pick = [&] { return jj.from_mask(static_cast<std::uint32_t>(rng.below(4))); };
        ValidPairSpec sp{pick(), pick(), pick(), pick(), 1};
        const std::uint64_t n1 = std::uint64_t{1} << sp.w1_domain().size();
        const std::uint64_t n2 = std::uint64_t{1} << sp.w2_domain().size();
        for (std::uint64_t w1 = 0; w1 < n1; ++w1)
            for (std::uint64_t w2 = 0; w2 < n2; ++w2) CHECK(valid_term(sp, w1, w2).agree);
    }
}

TEST_CASE("count_valid: empty spec, singleton overlap, random bound") {
    ValidPairSpec empty{CoordSet{}, CoordSet{}, CoordSet{}, CoordSet{}, 1};
    auto r0 = count_valid(empty);
    CHECK(r0.count == 1);
    CHECK(r0.bound == doctest::Approx(1.0));
    CHECK(r0.holds);

    ValidPairSpec s1{CoordSet{1}, CoordSet{1}, CoordSet{1}, CoordSet{1}, 1};
    auto r1 = count_valid(s1);
    CHECK(r1.count == 2);  // w1 = w2 on the shared coordinate
    CHECK(r1.bound == doctest::Approx(2.0));
    CHECK(r1.holds);

    Rng rng(2222);
    for (int trial = 0; trial < 40; ++trial) {
        CoordSet jj = CoordSet::range(2);
        auto pick = [&] { return jj.from_mask(static_cast<std::uint32_t>(rng.below(4))); };
        ValidPairSpec sp{pick(), pick(), pick(), pick(), 2};
        CHECK(count_valid(sp).holds);
    }
}

TEST_CASE("trace_term_bound: matches a naive four-matrix trace; target reported") {
    Rng rng(64);
    CoordSet j = CoordSet::range(2);
    int within = 0, total = 0;
    for (int trial = 0; trial < 8; ++trial) {
        auto pick = [&] { return j.from_mask(static_cast<std::uint32_t>(rng.below(4))); };
        ValidPairSpec sp{pick(), pick(), pick(), pick(), 1};
        Support full = Support::full(j, 1);
        auto rep = trace_term_bound(sp, full, full);

        auto ms1 = character_matrix(sp.s1, full, full);
        auto mt1 = character_matrix(sp.t1, full, full);
        auto ms2 = character_matrix(sp.s2, full, full);
        auto mt2 = character_matrix(sp.t2, full, full);
        const std::size_t n = full.size();
        double tr = 0.0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t bq = 0; bq < n; ++bq)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t d = 0; d < n; ++d)
                        tr += ms1.at(a, bq) * mt1.at(c, bq) * ms2.at(c, d) * mt2.at(a, d);
        double r = static_cast<double>(n) * static_cast<double>(n);
        CHECK(rep.lhs == doctest::Approx(std::abs(tr) / (r * r)));
        ++total;
        within += rep.within ? 1 : 0;
    }
    MESSAGE("trace-term asymptotic target held on ", within, "/", total,
            " sampled quadruples at b = 1 (informational)");
}

TEST_CASE("gen_discrepancy_bound: vacuous cases and the exact parity value") {
    CoordSet j = CoordSet::range(2);
    Support full = Support::full(j, 2);

    auto wz = build_witness(BooleanFunction::constant(j, 0.0), full, full);
    auto fm = compose_matrix(parity(2), full, full);
    CHECK(gen_discrepancy_bound(fm, wz, 0.1).vacuous);

    // Exact dual of parity: psi = chi_J / 4; all norms computable by hand:
    // ||Psi||_1 = 1, <F, Psi> = 1, ||Psi|| = 4/256, sqrt(|R|) = 16, so the
    // value is log2((1 - 0.2) / (3/16)) = log2(16/15 * ... ) computed below.
    auto psi = BooleanFunction::from_evaluator(
        j, [](std::uint32_t x) { return (parity32(x & 3u) ? -1.0 : 1.0) / 4.0; });
    auto w = build_witness(psi, full, full);
    auto bound = gen_discrepancy_bound(fm, w, 0.1);
    REQUIRE(!bound.vacuous);
    CHECK(bound.bits == doctest::Approx(std::log2(0.8 / 0.75)));

    // Correlation below 2 eps ||.||_1 is vacuous: eps = 0.5 kills parity.
    CHECK(gen_discrepancy_bound(fm, w, 0.5).vacuous);
}
