#include <cmath>

#include "doctest.h"
#include "liftlab/approxdeg.hpp"
#include "liftlab/lp.hpp"
#include "test_helpers.hpp"

using namespace liftlab;
using namespace liftlab::testing;

TEST_CASE("simplex: knowns") {
    // max x + y s.t. x + 2y <= 4, 3x + y <= 6  ->  (8/5, 6/5), value 14/5.
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {-1.0, -1.0};
    auto& r1 = lp.add_row(LinearProgram::Rel::le, 4.0);
    r1.a = {1.0, 2.0};
    auto& r2 = lp.add_row(LinearProgram::Rel::le, 6.0);
    r2.a = {3.0, 1.0};
    auto sol = solve_lp(lp);
    REQUIRE(sol.ok());
    CHECK(sol.objective == doctest::Approx(-14.0 / 5.0));
    CHECK(sol.x[0] == doctest::Approx(8.0 / 5.0));
    CHECK(sol.x[1] == doctest::Approx(6.0 / 5.0));

    // Equality constraints and infeasibility.
    LinearProgram eq;
    eq.num_vars = 1;
    eq.objective = {1.0};
    eq.add_row(LinearProgram::Rel::eq, 2.0).a = {1.0};
    eq.add_row(LinearProgram::Rel::eq, 3.0).a = {1.0};
    CHECK(solve_lp(eq).status == LpSolution::Status::infeasible);

    LinearProgram unb;
    unb.num_vars = 1;
    unb.objective = {-1.0};
    unb.add_row(LinearProgram::Rel::ge, 0.0).a = {1.0};
    CHECK(solve_lp(unb).status == LpSolution::Status::unbounded);
}

TEST_CASE("approx_degree: dictator, constant, OR_2") {
    auto dict = BooleanFunction::from_evaluator(
        CoordSet{1}, [](std::uint32_t x) { return x & 1u ? -1.0 : 1.0; });
    auto rd = approx_degree(dict, 1.0 / 3.0);
    CHECK(rd.d == 1);
    CHECK(rd.optimal_error == doctest::Approx(0.0).epsilon(1e-8));

    auto rc = approx_degree(BooleanFunction::constant(CoordSet::range(3), -1.0), 0.5);
    CHECK(rc.d == 0);

    auto ro = approx_degree(or_fn(2), 1.0 / 3.0);
    CHECK(ro.d == 2);
    CHECK(ro.errors_by_degree[0] == doctest::Approx(1.0));
    CHECK(ro.errors_by_degree[1] == doctest::Approx(0.5));  // degree-1 LP infeasible at 1/3

    // The primal really is within epsilon pointwise.
    auto p = ro.primal.inverse();
    for (std::uint32_t x = 0; x < 4; ++x)
        CHECK(std::abs(or_fn(2)(x) - p(x)) <= ro.optimal_error + 1e-7);
}

TEST_CASE("dual_polynomial: dictator, constant, OR_2") {
    auto dict = BooleanFunction::from_evaluator(
        CoordSet{1}, [](std::uint32_t x) { return x & 1u ? -1.0 : 1.0; });
    auto w = dual_polynomial(dict, 1, 1.0 / 3.0);
    CHECK(!w.diagnostic);
    CHECK(w.correlation == doctest::Approx(1.0));
    CHECK(w.psi(0) == doctest::Approx(0.5));
    CHECK(w.psi(1) == doctest::Approx(-0.5));

    auto c = BooleanFunction::constant(CoordSet::range(2), 1.0);
    auto wc = dual_polynomial(c, 1, 1.0 / 3.0);
    CHECK(wc.correlation == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(wc.diagnostic.has_value());

    auto wo = dual_polynomial(or_fn(2), 2, 1.0 / 3.0);
    CHECK(wo.correlation > 1.0 / 3.0);
    CHECK(wo.correlation == doctest::Approx(0.5));
    CHECK(approx_degree(or_fn(2), 1.0 / 3.0).d == 2);
}

TEST_CASE("verify_dual: valid witness, bad vanishing, bad norm") {
    auto w = dual_polynomial(or_fn(2), 2, 1.0 / 3.0);
    auto rep = verify_dual(or_fn(2), w, 1.0 / 3.0);
    CHECK(rep.all_pass);

    // A witness with nonzero mass on the empty character fails vanishing at d=1.
    DualWitness skew{BooleanFunction(CoordSet{1}, {0.75, -0.25}), 1, 0.0, std::nullopt};
    auto bad = verify_dual(BooleanFunction::constant(CoordSet{1}, 1.0), skew, 0.0);
    bool vanish_failed = false;
    for (const auto& c : bad.checks)
        if (c.name == "low_order_vanishing") vanish_failed = !c.pass;
    CHECK(vanish_failed);

    // Perturbing one entry breaks the unit norm.
    auto values = w.psi.values();
    values[0] += 1e-3;
    DualWitness perturbed{BooleanFunction(w.psi.domain(), values), w.d, w.correlation,
                          std::nullopt};
    auto rep2 = verify_dual(or_fn(2), perturbed, 1.0 / 3.0);
    bool norm_failed = false;
    for (const auto& c : rep2.checks)
        if (c.name == "one_norm") norm_failed = !c.pass;
    CHECK(norm_failed);
}

TEST_CASE("approx degree of parity equals n; weak duality on random functions") {
    for (int n = 1; n <= 4; ++n) CHECK(approx_degree(parity(n), 1.0 / 3.0).d == n);
    CHECK(approx_degree(or_fn(2), 1.0 / 3.0).d == 2);

    Rng rng(31337);
    const double eps = 1.0 / 3.0;
    for (int trial = 0; trial < 15; ++trial) {
        int n = 1 + static_cast<int>(rng.below(4));
        auto f = random_sign(rng, n);
        auto ad = approx_degree(f, eps);
        int max_d = -1;
        for (int d = 0; d <= n; ++d) {
            auto w = dual_polynomial(f, d, eps);
            if (w.correlation > eps + kApproxDegreeTol) max_d = d;
        }
        CHECK(ad.d == max_d);
    }
}

TEST_CASE("approx degree is monotone in epsilon") {
    Rng rng(555);
    const double grid[] = {0.0, 0.1, 1.0 / 3.0, 0.9};
    for (int trial = 0; trial < 10; ++trial) {
        int n = 1 + static_cast<int>(rng.below(3));
        auto f = random_sign(rng, n);
        int prev = n + 1;
        for (double eps : grid) {
            int d = approx_degree(f, eps).d;
            CHECK(d <= prev);
            prev = d;
        }
    }
}
