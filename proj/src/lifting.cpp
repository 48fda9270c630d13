#include "liftlab/lifting.hpp"

#include <cmath>
#include <memory>

#include "liftlab/errors.hpp"

namespace liftlab {

WalkResult adversarial_walk(const BooleanFunction& f, Measure measure,
                            const TreeRunner& tree_runner) {
    auto current = std::make_shared<BooleanFunction>(f);
    auto answers = std::make_shared<std::map<int, int>>();
    QueryOracle oracle = [current, answers, measure](const CoordSet& i_set) -> std::uint32_t {
        auto [bits, rest] = entropic_fix_chain(*current, measure, i_set.labels());
        std::uint32_t z = 0;
        for (std::size_t t = 0; t < bits.size(); ++t) {
            if (bits[t]) z |= 1u << t;
            (*answers)[i_set.labels()[t]] = bits[t];
        }
        *current = std::move(rest);
        return z;
    };
    WalkResult out{std::map<int, int>{}, f, tree_runner(oracle)};
    out.answers = *answers;
    out.restricted = *current;

    if (out.tree.ok()) {
        int base = measure_value(f, measure);
        int final_measure = measure_value(out.restricted, measure);
        int queried = static_cast<int>(out.answers.size());
        if (final_measure < base - queried)
            throw std::logic_error("adversarial_walk: entropic guarantee violated");
    }
    return out;
}

WalkResult adversarial_walk(const BooleanFunction& f, Measure measure,
                            const DeterministicProtocol& p, const AlgorithmParams& params) {
    return adversarial_walk(f, measure, [&](const QueryOracle& oracle) {
        return run_density_restoring_tree(p, params, oracle);
    });
}

TradeoffReport hybrid_lifting_pipeline(const BooleanFunction& f,
                                       const DeterministicProtocol& p,
                                       const PipelineParams& params) {
    if (f.domain() != CoordSet::range(p.n()))
        throw DomainError("hybrid_lifting_pipeline: f must live on {1..n} for the protocol's n");

    TradeoffReport rep;
    rep.n = p.n();
    rep.b = p.b();
    rep.c = p.c();
    rep.base_degree = degree(f);
    rep.base_bs = f.sign_valued() ? block_sensitivity(f).value : 0;
    rep.query_budget = 200.0 * p.c() / p.b();
    rep.c_threshold_degree = rep.base_degree * p.b() / 300.0;
    rep.c_threshold_bs = rep.base_bs * p.b() / 300.0;
    rep.q_target_degree = std::sqrt(static_cast<double>(rep.base_degree)) * p.b();
    rep.q_target_bs = std::sqrt(static_cast<double>(rep.base_bs)) * p.b();

    WalkResult walk = adversarial_walk(f, params.measure, p, params.algorithm);
    rep.trace = walk.tree.trace;
    rep.answers = walk.answers;
    rep.queried = static_cast<int>(walk.answers.size());
    rep.query_budget_holds = rep.queried <= rep.query_budget;

    if (!walk.tree.ok()) {
        rep.structured_failure = true;
        rep.failure_reason = walk.tree.failure->reason;
        return rep;
    }
    const DenseRectangleCertificate& cert = *walk.tree.certificate;
    rep.unqueried = cert.unqueried;
    rep.transcript = cert.transcript;

    const BooleanFunction& fz = walk.restricted;
    rep.restricted_degree = degree(fz);
    rep.restricted_bs = fz.sign_valued() ? block_sensitivity(fz).value : 0;
    rep.degenerate = rep.restricted_degree == 0;

    if (rep.degenerate) {
        // No hardness content survives a constant restriction.
        rep.dual_correlation = 0.0;
        rep.vacuous = true;
        return rep;
    }

    ApproxDegreeResult ad = approx_degree(fz, params.approx_epsilon);
    rep.approx_degree_d = ad.d;
    DualWitness dual = dual_polynomial(fz, ad.d, params.approx_epsilon);
    rep.dual_correlation = dual.correlation;

    ComposedMatrix big_f = compose_matrix(fz, cert.rows, cert.cols);
    WitnessMatrix psi = build_witness(dual, cert.rows, cert.cols);
    rep.one_norm = one_norm(psi);
    rep.correlation = sign_correlation(big_f, psi);
    rep.spectral = spectral_norm(psi);
    rep.spectral_sqrt_r =
        rep.spectral * std::sqrt(static_cast<double>(cert.rows.size()) *
                                 static_cast<double>(cert.cols.size()));
    rep.spectral_target = std::pow(static_cast<double>(p.n()), -1.1 * ad.d);
    DiscrepancyBound bound = gen_discrepancy_bound(big_f, psi, params.protocol_error);
    rep.vacuous = bound.vacuous;
    rep.discrepancy_bits = bound.bits;
    return rep;
}

}  // namespace liftlab
