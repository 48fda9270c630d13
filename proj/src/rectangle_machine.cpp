#include "liftlab/rectangle_machine.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/errors.hpp"
#include "liftlab/guard.hpp"
#include "liftlab/kernels.hpp"

namespace liftlab {

double potential(const SupportDistribution& x, const SupportDistribution& y,
                 const CoordSet& j) {
    double v = 2.0 * x.b() * j.size() - min_entropy(x, j) - min_entropy(y, j);
    return v;
}

namespace {

struct TreeState {
    int n;
    int b;
    CoordSet all;                       // [n]
    CoordSet j;                         // unqueried
    std::vector<std::uint64_t> u, v;    // current rectangle
    std::map<int, int> answers;
    std::string transcript;
    PotentialTrace trace;

    SupportDistribution dist_u() const { return SupportDistribution::uniform(all, b, u); }
    SupportDistribution dist_v() const { return SupportDistribution::uniform(all, b, v); }

    double current_potential() const { return potential(dist_u(), dist_v(), j); }

    void record(const std::string& event, int round, double before, double budget,
                double target, CoordSet queried) {
        double now = current_potential();
        double du = 1.0, dv = 1.0;
        if (!j.empty()) {
            du = exact_density(dist_u().marginal(j));
            dv = exact_density(dist_v().marginal(j));
        }
        trace.steps.push_back(PotentialStep{event, round, u.size(), v.size(), now,
                                            now - before, budget, target,
                                            std::move(queried), du, dv});
    }
};

std::uint32_t word_of(std::uint64_t enc, int pos, int b) {
    return static_cast<std::uint32_t>(enc >> (b * pos) & ((std::uint64_t{1} << b) - 1));
}

GadgetInput project_input(std::uint64_t enc, const CoordSet& all, const CoordSet& j, int b) {
    GadgetInput in;
    in.coords = j;
    in.b = b;
    for (int l : j.labels())
        in.words.push_back(word_of(enc, all.position(l), b));
    return in;
}

}  // namespace

TreeRunResult run_density_restoring_tree(const DeterministicProtocol& p,
                                         const AlgorithmParams& params,
                                         const QueryOracle& oracle) {
    const double dh = params.density.delta_high;
    const double dl = params.density.delta_low;
    TreeRunResult result;
    TreeState st;
    st.n = p.n();
    st.b = p.b();
    st.all = CoordSet::range(p.n());
    st.j = st.all;
    const std::uint64_t side = p.side_size();
    st.u.resize(side);
    st.v.resize(side);
    for (std::uint64_t e = 0; e < side; ++e) st.u[e] = st.v[e] = e;

    int step_counter = 0;
    for (int round = 1; round <= p.c(); ++round) {
        const auto& pr = p.round(round - 1);
        auto& split_side = pr.speaker == Speaker::row ? st.u : st.v;
        std::vector<std::uint64_t> part0, part1;
        for (std::uint64_t e : split_side)
            (pr.message(e, st.transcript) ? part1 : part0).push_back(e);
        int a = part1.size() > part0.size() ? 1 : 0;  // argmax, ties -> 0
        double before = st.current_potential();
        double shrink = std::log2(static_cast<double>(split_side.size()) /
                                  static_cast<double>(a ? part1.size() : part0.size()));
        split_side = a ? std::move(part1) : std::move(part0);
        st.transcript += static_cast<char>('0' + a);
        ++step_counter;
        st.record("communicate", round, before, shrink, 0.0, CoordSet{});

        // Density-restoring loop.
        while (!st.j.empty()) {
            SupportDistribution xu = st.dist_u().marginal(st.j);
            SupportDistribution yv = st.dist_v().marginal(st.j);
            bool x_dense = is_dense(xu, dh).dense();
            bool y_dense = is_dense(yv, dh).dense();
            if (x_dense && y_dense) break;

            // Offending side first; X when both fail.
            const bool x_side = !x_dense;
            auto& a_set = x_side ? st.u : st.v;
            const SupportDistribution& other = x_side ? yv : xu;

            // Remove values that are delta_low-bad for the other side.
            before = st.current_potential();
            std::vector<char> keep;
            std::size_t before_size = a_set.size();
            kernels::keep_mask(
                a_set.size(),
                [&](std::size_t i) {
                    GadgetInput alpha = project_input(a_set[i], st.all, st.j, st.b);
                    return !is_bad(alpha, other, dl, params.density).bad;
                },
                keep);
            std::vector<std::uint64_t> filtered;
            filtered.reserve(a_set.size());
            for (std::size_t i = 0; i < a_set.size(); ++i)
                if (keep[i]) filtered.push_back(a_set[i]);
            if (filtered.empty()) {
                result.failure = StructuredFailure{
                    step_counter, std::string("bad-value filter emptied ") +
                                      (x_side ? "U" : "V") + " at round " +
                                      std::to_string(round)};
                result.trace = std::move(st.trace);
                return result;
            }
            a_set = std::move(filtered);
            ++step_counter;
            st.record("filter", round, before,
                      std::log2(static_cast<double>(before_size) /
                                static_cast<double>(a_set.size())),
                      0.0, CoordSet{});

            // Maximal low-entropy subset and its heavy value.
            SupportDistribution ad = (x_side ? st.dist_u() : st.dist_v()).marginal(st.j);
            RestoreResult restore = restore_density(ad, dh);
            if (restore.fixed.empty())
                // The filter alone restored density; re-enter the loop check.
                continue;
            const CoordSet i_set = restore.fixed;
            const std::uint64_t alpha = restore.heavy_value;

            std::uint32_t z = oracle(i_set);
            before = st.current_potential();

            // Fix the heavy side to alpha, condition the other side on the
            // gadget answers.
            std::vector<int> ipos;
            for (int l : i_set.labels()) ipos.push_back(st.all.position(l));
            std::vector<std::uint64_t> fixed_side, cond_side;
            for (std::uint64_t e : a_set) {
                bool match = true;
                for (std::size_t t = 0; t < ipos.size() && match; ++t)
                    match = word_of(e, ipos[t], st.b) ==
                            word_of(alpha, static_cast<int>(t), st.b);
                if (match) fixed_side.push_back(e);
            }
            auto& b_set = x_side ? st.v : st.u;
            for (std::uint64_t e : b_set) {
                bool match = true;
                for (std::size_t t = 0; t < ipos.size() && match; ++t)
                    match = ip(word_of(alpha, static_cast<int>(t), st.b),
                               word_of(e, ipos[t], st.b), st.b) ==
                            static_cast<int>(z >> t & 1u);
                if (match) cond_side.push_back(e);
            }
            if (fixed_side.empty())
                throw std::logic_error("tree: heavy value has empty preimage");
            if (cond_side.empty()) {
                result.failure = StructuredFailure{
                    step_counter,
                    "conditioning on the query answer emptied " +
                        std::string(x_side ? "V" : "U") + " at round " +
                        std::to_string(round) + " (answer has probability zero)"};
                result.trace = std::move(st.trace);
                return result;
            }
            a_set = std::move(fixed_side);
            b_set = std::move(cond_side);
            for (int t = 0; t < i_set.size(); ++t)
                st.answers[i_set.label(t)] = static_cast<int>(z >> t & 1u);
            st.j = st.j.minus(i_set);
            ++step_counter;
            st.record("query", round, before, 0.0, -0.005 * st.b * i_set.size(), i_set);

            // Loop-invariant re-verification (exact at every scale): the
            // restored side is delta_high-dense, the conditioned side is
            // delta_low-dense, and the gadget is constant = z on the new I.
            if (!st.j.empty()) {
                SupportDistribution ra = (x_side ? st.dist_u() : st.dist_v()).marginal(st.j);
                SupportDistribution rb = (x_side ? st.dist_v() : st.dist_u()).marginal(st.j);
                if (!is_dense(ra, dh).dense())
                    throw std::logic_error("tree: restored side lost delta_high density");
                if (!is_dense(rb, dl).dense())
                    throw std::logic_error("tree: conditioned side lost delta_low density");
            }
            for (std::uint64_t xe : st.u)
                for (std::uint64_t ye : st.v)
                    for (std::size_t t = 0; t < ipos.size(); ++t)
                        if (ip(word_of(xe, ipos[t], st.b), word_of(ye, ipos[t], st.b),
                               st.b) != static_cast<int>(z >> t & 1u))
                            throw std::logic_error("tree: gadget not constant on queried I");
        }
    }

    DenseRectangleCertificate cert;
    cert.unqueried = st.j;
    cert.answers = st.answers;
    cert.transcript = st.transcript;
    cert.rows = Support{st.all, st.b, st.u};
    cert.cols = Support{st.all, st.b, st.v};
    cert.delta_high = dh;
    std::string problem = verify_certificate(cert);
    if (!problem.empty())
        throw std::logic_error("tree: certificate failed re-verification: " + problem);
    result.certificate = std::move(cert);
    result.trace = std::move(st.trace);
    return result;
}

std::string verify_certificate(const DenseRectangleCertificate& cert) {
    const CoordSet& all = cert.rows.coords;
    const int b = cert.rows.b;
    // Gadget constancy on the queried coordinates, over every pair.
    for (const auto& [label, bit] : cert.answers) {
        int pos = all.position(label);
        for (std::uint64_t x : cert.rows.elements)
            for (std::uint64_t y : cert.cols.elements) {
                std::uint32_t xw = word_of(x, pos, b);
                std::uint32_t yw = word_of(y, pos, b);
                if (ip(xw, yw, b) != bit)
                    return "gadget output is not constant on coordinate " +
                           std::to_string(label);
            }
    }
    // Queried + unqueried must cover [n].
    CoordSet queried;
    {
        std::vector<int> q;
        for (const auto& [label, bit] : cert.answers) q.push_back(label);
        queried = CoordSet(q);
    }
    if (!(queried.unite(cert.unqueried) == all) ||
        !queried.intersect(cert.unqueried).empty())
        return "queried and unqueried coordinates do not partition [n]";
    // Density of both marginals.
    if (!cert.unqueried.empty()) {
        SupportDistribution xu =
            SupportDistribution::from_support(cert.rows).marginal(cert.unqueried);
        SupportDistribution yv =
            SupportDistribution::from_support(cert.cols).marginal(cert.unqueried);
        if (!is_dense(xu, cert.delta_high).dense()) return "row marginal is not dense";
        if (!is_dense(yv, cert.delta_high).dense()) return "column marginal is not dense";
    }
    return "";
}

}  // namespace liftlab
