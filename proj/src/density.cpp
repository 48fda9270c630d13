#include "liftlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "liftlab/errors.hpp"
#include "liftlab/guard.hpp"

namespace liftlab {

namespace {

// Slack for log2-count comparisons; real cases are either exactly equal
// (dyadic) or far beyond double rounding.
constexpr double kLogSlack = 1e-12;

// max P > 2^{-delta b |I|}  <=>  log2(w) - log2(t) > -delta b |I| (+slack).
bool exceeds_threshold(long long weight, long long total, double delta, int b, int card) {
    return std::log2(static_cast<double>(weight)) - std::log2(static_cast<double>(total)) >
           -delta * b * card + kLogSlack;
}

}  // namespace

SupportDistribution::SupportDistribution(CoordSet coords, int b, std::vector<Entry> entries)
    : coords_(std::move(coords)), b_(b), entries_(std::move(entries)) {
    if (b_ < 1 || b_ > 30) throw DomainError("SupportDistribution: bad word size");
    if (entries_.empty()) throw DomainError("SupportDistribution: empty support");
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b2) { return a.point < b2.point; });
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].weight <= 0)
            throw DomainError("SupportDistribution: nonpositive weight");
        if (i && entries_[i].point == entries_[i - 1].point)
            throw DomainError("SupportDistribution: duplicate point");
        total_ += entries_[i].weight;
    }
}

SupportDistribution SupportDistribution::uniform(CoordSet coords, int b,
                                                 const std::vector<std::uint64_t>& elements) {
    std::map<std::uint64_t, long long> acc;
    for (std::uint64_t e : elements) ++acc[e];
    std::vector<Entry> entries;
    entries.reserve(acc.size());
    for (auto& [p, w] : acc) entries.push_back({p, w});
    return SupportDistribution(std::move(coords), b, std::move(entries));
}

SupportDistribution SupportDistribution::from_support(const Support& s) {
    return uniform(s.coords, s.b, s.elements);
}

SupportDistribution SupportDistribution::full(CoordSet coords, int b) {
    check_enum_guard(b * coords.size(), "SupportDistribution::full");
    std::vector<Entry> entries(std::size_t{1} << (b * coords.size()));
    for (std::uint64_t e = 0; e < entries.size(); ++e) entries[e] = {e, 1};
    return SupportDistribution(std::move(coords), b, std::move(entries));
}

bool SupportDistribution::is_uniform_over_support() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [&](const Entry& e) { return e.weight == entries_[0].weight; });
}

std::uint32_t SupportDistribution::word_at(std::uint64_t point, int coord) const {
    int p = coords_.position(coord);
    if (p < 0) throw DomainError("SupportDistribution: coordinate not present");
    return static_cast<std::uint32_t>(point >> (b_ * p) & ((std::uint64_t{1} << b_) - 1));
}

SupportDistribution SupportDistribution::marginal(const CoordSet& I) const {
    if (!I.subset_of(coords_))
        throw DomainError("marginal: " + I.to_string() + " not within " + coords_.to_string());
    std::vector<int> pos(static_cast<std::size_t>(I.size()));
    for (int t = 0; t < I.size(); ++t)
        pos[static_cast<std::size_t>(t)] = coords_.position(I.label(t));
    const std::uint64_t word = (std::uint64_t{1} << b_) - 1;
    std::map<std::uint64_t, long long> acc;
    for (const Entry& e : entries_) {
        std::uint64_t proj = 0;
        for (int t = 0; t < I.size(); ++t)
            proj |= (e.point >> (b_ * pos[static_cast<std::size_t>(t)]) & word)
                    << (b_ * t);
        acc[proj] += e.weight;
    }
    std::vector<Entry> entries;
    entries.reserve(acc.size());
    for (auto& [p, w] : acc) entries.push_back({p, w});
    return SupportDistribution(I, b_, std::move(entries));
}

std::optional<SupportDistribution> SupportDistribution::condition_fix(
    const CoordSet& I, std::uint64_t alpha_encoding) const {
    const CoordSet rest = coords_.minus(I);
    std::vector<int> ipos(static_cast<std::size_t>(I.size()));
    for (int t = 0; t < I.size(); ++t)
        ipos[static_cast<std::size_t>(t)] = coords_.position(I.label(t));
    std::vector<int> rpos(static_cast<std::size_t>(rest.size()));
    for (int t = 0; t < rest.size(); ++t)
        rpos[static_cast<std::size_t>(t)] = coords_.position(rest.label(t));
    const std::uint64_t word = (std::uint64_t{1} << b_) - 1;

    std::map<std::uint64_t, long long> acc;
    for (const Entry& e : entries_) {
        bool match = true;
        for (int t = 0; t < I.size() && match; ++t)
            match = (e.point >> (b_ * ipos[static_cast<std::size_t>(t)]) & word) ==
                    (alpha_encoding >> (b_ * t) & word);
        if (!match) continue;
        std::uint64_t proj = 0;
        for (int t = 0; t < rest.size(); ++t)
            proj |= (e.point >> (b_ * rpos[static_cast<std::size_t>(t)]) & word)
                    << (b_ * t);
        acc[proj] += e.weight;
    }
    if (acc.empty()) return std::nullopt;
    std::vector<Entry> entries;
    entries.reserve(acc.size());
    for (auto& [p, w] : acc) entries.push_back({p, w});
    return SupportDistribution(rest, b_, std::move(entries));
}

std::optional<SupportDistribution> SupportDistribution::condition(
    const std::function<bool(std::uint64_t)>& event) const {
    std::vector<Entry> entries;
    for (const Entry& e : entries_)
        if (event(e.point)) entries.push_back(e);
    if (entries.empty()) return std::nullopt;
    return SupportDistribution(coords_, b_, std::move(entries));
}

long long SupportDistribution::max_marginal_weight(const CoordSet& I) const {
    if (I.empty()) return total_;
    const SupportDistribution m = marginal(I);
    long long best = 0;
    for (const Entry& e : m.entries()) best = std::max(best, e.weight);
    return best;
}

double min_entropy(const SupportDistribution& x, const CoordSet& I) {
    if (!I.subset_of(x.coords()))
        throw DomainError("min_entropy: I not within the coordinate set");
    long long w = x.max_marginal_weight(I);
    return std::log2(static_cast<double>(x.total())) - std::log2(static_cast<double>(w));
}

double exact_density(const SupportDistribution& x) {
    double best = 1.0;
    for (std::uint32_t mask : x.coords().subsets_lex(/*include_empty=*/false)) {
        CoordSet I = x.coords().from_mask(mask);
        double ratio = min_entropy(x, I) / (x.b() * I.size());
        best = std::min(best, ratio);
    }
    return best;
}

DensityReport is_dense(const SupportDistribution& x, double delta) {
    if (delta <= 0.0 || delta > 1.0) throw DomainError("is_dense: delta must be in (0,1]");
    DensityReport rep;
    rep.delta = delta;
    for (std::uint32_t mask : x.coords().subsets_lex(/*include_empty=*/false)) {
        CoordSet I = x.coords().from_mask(mask);
        SupportDistribution m = x.marginal(I);
        for (const auto& e : m.entries()) {
            if (exceeds_threshold(e.weight, m.total(), delta, x.b(), I.size())) {
                rep.violation = DensityViolation{
                    I, e.point,
                    static_cast<double>(e.weight) / static_cast<double>(m.total())};
                return rep;
            }
        }
    }
    return rep;
}

RestoreResult restore_density(const SupportDistribution& x, double delta) {
    // All violating subsets, in lex order.
    std::vector<std::uint32_t> violating;
    const auto subsets = x.coords().subsets_lex(/*include_empty=*/false);
    for (std::uint32_t mask : subsets) {
        CoordSet I = x.coords().from_mask(mask);
        long long w = x.max_marginal_weight(I);
        if (exceeds_threshold(w, x.total(), delta, x.b(), I.size())) violating.push_back(mask);
    }
    if (violating.empty()) return RestoreResult{CoordSet{}, 0, x};

    std::uint32_t chosen = 0;
    bool found = false;
    for (std::uint32_t mask : violating) {
        bool maximal = true;
        for (std::uint32_t other : violating)
            if (other != mask && (mask & other) == mask) {
                maximal = false;
                break;
            }
        if (maximal) {
            chosen = mask;
            found = true;
            break;  // subsets_lex order makes this the lexicographically first
        }
    }
    if (!found) throw std::logic_error("restore_density: no maximal violating subset");

    CoordSet I = x.coords().from_mask(chosen);
    SupportDistribution m = x.marginal(I);
    std::uint64_t alpha = 0;
    bool have_alpha = false;
    for (const auto& e : m.entries()) {  // entries sorted: smallest encoding first
        if (exceeds_threshold(e.weight, m.total(), delta, x.b(), I.size())) {
            alpha = e.point;
            have_alpha = true;
            break;
        }
    }
    if (!have_alpha) throw std::logic_error("restore_density: violating set has no heavy value");

    auto cond = x.condition_fix(I, alpha);
    if (!cond) throw std::logic_error("restore_density: conditioning emptied the support");
    if (!cond->coords().empty() && !is_dense(*cond, delta).dense())
        throw std::logic_error("restore_density: conditioned distribution is not dense");
    return RestoreResult{std::move(I), alpha, std::move(*cond)};
}

BadReport is_bad(const GadgetInput& alpha, const SupportDistribution& y, double delta,
                 const DensityParams& params) {
    if (!alpha.coords.subset_of(y.coords()) || alpha.b != y.b())
        throw DomainError("is_bad: alpha and Y must share coordinates and word size");
    const CoordSet& J = alpha.coords;
    BadReport rep;

    const bool integral_floor =
        params.conditional_floor_exponent == std::floor(params.conditional_floor_exponent);
    for (std::uint32_t mask : J.subsets_lex(/*include_empty=*/true)) {
        CoordSet I = J.from_mask(mask);
        const int ni = I.size();
        std::vector<std::uint32_t> alpha_words(static_cast<std::size_t>(ni));
        for (int t = 0; t < ni; ++t)
            alpha_words[static_cast<std::size_t>(t)] = alpha.word_at(I.label(t));
        std::vector<int> ypos(static_cast<std::size_t>(ni));
        for (int t = 0; t < ni; ++t)
            ypos[static_cast<std::size_t>(t)] = y.coords().position(I.label(t));
        const std::uint64_t word = (std::uint64_t{1} << y.b()) - 1;

        for (std::uint32_t z = 0; z < (1u << ni); ++z) {
            long long weight = 0;
            std::vector<SupportDistribution::Entry> kept;
            for (const auto& e : y.entries()) {
                bool match = true;
                for (int t = 0; t < ni && match; ++t) {
                    std::uint32_t yw = static_cast<std::uint32_t>(
                        e.point >> (y.b() * ypos[static_cast<std::size_t>(t)]) & word);
                    match = ip(alpha_words[static_cast<std::size_t>(t)], yw, y.b()) ==
                            static_cast<int>(z >> t & 1u);
                }
                if (match) {
                    weight += e.weight;
                    kept.push_back(e);
                }
            }
            // Probability clause: P(G^I(alpha, Y_I) = z) < 2^{-|I| - floor}.
            bool low = false;
            if (weight == 0) {
                low = true;
            } else if (integral_floor) {
                int shift = ni + static_cast<int>(params.conditional_floor_exponent);
                low = (weight << shift) < y.total();
            } else {
                low = std::log2(static_cast<double>(weight)) -
                          std::log2(static_cast<double>(y.total())) <
                      -(ni + params.conditional_floor_exponent) - kLogSlack;
            }
            if (low) {
                rep.bad = true;
                rep.witness = BadWitness{I, z, "probability"};
                return rep;
            }
            // Conditional clause: (Y_{J \ I} | event) must stay delta-dense.
            CoordSet rest = J.minus(I);
            if (!rest.empty()) {
                SupportDistribution cond(y.coords(), y.b(), kept);
                if (!is_dense(cond.marginal(rest), delta).dense()) {
                    rep.bad = true;
                    rep.witness = BadWitness{I, z, "density"};
                    return rep;
                }
            }
        }
    }
    return rep;
}

namespace {

// hat{phi}_{I,K,beta}(alpha_I) over the b|I|-bit cube with 2^{-dim}
// normalization, phi(gamma) = P(Y_{I u K} = (gamma, beta)).
double biased_coefficient(const SupportDistribution& y, const CoordSet& I, const CoordSet& K,
                          std::uint64_t beta, std::uint64_t alpha_i) {
    const CoordSet ik = I.unite(K);
    const SupportDistribution m = y.marginal(ik);
    const std::uint64_t word = (std::uint64_t{1} << y.b()) - 1;
    // Split each marginal point into its I part (in I label order) and K part.
    std::vector<int> gpos, kpos;
    for (int t = 0; t < I.size(); ++t) gpos.push_back(ik.position(I.label(t)));
    for (int t = 0; t < K.size(); ++t) kpos.push_back(ik.position(K.label(t)));
    double acc = 0.0;
    for (const auto& e : m.entries()) {
        std::uint64_t kpart = 0, gpart = 0;
        for (std::size_t t = 0; t < kpos.size(); ++t)
            kpart |= (e.point >> (y.b() * kpos[t]) & word) << (y.b() * t);
        if (kpart != beta) continue;
        for (std::size_t t = 0; t < gpos.size(); ++t)
            gpart |= (e.point >> (y.b() * gpos[t]) & word) << (y.b() * t);
        double p = static_cast<double>(e.weight) / static_cast<double>(m.total());
        acc += parity64(gpart & alpha_i) ? -p : p;
    }
    return std::ldexp(acc, -y.b() * I.size());
}

}  // namespace

BiasReport is_biased(const GadgetInput& alpha, const SupportDistribution& y,
                     const EtaFn& eta, const DensityParams& params) {
    if (!alpha.coords.subset_of(y.coords()) || alpha.b != y.b())
        throw DomainError("is_biased: alpha and Y must share coordinates and word size");
    const CoordSet& J = alpha.coords;
    BiasReport rep;
    for (std::uint32_t kmask : J.subsets_lex(/*include_empty=*/true)) {
        CoordSet K = J.from_mask(kmask);
        CoordSet rest = J.minus(K);
        if (rest.empty()) continue;  // no nonempty I available: vacuous for this K
        const double eta_k = eta(K);
        const std::uint64_t beta_count = std::uint64_t{1} << (y.b() * K.size());
        for (std::uint64_t beta = 0; beta < beta_count; ++beta) {
            for (std::uint32_t imask : rest.subsets_lex(/*include_empty=*/false)) {
                CoordSet I = rest.from_mask(imask);
                std::uint64_t alpha_i = 0;
                for (int t = 0; t < I.size(); ++t)
                    alpha_i |= std::uint64_t{alpha.word_at(I.label(t))} << (y.b() * t);
                double coeff = biased_coefficient(y, I, K, beta, alpha_i);
                double threshold =
                    eta_k * std::exp2(-params.bias_exponent * y.b() * I.size());
                if (std::abs(coeff) > threshold + 1e-15) {
                    rep.biased = false;
                    rep.witness = BiasWitness{K, beta, I, coeff, threshold};
                    return rep;
                }
            }
        }
    }
    return rep;
}

BiasReport is_biased(const GadgetInput& alpha, const SupportDistribution& y, double eta,
                     const DensityParams& params) {
    return is_biased(alpha, y, [eta](const CoordSet&) { return eta; }, params);
}

UniformityReport uniformity_deviation(const SupportDistribution& x,
                                      const SupportDistribution& y, kernels::Exec mode) {
    if (x.coords() != y.coords() || x.b() != y.b())
        throw DomainError("uniformity_deviation: X and Y must share coordinates and word size");
    UniformityReport rep;
    const int nj = x.coords().size();
    if (nj == 0) {
        rep.max_dev = 0.0;
        rep.bound = 0.0;
        rep.holds = true;
        return rep;
    }
    std::vector<int> pos(static_cast<std::size_t>(nj));
    for (int t = 0; t < nj; ++t) pos[static_cast<std::size_t>(t)] = t;

    const auto& xe = x.entries();
    const auto& ye = y.entries();
    std::vector<long long> counts;
    kernels::pair_histogram(
        xe.size(), ye.size(), std::size_t{1} << nj,
        [&](std::size_t r, std::size_t c) {
            return gadget_output(xe[r].point, ye[c].point, x.b(), pos);
        },
        [&](std::size_t r, std::size_t c) { return xe[r].weight * ye[c].weight; }, counts,
        mode);

    const long long total = x.total() * y.total();
    double max_dev = 0.0;
    for (long long cnt : counts) {
        __int128 diff = static_cast<__int128>(cnt) << nj;
        diff -= total;
        double dev = std::abs(static_cast<double>(diff)) / static_cast<double>(total);
        max_dev = std::max(max_dev, dev);
    }
    rep.max_dev = max_dev;
    rep.delta_x = exact_density(x);
    rep.delta_y = exact_density(y);
    double bound = 0.0;
    for (std::uint32_t mask : x.coords().subsets_lex(/*include_empty=*/false)) {
        int card = std::popcount(mask);
        bound += std::exp2(-(rep.delta_x + rep.delta_y - 1.0) * x.b() * card / 2.0);
    }
    rep.bound = bound;
    rep.holds = rep.max_dev <= rep.bound + 1e-12;
    return rep;
}

BadFractionReport bad_fraction(const SupportDistribution& x, const SupportDistribution& y,
                               double n_for_bound, const DensityParams& params,
                               kernels::Exec mode) {
    if (x.coords() != y.coords() || x.b() != y.b())
        throw DomainError("bad_fraction: X and Y must share coordinates and word size");
    BadFractionReport rep;
    const auto& entries = x.entries();
    std::vector<char> bad;
    kernels::keep_mask(
        entries.size(),
        [&](std::size_t i) {
            GadgetInput a = GadgetInput::decode(x.coords(), x.b(), entries[i].point);
            return is_bad(a, y, params.delta_low, params).bad;
        },
        bad, mode);
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (bad[i]) rep.bad_weight += entries[i].weight;
    rep.total_weight = x.total();
    rep.fraction = static_cast<double>(rep.bad_weight) / static_cast<double>(rep.total_weight);

    const double n2 = n_for_bound * n_for_bound;
    const double dy = exact_density(y);
    double bound = 4.0 / n2;
    for (std::uint32_t mask : x.coords().subsets_lex(/*include_empty=*/false)) {
        int card = std::popcount(mask);
        double eta_k = std::exp2(-dy * x.b() * card / 2.2);
        bound += std::exp2(-dy * x.b() * card) / (eta_k * eta_k) / n2;
    }
    rep.bound = bound;
    rep.holds = rep.fraction <= rep.bound;
    return rep;
}

}  // namespace liftlab
