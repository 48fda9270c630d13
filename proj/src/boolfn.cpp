#include "liftlab/boolfn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liftlab/errors.hpp"
#include "liftlab/guard.hpp"

namespace liftlab {

BooleanFunction::BooleanFunction(CoordSet domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
    if (domain_.size() > 20) throw GuardError("BooleanFunction: |J| > 20");
    if (values_.size() != (std::size_t{1} << domain_.size()))
        throw DomainError("BooleanFunction: table length must be 2^{|J|}");
}

BooleanFunction BooleanFunction::constant(CoordSet domain, double value) {
    std::vector<double> v(std::size_t{1} << domain.size(), value);
    return BooleanFunction(std::move(domain), std::move(v));
}

BooleanFunction BooleanFunction::from_evaluator(
    CoordSet domain, const std::function<double(std::uint32_t)>& eval) {
    std::vector<double> v(std::size_t{1} << domain.size());
    for (std::uint32_t x = 0; x < v.size(); ++x) v[x] = eval(x);
    return BooleanFunction(std::move(domain), std::move(v));
}

bool BooleanFunction::sign_valued() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return v == 1.0 || v == -1.0; });
}

namespace {

// In-place Walsh-Hadamard butterfly: out[S] = sum_x in[x] * (-1)^{popcount(S&x)}.
void wht(std::vector<double>& v) {
    const std::size_t n = v.size();
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t i = 0; i < n; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                double a = v[j];
                double b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
        }
    }
}

}  // namespace

FourierTable fourier(const BooleanFunction& f) {
    std::vector<double> c = f.values();
    wht(c);
    const double scale = 1.0 / static_cast<double>(f.table_size());
    for (double& x : c) x *= scale;
    return FourierTable{f.domain(), std::move(c)};
}

BooleanFunction FourierTable::inverse() const {
    std::vector<double> v = coeffs;
    wht(v);
    return BooleanFunction(domain, std::move(v));
}

int degree(const FourierTable& t) {
    int d = 0;
    for (std::uint32_t s = 0; s < t.coeffs.size(); ++s)
        if (std::abs(t.coeffs[s]) > kFourierZeroTol)
            d = std::max(d, std::popcount(s));
    return d;
}

int degree(const BooleanFunction& f) { return degree(fourier(f)); }

namespace {

// Branch and bound for a maximum disjoint packing of sensitive blocks,
// blocks visited in size order.
void pack(const std::vector<std::uint32_t>& blocks, std::size_t idx, std::uint32_t used,
          std::vector<std::uint32_t>& current, std::vector<std::uint32_t>& best) {
    if (current.size() > best.size()) best = current;
    for (std::size_t k = idx; k < blocks.size(); ++k) {
        if (current.size() + (blocks.size() - k) <= best.size()) return;
        if (blocks[k] & used) continue;
        current.push_back(blocks[k]);
        pack(blocks, k + 1, used | blocks[k], current, best);
        current.pop_back();
    }
}

}  // namespace

BlockSensitivityResult block_sensitivity(const BooleanFunction& f) {
    if (!f.sign_valued())
        throw DomainError("block_sensitivity: table must be sign-valued");
    const std::uint32_t n = f.table_size();
    BlockSensitivityResult out;
    std::vector<std::uint32_t> blocks;
    for (std::uint32_t x = 0; x < n; ++x) {
        blocks.clear();
        for (std::uint32_t b = 1; b < n; ++b)
            if (f(x ^ b) != f(x)) blocks.push_back(b);
        std::stable_sort(blocks.begin(), blocks.end(),
                         [](std::uint32_t a, std::uint32_t b) {
                             return std::popcount(a) < std::popcount(b);
                         });
        std::vector<std::uint32_t> current, best;
        pack(blocks, 0, 0, current, best);
        if (static_cast<int>(best.size()) > out.value) {
            out.value = static_cast<int>(best.size());
            out.witness_point = x;
            out.witness_blocks = best;
        }
    }
    return out;
}

BooleanFunction restricted(const BooleanFunction& f, const Restriction& r) {
    const CoordSet& J = f.domain();
    if (!r.kept.subset_of(J))
        throw DomainError("restricted: kept coordinates " + r.kept.to_string() +
                          " not contained in domain " + J.to_string());
    const CoordSet fixed = J.minus(r.kept);
    // Positions in J of kept and fixed coordinates.
    std::uint32_t base = 0;
    for (int t = 0; t < fixed.size(); ++t)
        if (r.fixed_values >> t & 1u) base |= 1u << J.position(fixed.label(t));
    std::vector<int> kept_pos(static_cast<std::size_t>(r.kept.size()));
    for (int t = 0; t < r.kept.size(); ++t)
        kept_pos[static_cast<std::size_t>(t)] = J.position(r.kept.label(t));

    std::vector<double> v(std::size_t{1} << r.kept.size());
    for (std::uint32_t x = 0; x < v.size(); ++x) {
        std::uint32_t glued = base;
        for (int t = 0; t < r.kept.size(); ++t)
            if (x >> t & 1u) glued |= 1u << kept_pos[static_cast<std::size_t>(t)];
        v[x] = f(glued);
    }
    return BooleanFunction(r.kept, std::move(v));
}

int measure_value(const BooleanFunction& f, Measure m) {
    switch (m) {
        case Measure::degree: return degree(f);
        case Measure::block_sensitivity: return block_sensitivity(f).value;
    }
    throw DomainError("measure_value: unknown measure");
}

std::pair<int, BooleanFunction> entropic_fix(const BooleanFunction& f, Measure m, int coord) {
    if (!f.domain().contains(coord))
        throw DomainError("entropic_fix: coordinate " + std::to_string(coord) +
                          " not in domain " + f.domain().to_string());
    const CoordSet kept = f.domain().minus(CoordSet{coord});
    BooleanFunction f0 = restricted(f, Restriction{kept, 0});
    BooleanFunction f1 = restricted(f, Restriction{kept, 1});
    int m0 = measure_value(f0, m);
    int m1 = measure_value(f1, m);
    if (m1 > m0) return {1, std::move(f1)};
    return {0, std::move(f0)};
}

std::pair<std::vector<int>, BooleanFunction> entropic_fix_chain(
    const BooleanFunction& f, Measure m, const std::vector<int>& order) {
    std::vector<int> seen = order;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw DomainError("entropic_fix_chain: duplicate coordinate in order");
    std::vector<int> bits;
    BooleanFunction g = f;
    for (int i : order) {
        auto [z, next] = entropic_fix(g, m, i);
        bits.push_back(z);
        g = std::move(next);
    }
    return {std::move(bits), std::move(g)};
}

}  // namespace liftlab
