#include "liftlab/gadget.hpp"

#include <string>

#include "liftlab/errors.hpp"
#include "liftlab/guard.hpp"

namespace liftlab {

namespace {

constexpr std::size_t kMaxMatrixEntries = std::size_t{1} << 24;

void check_matrix_size(const Support& u, const Support& v, const char* where) {
    if (u.coords != v.coords)
        throw DomainError(std::string(where) + ": row/col coordinate sets differ");
    if (u.b != v.b) throw DomainError(std::string(where) + ": row/col word sizes differ");
    if (u.size() * v.size() > kMaxMatrixEntries)
        throw GuardError(std::string(where) + ": matrix would exceed 2^24 entries");
}

}  // namespace

GadgetInput GadgetInput::decode(const CoordSet& coords, int b, std::uint64_t encoding) {
    GadgetInput in;
    in.coords = coords;
    in.b = b;
    in.words.resize(static_cast<std::size_t>(coords.size()));
    const std::uint64_t mask = (std::uint64_t{1} << b) - 1;
    for (int k = 0; k < coords.size(); ++k)
        in.words[static_cast<std::size_t>(k)] =
            static_cast<std::uint32_t>(encoding >> (b * k) & mask);
    return in;
}

std::uint64_t GadgetInput::encode() const {
    std::uint64_t e = 0;
    for (int k = 0; k < coords.size(); ++k) {
        std::uint32_t w = words[static_cast<std::size_t>(k)];
        if (w >= (1u << b)) throw DomainError("GadgetInput: word exceeds 2^b");
        e |= std::uint64_t{w} << (b * k);
    }
    return e;
}

std::uint32_t GadgetInput::word_at(int coord) const {
    int p = coords.position(coord);
    if (p < 0) throw DomainError("GadgetInput: coordinate not present");
    return words[static_cast<std::size_t>(p)];
}

std::uint32_t gadget_map(const GadgetInput& x, const GadgetInput& y) {
    if (x.coords != y.coords || x.b != y.b)
        throw DomainError("gadget_map: mismatched coordinate sets");
    std::uint32_t z = 0;
    for (std::size_t k = 0; k < x.words.size(); ++k)
        if (ip(x.words[k], y.words[k], x.b)) z |= 1u << k;
    return z;
}

std::uint32_t gadget_output(std::uint64_t xe, std::uint64_t ye, int b,
                            const std::vector<int>& word_positions) {
    const std::uint64_t and_bits = xe & ye;
    const std::uint64_t mask = (std::uint64_t{1} << b) - 1;
    std::uint32_t z = 0;
    for (std::size_t t = 0; t < word_positions.size(); ++t)
        if (parity64(and_bits >> (b * word_positions[t]) & mask)) z |= 1u << t;
    return z;
}

Support Support::full(const CoordSet& coords, int b) {
    check_enum_guard(b * coords.size(), "Support::full");
    Support s;
    s.coords = coords;
    s.b = b;
    const std::uint64_t n = std::uint64_t{1} << (b * coords.size());
    s.elements.resize(n);
    for (std::uint64_t e = 0; e < n; ++e) s.elements[e] = e;
    return s;
}

ComposedMatrix compose_matrix(const BooleanFunction& f, const Support& U, const Support& V,
                              kernels::Exec mode) {
    check_matrix_size(U, V, "compose_matrix");
    if (!f.domain().subset_of(U.coords))
        throw DomainError("compose_matrix: f domain " + f.domain().to_string() +
                          " not within support coordinates " + U.coords.to_string());
    std::vector<int> pos(static_cast<std::size_t>(f.domain().size()));
    for (int t = 0; t < f.domain().size(); ++t)
        pos[static_cast<std::size_t>(t)] = U.coords.position(f.domain().label(t));

    ComposedMatrix m{U, V, std::vector<double>(U.size() * V.size())};
    const std::size_t ncols = V.size();
    const int b = U.b;
    kernels::fill(
        m.entries.data(), m.entries.size(),
        [&](std::size_t idx) {
            std::uint64_t xe = U.elements[idx / ncols];
            std::uint64_t ye = V.elements[idx % ncols];
            return f(gadget_output(xe, ye, b, pos));
        },
        mode);
    return m;
}

ComposedMatrix character_matrix(const CoordSet& S, const Support& U, const Support& V,
                                kernels::Exec mode) {
    check_matrix_size(U, V, "character_matrix");
    if (!S.subset_of(U.coords))
        throw DomainError("character_matrix: S not within support coordinates");
    // chi_S(G^J(x,y)) = (-1)^{popcount(x & y & expanded S)}.
    std::uint64_t smask = 0;
    const std::uint64_t word = (std::uint64_t{1} << U.b) - 1;
    for (int l : S.labels()) smask |= word << (U.b * U.coords.position(l));

    ComposedMatrix m{U, V, std::vector<double>(U.size() * V.size())};
    const std::size_t ncols = V.size();
    kernels::fill(
        m.entries.data(), m.entries.size(),
        [&](std::size_t idx) {
            std::uint64_t xe = U.elements[idx / ncols];
            std::uint64_t ye = V.elements[idx % ncols];
            return parity64(xe & ye & smask) ? -1.0 : 1.0;
        },
        mode);
    return m;
}

}  // namespace liftlab
