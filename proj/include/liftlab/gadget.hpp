#pragma once

#include <cstdint>
#include <vector>

#include "liftlab/boolfn.hpp"
#include "liftlab/coords.hpp"
#include "liftlab/kernels.hpp"

namespace liftlab {

/// Inner product of two b-bit words over GF(2).
inline int ip(std::uint32_t x, std::uint32_t y, int b) {
    return parity32(x & y & ((1u << b) - 1u));
}

/// One party's input to the composed function: a b-bit word per coordinate.
/// Encoded form: coordinate-major, b bits per word, word k = coordinate k of
/// J in label order.
struct GadgetInput {
    CoordSet coords;
    int b = 1;
    std::vector<std::uint32_t> words;

    static GadgetInput decode(const CoordSet& coords, int b, std::uint64_t encoding);
    std::uint64_t encode() const;
    std::uint32_t word_at(int coord) const;
};

/// Componentwise inner product: bit k of the result is ip(x_k, y_k).
std::uint32_t gadget_map(const GadgetInput& x, const GadgetInput& y);

/// Same on encodings, restricted to the coordinates at the given word
/// positions (bit t of the output corresponds to word_positions[t]).
std::uint32_t gadget_output(std::uint64_t xe, std::uint64_t ye, int b,
                            const std::vector<int>& word_positions);

/// A (multi)set of encoded inputs used as matrix rows or columns. Repeats are
/// allowed; order is significant.
struct Support {
    CoordSet coords;
    int b = 1;
    std::vector<std::uint64_t> elements;

    static Support full(const CoordSet& coords, int b);
    std::size_t size() const { return elements.size(); }
};

struct ComposedMatrix {
    Support rows;
    Support cols;
    std::vector<double> entries;  // row-major

    double at(std::size_t r, std::size_t c) const { return entries[r * cols.size() + c]; }
    std::size_t num_rows() const { return rows.size(); }
    std::size_t num_cols() const { return cols.size(); }
};

/// F(u,v) = f(G^J(x_u, y_v)); f.domain() may be a subset of the support
/// coordinates, in which case only those words are read.
ComposedMatrix compose_matrix(const BooleanFunction& f, const Support& U, const Support& V,
                              kernels::Exec mode = kernels::default_exec());

/// M_S(u,v) = chi_S(G^J(x_u, y_v)); M_empty is all-ones.
ComposedMatrix character_matrix(const CoordSet& S, const Support& U, const Support& V,
                                kernels::Exec mode = kernels::default_exec());

}  // namespace liftlab
