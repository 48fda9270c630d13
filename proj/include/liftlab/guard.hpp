#pragma once

#include <cstdlib>
#include <string>

#include "liftlab/errors.hpp"

namespace liftlab {

// Largest b*|J| allowed when enumerating a full domain Lambda^J on one side.
// LIFTLAB_GUARD_BITS overrides the default of 20.
inline int enum_guard_bits() {
    static const int bits = [] {
        if (const char* env = std::getenv("LIFTLAB_GUARD_BITS")) {
            int v = std::atoi(env);
            if (v > 0 && v <= 30) return v;
        }
        return 20;
    }();
    return bits;
}

// Protocol simulation walks every element of both sides on every round,
// so it gets a tighter cap.
inline int protocol_guard_bits() {
    int g = enum_guard_bits();
    return g < 10 ? g : 10;
}

inline void check_enum_guard(int bits_per_side, const std::string& where) {
    if (bits_per_side > enum_guard_bits())
        throw GuardError(where + ": domain of 2^" + std::to_string(bits_per_side) +
                         " exceeds the 2^" + std::to_string(enum_guard_bits()) +
                         " enumeration guard (LIFTLAB_GUARD_BITS)");
}

inline void check_protocol_guard(int bits_per_side, const std::string& where) {
    if (bits_per_side > protocol_guard_bits())
        throw GuardError(where + ": protocol domain of 2^" + std::to_string(bits_per_side) +
                         " per side exceeds the 2^" + std::to_string(protocol_guard_bits()) +
                         " guard");
}

}  // namespace liftlab
