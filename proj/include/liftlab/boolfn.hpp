#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "liftlab/coords.hpp"

namespace liftlab {

/// Zero threshold for Fourier coefficients. Truth tables are exact +-1, so
/// coefficients are dyadic rationals and this is safe up to |J| = 20.
inline constexpr double kFourierZeroTol = 1e-9;

/// A real-valued function on {0,1}^J stored as a table of 2^{|J|} entries.
/// Point encoding: bit k of the index is the k-th coordinate of J in label
/// order.
class BooleanFunction {
  public:
    BooleanFunction(CoordSet domain, std::vector<double> values);

    static BooleanFunction constant(CoordSet domain, double value);
    static BooleanFunction from_evaluator(CoordSet domain,
                                          const std::function<double(std::uint32_t)>& eval);

    const CoordSet& domain() const { return domain_; }
    const std::vector<double>& values() const { return values_; }
    double operator()(std::uint32_t point) const { return values_[point]; }
    std::uint32_t table_size() const { return static_cast<std::uint32_t>(values_.size()); }

    /// Every entry is exactly -1 or +1.
    bool sign_valued() const;

    bool operator==(const BooleanFunction& other) const = default;

  private:
    CoordSet domain_;
    std::vector<double> values_;
};

/// Fourier coefficients indexed by subset position mask, normalized so that
/// coeff(S) = 2^{-|J|} * sum_x f(x) * chi_S(x).
struct FourierTable {
    CoordSet domain;
    std::vector<double> coeffs;

    double coeff(std::uint32_t subset_mask) const { return coeffs[subset_mask]; }
    /// Reconstructs the function table (exact inverse transform).
    BooleanFunction inverse() const;
};

FourierTable fourier(const BooleanFunction& f);

/// Largest |S| with |coeff(S)| above the zero threshold; 0 for constants.
int degree(const FourierTable& t);
int degree(const BooleanFunction& f);

struct BlockSensitivityResult {
    int value = 0;
    std::uint32_t witness_point = 0;
    std::vector<std::uint32_t> witness_blocks;  // disjoint position masks
};

/// Exhaustive bs(f) = max_x bs(f,x); witness blocks each flip f at the
/// witness point. Requires a sign-valued table.
BlockSensitivityResult block_sensitivity(const BooleanFunction& f);

/// Keeps K and fixes the coordinates of J \ K; bit t of fixed_values is the
/// t-th coordinate of J \ K in label order.
struct Restriction {
    CoordSet kept;
    std::uint32_t fixed_values = 0;
};

BooleanFunction restricted(const BooleanFunction& f, const Restriction& r);

enum class Measure { degree, block_sensitivity };

int measure_value(const BooleanFunction& f, Measure m);

/// Fixes coordinate i to the value that preserves the measure best
/// (ties -> 0). The winning branch loses at most 1.
std::pair<int, BooleanFunction> entropic_fix(const BooleanFunction& f, Measure m, int coord);

/// Iterates entropic_fix over `order`; returns the chosen bits (aligned with
/// `order`) and the final restriction.
std::pair<std::vector<int>, BooleanFunction> entropic_fix_chain(const BooleanFunction& f,
                                                                Measure m,
                                                                const std::vector<int>& order);

}  // namespace liftlab
