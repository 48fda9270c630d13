#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liftlab/coords.hpp"
#include "liftlab/gadget.hpp"
#include "liftlab/kernels.hpp"

namespace liftlab {

/// Default thresholds of the density machinery, kept configurable for
/// desk-scale experiments.
struct DensityParams {
    double delta_high = 0.99;
    double delta_low = 0.44;
    double delta_sum_min = 1.4;
    double bias_exponent = 1.1;
    /// The bad-value probability floor is 2^{-|I| - conditional_floor_exponent}.
    double conditional_floor_exponent = 1.0;
};

/// A distribution over Lambda^J given by exact integer weights per point.
/// Uniform-over-set is the weight-1 case; marginals and conditionals stay in
/// this class, so every probability is a ratio of two int64 counts.
class SupportDistribution {
  public:
    struct Entry {
        std::uint64_t point;
        long long weight;
    };

    SupportDistribution(CoordSet coords, int b, std::vector<Entry> entries);

    static SupportDistribution uniform(CoordSet coords, int b,
                                       const std::vector<std::uint64_t>& elements);
    static SupportDistribution from_support(const Support& s);
    static SupportDistribution full(CoordSet coords, int b);

    const CoordSet& coords() const { return coords_; }
    int b() const { return b_; }
    const std::vector<Entry>& entries() const { return entries_; }
    long long total() const { return total_; }
    std::size_t num_points() const { return entries_.size(); }
    bool is_uniform_over_support() const;

    std::uint32_t word_at(std::uint64_t point, int coord) const;

    /// Projection onto I (weights combine).
    SupportDistribution marginal(const CoordSet& I) const;
    /// Conditions on X_I = alpha and drops I from the coordinate set.
    std::optional<SupportDistribution> condition_fix(const CoordSet& I,
                                                     std::uint64_t alpha_encoding) const;
    /// Conditions on an arbitrary event; coordinates unchanged.
    std::optional<SupportDistribution> condition(
        const std::function<bool(std::uint64_t)>& event) const;

    long long max_marginal_weight(const CoordSet& I) const;

  private:
    CoordSet coords_;
    int b_;
    std::vector<Entry> entries_;  // sorted by point, weights > 0
    long long total_ = 0;
};

/// H_inf(X_I) = -log2 max_x P(X_I = x); 0 when I is empty.
double min_entropy(const SupportDistribution& x, const CoordSet& I);

/// min over nonempty I of H_inf(X_I) / (b |I|); the exact largest delta for
/// which X is delta-dense. Empty coordinate set reports 1.
double exact_density(const SupportDistribution& x);

struct DensityViolation {
    CoordSet subset;
    std::uint64_t point = 0;
    double probability = 0.0;
};

struct DensityReport {
    double delta = 0.0;
    std::optional<DensityViolation> violation;  // first in lex order

    bool dense() const { return !violation.has_value(); }
};

/// Checks every nonempty I against max P(X_I) <= 2^{-delta b |I|}; exact-count
/// comparison in log2 with equality resolving as dense.
DensityReport is_dense(const SupportDistribution& x, double delta);

struct RestoreResult {
    CoordSet fixed;                // I (empty when already dense)
    std::uint64_t heavy_value = 0; // alpha, encoded over I
    SupportDistribution conditioned;
};

/// Picks the lexicographically first maximal low-entropy subset I and the
/// smallest heavy value alpha, and conditions on X_I = alpha. The result is
/// re-verified delta-dense.
RestoreResult restore_density(const SupportDistribution& x, double delta);

struct BadWitness {
    CoordSet subset;       // I
    std::uint32_t answer = 0;  // z
    std::string clause;        // "probability" or "density"
};

struct BadReport {
    bool bad = false;
    std::optional<BadWitness> witness;
};

/// alpha is delta-bad for Y if some (I, z) makes the conditional marginal
/// non-dense or the gadget-output probability fall below the floor. I = empty
/// is included literally (the conditional clause is then density of Y itself).
BadReport is_bad(const GadgetInput& alpha, const SupportDistribution& y, double delta,
                 const DensityParams& params = {});

struct BiasWitness {
    CoordSet k;
    std::uint64_t beta = 0;
    CoordSet i;
    double coefficient = 0.0;
    double threshold = 0.0;
};

struct BiasReport {
    bool biased = true;
    std::optional<BiasWitness> witness;  // first violation
};

/// eta as a function of K; the fixed-eta overload applies the same bound to
/// every K.
using EtaFn = std::function<double(const CoordSet&)>;

BiasReport is_biased(const GadgetInput& alpha, const SupportDistribution& y,
                     const EtaFn& eta, const DensityParams& params = {});
BiasReport is_biased(const GadgetInput& alpha, const SupportDistribution& y, double eta,
                     const DensityParams& params = {});

struct UniformityReport {
    double max_dev = 0.0;   // max_z |2^{|J|} P(G^J = z) - 1|
    double bound = 0.0;     // sum over nonempty I of 2^{-(dx+dy-1) b |I| / 2}
    double delta_x = 1.0;
    double delta_y = 1.0;
    bool holds = false;     // max_dev <= bound
};

/// Exact gadget-output deviation from uniform against the Hadamard-norm
/// bound; the bound holds for every b with the exact densities plugged in.
UniformityReport uniformity_deviation(const SupportDistribution& x,
                                      const SupportDistribution& y,
                                      kernels::Exec mode = kernels::default_exec());

struct BadFractionReport {
    double fraction = 0.0;       // P_{x ~ X}[x is delta_low-bad for Y]
    long long bad_weight = 0;
    long long total_weight = 0;
    double bound = 0.0;          // 4 n^-2 + sum_K 2^{-delta_Y b|K|} eta_K^-2 n^-2
    bool holds = false;
};

/// Measures the empirical bad fraction and evaluates the union-bound formula
/// at the configured parameters; the formula targets b = Theta(log n), so
/// `holds` is reported, never assumed.
BadFractionReport bad_fraction(const SupportDistribution& x, const SupportDistribution& y,
                               double n_for_bound, const DensityParams& params = {},
                               kernels::Exec mode = kernels::default_exec());

}  // namespace liftlab
