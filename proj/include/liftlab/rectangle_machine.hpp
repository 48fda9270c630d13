#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liftlab/density.hpp"
#include "liftlab/protocol.hpp"

namespace liftlab {

struct AlgorithmParams {
    DensityParams density;
};

/// Output of the density-restoring decision tree: a rectangle inside the
/// transcript rectangle R_m, with the gadget constant (= answers) on the
/// queried coordinates and both unqueried marginals delta_high-dense.
struct DenseRectangleCertificate {
    CoordSet unqueried;            // J
    std::map<int, int> answers;    // z, keyed by queried coordinate label
    std::string transcript;        // m
    Support rows;                  // U (encodings over [n])
    Support cols;                  // V
    double delta_high = 0.99;
};

struct StructuredFailure {
    int step = 0;
    std::string reason;
};

struct PotentialStep {
    std::string event;  // "communicate" | "filter" | "query"
    int round = 0;      // 1-based communication round
    std::size_t u_size = 0;
    std::size_t v_size = 0;
    double potential = 0.0;
    double potential_change = 0.0;
    /// For communicate/filter steps: log2 of the shrink ratio of the split
    /// side (the sharp per-step budget; at most 1 for halving splits).
    double step_budget = 0.0;
    /// For query steps: the -0.005 b |I| asymptotic target, reported only.
    double query_target = 0.0;
    CoordSet queried;
    /// Exact densities of the two marginals on the unqueried coordinates
    /// after the step (1.0 when no coordinates remain).
    double u_density = 1.0;
    double v_density = 1.0;
};

struct PotentialTrace {
    std::vector<PotentialStep> steps;
};

/// Answers z_I for a queried coordinate set I, bits in label order of I.
using QueryOracle = std::function<std::uint32_t(const CoordSet&)>;

struct TreeRunResult {
    std::optional<DenseRectangleCertificate> certificate;
    std::optional<StructuredFailure> failure;
    PotentialTrace trace;

    bool ok() const { return certificate.has_value(); }
};

/// Delta(U, V, J) = 2 b |J| - H_inf(X_J) - H_inf(Y_J); nonnegative.
double potential(const SupportDistribution& x, const SupportDistribution& y,
                 const CoordSet& j);

/// The density-restoring decision tree walked along protocol p: per round the
/// split keeps the larger half (ties -> 0); while a marginal is below
/// delta_high density, bad values are removed from the offending side, a
/// maximal low-entropy subset is queried, and both sides are conditioned.
/// Fails structurally (never silently) when a side empties.
TreeRunResult run_density_restoring_tree(const DeterministicProtocol& p,
                                         const AlgorithmParams& params,
                                         const QueryOracle& oracle);

/// Re-verifies a certificate from scratch: gadget constancy on the queried
/// coordinates and delta_high density of both unqueried marginals.
/// Returns an empty string when sound, else the first failure.
std::string verify_certificate(const DenseRectangleCertificate& cert);

}  // namespace liftlab
