#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "liftlab/approxdeg.hpp"
#include "liftlab/boolfn.hpp"
#include "liftlab/discrepancy.hpp"
#include "liftlab/rectangle_machine.hpp"

namespace liftlab {

using TreeRunner = std::function<TreeRunResult(const QueryOracle&)>;

struct WalkResult {
    std::map<int, int> answers;      // chosen query bits per coordinate label
    BooleanFunction restricted;      // f after fixing the queried coordinates
    TreeRunResult tree;
};

/// Walks the density-restoring tree, answering each query via entropic_fix so
/// the measure drops by at most one per queried coordinate; the final measure
/// is verified against measure(f) - |queried|.
WalkResult adversarial_walk(const BooleanFunction& f, Measure measure,
                            const TreeRunner& tree_runner);
WalkResult adversarial_walk(const BooleanFunction& f, Measure measure,
                            const DeterministicProtocol& p, const AlgorithmParams& params);

struct PipelineParams {
    AlgorithmParams algorithm;
    double approx_epsilon = 1.0 / 3.0;
    double protocol_error = 0.1;  // the epsilon in the discrepancy bound
    Measure measure = Measure::degree;
};

/// Every quantity recomputed from primitives; the asymptotic columns are
/// reported for comparison only.
struct TradeoffReport {
    int n = 0;
    int b = 0;
    int c = 0;

    int queried = 0;
    double query_budget = 0.0;  // 200 c / b
    bool query_budget_holds = false;

    int base_degree = 0;  // deg(f)
    int base_bs = 0;
    int restricted_degree = 0;  // measures of f_{J,z}
    int restricted_bs = 0;
    int approx_degree_d = 0;    // deg_eps(f_{J,z})
    double dual_correlation = 0.0;

    double one_norm = 0.0;
    double correlation = 0.0;
    double spectral = 0.0;
    /// ||Psi|| sqrt(|R|) next to its asymptotic target n^{-1.1 d}; the target
    /// presumes the large-b regime and is reported, never asserted.
    double spectral_sqrt_r = 0.0;
    double spectral_target = 0.0;
    double discrepancy_bits = 0.0;
    bool vacuous = true;

    bool structured_failure = false;
    std::string failure_reason;
    bool degenerate = false;  // restricted function is constant

    // Asymptotic trade-off thresholds, reported for comparison only.
    double c_threshold_degree = 0.0;  // deg(f) b / 300
    double c_threshold_bs = 0.0;
    double q_target_degree = 0.0;  // sqrt(deg f) * b
    double q_target_bs = 0.0;

    std::map<int, int> answers;
    CoordSet unqueried;
    std::string transcript;
    PotentialTrace trace;
};

/// End-to-end: adversarial walk -> restricted measures -> approximate degree
/// and dual witness -> composed and witness matrices on the certified dense
/// rectangle -> generalized discrepancy value.
TradeoffReport hybrid_lifting_pipeline(const BooleanFunction& f,
                                       const DeterministicProtocol& p,
                                       const PipelineParams& params = {});

}  // namespace liftlab
