#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "liftlab/catalog.hpp"
#include "liftlab/errors.hpp"
#include "liftlab/lifting.hpp"
#include "liftlab/rng.hpp"

namespace {

using liftlab::BooleanFunction;
using nlohmann::json;

constexpr int kSchemaVersion = 1;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw liftlab::ParseError("cannot open output file " + out_path);
    out << j.dump(2) << "\n";
}

json witness_json(const liftlab::DualWitness& w) {
    return json{{"psi", w.psi.values()}, {"d", w.d}, {"correlation", w.correlation}};
}

json coords_json(const liftlab::CoordSet& c) { return json(c.labels()); }

std::pair<liftlab::Support, liftlab::Support> supports_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw liftlab::ParseError("cannot open support file " + path);
    json j;
    try {
        j = json::parse(in);
        liftlab::CoordSet coords(j.at("coords").get<std::vector<int>>());
        int b = j.at("b").get<int>();
        liftlab::Support rows{coords, b, j.at("rows").get<std::vector<std::uint64_t>>()};
        liftlab::Support cols{coords, b, j.at("cols").get<std::vector<std::uint64_t>>()};
        return {std::move(rows), std::move(cols)};
    } catch (const json::exception& e) {
        throw liftlab::ParseError(std::string("support file: ") + e.what());
    }
}

json trace_record(const liftlab::PotentialStep& s, int index) {
    return json{{"step", index},
                {"event", s.event},
                {"round", s.round},
                {"u_size", s.u_size},
                {"v_size", s.v_size},
                {"potential", s.potential},
                {"potential_change", s.potential_change},
                {"step_budget", s.step_budget},
                {"query_target", s.query_target},
                {"queried", coords_json(s.queried)},
                {"u_density", s.u_density},
                {"v_density", s.v_density}};
}

json report_json(const liftlab::TradeoffReport& r) {
    json answers = json::object();
    for (const auto& [label, bit] : r.answers) answers[std::to_string(label)] = bit;
    return json{{"schema_version", kSchemaVersion},
                {"command", "lift"},
                {"n", r.n},
                {"b", r.b},
                {"c", r.c},
                {"queried", r.queried},
                {"query_budget", r.query_budget},
                {"query_budget_holds", r.query_budget_holds},
                {"base_degree", r.base_degree},
                {"base_bs", r.base_bs},
                {"restricted_degree", r.restricted_degree},
                {"restricted_bs", r.restricted_bs},
                {"approx_degree", r.approx_degree_d},
                {"dual_correlation", r.dual_correlation},
                {"one_norm", r.one_norm},
                {"correlation", r.correlation},
                {"spectral", r.spectral},
                {"spectral_sqrt_r", r.spectral_sqrt_r},
                {"spectral_target", r.spectral_target},
                {"discrepancy_bits", r.discrepancy_bits},
                {"vacuous", r.vacuous},
                {"structured_failure", r.structured_failure},
                {"failure_reason", r.failure_reason},
                {"degenerate", r.degenerate},
                {"c_threshold_degree", r.c_threshold_degree},
                {"c_threshold_bs", r.c_threshold_bs},
                {"q_target_degree", r.q_target_degree},
                {"q_target_bs", r.q_target_bs},
                {"answers", answers},
                {"unqueried", coords_json(r.unqueried)},
                {"transcript", r.transcript}};
}

std::string csv_row(const liftlab::TradeoffReport& r) {
    std::ostringstream os;
    os << r.n << "," << r.b << "," << r.c << "," << r.queried << "," << r.query_budget << ","
       << r.restricted_degree << "," << r.restricted_bs << "," << r.approx_degree_d << ","
       << r.dual_correlation << "," << r.discrepancy_bits << "," << (r.vacuous ? 1 : 0) << ","
       << (r.structured_failure ? 1 : 0) << "," << (r.degenerate ? 1 : 0);
    return os.str();
}

constexpr const char* kCsvHeader =
    "n,b,c,queried,query_budget,restricted_degree,restricted_bs,approx_degree,"
    "dual_correlation,discrepancy_bits,vacuous,structured_failure,degenerate";

BooleanFunction random_sign_function(liftlab::Rng& rng, int n) {
    std::vector<double> v(std::size_t{1} << n);
    for (double& x : v) x = rng.bit() ? -1.0 : 1.0;
    return BooleanFunction(liftlab::CoordSet::range(n), std::move(v));
}

int run_measures(const std::string& spec, double epsilon, const std::string& out) {
    BooleanFunction f = liftlab::parse_function_spec(spec);
    json j{{"schema_version", kSchemaVersion},
           {"command", "measures"},
           {"spec", spec},
           {"coords", coords_json(f.domain())},
           {"degree", liftlab::degree(f)}};
    if (f.sign_valued()) {
        auto bs = liftlab::block_sensitivity(f);
        json blocks = json::array();
        for (std::uint32_t mask : bs.witness_blocks)
            blocks.push_back(coords_json(f.domain().from_mask(mask)));
        j["block_sensitivity"] = json{{"value", bs.value},
                                      {"witness_point", bs.witness_point},
                                      {"witness_blocks", blocks}};
        if (f.domain().size() <= 5) {
            auto ad = liftlab::approx_degree(f, epsilon);
            auto dual = liftlab::dual_polynomial(f, ad.d, epsilon);
            j["approx"] = json{{"epsilon", epsilon},
                               {"d", ad.d},
                               {"optimal_error", ad.optimal_error}};
            j["dual"] = witness_json(dual);
        }
    }
    emit(j, out);
    return 0;
}

int run_approxdeg(const std::string& spec, double epsilon, int d_flag,
                  const std::string& out) {
    BooleanFunction f = liftlab::parse_function_spec(spec);
    int d = d_flag;
    json j{{"schema_version", kSchemaVersion},
           {"command", "approxdeg"},
           {"epsilon", epsilon}};
    if (d < 0) {
        auto ad = liftlab::approx_degree(f, epsilon);
        d = ad.d;
        j["optimal_error"] = ad.optimal_error;
    }
    auto dual = liftlab::dual_polynomial(f, d, epsilon);
    j.update(witness_json(dual));
    auto rep = liftlab::verify_dual(f, dual, epsilon);
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back(json{{"name", c.name},
                              {"pass", c.pass},
                              {"measured", c.measured},
                              {"slack", c.slack}});
    j["verify"] = json{{"all_pass", rep.all_pass}, {"checks", checks}};
    emit(j, out);
    return 0;
}

int run_density(const std::string& support_path, double delta, const std::string& side,
                bool restore, const std::string& out) {
    auto [rows, cols] = supports_from_json_file(support_path);
    const liftlab::Support& s = side == "cols" ? cols : rows;
    auto dist = liftlab::SupportDistribution::from_support(s);
    auto rep = liftlab::is_dense(dist, delta);
    json j{{"schema_version", kSchemaVersion},
           {"command", "density"},
           {"delta", delta},
           {"side", side},
           {"dense", rep.dense()},
           {"exact_density", liftlab::exact_density(dist)},
           {"violation", nullptr},
           {"restore", nullptr}};
    if (rep.violation) {
        j["violation"] = json{{"subset", coords_json(rep.violation->subset)},
                              {"point", rep.violation->point},
                              {"probability", rep.violation->probability}};
    }
    if (restore) {
        auto res = liftlab::restore_density(dist, delta);
        j["restore"] = json{{"fixed", coords_json(res.fixed)},
                            {"heavy_value", res.heavy_value},
                            {"conditioned_points", res.conditioned.num_points()}};
    }
    emit(j, out);
    return 0;
}

int run_discrepancy(const std::string& spec, int b, const std::string& supports_path,
                    double epsilon, double error, const std::string& out) {
    BooleanFunction f = liftlab::parse_function_spec(spec);
    liftlab::Support u, v;
    if (supports_path.empty()) {
        u = liftlab::Support::full(f.domain(), b);
        v = u;
    } else {
        std::tie(u, v) = supports_from_json_file(supports_path);
    }
    auto ad = liftlab::approx_degree(f, epsilon);
    auto dual = liftlab::dual_polynomial(f, ad.d, epsilon);
    auto big_f = liftlab::compose_matrix(f, u, v);
    auto psi = liftlab::build_witness(dual, u, v);
    auto bound = liftlab::gen_discrepancy_bound(big_f, psi, error);
    json j{{"schema_version", kSchemaVersion},
           {"command", "discrepancy"},
           {"one_norm", liftlab::one_norm(psi)},
           {"correlation", liftlab::sign_correlation(big_f, psi)},
           {"spectral", liftlab::spectral_norm(psi)},
           {"bound_bits", bound.bits},
           {"vacuous", bound.vacuous},
           {"epsilon", epsilon},
           {"error", error},
           {"d", ad.d},
           {"dual_correlation", dual.correlation}};
    emit(j, out);
    return 0;
}

int run_partition(const std::string& protocol_path, const std::string& out) {
    auto p = liftlab::protocol_from_json_file(protocol_path);
    auto parts = liftlab::transcript_partition(p);
    json rects = json::object();
    for (const auto& [m, rect] : parts)
        rects[m] = json{{"rows", rect.rows}, {"cols", rect.cols}};
    emit(json{{"schema_version", kSchemaVersion},
              {"command", "partition"},
              {"n", p.n()},
              {"b", p.b()},
              {"c", p.c()},
              {"rectangles", rects}},
         out);
    return 0;
}

int run_lift(const std::string& spec, const std::string& protocol_path,
             const liftlab::PipelineParams& params, const std::string& out,
             const std::string& trace_path, const std::string& csv_path) {
    BooleanFunction f = liftlab::parse_function_spec(spec);
    auto p = liftlab::protocol_from_json_file(protocol_path);
    auto rep = liftlab::hybrid_lifting_pipeline(f, p, params);
    emit(report_json(rep), out);
    if (!trace_path.empty()) {
        std::ofstream tf(trace_path);
        if (!tf) throw liftlab::ParseError("cannot open trace file " + trace_path);
        for (std::size_t i = 0; i < rep.trace.steps.size(); ++i)
            tf << trace_record(rep.trace.steps[i], static_cast<int>(i)).dump() << "\n";
    }
    if (!csv_path.empty()) {
        bool fresh = !std::filesystem::exists(csv_path) ||
                     std::filesystem::file_size(csv_path) == 0;
        std::ofstream cf(csv_path, std::ios::app);
        if (!cf) throw liftlab::ParseError("cannot open csv file " + csv_path);
        if (fresh) cf << kCsvHeader << "\n";
        cf << csv_row(rep) << "\n";
    }
    return rep.structured_failure ? 3 : 0;
}

int run_sweep(int n, int b, int count, std::uint64_t seed, double epsilon, int threads,
              const std::string& out) {
    if (n < 1 || n > 5) throw liftlab::GuardError("sweep: n must be in [1,5]");
    std::vector<json> cells(static_cast<std::size_t>(count));
    auto work = [&](int k) {
        std::uint64_t cell_seed = liftlab::Rng::cell_seed(seed, static_cast<std::uint64_t>(k));
        liftlab::Rng rng(cell_seed);
        BooleanFunction f = random_sign_function(rng, n);
        auto ad = liftlab::approx_degree(f, epsilon);
        auto dual = liftlab::dual_polynomial(f, ad.d, epsilon);
        json cell{{"cell", k},
                  {"seed", cell_seed},
                  {"degree", liftlab::degree(f)},
                  {"bs", liftlab::block_sensitivity(f).value},
                  {"approx_d", ad.d},
                  {"dual_correlation", dual.correlation}};
        if (b > 0) {
            auto u = liftlab::Support::full(f.domain(), b);
            auto big_f = liftlab::compose_matrix(f, u, u);
            auto psi = liftlab::build_witness(dual, u, u);
            auto bound = liftlab::gen_discrepancy_bound(big_f, psi, 0.1);
            cell["bound_bits"] = bound.bits;
            cell["vacuous"] = bound.vacuous;
        }
        cells[static_cast<std::size_t>(k)] = std::move(cell);
    };
    if (threads <= 1) {
        for (int k = 0; k < count; ++k) work(k);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (int k = next.fetch_add(1); k < count; k = next.fetch_add(1)) work(k);
            });
        for (auto& t : pool) t.join();
    }
    json j{{"schema_version", kSchemaVersion}, {"command", "sweep"},
           {"n", n},       {"b", b},
           {"count", count}, {"seed", seed},
           {"epsilon", epsilon}, {"cells", cells}};
    emit(j, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean-function complexity measures, dual certificates, and "
                 "gadget-composition lower-bound reports"};
    app.require_subcommand(1);

    std::string spec, protocol_path, support_path, out, trace_path, csv_path;
    std::string side = "rows";
    double epsilon = 1.0 / 3.0, error = 0.1, delta = 0.99;
    int b = 2, n = 2, count = 8, d_flag = -1, threads = 2;
    std::uint64_t seed = 1;
    liftlab::PipelineParams pparams;
    std::string measure_name = "degree";

    auto* measures = app.add_subcommand("measures", "degree, block sensitivity, approximate degree");
    measures->add_option("spec", spec, "function spec or truth-table file")->required();
    measures->add_option("--epsilon", epsilon, "approximation error");
    measures->add_option("--out", out, "output path (stdout if omitted)");

    auto* approx = app.add_subcommand("approxdeg", "dual polynomial certificate");
    approx->add_option("spec", spec)->required();
    approx->add_option("--epsilon", epsilon);
    approx->add_option("--d", d_flag, "witness level (default: deg_eps)");
    approx->add_option("--out", out);

    auto* density = app.add_subcommand("density", "min-entropy density report for a support file");
    density->add_option("support", support_path)->required();
    density->add_option("--delta", delta);
    density->add_option("--side", side)->check(CLI::IsMember({"rows", "cols"}));
    bool restore = false;
    density->add_flag("--restore", restore, "also run density restoration");
    density->add_option("--out", out);

    auto* disc = app.add_subcommand("discrepancy", "witness-matrix report");
    disc->add_option("spec", spec)->required();
    disc->add_option("--b", b, "gadget bits per coordinate");
    disc->add_option("--supports", support_path, "support file (default: full)");
    disc->add_option("--epsilon", epsilon, "approximation error for the dual");
    disc->add_option("--error", error, "protocol error in the bound");
    disc->add_option("--out", out);

    auto* part = app.add_subcommand("partition", "transcript rectangles of a protocol");
    part->add_option("protocol", protocol_path)->required();
    part->add_option("--out", out);

    auto* lift = app.add_subcommand("lift", "hybrid lifting pipeline report");
    lift->add_option("spec", spec)->required();
    lift->add_option("protocol", protocol_path)->required();
    lift->add_option("--epsilon", pparams.approx_epsilon);
    lift->add_option("--error", pparams.protocol_error);
    lift->add_option("--delta-high", pparams.algorithm.density.delta_high);
    lift->add_option("--delta-low", pparams.algorithm.density.delta_low);
    lift->add_option("--measure", measure_name)->check(CLI::IsMember({"degree", "bs"}));
    lift->add_option("--out", out);
    lift->add_option("--trace", trace_path, "JSONL trace output");
    lift->add_option("--csv", csv_path, "append a CSV row");

    auto* sweep = app.add_subcommand("sweep", "seeded random-function sweep");
    sweep->add_option("--n", n);
    sweep->add_option("--b", b, "if > 0, add full-support discrepancy per cell");
    sweep->add_option("--count", count);
    sweep->add_option("--seed", seed);
    sweep->add_option("--epsilon", epsilon);
    sweep->add_option("--threads", threads);
    sweep->add_option("--out", out);
    sweep->get_option("--b")->default_val(0);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*measures) return run_measures(spec, epsilon, out);
        if (*approx) return run_approxdeg(spec, epsilon, d_flag, out);
        if (*density) return run_density(support_path, delta, side, restore, out);
        if (*disc) return run_discrepancy(spec, b, support_path, epsilon, error, out);
        if (*part) return run_partition(protocol_path, out);
        if (*lift) {
            pparams.measure = measure_name == "bs" ? liftlab::Measure::block_sensitivity
                                                   : liftlab::Measure::degree;
            return run_lift(spec, protocol_path, pparams, out, trace_path, csv_path);
        }
        if (*sweep) return run_sweep(n, b, count, seed, epsilon, threads, out);
    } catch (const liftlab::GuardError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return 2;
    } catch (const liftlab::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const liftlab::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
