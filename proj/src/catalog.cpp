#include "liftlab/catalog.hpp"

#include <fstream>

#include "json.hpp"
#include "liftlab/errors.hpp"
#include "liftlab/readonce.hpp"

namespace liftlab {

using nlohmann::json;

namespace {

int parse_arity(const std::string& spec, std::size_t colon) {
    int n = 0;
    try {
        n = std::stoi(spec.substr(colon + 1));
    } catch (...) {
        throw ParseError("function spec: bad arity in '" + spec + "'");
    }
    if (n < 1 || n > 20) throw ParseError("function spec: arity out of range in '" + spec + "'");
    return n;
}

}  // namespace

BooleanFunction parse_function_spec(const std::string& spec) {
    std::size_t colon = spec.find(':');
    if (colon != std::string::npos) {
        std::string head = spec.substr(0, colon);
        if (head == "parity") {
            int n = parse_arity(spec, colon);
            return BooleanFunction::from_evaluator(
                CoordSet::range(n),
                [](std::uint32_t x) { return std::popcount(x) % 2 ? -1.0 : 1.0; });
        }
        if (head == "or") {
            int n = parse_arity(spec, colon);
            return BooleanFunction::from_evaluator(
                CoordSet::range(n), [](std::uint32_t x) { return x ? -1.0 : 1.0; });
        }
        if (head == "and") {
            int n = parse_arity(spec, colon);
            const std::uint32_t ones = (1u << n) - 1u;
            return BooleanFunction::from_evaluator(
                CoordSet::range(n), [ones](std::uint32_t x) { return x == ones ? -1.0 : 1.0; });
        }
        if (head == "readonce")
            return ReadOnceFormula::parse(spec.substr(colon + 1)).to_function();
    }
    return function_from_json_file(spec);
}

BooleanFunction function_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("truth table: invalid JSON: ") + e.what());
    }
    try {
        auto coords = j.at("coords").get<std::vector<int>>();
        auto values = j.at("values").get<std::vector<double>>();
        return BooleanFunction(CoordSet(std::move(coords)), std::move(values));
    } catch (const json::exception& e) {
        throw ParseError(std::string("truth table: ") + e.what());
    }
}

BooleanFunction function_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("truth table: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return function_from_json_text(text);
}

std::string function_to_json_text(const BooleanFunction& f) {
    json j;
    j["coords"] = f.domain().labels();
    j["values"] = f.values();
    return j.dump();
}

}  // namespace liftlab
