#include "liftlab/protocol.hpp"

#include <fstream>
#include <memory>

#include "json.hpp"
#include "liftlab/errors.hpp"
#include "liftlab/guard.hpp"

namespace liftlab {

using nlohmann::json;

DeterministicProtocol::DeterministicProtocol(int n, int b, std::vector<ProtocolRound> rounds)
    : n_(n), b_(b), rounds_(std::move(rounds)) {
    if (n_ < 1 || b_ < 1) throw DomainError("DeterministicProtocol: n and b must be positive");
    check_protocol_guard(b_ * n_, "DeterministicProtocol");
    for (std::size_t i = 0; i < rounds_.size(); ++i) {
        Speaker expect = i % 2 == 0 ? Speaker::row : Speaker::col;
        if (rounds_[i].speaker != expect)
            throw DomainError("DeterministicProtocol: round " + std::to_string(i + 1) +
                              " must be spoken by the " +
                              (expect == Speaker::row ? "row" : "col") + " player");
        if (!rounds_[i].message)
            throw DomainError("DeterministicProtocol: round " + std::to_string(i + 1) +
                              " has no message function");
    }
}

std::string DeterministicProtocol::transcript(std::uint64_t x, std::uint64_t y) const {
    std::string m;
    for (const auto& r : rounds_) {
        int bit = r.message(r.speaker == Speaker::row ? x : y, m);
        if (bit != 0 && bit != 1)
            throw ParseError("protocol: message function returned a non-bit");
        m += static_cast<char>('0' + bit);
    }
    return m;
}

std::map<std::string, Rectangle> transcript_partition(const DeterministicProtocol& p) {
    const std::uint64_t side = p.side_size();
    std::vector<std::uint64_t> all(side);
    for (std::uint64_t e = 0; e < side; ++e) all[e] = e;

    std::map<std::string, Rectangle> out;
    // Depth-first split along the protocol tree.
    std::function<void(std::string, std::vector<std::uint64_t>, std::vector<std::uint64_t>)>
        split = [&](std::string prefix, std::vector<std::uint64_t> rows,
                    std::vector<std::uint64_t> cols) {
            int i = static_cast<int>(prefix.size());
            if (i == p.c()) {
                out.emplace(std::move(prefix), Rectangle{std::move(rows), std::move(cols)});
                return;
            }
            const auto& r = p.round(i);
            const auto& side_set = r.speaker == Speaker::row ? rows : cols;
            std::vector<std::uint64_t> part0, part1;
            for (std::uint64_t e : side_set)
                (r.message(e, prefix) ? part1 : part0).push_back(e);
            if (r.speaker == Speaker::row) {
                split(prefix + "0", part0, cols);
                split(prefix + "1", std::move(part1), std::move(cols));
            } else {
                split(prefix + "0", rows, part0);
                split(prefix + "1", std::move(rows), std::move(part1));
            }
        };
    split("", std::move(all), [&] {
        std::vector<std::uint64_t> v(side);
        for (std::uint64_t e = 0; e < side; ++e) v[e] = e;
        return v;
    }());
    return out;
}

ProtocolRound table_round(Speaker speaker, std::map<std::string, std::vector<int>> table) {
    auto shared = std::make_shared<std::map<std::string, std::vector<int>>>(std::move(table));
    ProtocolRound r;
    r.speaker = speaker;
    r.message = [shared](std::uint64_t input, const std::string& prefix) -> int {
        auto it = shared->find(prefix);
        if (it == shared->end())
            throw ParseError("protocol table: no entry for transcript prefix '" + prefix +
                             "' (message function not total)");
        if (input >= it->second.size())
            throw ParseError("protocol table: input out of range for prefix '" + prefix + "'");
        return it->second[input];
    };
    return r;
}

DeterministicProtocol protocol_from_partition(int n, int b,
                                              const std::map<std::string, Rectangle>& parts) {
    if (parts.empty()) throw ParseError("protocol partition: empty");
    const std::size_t c = parts.begin()->first.size();
    const std::uint64_t side = std::uint64_t{1} << (b * n);
    for (const auto& [m, rect] : parts) {
        if (m.size() != c) throw ParseError("protocol partition: transcripts of mixed length");
        if (m.find_first_not_of("01") != std::string::npos)
            throw ParseError("protocol partition: transcript must be a bit string");
        (void)rect;
    }

    std::vector<ProtocolRound> rounds;
    for (std::size_t i = 0; i < c; ++i) {
        Speaker speaker = i % 2 == 0 ? Speaker::row : Speaker::col;
        // For prefix p and bit a, the speaker inputs consistent with p+a are
        // the union of that side over transcripts extending p+a.
        std::map<std::string, std::vector<int>> table;
        for (const auto& [m, rect] : parts) {
            std::string prefix = m.substr(0, i);
            auto [it, inserted] = table.try_emplace(prefix, std::vector<int>(side, -1));
            auto& bits = it->second;
            int a = m[i] - '0';
            const auto& inputs = speaker == Speaker::row ? rect.rows : rect.cols;
            for (std::uint64_t e : inputs) {
                if (e >= side) throw ParseError("protocol partition: element out of range");
                if (bits[e] != -1 && bits[e] != a)
                    throw ParseError("protocol partition: not protocol-induced (input " +
                                     std::to_string(e) + " is split ambiguously at prefix '" +
                                     prefix + "')");
                bits[e] = a;
            }
        }
        for (auto& [prefix, bits] : table)
            for (auto& v : bits)
                if (v == -1) v = 0;  // unreachable states answer 0
        rounds.push_back(table_round(speaker, std::move(table)));
    }
    DeterministicProtocol p(n, b, std::move(rounds));

    // The reconstructed protocol must reproduce the nonempty parts exactly.
    auto rebuilt = transcript_partition(p);
    for (const auto& [m, rect] : parts) {
        const auto& got = rebuilt.at(m);
        if (!rect.rows.empty() && !rect.cols.empty() &&
            (got.rows != rect.rows || got.cols != rect.cols))
            throw ParseError("protocol partition: not protocol-induced (rectangle at '" + m +
                             "' does not match its replay)");
    }
    return p;
}

namespace {

DeterministicProtocol protocol_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("protocol: top level must be an object");
    if (!j.contains("n") || !j.contains("b"))
        throw ParseError("protocol: missing required fields n, b");
    int n = j.at("n").get<int>();
    int b = j.at("b").get<int>();

    if (j.contains("partition")) {
        std::map<std::string, Rectangle> parts;
        for (const auto& [m, body] : j.at("partition").items()) {
            Rectangle r;
            r.rows = body.at("rows").get<std::vector<std::uint64_t>>();
            r.cols = body.at("cols").get<std::vector<std::uint64_t>>();
            parts.emplace(m, std::move(r));
        }
        return protocol_from_partition(n, b, parts);
    }

    if (!j.contains("rounds")) throw ParseError("protocol: need either rounds or partition");
    int c = j.value("c", static_cast<int>(j.at("rounds").size()));
    if (c != static_cast<int>(j.at("rounds").size()))
        throw ParseError("protocol: c does not match the number of rounds");
    const std::uint64_t side = std::uint64_t{1} << (b * n);
    std::vector<ProtocolRound> rounds;
    for (const auto& rj : j.at("rounds")) {
        std::string sp = rj.at("speaker").get<std::string>();
        if (sp != "row" && sp != "col")
            throw ParseError("protocol: speaker must be \"row\" or \"col\"");
        std::map<std::string, std::vector<int>> table;
        for (const auto& [prefix, bits] : rj.at("table").items()) {
            auto v = bits.get<std::vector<int>>();
            if (v.size() != side)
                throw ParseError("protocol: table for prefix '" + prefix + "' must have 2^(b*n) = " +
                                 std::to_string(side) + " entries");
            for (int x : v)
                if (x != 0 && x != 1) throw ParseError("protocol: table entries must be bits");
            table.emplace(prefix, std::move(v));
        }
        rounds.push_back(table_round(sp == "row" ? Speaker::row : Speaker::col,
                                     std::move(table)));
    }
    return DeterministicProtocol(n, b, std::move(rounds));
}

}  // namespace

DeterministicProtocol protocol_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("protocol: invalid JSON: ") + e.what());
    }
    try {
        return protocol_from_json(j);
    } catch (const json::exception& e) {
        throw ParseError(std::string("protocol: ") + e.what());
    }
}

DeterministicProtocol protocol_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("protocol: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return protocol_from_json_text(text);
}

}  // namespace liftlab
