#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "liftlab/coords.hpp"
#include "liftlab/gadget.hpp"

namespace liftlab {

enum class Speaker { row, col };

/// One communication round: the speaker maps (own input, transcript prefix)
/// to a bit. Must be total on the declared domain.
struct ProtocolRound {
    Speaker speaker = Speaker::row;
    std::function<int(std::uint64_t, const std::string&)> message;
};

/// A deterministic protocol over Lambda^n x Lambda^n. Rounds alternate
/// strictly: odd rounds (1-based) are spoken by the row player, even rounds
/// by the column player.
class DeterministicProtocol {
  public:
    DeterministicProtocol(int n, int b, std::vector<ProtocolRound> rounds);

    int n() const { return n_; }
    int b() const { return b_; }
    int c() const { return static_cast<int>(rounds_.size()); }
    const ProtocolRound& round(int i) const { return rounds_[static_cast<std::size_t>(i)]; }

    std::uint64_t side_size() const { return std::uint64_t{1} << (b_ * n_); }

    /// Transcript produced on input (x, y).
    std::string transcript(std::uint64_t x, std::uint64_t y) const;

  private:
    int n_;
    int b_;
    std::vector<ProtocolRound> rounds_;
};

struct Rectangle {
    std::vector<std::uint64_t> rows;
    std::vector<std::uint64_t> cols;
};

/// All transcript rectangles, including empty ones; they partition the
/// domain. Keys are transcript bit strings of length c.
std::map<std::string, Rectangle> transcript_partition(const DeterministicProtocol& p);

/// Parses {"b":..., "n":..., "c":..., "rounds":[{"speaker","table"}...]} or
/// {"b","n","c","partition":{transcript:{"rows":[...],"cols":[...]}}}.
DeterministicProtocol protocol_from_json_text(const std::string& text);
DeterministicProtocol protocol_from_json_file(const std::string& path);

/// Builds message functions from an explicit transcript partition. Rejects
/// partitions that no protocol induces (ambiguous splits, overlaps, bad
/// cover).
DeterministicProtocol protocol_from_partition(int n, int b,
                                              const std::map<std::string, Rectangle>& parts);

/// Table-backed round: bits[prefix] is indexed by the speaker's encoded input.
ProtocolRound table_round(Speaker speaker,
                          std::map<std::string, std::vector<int>> table);

}  // namespace liftlab
