#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "liftlab/errors.hpp"

namespace liftlab {

/// An ordered set of coordinate labels (1-based in file formats, but any
/// distinct ints work). Subsets of a CoordSet are handled as position masks:
/// bit k of a mask refers to the k-th smallest label.
class CoordSet {
  public:
    CoordSet() = default;
    explicit CoordSet(std::vector<int> labels) : labels_(std::move(labels)) {
        std::sort(labels_.begin(), labels_.end());
        if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
            throw DomainError("CoordSet: duplicate coordinate label");
    }
    CoordSet(std::initializer_list<int> labels) : CoordSet(std::vector<int>(labels)) {}

    /// {1, 2, ..., n}
    static CoordSet range(int n) {
        std::vector<int> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
        return CoordSet(std::move(v));
    }

    int size() const { return static_cast<int>(labels_.size()); }
    bool empty() const { return labels_.empty(); }
    const std::vector<int>& labels() const { return labels_; }
    int label(int pos) const { return labels_[static_cast<std::size_t>(pos)]; }

    bool contains(int label) const {
        return std::binary_search(labels_.begin(), labels_.end(), label);
    }
    /// Position of `label` within this set, or -1.
    int position(int label) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
        if (it == labels_.end() || *it != label) return -1;
        return static_cast<int>(it - labels_.begin());
    }

    bool subset_of(const CoordSet& other) const {
        return std::includes(other.labels_.begin(), other.labels_.end(),
                             labels_.begin(), labels_.end());
    }

    CoordSet unite(const CoordSet& other) const {
        std::vector<int> out;
        std::set_union(labels_.begin(), labels_.end(), other.labels_.begin(),
                       other.labels_.end(), std::back_inserter(out));
        return CoordSet(std::move(out));
    }
    CoordSet intersect(const CoordSet& other) const {
        std::vector<int> out;
        std::set_intersection(labels_.begin(), labels_.end(), other.labels_.begin(),
                              other.labels_.end(), std::back_inserter(out));
        return CoordSet(std::move(out));
    }
    CoordSet minus(const CoordSet& other) const {
        std::vector<int> out;
        std::set_difference(labels_.begin(), labels_.end(), other.labels_.begin(),
                            other.labels_.end(), std::back_inserter(out));
        return CoordSet(std::move(out));
    }

    bool operator==(const CoordSet& other) const = default;

    /// Labels selected by a position mask.
    CoordSet from_mask(std::uint32_t mask) const {
        std::vector<int> out;
        for (int k = 0; k < size(); ++k)
            if (mask >> k & 1u) out.push_back(labels_[static_cast<std::size_t>(k)]);
        return CoordSet(std::move(out));
    }
    /// Position mask of a subset (must be contained in this set).
    std::uint32_t mask_of(const CoordSet& sub) const {
        std::uint32_t mask = 0;
        for (int l : sub.labels_) {
            int p = position(l);
            if (p < 0) throw DomainError("mask_of: " + std::to_string(l) + " not in set");
            mask |= 1u << p;
        }
        return mask;
    }

    /// All subsets as position masks, in dictionary order of the label lists:
    /// {}, {l1}, {l1,l2}, {l1,l2,l3}, ..., {l1,l3}, ..., {l2}, ...
    std::vector<std::uint32_t> subsets_lex(bool include_empty = true) const {
        std::vector<std::uint32_t> out;
        out.reserve(std::size_t{1} << size());
        if (include_empty) out.push_back(0);
        enumerate_lex(0, 0, out);
        return out;
    }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(labels_[i]);
        }
        return s + "}";
    }

  private:
    void enumerate_lex(std::uint32_t prefix, int start, std::vector<std::uint32_t>& out) const {
        for (int k = start; k < size(); ++k) {
            std::uint32_t next = prefix | (1u << k);
            out.push_back(next);
            enumerate_lex(next, k + 1, out);
        }
    }

    std::vector<int> labels_;
};

inline int parity32(std::uint32_t x) { return std::popcount(x) & 1; }
inline int parity64(std::uint64_t x) { return std::popcount(x) & 1; }

}  // namespace liftlab
