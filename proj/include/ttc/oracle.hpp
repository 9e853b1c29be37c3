#pragma once

// Brute-force references for the test suites. Everything here is written for
// clarity; none of it is meant to be fast.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttc/interval.hpp"
#include "ttc/temporal.hpp"

namespace ttc::oracle {

/// Plain growable bit sequence with the DynBitVector position conventions
/// (1-based; access and rank are defined past the end).
class FlatBits {
public:
    FlatBits() = default;
    static FlatBits from_string(std::string_view bits);

    std::uint64_t size() const { return bits_.size(); }
    std::uint64_t ones() const;

    bool access(std::uint64_t i) const;
    std::uint64_t rank1(std::uint64_t i) const;
    std::uint64_t select1(std::uint64_t j) const;

    void insert_bit(std::uint64_t i, bool bit);
    void update_bit(std::uint64_t i, bool bit);
    bool remove_bit(std::uint64_t i);
    void unset_range(std::uint64_t j1, std::uint64_t j2);
    void ensure_capacity(std::uint64_t t);

    std::string to_string() const;

private:
    std::vector<bool> bits_;
};

/// Sorted list of intervals kept as an antichain: after each insertion every
/// member that strictly contains another member is discarded.
class OracleIntervalSet {
public:
    /// Returns true when the stored set changed.
    bool insert(Time t1, Time t2);
    std::optional<Interval> find_prev(Time t) const;
    std::optional<Interval> find_next(Time t) const;
    const std::vector<Interval>& enumerate() const { return items_; }
    std::size_t size() const { return items_.size(); }

private:
    std::vector<Interval> items_;
};

/// Keeps only the members of `ivs` that contain no other member, sorted.
std::vector<Interval> minimal_antichain(std::vector<Interval> ivs);

using IntervalMatrix = std::vector<std::vector<std::vector<Interval>>>;

/// For every ordered pair (u, v), u != v, the minimal [departure, arrival]
/// intervals over all journeys built from `contacts`.
IntervalMatrix minimal_intervals(const std::vector<Contact>& contacts, const GraphParams& params);

/// Whether some journey from u to v departs at or after t1 and arrives at or
/// before t2. A vertex reaches itself whenever t1 <= t2.
bool can_reach(const std::vector<Contact>& contacts, const GraphParams& params, Vertex u, Vertex v,
               Time t1, Time t2);

/// Empty string when `j` is a journey from u to v inside [t1, t2] made of
/// contacts from `contacts`, otherwise the first problem found.
std::string check_journey(const Journey& j, const std::vector<Contact>& contacts,
                          const GraphParams& params, Vertex u, Vertex v, Time t1, Time t2);

}  // namespace ttc::oracle
