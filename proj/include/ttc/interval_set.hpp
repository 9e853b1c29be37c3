#pragma once

// Set of non-nested time intervals stored as two dynamic bit-vectors: D has
// a one at every departure, A a one at every arrival. Because no interval
// contains another, the k-th one of D and the k-th one of A form the k-th
// interval, and intervals are sorted by both endpoints at once.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ttc/dyn_bitvector.hpp"
#include "ttc/interval.hpp"

namespace ttc {

/// How insert() clears the intervals that contain the new one.
enum class RemovalStrategy {
    iterative,    // select + update per removed interval
    unset_range,  // one split/join based range clear per bit-vector
};

/// Result of IntervalSet::insert. When `inserted`, the intervals previously
/// at indices [index, index + removed) were dropped and the new interval now
/// sits at `index` (0-based, in increasing order).
struct InsertOutcome {
    bool inserted = false;
    std::size_t index = 0;
    std::size_t removed = 0;
};

/// An interval together with its 0-based index in the set.
struct Located {
    std::size_t index;
    Interval interval;
};

template <class Leaf>
class IntervalSet {
public:
    using bitvector_type = DynBitVector<Leaf>;

    static constexpr RemovalStrategy default_strategy =
        Leaf::kSparse ? RemovalStrategy::unset_range : RemovalStrategy::iterative;

    explicit IntervalSet(BitVectorParams params = {}, RemovalStrategy strategy = default_strategy)
        : departures_(params), arrivals_(params), strategy_(strategy) {}

    /// Interval with the greatest arrival <= t.
    std::optional<Located> locate_prev(Time t) const {
        const auto j = arrivals_.rank1(t);
        if (j == 0) return std::nullopt;
        return Located{static_cast<std::size_t>(j - 1), at_rank(j)};
    }

    /// Interval with the smallest departure >= t.
    std::optional<Located> locate_next(Time t) const {
        const auto j = t == 0 ? 0 : departures_.rank1(t - 1);
        if (j == departures_.ones()) return std::nullopt;
        return Located{static_cast<std::size_t>(j), at_rank(j + 1)};
    }

    std::optional<Interval> find_prev(Time t) const {
        if (auto hit = locate_prev(t)) return hit->interval;
        return std::nullopt;
    }

    std::optional<Interval> find_next(Time t) const {
        if (auto hit = locate_next(t)) return hit->interval;
        return std::nullopt;
    }

    /// Adds [t1, t2] unless a stored interval lies inside it; stored
    /// intervals that contain [t1, t2] are removed first.
    InsertOutcome insert(Time t1, Time t2) {
        require(t1 >= 1 && t1 <= t2, "IntervalSet::insert: need 1 <= t1 <= t2");
        const auto [rd, bit_d] = departures_.rank_access(t1);
        const auto [ra, bit_a] = arrivals_.rank_access(t2);
        if (rd < ra + (bit_a ? 1 : 0)) return {};

        std::size_t removed = 0;
        const auto upto = rd + (bit_d ? 1 : 0);
        if (upto > ra) {
            removed = static_cast<std::size_t>(upto - ra);
            if (strategy_ == RemovalStrategy::unset_range) {
                departures_.unset_range(ra + 1, upto);
                arrivals_.unset_range(ra + 1, upto);
            } else {
                for (std::size_t k = 0; k < removed; ++k) {
                    departures_.update_bit(departures_.select1(ra + 1), false);
                    arrivals_.update_bit(arrivals_.select1(ra + 1), false);
                }
            }
        }
        departures_.ensure_capacity(t1);
        departures_.update_bit(t1, true);
        arrivals_.ensure_capacity(t2);
        arrivals_.update_bit(t2, true);
        return {true, static_cast<std::size_t>(ra), removed};
    }

    /// All intervals in increasing order.
    std::vector<Interval> enumerate() const {
        std::vector<Interval> out;
        out.reserve(size());
        for (std::uint64_t j = 1; j <= departures_.ones(); ++j) out.push_back(at_rank(j));
        return out;
    }

    std::size_t size() const noexcept { return static_cast<std::size_t>(departures_.ones()); }
    bool empty() const noexcept { return size() == 0; }
    RemovalStrategy strategy() const noexcept { return strategy_; }
    const bitvector_type& departures() const noexcept { return departures_; }
    const bitvector_type& arrivals() const noexcept { return arrivals_; }

    std::size_t memory_bytes() const {
        return sizeof(*this) - 2 * sizeof(bitvector_type) + departures_.memory_bytes() +
               arrivals_.memory_bytes();
    }

    std::vector<std::string> audit() const {
        auto out = departures_.audit();
        for (auto& msg : arrivals_.audit()) out.push_back(std::move(msg));
        if (departures_.ones() != arrivals_.ones())
            out.push_back("departure and arrival vectors hold different numbers of ones");
        return out;
    }

private:
    Interval at_rank(std::uint64_t j) const {
        return {static_cast<Time>(departures_.select1(j)), static_cast<Time>(arrivals_.select1(j))};
    }

    bitvector_type departures_;
    bitvector_type arrivals_;
    RemovalStrategy strategy_;
};

using DenseIntervalSet = IntervalSet<DenseLeaf>;
using SparseIntervalSet = IntervalSet<SparseLeaf>;

extern template class IntervalSet<DenseLeaf>;
extern template class IntervalSet<SparseLeaf>;

}  // namespace ttc
