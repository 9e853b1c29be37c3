#pragma once

// Timed transitive closure: for every ordered vertex pair, the minimal
// [departure, arrival] intervals over all journeys seen so far, each with the
// first hop of a journey realizing it.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ttc/bplus_interval_set.hpp"
#include "ttc/counted_sequence.hpp"
#include "ttc/interval_set.hpp"
#include "ttc/temporal.hpp"

namespace ttc {

struct ReachEntry {
    Interval interval;
    Vertex successor = 0;
};

/// Interval set on bit-vectors plus a successor sequence indexed by the rank
/// of each interval.
template <class Leaf>
class CompactReachSet {
public:
    explicit CompactReachSet(BitVectorParams params = {},
                             RemovalStrategy strategy = IntervalSet<Leaf>::default_strategy)
        : intervals_(params, strategy) {}

    bool insert(Time t1, Time t2, Vertex successor) {
        const auto out = intervals_.insert(t1, t2);
        if (!out.inserted) return false;
        successors_.erase(out.index, out.removed);
        successors_.insert(out.index, successor);
        return true;
    }

    std::optional<ReachEntry> find_prev(Time t) const {
        if (auto hit = intervals_.locate_prev(t)) return ReachEntry{hit->interval, successors_[hit->index]};
        return std::nullopt;
    }

    std::optional<ReachEntry> find_next(Time t) const {
        if (auto hit = intervals_.locate_next(t)) return ReachEntry{hit->interval, successors_[hit->index]};
        return std::nullopt;
    }

    std::vector<ReachEntry> entries() const {
        const auto ivs = intervals_.enumerate();
        const auto succ = successors_.to_vector();
        std::vector<ReachEntry> out(ivs.size());
        for (std::size_t k = 0; k < ivs.size(); ++k) out[k] = {ivs[k], succ[k]};
        return out;
    }

    std::vector<Interval> enumerate() const { return intervals_.enumerate(); }
    std::size_t size() const { return intervals_.size(); }
    const IntervalSet<Leaf>& intervals() const { return intervals_; }

    std::size_t memory_bytes() const {
        return intervals_.memory_bytes() + successors_.memory_bytes();
    }

    std::vector<std::string> audit() const {
        auto out = intervals_.audit();
        for (auto& msg : successors_.audit()) out.push_back(std::move(msg));
        if (successors_.size() != intervals_.size()) out.push_back("successor count differs from interval count");
        return out;
    }

private:
    IntervalSet<Leaf> intervals_;
    CountedSequence<Vertex> successors_;
};

/// B+-tree of intervals carrying their successor in each record.
class BaselineReachSet {
public:
    bool insert(Time t1, Time t2, Vertex successor) { return tree_.insert(t1, t2, successor); }

    std::optional<ReachEntry> find_prev(Time t) const { return wrap(tree_.find_prev_record(t)); }
    std::optional<ReachEntry> find_next(Time t) const { return wrap(tree_.find_next_record(t)); }

    std::vector<ReachEntry> entries() const {
        std::vector<ReachEntry> out;
        for (const auto& r : tree_.records()) out.push_back({r.interval, r.payload});
        return out;
    }

    std::vector<Interval> enumerate() const { return tree_.enumerate(); }
    std::size_t size() const { return tree_.size(); }
    std::size_t memory_bytes() const { return tree_.memory_bytes(); }
    std::vector<std::string> audit() const { return tree_.audit(); }

private:
    using Tree = BPlusIntervalSet<Vertex>;

    static std::optional<ReachEntry> wrap(const std::optional<Tree::Record>& r) {
        if (!r) return std::nullopt;
        return ReachEntry{r->interval, r->payload};
    }

    Tree tree_;
};

using DenseReachSet = CompactReachSet<DenseLeaf>;
using SparseReachSet = CompactReachSet<SparseLeaf>;

template <class Set>
class TemporalClosure {
public:
    using set_type = Set;

    /// Every pair starts as a copy of `prototype`, which must be empty.
    explicit TemporalClosure(GraphParams params, const Set& prototype = Set{})
        : params_(params), lifetime_(params.tau) {
        require(params.n >= 1, "TemporalClosure: need n >= 1");
        require(params.delta >= 1, "TemporalClosure: need delta >= 1");
        require(prototype.size() == 0, "TemporalClosure: prototype set must be empty");
        const std::size_t cells = std::size_t{params.n} * params.n;
        sets_.assign(cells, prototype);
        bytes_.assign(cells, prototype.memory_bytes());
        total_bytes_ = sizeof(*this) + cells * (sizeof(std::size_t) + bytes_.front());
    }

    const GraphParams& params() const noexcept { return params_; }
    /// Fixed lifetime, or the latest arrival so far when it is open-ended.
    Time lifetime() const noexcept { return lifetime_; }
    std::size_t contacts() const noexcept { return contacts_; }

    const Set& set(Vertex u, Vertex v) const {
        require(u < params_.n && v < params_.n, "TemporalClosure::set: vertex out of range");
        return sets_[cell(u, v)];
    }

    void add_contact(const Contact& c) {
        check_contact(params_, c);
        const Vertex n = params_.n;
        const Time t = c.t;
        const Time arrive = t + params_.delta;
        if (params_.tau == 0) lifetime_ = std::max(lifetime_, arrive);

        // Best way into c.u by t, and best way out of c.v from t + delta, per
        // vertex. Taken before any insertion: every composed interval either
        // lands in a new cell or contains the interval it was built from.
        before_.assign(n, std::nullopt);
        after_.assign(n, std::nullopt);
        for (Vertex x = 0; x < n; ++x)
            before_[x] = x == c.u ? ReachEntry{{t, t}, c.v} : sets_[cell(x, c.u)].find_prev(t);
        for (Vertex y = 0; y < n; ++y)
            after_[y] = y == c.v ? ReachEntry{{arrive, arrive}, c.v} : sets_[cell(c.v, y)].find_next(arrive);

        for (Vertex x = 0; x < n; ++x) {
            if (!before_[x]) continue;
            for (Vertex y = 0; y < n; ++y) {
                if (x == y || !after_[y]) continue;
                const auto k = cell(x, y);
                if (sets_[k].insert(before_[x]->interval.departure, after_[y]->interval.arrival,
                                    before_[x]->successor)) {
                    const auto b = sets_[k].memory_bytes();
                    total_bytes_ = total_bytes_ - bytes_[k] + b;
                    bytes_[k] = b;
                }
            }
        }
        ++contacts_;
    }

    /// Whether u reaches v by a journey inside [t1, t2].
    bool can_reach(Vertex u, Vertex v, Time t1, Time t2) const {
        require(u < params_.n && v < params_.n, "TemporalClosure::can_reach: vertex out of range");
        if (t1 > t2) return false;
        if (u == v) return true;
        const auto e = sets_[cell(u, v)].find_next(t1);
        return e && e->interval.arrival <= t2;
    }

    bool is_connected(Time t1, Time t2) const {
        for (Vertex u = 0; u < params_.n; ++u)
            for (Vertex v = 0; v < params_.n; ++v)
                if (!can_reach(u, v, t1, t2)) return false;
        return true;
    }

    /// A journey from u to v inside [t1, t2], or nothing when none exists.
    /// A vertex reaches itself by the empty journey.
    std::optional<Journey> reconstruct_journey(Vertex u, Vertex v, Time t1, Time t2) const {
        if (!can_reach(u, v, t1, t2)) return std::nullopt;
        Journey j;
        if (u == v) {
            j.departure = j.arrival = t1;
            return j;
        }
        const auto first = *sets_[cell(u, v)].find_next(t1);
        const Time limit = first.interval.arrival;
        Vertex at = u;
        ReachEntry e = first;
        for (;;) {
            const Time t = e.interval.departure;
            j.contacts.push_back({at, e.successor, t});
            at = e.successor;
            if (at == v) break;
            const auto next = sets_[cell(at, v)].find_next(t + params_.delta);
            if (!next || next->interval.arrival > limit)
                throw std::logic_error("TemporalClosure: successor chain is broken");
            e = *next;
        }
        j.departure = j.contacts.front().t;
        j.arrival = j.contacts.back().t + params_.delta;
        return j;
    }

    /// Bytes held by all interval sets plus the matrix itself.
    std::size_t memory_bytes() const noexcept { return total_bytes_; }

    std::vector<std::string> audit() const {
        std::vector<std::string> out;
        for (Vertex u = 0; u < params_.n; ++u)
            for (Vertex v = 0; v < params_.n; ++v)
                for (auto& msg : sets_[cell(u, v)].audit())
                    out.push_back("(" + std::to_string(u) + "," + std::to_string(v) + "): " + msg);
        return out;
    }

private:
    std::size_t cell(Vertex u, Vertex v) const { return std::size_t{u} * params_.n + v; }

    GraphParams params_;
    Time lifetime_;
    std::size_t contacts_ = 0;
    std::vector<Set> sets_;
    std::vector<std::size_t> bytes_;
    std::size_t total_bytes_ = 0;
    std::vector<std::optional<ReachEntry>> before_;
    std::vector<std::optional<ReachEntry>> after_;
};

using DenseClosure = TemporalClosure<DenseReachSet>;
using SparseClosure = TemporalClosure<SparseReachSet>;
using BaselineClosure = TemporalClosure<BaselineReachSet>;

extern template class CompactReachSet<DenseLeaf>;
extern template class CompactReachSet<SparseLeaf>;
extern template class TemporalClosure<DenseReachSet>;
extern template class TemporalClosure<SparseReachSet>;
extern template class TemporalClosure<BaselineReachSet>;

}  // namespace ttc
