#include "ttc/oracle.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace ttc::oracle {

FlatBits FlatBits::from_string(std::string_view bits) {
    FlatBits out;
    for (char c : bits) out.bits_.push_back(c == '1');
    return out;
}

std::uint64_t FlatBits::ones() const {
    return static_cast<std::uint64_t>(std::count(bits_.begin(), bits_.end(), true));
}

bool FlatBits::access(std::uint64_t i) const {
    return i >= 1 && i <= bits_.size() && bits_[i - 1];
}

std::uint64_t FlatBits::rank1(std::uint64_t i) const {
    std::uint64_t r = 0;
    for (std::uint64_t k = 0; k < std::min<std::uint64_t>(i, bits_.size()); ++k) r += bits_[k];
    return r;
}

std::uint64_t FlatBits::select1(std::uint64_t j) const {
    require(j >= 1, "FlatBits::select1: rank out of range");
    for (std::uint64_t k = 0; k < bits_.size(); ++k)
        if (bits_[k] && --j == 0) return k + 1;
    throw contract_violation("FlatBits::select1: rank out of range");
}

void FlatBits::insert_bit(std::uint64_t i, bool bit) {
    require(i <= bits_.size(), "FlatBits::insert_bit: position out of range");
    bits_.insert(bits_.begin() + static_cast<std::ptrdiff_t>(i), bit);
}

void FlatBits::update_bit(std::uint64_t i, bool bit) {
    require(i >= 1 && i <= bits_.size(), "FlatBits::update_bit: position out of range");
    bits_[i - 1] = bit;
}

bool FlatBits::remove_bit(std::uint64_t i) {
    require(i >= 1 && i <= bits_.size(), "FlatBits::remove_bit: position out of range");
    const bool b = bits_[i - 1];
    bits_.erase(bits_.begin() + static_cast<std::ptrdiff_t>(i - 1));
    return b;
}

void FlatBits::unset_range(std::uint64_t j1, std::uint64_t j2) {
    require(j1 >= 1 && j1 <= j2, "FlatBits::unset_range: bad ranks");
    const auto from = select1(j1);
    const auto to = select1(j2);
    for (auto k = from; k <= to; ++k) bits_[k - 1] = false;
}

void FlatBits::ensure_capacity(std::uint64_t t) {
    if (bits_.size() < t) bits_.resize(t, false);
}

std::string FlatBits::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

std::vector<Interval> minimal_antichain(std::vector<Interval> ivs) {
    std::sort(ivs.begin(), ivs.end());
    ivs.erase(std::unique(ivs.begin(), ivs.end()), ivs.end());
    std::vector<Interval> out;
    for (const auto& a : ivs) {
        bool keep = true;
        for (const auto& b : ivs)
            if (!(a == b) && a.contains(b)) keep = false;
        if (keep) out.push_back(a);
    }
    return out;
}

bool OracleIntervalSet::insert(Time t1, Time t2) {
    require(t1 >= 1 && t1 <= t2, "OracleIntervalSet::insert: need 1 <= t1 <= t2");
    const Interval fresh{t1, t2};
    // The stored list is already an antichain, so reducing it together with
    // the new interval either drops the newcomer (it contains a member) or
    // drops the members containing it.
    for (const auto& iv : items_)
        if (fresh.contains(iv)) return false;
    std::erase_if(items_, [&](const Interval& iv) { return iv.contains(fresh); });
    items_.insert(std::upper_bound(items_.begin(), items_.end(), fresh), fresh);
    return true;
}

std::optional<Interval> OracleIntervalSet::find_prev(Time t) const {
    std::optional<Interval> best;
    for (const auto& iv : items_)
        if (iv.arrival <= t && (!best || iv.arrival > best->arrival)) best = iv;
    return best;
}

std::optional<Interval> OracleIntervalSet::find_next(Time t) const {
    std::optional<Interval> best;
    for (const auto& iv : items_)
        if (iv.departure >= t && (!best || iv.departure < best->departure)) best = iv;
    return best;
}

namespace {

bool earlier(const Contact& a, const Contact& b) { return a.t < b.t; }

// `contacts` itself when already in time order, else a sorted copy in `buf`.
const std::vector<Contact>& by_time(const std::vector<Contact>& contacts, std::vector<Contact>& buf) {
    if (std::is_sorted(contacts.begin(), contacts.end(), earlier)) return contacts;
    buf = contacts;
    std::stable_sort(buf.begin(), buf.end(), earlier);
    return buf;
}

constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

}  // namespace

IntervalMatrix minimal_intervals(const std::vector<Contact>& contacts, const GraphParams& params) {
    const Vertex n = params.n;
    std::vector<Contact> buf;
    const auto& sorted = by_time(contacts, buf);
    IntervalMatrix out(n, std::vector<std::vector<Interval>>(n));

    // A journey's departure is the time of its first contact, so fix the
    // source x and that first time d, then scan later contacts in time order
    // for earliest arrivals.
    for (Vertex x = 0; x < n; ++x) {
        std::set<Time> starts;
        for (const auto& c : sorted)
            if (c.u == x) starts.insert(c.t);
        for (Time d : starts) {
            std::vector<std::uint64_t> earliest(n, kNever);
            for (const auto& c : sorted)
                if (c.u == x && c.t == d) earliest[c.v] = std::min<std::uint64_t>(earliest[c.v], d + params.delta);
            for (const auto& c : sorted) {
                if (c.t <= d || c.u == x) continue;
                if (earliest[c.u] <= c.t)
                    earliest[c.v] = std::min<std::uint64_t>(earliest[c.v], std::uint64_t{c.t} + params.delta);
            }
            for (Vertex y = 0; y < n; ++y)
                if (y != x && earliest[y] != kNever) out[x][y].push_back({d, static_cast<Time>(earliest[y])});
        }
        for (Vertex y = 0; y < n; ++y) out[x][y] = minimal_antichain(std::move(out[x][y]));
    }
    return out;
}

bool can_reach(const std::vector<Contact>& contacts, const GraphParams& params, Vertex u, Vertex v,
               Time t1, Time t2) {
    if (t1 > t2) return false;
    if (u == v) return true;
    std::vector<std::uint64_t> at(params.n, kNever);
    at[u] = t1;
    std::vector<Contact> buf;
    for (const auto& c : by_time(contacts, buf)) {
        if (c.t < at[c.u] || std::uint64_t{c.t} + params.delta > t2) continue;
        at[c.v] = std::min<std::uint64_t>(at[c.v], std::uint64_t{c.t} + params.delta);
    }
    return at[v] != kNever;
}

std::string check_journey(const Journey& j, const std::vector<Contact>& contacts,
                          const GraphParams& params, Vertex u, Vertex v, Time t1, Time t2) {
    std::ostringstream err;
    if (j.contacts.empty()) {
        if (u != v) return "empty journey between distinct vertices";
        return {};
    }
    const auto& cs = j.contacts;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        if (std::find(contacts.begin(), contacts.end(), cs[k]) == contacts.end()) {
            err << "contact " << k << " is not in the input";
            return err.str();
        }
        if (k > 0 && cs[k].u != cs[k - 1].v) {
            err << "contact " << k << " does not continue from the previous head";
            return err.str();
        }
        if (k > 0 && std::uint64_t{cs[k].t} < std::uint64_t{cs[k - 1].t} + params.delta) {
            err << "contact " << k << " departs before the previous one arrives";
            return err.str();
        }
    }
    if (cs.front().u != u) return "journey does not start at the source";
    if (cs.back().v != v) return "journey does not end at the target";
    if (j.departure != cs.front().t) return "departure differs from the first contact time";
    if (j.arrival != cs.back().t + params.delta) return "arrival differs from last contact time plus delta";
    if (j.departure < t1 || j.arrival > t2) return "journey leaves the query window";
    return {};
}

}  // namespace ttc::oracle
