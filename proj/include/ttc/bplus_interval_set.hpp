#pragma once

// In-memory B+-tree keeping a set of non-nested intervals as keys. Records
// are ordered by departure; for an antichain this is also arrival order, so
// the same tree answers searches on either endpoint. Separator keys always
// equal the first record of the subtree to their right.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttc/common.hpp"
#include "ttc/interval.hpp"

namespace ttc {

struct NoPayload {
    friend bool operator==(NoPayload, NoPayload) = default;
};

template <class Payload = NoPayload, std::size_t M = 32>
class BPlusIntervalSet {
    static_assert(M >= 4, "fan-out too small");

public:
    struct Record {
        Interval interval;
        [[no_unique_address]] Payload payload{};
    };

    BPlusIntervalSet() = default;
    BPlusIntervalSet(const BPlusIntervalSet& other) {
        for (const Record& r : other.records()) append_sorted(r);
    }
    BPlusIntervalSet(BPlusIntervalSet&& other) noexcept { swap(other); }
    BPlusIntervalSet& operator=(BPlusIntervalSet other) noexcept {
        swap(other);
        return *this;
    }
    ~BPlusIntervalSet() { destroy(root_); }

    void swap(BPlusIntervalSet& other) noexcept {
        std::swap(root_, other.root_);
        std::swap(height_, other.height_);
        std::swap(size_, other.size_);
        std::swap(leaves_, other.leaves_);
        std::swap(inners_, other.inners_);
    }

    std::optional<Record> find_prev_record(Time t) const {
        if (!root_) return std::nullopt;
        const Node* n = root_;
        while (!n->leaf) {
            const Inner* in = as_inner(n);
            std::size_t c = 0;
            while (c + 1 < in->count && in->keys[c].arrival <= t) ++c;
            n = in->kids[c];
        }
        const LeafNode* lf = as_leaf(n);
        std::size_t p = 0;
        while (p < lf->count && lf->recs[p].interval.arrival <= t) ++p;
        if (p == 0) return std::nullopt;
        return lf->recs[p - 1];
    }

    std::optional<Record> find_next_record(Time t) const {
        auto [lf, p] = seek(t, [](const Interval& iv) { return iv.departure; });
        if (!lf) return std::nullopt;
        return lf->recs[p];
    }

    std::optional<Interval> find_prev(Time t) const {
        if (auto r = find_prev_record(t)) return r->interval;
        return std::nullopt;
    }

    std::optional<Interval> find_next(Time t) const {
        if (auto r = find_next_record(t)) return r->interval;
        return std::nullopt;
    }

    /// Same contract as IntervalSet::insert; returns whether the set changed.
    bool insert(Time t1, Time t2, Payload payload = {}) {
        require(t1 >= 1 && t1 <= t2, "BPlusIntervalSet::insert: need 1 <= t1 <= t2");
        if (auto next = find_next_record(t1); next && next->interval.arrival <= t2) return false;
        for (;;) {
            auto [lf, p] = seek(t2, [](const Interval& iv) { return iv.arrival; });
            if (!lf || lf->recs[p].interval.departure > t1) break;
            erase(lf->recs[p].interval);
        }
        insert_record({{t1, t2}, payload});
        return true;
    }

    std::vector<Record> records() const {
        std::vector<Record> out;
        out.reserve(size_);
        for (const LeafNode* lf = leftmost(); lf; lf = lf->next)
            out.insert(out.end(), lf->recs.begin(), lf->recs.begin() + lf->count);
        return out;
    }

    std::vector<Interval> enumerate() const {
        std::vector<Interval> out;
        out.reserve(size_);
        for (const Record& r : records()) out.push_back(r.interval);
        return out;
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    std::uint32_t height() const noexcept { return height_; }

    /// Node storage is allocated at full fan-out, so the footprint is the
    /// node count times the node sizes.
    std::size_t memory_bytes() const noexcept {
        return sizeof(*this) + leaves_ * sizeof(LeafNode) + inners_ * sizeof(Inner);
    }

    std::vector<std::string> audit() const {
        std::vector<std::string> out;
        if (!root_) {
            if (size_ != 0) out.push_back("empty tree with nonzero size");
            return out;
        }
        std::size_t total = 0;
        audit_rec(root_, 1, true, out, total);
        if (total != size_) out.push_back("cached size differs from record count");
        const auto all = records();
        if (all.size() != size_) out.push_back("leaf chain misses records");
        for (std::size_t k = 1; k < all.size(); ++k) {
            const auto& a = all[k - 1].interval;
            const auto& b = all[k].interval;
            if (!(a.departure < b.departure && a.arrival < b.arrival))
                out.push_back("records not strictly increasing in both endpoints");
        }
        return out;
    }

private:
    struct Node {
        bool leaf;
        std::uint16_t count = 0;  // records in a leaf, children in an inner node
    };
    struct LeafNode : Node {
        LeafNode() : Node{true} {}
        std::array<Record, M> recs{};
        LeafNode* next = nullptr;
    };
    struct Inner : Node {
        Inner() : Node{false} {}
        std::array<Interval, M - 1> keys{};
        std::array<Node*, M> kids{};
    };
    struct Split {
        Interval key;
        Node* right;
    };

    static constexpr std::size_t kMin = (M + 1) / 2;

    static LeafNode* as_leaf(Node* n) { return static_cast<LeafNode*>(n); }
    static const LeafNode* as_leaf(const Node* n) { return static_cast<const LeafNode*>(n); }
    static Inner* as_inner(Node* n) { return static_cast<Inner*>(n); }
    static const Inner* as_inner(const Node* n) { return static_cast<const Inner*>(n); }

    LeafNode* new_leaf() {
        ++leaves_;
        return new LeafNode();
    }
    Inner* new_inner() {
        ++inners_;
        return new Inner();
    }
    void free_node(Node* n) {
        if (n->leaf) {
            --leaves_;
            delete as_leaf(n);
        } else {
            --inners_;
            delete as_inner(n);
        }
    }
    void destroy(Node* n) {
        if (!n) return;
        if (!n->leaf)
            for (std::size_t k = 0; k < n->count; ++k) destroy(as_inner(n)->kids[k]);
        free_node(n);
    }

    const LeafNode* leftmost() const {
        const Node* n = root_;
        if (!n) return nullptr;
        while (!n->leaf) n = as_inner(n)->kids[0];
        return as_leaf(n);
    }

    static Interval first_key(const Node* n) {
        while (!n->leaf) n = as_inner(n)->kids[0];
        return as_leaf(n)->recs[0].interval;
    }

    static std::size_t child_for(const Inner* in, Time departure) {
        std::size_t c = 0;
        while (c + 1 < in->count && in->keys[c].departure <= departure) ++c;
        return c;
    }

    // First record whose projected endpoint is >= t, as (leaf, index);
    // (nullptr, 0) when there is none.
    template <class Proj>
    std::pair<const LeafNode*, std::size_t> seek(Time t, Proj proj) const {
        if (!root_) return {nullptr, 0};
        const Node* n = root_;
        while (!n->leaf) {
            const Inner* in = as_inner(n);
            std::size_t c = 0;
            while (c + 1 < in->count && proj(in->keys[c]) <= t) ++c;
            n = in->kids[c];
        }
        const LeafNode* lf = as_leaf(n);
        std::size_t p = 0;
        while (p < lf->count && proj(lf->recs[p].interval) < t) ++p;
        if (p < lf->count) return {lf, p};
        if (lf->next) return {lf->next, 0};
        return {nullptr, 0};
    }

    // -- insertion ---------------------------------------------------------

    void insert_record(const Record& r) {
        if (!root_) {
            root_ = new_leaf();
            height_ = 1;
        }
        if (auto s = insert_rec(root_, r)) {
            Inner* top = new_inner();
            top->count = 2;
            top->kids[0] = root_;
            top->kids[1] = s->right;
            top->keys[0] = s->key;
            root_ = top;
            ++height_;
        }
        ++size_;
    }

    // Used by the copy constructor: records arrive in increasing order.
    void append_sorted(const Record& r) { insert_record(r); }

    std::optional<Split> insert_rec(Node* n, const Record& r) {
        if (n->leaf) {
            LeafNode* lf = as_leaf(n);
            std::size_t p = 0;
            while (p < lf->count && lf->recs[p].interval.departure < r.interval.departure) ++p;
            if (lf->count < M) {
                std::copy_backward(lf->recs.begin() + p, lf->recs.begin() + lf->count,
                                   lf->recs.begin() + lf->count + 1);
                lf->recs[p] = r;
                ++lf->count;
                return std::nullopt;
            }
            std::array<Record, M + 1> all;
            std::copy(lf->recs.begin(), lf->recs.begin() + p, all.begin());
            all[p] = r;
            std::copy(lf->recs.begin() + p, lf->recs.end(), all.begin() + p + 1);
            LeafNode* right = new_leaf();
            const std::size_t keep = (M + 2) / 2;
            std::copy(all.begin(), all.begin() + keep, lf->recs.begin());
            std::copy(all.begin() + keep, all.end(), right->recs.begin());
            lf->count = static_cast<std::uint16_t>(keep);
            right->count = static_cast<std::uint16_t>(M + 1 - keep);
            right->next = lf->next;
            lf->next = right;
            return Split{right->recs[0].interval, right};
        }
        Inner* in = as_inner(n);
        const std::size_t c = child_for(in, r.interval.departure);
        auto s = insert_rec(in->kids[c], r);
        if (!s) return std::nullopt;
        if (in->count < M) {
            std::copy_backward(in->keys.begin() + c, in->keys.begin() + in->count - 1,
                               in->keys.begin() + in->count);
            std::copy_backward(in->kids.begin() + c + 1, in->kids.begin() + in->count,
                               in->kids.begin() + in->count + 1);
            in->keys[c] = s->key;
            in->kids[c + 1] = s->right;
            ++in->count;
            return std::nullopt;
        }
        std::array<Interval, M> keys;
        std::array<Node*, M + 1> kids;
        std::copy(in->keys.begin(), in->keys.begin() + c, keys.begin());
        keys[c] = s->key;
        std::copy(in->keys.begin() + c, in->keys.end(), keys.begin() + c + 1);
        std::copy(in->kids.begin(), in->kids.begin() + c + 1, kids.begin());
        kids[c + 1] = s->right;
        std::copy(in->kids.begin() + c + 1, in->kids.end(), kids.begin() + c + 2);
        const std::size_t keep = (M + 2) / 2;
        Inner* right = new_inner();
        std::copy(kids.begin(), kids.begin() + keep, in->kids.begin());
        std::copy(keys.begin(), keys.begin() + keep - 1, in->keys.begin());
        std::copy(kids.begin() + keep, kids.end(), right->kids.begin());
        std::copy(keys.begin() + keep, keys.end(), right->keys.begin());
        in->count = static_cast<std::uint16_t>(keep);
        right->count = static_cast<std::uint16_t>(M + 1 - keep);
        return Split{keys[keep - 1], right};
    }

    // -- deletion ----------------------------------------------------------

    void erase(const Interval& key) {
        erase_rec(root_, key);
        --size_;
        if (!root_->leaf && root_->count == 1) {
            Node* child = as_inner(root_)->kids[0];
            free_node(root_);
            root_ = child;
            --height_;
        } else if (root_->leaf && root_->count == 0) {
            free_node(root_);
            root_ = nullptr;
            height_ = 0;
        }
    }

    void erase_rec(Node* n, const Interval& key) {
        if (n->leaf) {
            LeafNode* lf = as_leaf(n);
            std::size_t p = 0;
            while (lf->recs[p].interval.departure != key.departure) ++p;
            std::copy(lf->recs.begin() + p + 1, lf->recs.begin() + lf->count, lf->recs.begin() + p);
            --lf->count;
            return;
        }
        Inner* in = as_inner(n);
        const std::size_t c = child_for(in, key.departure);
        erase_rec(in->kids[c], key);
        if (in->kids[c]->count < kMin) {
            fix_underflow(in, c);
            for (std::size_t k = 0; k + 1 < in->count; ++k) in->keys[k] = first_key(in->kids[k + 1]);
        } else if (c > 0) {
            in->keys[c - 1] = first_key(in->kids[c]);
        }
    }

    void fix_underflow(Inner* p, std::size_t c) {
        const std::size_t l = c > 0 ? c - 1 : c;
        Node* a = p->kids[l];
        Node* b = p->kids[l + 1];
        const std::size_t total = a->count + b->count;
        if (a->leaf) {
            LeafNode* la = as_leaf(a);
            LeafNode* lb = as_leaf(b);
            std::array<Record, 2 * M> all;
            std::copy(la->recs.begin(), la->recs.begin() + la->count, all.begin());
            std::copy(lb->recs.begin(), lb->recs.begin() + lb->count, all.begin() + la->count);
            if (total <= M) {
                std::copy(all.begin(), all.begin() + total, la->recs.begin());
                la->count = static_cast<std::uint16_t>(total);
                la->next = lb->next;
                remove_child(p, l + 1);
                free_node(lb);
                return;
            }
            const std::size_t keep = (total + 1) / 2;
            std::copy(all.begin(), all.begin() + keep, la->recs.begin());
            std::copy(all.begin() + keep, all.begin() + total, lb->recs.begin());
            la->count = static_cast<std::uint16_t>(keep);
            lb->count = static_cast<std::uint16_t>(total - keep);
            return;
        }
        Inner* ia = as_inner(a);
        Inner* ib = as_inner(b);
        std::array<Node*, 2 * M> kids;
        std::array<Interval, 2 * M> keys;
        std::copy(ia->kids.begin(), ia->kids.begin() + ia->count, kids.begin());
        std::copy(ib->kids.begin(), ib->kids.begin() + ib->count, kids.begin() + ia->count);
        // The parent's separator may predate the erase below it, so rebuild
        // every key from its subtree.
        for (std::size_t k = 1; k < total; ++k) keys[k - 1] = first_key(kids[k]);
        if (total <= M) {
            std::copy(kids.begin(), kids.begin() + total, ia->kids.begin());
            std::copy(keys.begin(), keys.begin() + total - 1, ia->keys.begin());
            ia->count = static_cast<std::uint16_t>(total);
            ib->count = 0;
            remove_child(p, l + 1);
            free_node(ib);
            return;
        }
        const std::size_t keep = (total + 1) / 2;
        std::copy(kids.begin(), kids.begin() + keep, ia->kids.begin());
        std::copy(keys.begin(), keys.begin() + keep - 1, ia->keys.begin());
        std::copy(kids.begin() + keep, kids.begin() + total, ib->kids.begin());
        std::copy(keys.begin() + keep, keys.begin() + total - 1, ib->keys.begin());
        ia->count = static_cast<std::uint16_t>(keep);
        ib->count = static_cast<std::uint16_t>(total - keep);
        p->keys[l] = keys[keep - 1];
    }

    // Drops kids[k] (k >= 1) and the separator in front of it.
    static void remove_child(Inner* p, std::size_t k) {
        std::copy(p->keys.begin() + k, p->keys.begin() + p->count - 1, p->keys.begin() + k - 1);
        std::copy(p->kids.begin() + k + 1, p->kids.begin() + p->count, p->kids.begin() + k);
        --p->count;
    }

    void audit_rec(const Node* n, std::uint32_t depth, bool is_root, std::vector<std::string>& out,
                   std::size_t& total) const {
        if (n->count > M) out.push_back("node above fan-out");
        if (!is_root && n->count < kMin) out.push_back("non-root node below half fan-out");
        if (n->leaf) {
            if (depth != height_) out.push_back("leaf at the wrong depth");
            total += n->count;
            return;
        }
        const Inner* in = as_inner(n);
        if (is_root && in->count < 2) out.push_back("inner root with a single child");
        for (std::size_t k = 0; k < in->count; ++k) {
            if (k > 0 && !(first_key(in->kids[k]) == in->keys[k - 1]))
                out.push_back("separator differs from the first key of its subtree");
            audit_rec(in->kids[k], depth + 1, false, out, total);
        }
    }

    Node* root_ = nullptr;
    std::uint32_t height_ = 0;
    std::size_t size_ = 0;
    std::size_t leaves_ = 0;
    std::size_t inners_ = 0;
};

}  // namespace ttc
