#pragma once

// Dynamic bit-vector with a B+-tree layout: leaves wrap static bit-vectors
// (DenseLeaf or SparseLeaf) and internal nodes keep, per child, the number
// of bits and the number of ones of its subtree.
//
// Public positions are 1-based. `access` and `rank1` accept positions past
// the end (returning 0 and ones() respectively), which the interval-set
// insertion relies on.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ttc/common.hpp"
#include "ttc/leaf_bits.hpp"

namespace ttc {

template <class Leaf>
class DynBitVector;

template <class Leaf>
DynBitVector<Leaf> join(DynBitVector<Leaf> left, DynBitVector<Leaf> right);

template <class Leaf>
std::pair<DynBitVector<Leaf>, DynBitVector<Leaf>> split_at_one(DynBitVector<Leaf> bv,
                                                                std::uint64_t j);

template <class Leaf>
class DynBitVector {
public:
    using size_type = std::uint64_t;
    using leaf_type = Leaf;

    struct RankAccess {
        size_type rank_before;  // ones strictly before the position
        bool bit;
    };

    explicit DynBitVector(BitVectorParams params = {}) : params_(params) {
        require(params_.max_children >= 4, "DynBitVector: max_children must be at least 4");
        require(params_.leaf_bits >= 64, "DynBitVector: leaf_bits must be at least 64");
        require(params_.sparse_ones >= 2, "DynBitVector: sparse_ones must be at least 2");
    }

    DynBitVector(const DynBitVector& other)
        : params_(other.params_),
          root_(other.clone(other.root_)),
          length_(other.length_),
          ones_(other.ones_) {}

    DynBitVector(DynBitVector&& other) noexcept { swap(other); }

    DynBitVector& operator=(DynBitVector other) noexcept {
        swap(other);
        return *this;
    }

    ~DynBitVector() {
        destroy(root_);
        for (Node* n : pending_) destroy(n);
        for (LeafNode* n : free_leaves_) delete n;
        for (InnerNode* n : free_inners_) delete n;
    }

    void swap(DynBitVector& other) noexcept {
        using std::swap;
        swap(params_, other.params_);
        swap(root_, other.root_);
        swap(length_, other.length_);
        swap(ones_, other.ones_);
        swap(appended_words_, other.appended_words_);
        swap(pending_, other.pending_);
        swap(free_leaves_, other.free_leaves_);
        swap(free_inners_, other.free_inners_);
    }

    static DynBitVector from_string(std::string_view bits, BitVectorParams params = {}) {
        DynBitVector bv(params);
        for (std::size_t at = 0; at < bits.size(); at += 64) {
            const auto n = static_cast<unsigned>(std::min<std::size_t>(64, bits.size() - at));
            std::uint64_t word = 0;
            for (unsigned k = 0; k < n; ++k)
                if (bits[at + k] == '1') word |= std::uint64_t{1} << k;
            bv.insert_word(bv.size(), word, n);
        }
        return bv;
    }

    size_type size() const noexcept { return length_; }
    size_type ones() const noexcept { return ones_; }
    bool empty() const noexcept { return length_ == 0; }
    std::uint32_t height() const noexcept { return root_ ? root_->height : 0; }
    const BitVectorParams& params() const noexcept { return params_; }
    /// Number of 64-bit words appended by ensure_capacity so far.
    std::uint64_t appended_words() const noexcept { return appended_words_; }

    bool access(size_type i) const {
        if (i == 0 || i > length_) return false;
        size_type pos = i - 1;
        const Node* n = root_;
        for (;;) {
            ++node_touches();
            if (is_leaf(n)) return as_leaf(n)->bits.access(pos);
            for (const Entry& e : as_inner(n)->entries) {
                if (pos < e.bits) {
                    n = e.child;
                    break;
                }
                pos -= e.bits;
            }
        }
    }

    size_type rank1(size_type i) const {
        size_type count = std::min(i, length_);
        if (count == 0) return 0;
        size_type result = 0;
        const Node* n = root_;
        for (;;) {
            ++node_touches();
            if (is_leaf(n)) return result + as_leaf(n)->bits.rank(count);
            for (const Entry& e : as_inner(n)->entries) {
                if (count <= e.bits) {
                    n = e.child;
                    break;
                }
                count -= e.bits;
                result += e.ones;
            }
        }
    }

    size_type select1(size_type j) const {
        require(j >= 1 && j <= ones_, "DynBitVector::select1: rank out of range");
        size_type pos = 0;
        const Node* n = root_;
        for (;;) {
            ++node_touches();
            if (is_leaf(n)) return pos + as_leaf(n)->bits.select(j) + 1;
            for (const Entry& e : as_inner(n)->entries) {
                if (j <= e.ones) {
                    n = e.child;
                    break;
                }
                j -= e.ones;
                pos += e.bits;
            }
        }
    }

    /// rank1(i - 1) and access(i) in a single descent.
    RankAccess rank_access(size_type i) const {
        require(i >= 1, "DynBitVector::rank_access: positions start at 1");
        if (i > length_) return {ones_, false};
        size_type pos = i - 1;
        size_type before = 0;
        const Node* n = root_;
        for (;;) {
            ++node_touches();
            if (is_leaf(n)) {
                const Leaf& leaf = as_leaf(n)->bits;
                return {before + leaf.rank(pos), leaf.access(pos)};
            }
            for (const Entry& e : as_inner(n)->entries) {
                if (pos < e.bits) {
                    n = e.child;
                    break;
                }
                pos -= e.bits;
                before += e.ones;
            }
        }
    }

    /// Inserts `bit` so that it becomes position i + 1 (0 <= i <= size()).
    void insert_bit(size_type i, bool bit) { insert_word(i, bit ? 1 : 0, 1); }

    /// Inserts the low `nbits` bits of `word` after the first i bits.
    void insert_word(size_type i, std::uint64_t word, unsigned nbits = 64) {
        require(i <= length_, "DynBitVector::insert: position out of range");
        require(nbits <= 64, "DynBitVector::insert: at most 64 bits per call");
        if (nbits == 0) return;
        if (nbits < 64) word &= (std::uint64_t{1} << nbits) - 1;
        const auto added = static_cast<size_type>(std::popcount(word));
        if (!root_) root_ = new_leaf(Leaf{});
        insert_rec(root_, i, word, nbits, added);
        length_ += nbits;
        ones_ += added;
        fix_root();
    }

    void update_bit(size_type i, bool bit) {
        require(i >= 1 && i <= length_, "DynBitVector::update_bit: position out of range");
        const int delta = update_rec(root_, i - 1, bit);
        ones_ = static_cast<size_type>(static_cast<std::int64_t>(ones_) + delta);
        if (delta != 0) fix_root();
    }

    bool remove_bit(size_type i) {
        require(i >= 1 && i <= length_, "DynBitVector::remove_bit: position out of range");
        const bool bit = remove_rec(root_, i - 1);
        --length_;
        if (bit) --ones_;
        fix_root();
        return bit;
    }

    /// Clears every bit from the j1-th one through the j2-th one.
    void unset_range(size_type j1, size_type j2) {
        require(j1 >= 1 && j1 <= j2 && j2 <= ones_, "DynBitVector::unset_range: rank out of range");
        auto [left, rest] = split_nodes(root_, j1);
        root_ = nullptr;
        const size_type cleared = j2 - j1 + 1;
        const size_type rest_ones = ones_ - j1 + 1;
        Node* ones_part = rest;
        Node* right = nullptr;
        if (cleared < rest_ones) std::tie(ones_part, right) = split_nodes(rest, cleared + 1);
        const size_type zero_len = summarize(ones_part).bits;
        pending_.push_back(ones_part);
        Node* zeros = make_zero_tree(zero_len);
        root_ = join_nodes(join_nodes(left, zeros), right);
        ones_ -= cleared;
        fix_root();
    }

    /// Appends zero words until size() >= t.
    void ensure_capacity(size_type t) {
        while (length_ < t) {
            insert_word(length_, 0, 64);
            ++appended_words_;
        }
    }

    /// Structural self-check: keys, occupancy bounds and uniform leaf depth.
    /// Returns one message per violation.
    std::vector<std::string> audit() const {
        std::vector<std::string> out;
        if (!root_) {
            if (length_ != 0 || ones_ != 0) out.push_back("empty tree with nonzero totals");
            return out;
        }
        const Entry total = audit_rec(root_, true, out);
        if (total.bits != length_) out.push_back("cached length differs from tree content");
        if (total.ones != ones_) out.push_back("cached ones differ from tree content");
        return out;
    }

    /// One line per node in preorder, internal nodes with their num/ones keys.
    std::string dump() const {
        std::ostringstream os;
        dump_rec(os, root_, 0);
        return os.str();
    }

    std::string to_string() const {
        std::string out;
        out.reserve(length_);
        collect_bits(root_, out);
        return out;
    }

    /// Bytes held by this vector: nodes, leaf payloads, entry arrays and
    /// nodes parked for reuse.
    std::size_t memory_bytes() const {
        std::size_t bytes = sizeof(*this) + tree_bytes(root_);
        for (const Node* n : pending_) bytes += tree_bytes(n);
        for (const LeafNode* n : free_leaves_) bytes += node_bytes(n);
        for (const InnerNode* n : free_inners_) bytes += node_bytes(n);
        bytes += (pending_.capacity() + free_leaves_.capacity() + free_inners_.capacity()) *
                 sizeof(void*);
        return bytes;
    }

    friend DynBitVector join<Leaf>(DynBitVector left, DynBitVector right);
    friend std::pair<DynBitVector, DynBitVector> split_at_one<Leaf>(DynBitVector bv,
                                                                     std::uint64_t j);

private:
    struct Node {
        explicit Node(std::uint32_t h) : height(h) {}
        std::uint32_t height;  // 1 for leaves
    };
    struct LeafNode : Node {
        explicit LeafNode(Leaf&& b) : Node(1), bits(std::move(b)) {}
        Leaf bits;
    };
    struct Entry {
        size_type bits;
        size_type ones;
        Node* child;
    };
    struct InnerNode : Node {
        using Node::Node;
        std::vector<Entry> entries;
    };

    static constexpr std::size_t kMaxFreeNodes = 64;

    static bool is_leaf(const Node* n) { return n->height == 1; }
    static LeafNode* as_leaf(Node* n) { return static_cast<LeafNode*>(n); }
    static const LeafNode* as_leaf(const Node* n) { return static_cast<const LeafNode*>(n); }
    static InnerNode* as_inner(Node* n) { return static_cast<InnerNode*>(n); }
    static const InnerNode* as_inner(const Node* n) { return static_cast<const InnerNode*>(n); }

    // -- allocation --------------------------------------------------------

    // Detached subtrees wait in pending_ and are broken up one node at a time
    // when an allocation needs a node of that kind.
    void reclaim_until(bool want_leaf) {
        while (!pending_.empty() && (want_leaf ? free_leaves_.empty() : free_inners_.empty())) {
            Node* n = pending_.back();
            pending_.pop_back();
            if (is_leaf(n)) {
                free_leaves_.push_back(as_leaf(n));
            } else {
                InnerNode* in = as_inner(n);
                for (const Entry& e : in->entries) pending_.push_back(e.child);
                in->entries.clear();
                free_inners_.push_back(in);
            }
        }
    }

    LeafNode* new_leaf(Leaf&& bits) {
        reclaim_until(true);
        if (free_leaves_.empty()) return new LeafNode(std::move(bits));
        LeafNode* n = free_leaves_.back();
        free_leaves_.pop_back();
        n->bits = std::move(bits);
        return n;
    }

    InnerNode* new_inner(std::uint32_t height) {
        reclaim_until(false);
        InnerNode* n;
        if (free_inners_.empty()) {
            n = new InnerNode(height);
        } else {
            n = free_inners_.back();
            free_inners_.pop_back();
            n->height = height;
            n->entries.clear();
        }
        n->entries.reserve(params_.max_children + 1);
        return n;
    }

    // Returns a single node (children already detached) to the free lists.
    void release(Node* n) {
        if (is_leaf(n)) {
            if (free_leaves_.size() < kMaxFreeNodes) {
                as_leaf(n)->bits = Leaf{};
                free_leaves_.push_back(as_leaf(n));
            } else {
                delete as_leaf(n);
            }
        } else {
            as_inner(n)->entries.clear();
            if (free_inners_.size() < kMaxFreeNodes)
                free_inners_.push_back(as_inner(n));
            else
                delete as_inner(n);
        }
    }

    static void destroy(Node* n) {
        if (!n) return;
        if (is_leaf(n)) {
            delete as_leaf(n);
            return;
        }
        for (const Entry& e : as_inner(n)->entries) destroy(e.child);
        delete as_inner(n);
    }

    Node* clone(const Node* n) const {
        if (!n) return nullptr;
        if (is_leaf(n)) return new LeafNode(Leaf(as_leaf(n)->bits));
        auto* copy = new InnerNode(n->height);
        copy->entries.reserve(params_.max_children + 1);
        for (const Entry& e : as_inner(n)->entries)
            copy->entries.push_back({e.bits, e.ones, clone(e.child)});
        return copy;
    }

    // -- balancing ---------------------------------------------------------

    static Entry summarize(Node* n) {
        if (is_leaf(n)) return {as_leaf(n)->bits.size(), as_leaf(n)->bits.ones(), n};
        Entry s{0, 0, n};
        for (const Entry& e : as_inner(n)->entries) {
            s.bits += e.bits;
            s.ones += e.ones;
        }
        return s;
    }

    size_type weight(const Node* n) const {
        return is_leaf(n) ? as_leaf(n)->bits.weight() : as_inner(n)->entries.size();
    }
    size_type capacity(const Node* n) const {
        return is_leaf(n) ? Leaf::capacity(params_) : params_.max_children;
    }
    bool overfull(const Node* n) const { return weight(n) > capacity(n); }
    bool underfull(const Node* n) const { return weight(n) < (capacity(n) + 1) / 2; }

    Node* split_half(Node* n) {
        ++node_touches();
        if (is_leaf(n)) return new_leaf(as_leaf(n)->bits.split_half());
        InnerNode* left = as_inner(n);
        InnerNode* right = new_inner(n->height);
        const std::size_t keep = (left->entries.size() + 1) / 2;
        right->entries.assign(left->entries.begin() + keep, left->entries.end());
        left->entries.resize(keep);
        return right;
    }

    // Moves the content of `right` to the end of `left` and frees `right`.
    void absorb(Node* left, Node* right) {
        if (is_leaf(left)) {
            as_leaf(left)->bits.append(as_leaf(right)->bits);
        } else {
            auto& dst = as_inner(left)->entries;
            auto& src = as_inner(right)->entries;
            dst.insert(dst.end(), src.begin(), src.end());
            src.clear();
        }
        release(right);
    }

    // Splits entries[idx] (and its pieces) until none is overfull.
    void split_overfull(InnerNode* p, std::size_t idx) {
        std::size_t end = idx + 1;
        while (idx < end) {
            Node* c = p->entries[idx].child;
            if (!overfull(c)) {
                ++idx;
                continue;
            }
            Node* r = split_half(c);
            p->entries[idx] = summarize(c);
            p->entries.insert(p->entries.begin() + idx + 1, summarize(r));
            ++end;
        }
    }

    // Restores the occupancy bounds of entries[idx] after it changed size:
    // overfull children are split, underfull ones share with or merge into a
    // sibling.
    void fix_child(InnerNode* p, std::size_t idx) {
        Node* c = p->entries[idx].child;
        if (overfull(c)) {
            split_overfull(p, idx);
            return;
        }
        if (!underfull(c) || p->entries.size() < 2) return;
        const std::size_t l = idx > 0 ? idx - 1 : idx;
        Node* a = p->entries[l].child;
        Node* b = p->entries[l + 1].child;
        ++node_touches();
        absorb(a, b);
        p->entries.erase(p->entries.begin() + l + 1);
        p->entries[l] = summarize(a);
        if (overfull(a)) split_overfull(p, l);
    }

    void fix_root() {
        if (!root_) return;
        while (overfull(root_)) {
            InnerNode* r = new_inner(root_->height + 1);
            r->entries.push_back(summarize(root_));
            root_ = r;
            split_overfull(r, 0);
        }
        while (!is_leaf(root_) && as_inner(root_)->entries.size() <= 1) {
            InnerNode* old = as_inner(root_);
            root_ = old->entries.empty() ? nullptr : old->entries.front().child;
            old->entries.clear();
            release(old);
            if (!root_) return;
        }
        if (is_leaf(root_) && as_leaf(root_)->bits.empty()) {
            release(root_);
            root_ = nullptr;
        }
    }

    // -- point mutations ---------------------------------------------------

    void insert_rec(Node* n, size_type pos, std::uint64_t word, unsigned nbits, size_type added) {
        ++node_touches();
        if (is_leaf(n)) {
            as_leaf(n)->bits.insert(pos, word, nbits);
            return;
        }
        InnerNode* in = as_inner(n);
        std::size_t idx = 0;
        const std::size_t last = in->entries.size() - 1;
        while (idx < last && pos > in->entries[idx].bits) pos -= in->entries[idx++].bits;
        Entry& e = in->entries[idx];
        e.bits += nbits;
        e.ones += added;
        insert_rec(e.child, pos, word, nbits, added);
        if (overfull(e.child)) fix_child(in, idx);
    }

    int update_rec(Node* n, size_type pos, bool bit) {
        ++node_touches();
        if (is_leaf(n)) return as_leaf(n)->bits.set(pos, bit);
        InnerNode* in = as_inner(n);
        std::size_t idx = 0;
        while (pos >= in->entries[idx].bits) pos -= in->entries[idx++].bits;
        Entry& e = in->entries[idx];
        const int delta = update_rec(e.child, pos, bit);
        e.ones = static_cast<size_type>(static_cast<std::int64_t>(e.ones) + delta);
        if (delta != 0 && (overfull(e.child) || underfull(e.child))) fix_child(in, idx);
        return delta;
    }

    bool remove_rec(Node* n, size_type pos) {
        ++node_touches();
        if (is_leaf(n)) return as_leaf(n)->bits.remove(pos);
        InnerNode* in = as_inner(n);
        std::size_t idx = 0;
        while (pos >= in->entries[idx].bits) pos -= in->entries[idx++].bits;
        Entry& e = in->entries[idx];
        const bool bit = remove_rec(e.child, pos);
        e.bits -= 1;
        if (bit) e.ones -= 1;
        if (underfull(e.child) || overfull(e.child)) fix_child(in, idx);
        return bit;
    }

    // -- split / join ------------------------------------------------------

    // Drops empty nodes and collapses single-child internal nodes.
    Node* normalize(Node* n) {
        if (!n) return nullptr;
        if (is_leaf(n)) {
            if (!as_leaf(n)->bits.empty()) return n;
            release(n);
            return nullptr;
        }
        auto& entries = as_inner(n)->entries;
        if (entries.size() >= 2) return n;
        Node* child = entries.empty() ? nullptr : entries.front().child;
        entries.clear();
        release(n);
        return child;
    }

    // Concatenates two trees of equal height: one node when the contents
    // fit, otherwise two evenly filled nodes under a new root.
    Node* merge_or_grow(Node* a, Node* b) {
        ++node_touches();
        absorb(a, b);
        if (!overfull(a)) return a;
        Node* r = split_half(a);
        InnerNode* root = new_inner(a->height + 1);
        root->entries.push_back(summarize(a));
        root->entries.push_back(summarize(r));
        return root;
    }

    Node* join_nodes(Node* a, Node* b) {
        if (!a) return b;
        if (!b) return a;
        const std::uint32_t ha = a->height;
        const std::uint32_t hb = b->height;
        if (ha == hb) return merge_or_grow(a, b);
        ++node_touches();
        if (ha > hb) {
            InnerNode* left = as_inner(a);
            Node* rightmost = left->entries.back().child;
            left->entries.pop_back();
            Node* r = join_nodes(rightmost, b);
            if (r->height == ha) return merge_or_grow(left, r);
            left->entries.push_back(summarize(r));
            return left;
        }
        InnerNode* right = as_inner(b);
        Node* leftmost = right->entries.front().child;
        right->entries.erase(right->entries.begin());
        Node* r = join_nodes(a, leftmost);
        if (r->height == hb) return merge_or_grow(r, right);
        right->entries.insert(right->entries.begin(), summarize(r));
        return right;
    }

    // Splits so that the right tree starts at the j-th one.
    std::pair<Node*, Node*> split_nodes(Node* n, size_type j) {
        ++node_touches();
        if (is_leaf(n)) {
            Leaf& bits = as_leaf(n)->bits;
            Node* right = new_leaf(bits.split_off(bits.select(j)));
            return {normalize(n), normalize(right)};
        }
        InnerNode* left = as_inner(n);
        std::size_t idx = 0;
        while (j > left->entries[idx].ones) j -= left->entries[idx++].ones;
        Node* child = left->entries[idx].child;
        InnerNode* right = new_inner(n->height);
        right->entries.assign(left->entries.begin() + idx + 1, left->entries.end());
        left->entries.resize(idx);
        auto [a, b] = split_nodes(child, j);
        Node* l = join_nodes(normalize(left), a);
        Node* r = join_nodes(b, normalize(right));
        return {l, r};
    }

    Node* make_zero_tree(size_type len) {
        if (len == 0) return nullptr;
        if constexpr (Leaf::kSparse) {
            return new_leaf(Leaf::zeros(len));
        } else {
            const size_type cap = Leaf::capacity(params_);
            const size_type count = (len + cap - 1) / cap;
            std::vector<Node*> level;
            level.reserve(count);
            for (size_type k = 0; k < count; ++k) {
                const size_type piece = len / count + (k < len % count ? 1 : 0);
                level.push_back(new_leaf(Leaf::zeros(piece)));
            }
            std::uint32_t height = 1;
            while (level.size() > 1) {
                const std::size_t m = params_.max_children;
                const std::size_t groups = (level.size() + m - 1) / m;
                std::vector<Node*> next;
                next.reserve(groups);
                std::size_t at = 0;
                for (std::size_t g = 0; g < groups; ++g) {
                    const std::size_t take = level.size() / groups + (g < level.size() % groups ? 1 : 0);
                    InnerNode* in = new_inner(height + 1);
                    for (std::size_t k = 0; k < take; ++k) in->entries.push_back(summarize(level[at++]));
                    next.push_back(in);
                }
                level = std::move(next);
                ++height;
            }
            return level.front();
        }
    }

    // -- diagnostics -------------------------------------------------------

    Entry audit_rec(const Node* n, bool is_root, std::vector<std::string>& out) const {
        const size_type cap = capacity(n);
        const size_type w = weight(n);
        if (is_leaf(n)) {
            const Leaf& bits = as_leaf(n)->bits;
            if (auto msg = bits.check(); !msg.empty()) out.push_back(msg);
            if (w > cap) out.push_back("leaf above capacity");
            if (!is_root && w < (cap + 1) / 2) out.push_back("non-root leaf below half capacity");
            if (bits.empty()) out.push_back("empty leaf");
            return {bits.size(), bits.ones(), nullptr};
        }
        const auto& entries = as_inner(n)->entries;
        if (w > cap) out.push_back("internal node above fan-out");
        if (is_root && w < 2) out.push_back("internal root with fewer than two children");
        if (!is_root && w < (cap + 1) / 2) out.push_back("non-root internal node below half fan-out");
        Entry total{0, 0, nullptr};
        for (const Entry& e : entries) {
            if (e.child->height + 1 != n->height) {
                out.push_back("child height mismatch (leaves at different depths)");
                continue;
            }
            const Entry sub = audit_rec(e.child, false, out);
            if (sub.bits != e.bits) out.push_back("num key differs from subtree length");
            if (sub.ones != e.ones) out.push_back("ones key differs from subtree ones");
            total.bits += sub.bits;
            total.ones += sub.ones;
        }
        return total;
    }

    void dump_rec(std::ostream& os, const Node* n, int depth) const {
        if (!n) {
            os << "(empty)\n";
            return;
        }
        os << std::string(2 * depth, ' ');
        if (is_leaf(n)) {
            const Leaf& bits = as_leaf(n)->bits;
            os << "leaf len=" << bits.size() << " ones=" << bits.ones() << '\n';
            return;
        }
        const auto& entries = as_inner(n)->entries;
        os << "node h=" << n->height << " num=[";
        for (std::size_t k = 0; k < entries.size(); ++k) os << (k ? "," : "") << entries[k].bits;
        os << "] ones=[";
        for (std::size_t k = 0; k < entries.size(); ++k) os << (k ? "," : "") << entries[k].ones;
        os << "]\n";
        for (const Entry& e : entries) dump_rec(os, e.child, depth + 1);
    }

    static void collect_bits(const Node* n, std::string& out) {
        if (!n) return;
        if (is_leaf(n)) {
            out += as_leaf(n)->bits.to_string();
            return;
        }
        for (const Entry& e : as_inner(n)->entries) collect_bits(e.child, out);
    }

    static std::size_t node_bytes(const Node* n) {
        if (is_leaf(n)) return sizeof(LeafNode) + as_leaf(n)->bits.heap_bytes();
        return sizeof(InnerNode) + as_inner(n)->entries.capacity() * sizeof(Entry);
    }

    static std::size_t tree_bytes(const Node* n) {
        if (!n) return 0;
        std::size_t bytes = node_bytes(n);
        if (!is_leaf(n))
            for (const Entry& e : as_inner(n)->entries) bytes += tree_bytes(e.child);
        return bytes;
    }

    BitVectorParams params_;
    Node* root_ = nullptr;
    size_type length_ = 0;
    size_type ones_ = 0;
    std::uint64_t appended_words_ = 0;
    std::vector<Node*> pending_;
    std::vector<LeafNode*> free_leaves_;
    std::vector<InnerNode*> free_inners_;
};

/// Concatenates two bit-vectors built with the same parameters.
template <class Leaf>
DynBitVector<Leaf> join(DynBitVector<Leaf> left, DynBitVector<Leaf> right) {
    require(left.params_.max_children == right.params_.max_children &&
                left.params_.leaf_bits == right.params_.leaf_bits &&
                left.params_.sparse_ones == right.params_.sparse_ones,
            "join: bit-vectors have different shape parameters");
    left.root_ = left.join_nodes(left.root_, right.root_);
    right.root_ = nullptr;
    left.length_ += right.length_;
    left.ones_ += right.ones_;
    right.length_ = right.ones_ = 0;
    left.pending_.insert(left.pending_.end(), right.pending_.begin(), right.pending_.end());
    right.pending_.clear();
    left.fix_root();
    return left;
}

/// Cuts `bv` in front of its j-th one: the left part holds the bits before
/// select1(j), the right part starts at select1(j).
template <class Leaf>
std::pair<DynBitVector<Leaf>, DynBitVector<Leaf>> split_at_one(DynBitVector<Leaf> bv,
                                                                std::uint64_t j) {
    require(j >= 1 && j <= bv.ones_, "split_at_one: rank out of range");
    const auto left_len = bv.select1(j) - 1;
    DynBitVector<Leaf> right(bv.params_);
    auto [a, b] = bv.split_nodes(bv.root_, j);
    bv.root_ = a;
    right.root_ = b;
    right.length_ = bv.length_ - left_len;
    right.ones_ = bv.ones_ - (j - 1);
    bv.length_ = left_len;
    bv.ones_ = j - 1;
    bv.fix_root();
    right.fix_root();
    return {std::move(bv), std::move(right)};
}

using DenseBitVector = DynBitVector<DenseLeaf>;
using SparseBitVector = DynBitVector<SparseLeaf>;

extern template class DynBitVector<DenseLeaf>;
extern template class DynBitVector<SparseLeaf>;

}  // namespace ttc
