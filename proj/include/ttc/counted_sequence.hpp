#pragma once

// Sequence with logarithmic positional insert/erase/access: a B+-tree whose
// internal nodes keep the element count of every child.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ttc/common.hpp"

namespace ttc {

template <class T, std::size_t LeafCap = 64, std::size_t Fanout = 32>
class CountedSequence {
    static_assert(LeafCap >= 4 && Fanout >= 4, "node capacities too small");

public:
    CountedSequence() = default;
    CountedSequence(const CountedSequence& other) {
        for (std::size_t i = 0; i < other.size(); ++i) insert(i, other[i]);
    }
    CountedSequence(CountedSequence&& other) noexcept { swap(other); }
    CountedSequence& operator=(CountedSequence other) noexcept {
        swap(other);
        return *this;
    }
    ~CountedSequence() { destroy(root_); }

    void swap(CountedSequence& other) noexcept {
        std::swap(root_, other.root_);
        std::swap(size_, other.size_);
        std::swap(leaves_, other.leaves_);
        std::swap(inners_, other.inners_);
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    const T& operator[](std::size_t i) const {
        require(i < size_, "CountedSequence: index out of range");
        const Node* n = root_;
        while (!n->leaf) {
            const Inner* in = as_inner(n);
            std::size_t c = 0;
            while (i >= in->counts[c]) i -= in->counts[c++];
            n = in->kids[c];
        }
        return as_leaf(n)->items[i];
    }

    /// Places `value` so that it ends up at index i.
    void insert(std::size_t i, const T& value) {
        require(i <= size_, "CountedSequence::insert: index out of range");
        if (!root_) root_ = new_leaf();
        if (Node* right = insert_rec(root_, i, value)) {
            Inner* top = new_inner();
            top->kids = {root_, right};
            top->counts = {count_of(root_), count_of(right)};
            root_ = top;
        }
        ++size_;
    }

    /// Removes the elements at [i, i + count).
    void erase(std::size_t i, std::size_t count = 1) {
        require(i + count <= size_, "CountedSequence::erase: range out of bounds");
        for (std::size_t k = 0; k < count; ++k) erase_one(i);
    }

    std::vector<T> to_vector() const {
        std::vector<T> out;
        out.reserve(size_);
        collect(root_, out);
        return out;
    }

    /// Leaves and internal nodes are allocated at full capacity, so the
    /// footprint follows from the node counts.
    std::size_t memory_bytes() const noexcept {
        return sizeof(*this) + leaves_ * (sizeof(Leaf) + (LeafCap + 1) * sizeof(T)) +
               inners_ * (sizeof(Inner) + (Fanout + 1) * (sizeof(std::size_t) + sizeof(Node*)));
    }

    std::vector<std::string> audit() const {
        std::vector<std::string> out;
        if (!root_) {
            if (size_ != 0) out.push_back("empty sequence with nonzero size");
            return out;
        }
        int leaf_depth = -1;
        if (audit_rec(root_, true, 0, leaf_depth, out) != size_) out.push_back("size differs from element count");
        return out;
    }

private:
    struct Node {
        bool leaf;
    };
    struct Leaf : Node {
        Leaf() : Node{true} { items.reserve(LeafCap + 1); }
        std::vector<T> items;
    };
    struct Inner : Node {
        Inner() : Node{false} {
            kids.reserve(Fanout + 1);
            counts.reserve(Fanout + 1);
        }
        std::vector<Node*> kids;
        std::vector<std::size_t> counts;
    };

    static constexpr std::size_t kMinLeaf = (LeafCap + 1) / 2;
    static constexpr std::size_t kMinInner = (Fanout + 1) / 2;

    static Leaf* as_leaf(Node* n) { return static_cast<Leaf*>(n); }
    static const Leaf* as_leaf(const Node* n) { return static_cast<const Leaf*>(n); }
    static Inner* as_inner(Node* n) { return static_cast<Inner*>(n); }
    static const Inner* as_inner(const Node* n) { return static_cast<const Inner*>(n); }

    Leaf* new_leaf() {
        ++leaves_;
        return new Leaf();
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
            for (Node* k : as_inner(n)->kids) destroy(k);
        free_node(n);
    }

    static std::size_t count_of(const Node* n) {
        if (n->leaf) return as_leaf(n)->items.size();
        std::size_t s = 0;
        for (std::size_t c : as_inner(n)->counts) s += c;
        return s;
    }
    static std::size_t fill(const Node* n) {
        return n->leaf ? as_leaf(n)->items.size() : as_inner(n)->kids.size();
    }

    // Returns a new right sibling when n had to split.
    Node* insert_rec(Node* n, std::size_t i, const T& value) {
        if (n->leaf) {
            auto& items = as_leaf(n)->items;
            items.insert(items.begin() + static_cast<std::ptrdiff_t>(i), value);
            if (items.size() <= LeafCap) return nullptr;
            Leaf* right = new_leaf();
            const auto keep = static_cast<std::ptrdiff_t>((items.size() + 1) / 2);
            right->items.assign(items.begin() + keep, items.end());
            items.erase(items.begin() + keep, items.end());
            return right;
        }
        Inner* in = as_inner(n);
        std::size_t c = 0;
        while (c + 1 < in->kids.size() && i > in->counts[c]) i -= in->counts[c++];
        Node* split = insert_rec(in->kids[c], i, value);
        ++in->counts[c];
        if (!split) return nullptr;
        in->counts[c] = count_of(in->kids[c]);
        in->kids.insert(in->kids.begin() + static_cast<std::ptrdiff_t>(c + 1), split);
        in->counts.insert(in->counts.begin() + static_cast<std::ptrdiff_t>(c + 1), count_of(split));
        if (in->kids.size() <= Fanout) return nullptr;
        Inner* right = new_inner();
        const auto keep = static_cast<std::ptrdiff_t>((in->kids.size() + 1) / 2);
        right->kids.assign(in->kids.begin() + keep, in->kids.end());
        right->counts.assign(in->counts.begin() + keep, in->counts.end());
        in->kids.erase(in->kids.begin() + keep, in->kids.end());
        in->counts.erase(in->counts.begin() + keep, in->counts.end());
        return right;
    }

    void erase_one(std::size_t i) {
        erase_rec(root_, i);
        --size_;
        if (!root_->leaf && as_inner(root_)->kids.size() == 1) {
            Node* child = as_inner(root_)->kids[0];
            as_inner(root_)->kids.clear();
            free_node(root_);
            root_ = child;
        } else if (root_->leaf && as_leaf(root_)->items.empty()) {
            free_node(root_);
            root_ = nullptr;
        }
    }

    void erase_rec(Node* n, std::size_t i) {
        if (n->leaf) {
            auto& items = as_leaf(n)->items;
            items.erase(items.begin() + static_cast<std::ptrdiff_t>(i));
            return;
        }
        Inner* in = as_inner(n);
        std::size_t c = 0;
        while (i >= in->counts[c]) i -= in->counts[c++];
        erase_rec(in->kids[c], i);
        --in->counts[c];
        const std::size_t min = in->kids[c]->leaf ? kMinLeaf : kMinInner;
        if (fill(in->kids[c]) < min && in->kids.size() > 1) rebalance(in, c > 0 ? c - 1 : c);
    }

    // Evens out kids[l] and kids[l + 1], merging them when both fit in one.
    void rebalance(Inner* p, std::size_t l) {
        Node* a = p->kids[l];
        Node* b = p->kids[l + 1];
        const bool merged = a->leaf ? move_leaves(as_leaf(a), as_leaf(b)) : move_inners(as_inner(a), as_inner(b));
        if (merged) {
            free_node(b);
            p->kids.erase(p->kids.begin() + static_cast<std::ptrdiff_t>(l + 1));
            p->counts.erase(p->counts.begin() + static_cast<std::ptrdiff_t>(l + 1));
            p->counts[l] = count_of(a);
            return;
        }
        p->counts[l] = count_of(a);
        p->counts[l + 1] = count_of(b);
    }

    static bool move_leaves(Leaf* a, Leaf* b) {
        auto& x = a->items;
        auto& y = b->items;
        x.insert(x.end(), y.begin(), y.end());
        y.clear();
        if (x.size() <= LeafCap) return true;
        const auto keep = static_cast<std::ptrdiff_t>((x.size() + 1) / 2);
        y.assign(x.begin() + keep, x.end());
        x.erase(x.begin() + keep, x.end());
        return false;
    }

    static bool move_inners(Inner* a, Inner* b) {
        a->kids.insert(a->kids.end(), b->kids.begin(), b->kids.end());
        a->counts.insert(a->counts.end(), b->counts.begin(), b->counts.end());
        b->kids.clear();
        b->counts.clear();
        if (a->kids.size() <= Fanout) return true;
        const auto keep = static_cast<std::ptrdiff_t>((a->kids.size() + 1) / 2);
        b->kids.assign(a->kids.begin() + keep, a->kids.end());
        b->counts.assign(a->counts.begin() + keep, a->counts.end());
        a->kids.erase(a->kids.begin() + keep, a->kids.end());
        a->counts.erase(a->counts.begin() + keep, a->counts.end());
        return false;
    }

    static void collect(const Node* n, std::vector<T>& out) {
        if (!n) return;
        if (n->leaf) {
            out.insert(out.end(), as_leaf(n)->items.begin(), as_leaf(n)->items.end());
            return;
        }
        for (const Node* k : as_inner(n)->kids) collect(k, out);
    }

    std::size_t audit_rec(const Node* n, bool is_root, int depth, int& leaf_depth,
                          std::vector<std::string>& out) const {
        if (n->leaf) {
            const auto s = as_leaf(n)->items.size();
            if (s > LeafCap) out.push_back("leaf above capacity");
            if (!is_root && s < kMinLeaf) out.push_back("non-root leaf below half capacity");
            if (leaf_depth < 0) leaf_depth = depth;
            if (leaf_depth != depth) out.push_back("leaves at different depths");
            return s;
        }
        const Inner* in = as_inner(n);
        if (in->kids.size() > Fanout) out.push_back("internal node above fan-out");
        if (!is_root && in->kids.size() < kMinInner) out.push_back("non-root internal node below half fan-out");
        if (is_root && in->kids.size() < 2) out.push_back("internal root with a single child");
        if (in->counts.size() != in->kids.size()) out.push_back("count and child arrays differ in length");
        std::size_t total = 0;
        for (std::size_t c = 0; c < in->kids.size(); ++c) {
            const auto s = audit_rec(in->kids[c], false, depth + 1, leaf_depth, out);
            if (c < in->counts.size() && s != in->counts[c]) out.push_back("stale child count");
            total += s;
        }
        return total;
    }

    Node* root_ = nullptr;
    std::size_t size_ = 0;
    std::size_t leaves_ = 0;
    std::size_t inners_ = 0;
};

}  // namespace ttc
