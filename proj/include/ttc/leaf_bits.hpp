#pragma once

// Static bounded bit-vectors used as the leaves of DynBitVector.
//
// Both representations expose the same interface with 0-based positions;
// the 1-based timestamp convention only applies at the DynBitVector API.
// `rank(n)` counts ones in [0, n) and `select(j)` returns the position of
// the j-th one (j >= 1).

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ttc/common.hpp"

namespace ttc {

/// Bits stored verbatim in 64-bit words.
class DenseLeaf {
public:
    using size_type = std::uint64_t;
    static constexpr bool kSparse = false;

    DenseLeaf() = default;

    static DenseLeaf zeros(size_type n);
    static DenseLeaf from_string(std::string_view bits);

    size_type size() const noexcept { return len_; }
    size_type ones() const noexcept { return ones_; }
    bool empty() const noexcept { return len_ == 0; }

    bool access(size_type pos) const;
    size_type rank(size_type n) const;
    size_type select(size_type j) const;

    /// Writes bit `pos`; returns the change in the number of ones.
    int set(size_type pos, bool bit);
    /// Splices the low `nbits` bits of `word` in front of position `pos`.
    void insert(size_type pos, std::uint64_t word, unsigned nbits);
    /// Removes bit `pos` and returns it.
    bool remove(size_type pos);

    /// Keeps [0, at) and returns [at, size()).
    DenseLeaf split_off(size_type at);
    /// Even split by length; the left half keeps ceil(size/2) bits.
    DenseLeaf split_half() { return split_off((len_ + 1) / 2); }
    void append(const DenseLeaf& other);

    size_type weight() const noexcept { return len_; }
    static size_type capacity(const BitVectorParams& p) noexcept { return p.leaf_bits; }
    bool overflows(const BitVectorParams& p) const noexcept { return weight() > capacity(p); }

    std::size_t heap_bytes() const noexcept { return words_.capacity() * sizeof(std::uint64_t); }
    std::string to_string() const;
    /// Empty when the internal invariants hold, otherwise a description.
    std::string check() const;

private:
    std::uint64_t get_bits(size_type pos, unsigned n) const;
    void append_bits(std::uint64_t value, unsigned n);
    void append_range(const DenseLeaf& src, size_type from, size_type to);
    void truncate(size_type n);

    std::vector<std::uint64_t> words_;
    size_type len_ = 0;
    size_type ones_ = 0;
};

/// Bits stored as the gaps between consecutive ones, bit-packed at the width
/// of the largest gap. The first gap is the position of the first one.
/// Trailing zeros are represented by the length alone.
class SparseLeaf {
public:
    using size_type = std::uint64_t;
    static constexpr bool kSparse = true;

    SparseLeaf() = default;

    static SparseLeaf zeros(size_type n);
    static SparseLeaf from_string(std::string_view bits);

    size_type size() const noexcept { return len_; }
    size_type ones() const noexcept { return ones_; }
    bool empty() const noexcept { return len_ == 0; }

    bool access(size_type pos) const;
    size_type rank(size_type n) const;
    size_type select(size_type j) const;

    int set(size_type pos, bool bit);
    void insert(size_type pos, std::uint64_t word, unsigned nbits);
    bool remove(size_type pos);

    SparseLeaf split_off(size_type at);
    /// Even split by set bits; the left half keeps ceil(ones/2) of them.
    SparseLeaf split_half();
    void append(const SparseLeaf& other);

    size_type weight() const noexcept { return ones_; }
    static size_type capacity(const BitVectorParams& p) noexcept { return p.sparse_ones; }
    bool overflows(const BitVectorParams& p) const noexcept { return weight() > capacity(p); }

    std::size_t heap_bytes() const noexcept { return packed_.capacity() * sizeof(std::uint64_t); }
    std::string to_string() const;
    std::string check() const;

    /// Decoded gap sequence, for tests and dumps.
    std::vector<size_type> gaps() const;
    unsigned gap_width() const noexcept { return width_; }

private:
    std::uint64_t gap(std::size_t i) const;
    void decode(std::vector<size_type>& positions) const;
    void encode(const std::vector<size_type>& positions);

    template <class F>
    void for_each_one(F&& f) const {
        size_type pos = 0;
        for (std::size_t i = 0; i < ones_; ++i) {
            pos += gap(i);
            if (!f(pos)) return;
        }
    }

    std::vector<std::uint64_t> packed_;
    size_type len_ = 0;
    std::uint32_t ones_ = 0;
    std::uint8_t width_ = 0;
};

}  // namespace ttc
